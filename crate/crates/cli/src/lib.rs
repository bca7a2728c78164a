//! lrs file format, a threaded executor and the `redund` command line on
//! top of `redund-core`.

pub mod cli;
pub mod format;
pub mod pool;

pub use format::{emit, emit_polyhedron, emit_report, parse, Job, ParseError, PolyFile};
pub use pool::ThreadPool;
