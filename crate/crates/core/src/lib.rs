//! Exact redundancy removal and projection for convex polyhedra.
//!
//! Every number in this crate is an arbitrary-precision rational; nothing is
//! ever rounded. The crate is `no_std` (it needs `alloc`) and performs no IO.
//! File formats, the command line and the threaded worker pool live in the
//! `redund` companion crate.
//!
//! The main entry points are:
//!
//! * [`minrep::minimum_representation`] finds hidden linearities and removes
//!   every redundant row, correctly in the presence of duplicated rows.
//! * [`clarkson`] does the same with LPs restricted to the rows certified
//!   non-redundant so far, which is much faster on highly redundant input.
//! * [`fm::project`] projects an H-representation by Fourier-Motzkin
//!   elimination with a minimum-representation cleanup after every round.
//! * [`oracle`] holds brute-force reference implementations for tiny inputs.
//!
//! Work that fans out over rows goes through the [`exec::Executor`] trait so
//! that callers can plug in a thread pool; [`exec::Sequential`] is the
//! built-in implementation.

#![no_std]

extern crate alloc;

pub mod clarkson;
pub mod classify;
pub mod error;
pub mod exec;
pub mod fm;
pub mod linalg;
pub mod lp;
pub mod minrep;
pub mod oracle;
pub mod rational;
pub mod row;

pub use classify::{classify, full_dimension_test, FullDimension, RowClass, Verdict, Witness};
pub use error::Error;
pub use exec::{Executor, Sequential, TaskBatch};
pub use minrep::{minimum_representation, Method, MinRepOptions, MinRepReport};
pub use rational::Rational;
pub use row::{Kind, Polyhedron, Row};
