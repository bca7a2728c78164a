//! Deterministic fan-out over row indices.
//!
//! A batch maps every key through a pure function and returns the results
//! keyed by index, so the outcome never depends on which worker finished
//! first. Shared inputs must stay immutable while a batch runs; each task
//! owns whatever solver state it creates.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskBatch {
    /// Task keys in processing order.
    pub items: Vec<usize>,
    /// Number of workers.
    pub width: usize,
    /// Keys per work unit; units are contiguous ranges of `items`.
    pub chunking: usize,
}

impl TaskBatch {
    /// A batch with a chunk size that gives every worker a few units.
    pub fn new(items: Vec<usize>, width: usize) -> Self {
        let width = width.max(1);
        let chunking = (items.len() / (4 * width)).max(1);
        TaskBatch {
            items,
            width,
            chunking,
        }
    }

    pub fn with_chunking(mut self, chunking: usize) -> Self {
        self.chunking = chunking.max(1);
        self
    }

    /// Contiguous work units, in order.
    pub fn units(&self) -> impl Iterator<Item = &[usize]> {
        self.items.chunks(self.chunking.max(1))
    }
}

/// First failing key of a batch, in item order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskFailure {
    pub key: usize,
    pub error: Error,
}

impl From<TaskFailure> for Error {
    fn from(f: TaskFailure) -> Self {
        Error::Task {
            key: f.key,
            source: Box::new(f.error),
        }
    }
}

pub trait Executor: Sync {
    /// Worker count used for batches built by the algorithms.
    fn width(&self) -> usize;

    /// Returns `{ k → f(k) }` for every key of the batch, exactly as the
    /// sequential loop would. If any task fails, the failure with the
    /// earliest position in `batch.items` is returned and no partial result
    /// is produced.
    fn map_rows<T, F>(&self, batch: &TaskBatch, f: F) -> Result<BTreeMap<usize, T>, TaskFailure>
    where
        T: Send,
        F: Fn(usize) -> Result<T, Error> + Sync;

    fn batch(&self, items: Vec<usize>) -> TaskBatch {
        TaskBatch::new(items, self.width())
    }
}

/// Runs every task on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn width(&self) -> usize {
        1
    }

    fn map_rows<T, F>(&self, batch: &TaskBatch, f: F) -> Result<BTreeMap<usize, T>, TaskFailure>
    where
        T: Send,
        F: Fn(usize) -> Result<T, Error> + Sync,
    {
        let mut out = BTreeMap::new();
        for &key in &batch.items {
            match f(key) {
                Ok(v) => {
                    out.insert(key, v);
                }
                Err(error) => return Err(TaskFailure { key, error }),
            }
        }
        Ok(out)
    }
}
