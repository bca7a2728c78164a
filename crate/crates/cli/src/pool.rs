//! Threaded executor.
//!
//! Work units are contiguous ranges of the batch. Workers pull units from a
//! shared counter and keep results keyed by row, so the merged map is the
//! same for every width.

use std::collections::BTreeMap;
use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use redund_core::exec::{Executor, TaskBatch, TaskFailure};
use redund_core::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThreadPool {
    width: usize,
}

impl ThreadPool {
    pub fn new(width: usize) -> Self {
        ThreadPool {
            width: width.max(1),
        }
    }

    /// One worker per logical core.
    pub fn from_machine() -> Self {
        Self::new(available_cores())
    }

    /// `requested` workers, or one per logical core if `None`.
    pub fn with_cap(requested: Option<usize>) -> Self {
        match requested {
            Some(n) => Self::new(n),
            None => Self::from_machine(),
        }
    }
}

pub fn available_cores() -> usize {
    thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1)
}

impl Executor for ThreadPool {
    fn width(&self) -> usize {
        self.width
    }

    fn map_rows<T, F>(&self, batch: &TaskBatch, f: F) -> Result<BTreeMap<usize, T>, TaskFailure>
    where
        T: Send,
        F: Fn(usize) -> Result<T, Error> + Sync,
    {
        let units: Vec<(usize, &[usize])> = batch
            .items
            .chunks(batch.chunking.max(1))
            .scan(0, |pos, u| {
                let start = *pos;
                *pos += u.len();
                Some((start, u))
            })
            .collect();
        let workers = batch.width.max(1).min(units.len());
        if workers <= 1 {
            return redund_core::Sequential.map_rows(batch, f);
        }
        let next = AtomicUsize::new(0);
        // Position in `items` of the earliest failure seen so far. Units that
        // start after it are skipped.
        let failed_at = AtomicUsize::new(usize::MAX);
        let f = &f;
        // (position in items, key, result) per worker.
        type Part<T> = Vec<(usize, usize, Result<T, Error>)>;
        let parts: Vec<Part<T>> = thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|_| {
                    s.spawn(|| {
                        let mut out = Vec::new();
                        loop {
                            let u = next.fetch_add(1, Ordering::Relaxed);
                            let Some(&(start, keys)) = units.get(u) else {
                                break;
                            };
                            if start > failed_at.load(Ordering::Relaxed) {
                                continue;
                            }
                            for (off, &key) in keys.iter().enumerate() {
                                let r = f(key);
                                let failed = r.is_err();
                                out.push((start + off, key, r));
                                if failed {
                                    failed_at.fetch_min(start + off, Ordering::Relaxed);
                                    break;
                                }
                            }
                        }
                        out
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });

        let mut first_err: Option<(usize, usize, Error)> = None;
        let mut out = BTreeMap::new();
        for (pos, key, r) in parts.into_iter().flatten() {
            match r {
                Ok(v) => {
                    out.insert(key, v);
                }
                Err(e) => {
                    if first_err.as_ref().map_or(true, |(p, _, _)| pos < *p) {
                        first_err = Some((pos, key, e));
                    }
                }
            }
        }
        match first_err {
            Some((_, key, error)) => Err(TaskFailure { key, error }),
            None => Ok(out),
        }
    }
}
