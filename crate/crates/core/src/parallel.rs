//! Worker-count control.
//!
//! Parallel loops in this crate collect results in index order and reduce them
//! sequentially, so outputs do not depend on how many workers ran them.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Runs `f` on a dedicated pool of `workers` threads (`None`: machine parallelism).
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err(Error::Input("worker count must be positive".into()));
        }
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Input(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// `f(0), f(1), ..., f(count - 1)` evaluated in parallel, returned in order.
pub(crate) fn ordered_map<T: Send>(count: u64, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    (0..count).into_par_iter().map(f).collect()
}
