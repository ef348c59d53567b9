//! Instance-indexed execution. Checks are embarrassingly parallel: each
//! instance id maps to an independent record batch, and results come back in
//! id order regardless of schedule.

use crate::Result;

#[cfg(feature = "parallel")]
pub fn configure_pool() {
    use std::sync::Once;
    static INIT: Once = Once::new();
    INIT.call_once(|| {
        if let Ok(threads) = std::env::var("ABX_THREADS") {
            if let Ok(n) = threads.parse::<usize>() {
                if n >= 1 {
                    // a failed build means a pool already exists, which is fine
                    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
                }
            }
        }
    });
}

#[cfg(not(feature = "parallel"))]
pub fn configure_pool() {}

/// Map `f` over `0..count`, in parallel when the feature allows it.
#[cfg(feature = "parallel")]
pub fn run_indexed<T, F>(count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    use rayon::prelude::*;
    configure_pool();
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn run_indexed<T, F>(count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    run_indexed_sequential(count, f)
}

/// The single-threaded reference schedule the parallel path must match.
pub fn run_indexed_sequential<T, F>(count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    (0..count).map(f).collect()
}
