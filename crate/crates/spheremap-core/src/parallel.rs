//! Data-parallel helpers. Work is always split by index with
//! per-index determinism (randomized callers derive per-index seeds), so
//! the parallel and sequential builds produce identical results.

#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T + Sync + Send,
    T: Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T + Sync + Send,
    T: Send,
{
    (0..count).map(f).collect()
}

/// Caps the worker pool. A no-op after the pool has started (first use
/// wins) and in sequential builds, so callers may invoke it freely.
#[cfg(feature = "parallel")]
pub fn configure_threads(threads: usize) {
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
}

#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_threads: usize) {}
