//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers dispatch to rayon; without it (or
//! when the caller passes `Parallelism::Sequential`) they run on the calling
//! thread. Results are always returned in input order, so reductions over the
//! returned vectors are deterministic either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether the crate was built with rayon support.
pub const ENABLED: bool = cfg!(feature = "parallel");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    pub fn from_flag(parallel: bool) -> Self {
        if parallel {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }

    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        ENABLED && self == Parallelism::Parallel
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(items: &[T], mode: Parallelism, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Maps `f` over `0..n`, preserving order.
pub fn map_range<R, F>(n: usize, mode: Parallelism, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = mode;
    (0..n).map(f).collect()
}

/// Runs `f` inside a pool of `jobs` worker threads (or directly when rayon is
/// unavailable or `jobs` is `None`).
pub fn with_jobs<R, F>(jobs: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            return pool.install(f);
        }
    }
    let _ = jobs;
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..1000).collect();
        let par = map(&xs, Parallelism::Parallel, |x| x * x);
        let seq = map(&xs, Parallelism::Sequential, |x| x * x);
        assert_eq!(par, seq);
        assert_eq!(map_range(5, Parallelism::Parallel, |i| i + 1), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn jobs_pool_runs_closure() {
        assert_eq!(with_jobs(Some(2), || 41 + 1), 42);
        assert_eq!(with_jobs(None, || 7), 7);
    }
}
