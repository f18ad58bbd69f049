//! Data-parallel helpers with a sequential fallback.
//!
//! Results always come back in input order, so output does not depend on the
//! number of workers. Without the `parallel` feature everything runs on the
//! calling thread.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Execution {
    #[cfg_attr(feature = "parallel", default)]
    Parallel,
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
}

impl Execution {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, U, F>(items: &[T], exec: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Runs `f` inside a pool of `threads` workers (all cores when `None`).
///
/// Falls back to the global pool if a dedicated one cannot be built.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if let Some(n) = threads {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
            {
                return pool.install(f);
            }
        }
    }
    let _ = threads;
    f()
}

/// Number of workers a `None` thread count resolves to.
pub fn default_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map(&xs, Execution::Parallel, |x| x * x);
        let b = map(&xs, Execution::Sequential, |x| x * x);
        assert_eq!(a, b);
        let c = with_threads(Some(3), || map(&xs, Execution::Parallel, |x| x * x));
        assert_eq!(a, c);
    }
}
