//! Execution strategy for the data-parallel loops.
//!
//! With the `parallel` feature (on by default) the powerset sweeps and
//! pairwise products fan out over rayon's pool. Without it every path runs
//! sequentially. Both strategies produce bit-identical results: parallel
//! maps collect in index order and every floating-point accumulation is
//! performed sequentially afterwards.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a batch computation is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Falls back to [`Execution::Sequential`] when the `parallel` feature
    /// is disabled.
    #[default]
    Parallel,
}

impl Execution {
    /// True when this strategy will really run on multiple threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Maps `f` over `0..len`, keeping index order.
    pub(crate) fn map_range<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Maps `f` over a slice, keeping element order.
    pub(crate) fn map_slice<'a, S, T, F>(self, items: &'a [S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&'a S) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}
