//! Execution strategy for the exhaustive and sampled law sweeps.
//!
//! Every sweep is a search for the first violating case over an index range.
//! With the `parallel` feature the search runs on the rayon pool; without it,
//! or with [`Exec::Sequential`], it is a plain iterator. Both strategies
//! return the same (lowest-index) witness.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when work is actually fanned out (requires the `parallel` feature).
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Finds the lowest index in `0..count` for which `check` reports a witness.
    pub fn find_first<W, F>(self, count: usize, check: F) -> Option<W>
    where
        W: Send,
        F: Fn(usize) -> Option<W> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..count).into_par_iter().find_map_first(check);
        }
        (0..count).find_map(check)
    }

    /// Maps `0..count` through `f`, preserving order.
    pub fn map<T, F>(self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..count).into_par_iter().map(f).collect();
        }
        (0..count).map(f).collect()
    }
}
