//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) work is spread over the rayon
//! global pool; without it, or with [`Execution::Sequential`], the same
//! closures run on the calling thread. Reductions must be associative and
//! commutative so both paths return identical results.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}

/// Maps every index of `range` and folds the results with `reduce`.
pub fn map_reduce<T, M, R>(range: Range<usize>, exec: Execution, map: M, reduce: R) -> Option<T>
where
    T: Send,
    M: Fn(usize) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => range.into_par_iter().map(map).reduce_with(reduce),
        _ => range.map(map).reduce(reduce),
    }
}

/// Order-preserving map over a slice.
pub fn map_slice<I, T, F>(items: &[I], exec: Execution, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        let seq = map_reduce(0..1000, Execution::Sequential, |i| i * i, |a, b| a + b);
        let par = map_reduce(0..1000, Execution::Parallel, |i| i * i, |a, b| a + b);
        assert_eq!(seq, par);
        assert_eq!(
            map_reduce(0..0, Execution::Parallel, |i| i, |a, b| a + b),
            None
        );

        let xs: Vec<u32> = (0..100).collect();
        assert_eq!(
            map_slice(&xs, Execution::Parallel, |x| x + 1),
            map_slice(&xs, Execution::Sequential, |x| x + 1)
        );
    }
}
