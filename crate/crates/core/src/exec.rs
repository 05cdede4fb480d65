//! Execution strategy for the data-parallel kernels.
//!
//! Every hot loop in the crate (character convolution, Clifford products,
//! Weyl-orbit sums, batch expansions and the self-test sweeps) goes through
//! the helpers here. With the `parallel` feature the work is spread over the
//! rayon pool; without it, or with [`Strategy::Sequential`], the same closure
//! runs on the calling thread. Both paths produce identical results because
//! every reduction used in the crate is exact and order independent.

/// How a kernel should schedule its inner loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise sequential.
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// True when this strategy will actually fan out to worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// Below this many units of work the parallel paths fall back to sequential.
pub(crate) const PAR_THRESHOLD: usize = 256;

/// Order-preserving map over a slice.
pub fn map_slice<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() && items.len() > 1 {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// Order-preserving map over `0..n`.
pub fn map_range<R, F>(strategy: Strategy, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() && n > 1 {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = strategy;
    (0..n).map(f).collect()
}

/// Map every chunk of `items` to a partial result and fold the partials with
/// `merge`. `merge` must be associative; chunk order is preserved.
pub fn fold_chunks<T, R, F, M>(
    strategy: Strategy,
    items: &[T],
    chunk: usize,
    f: F,
    merge: M,
) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&[T]) -> R + Sync + Send,
    M: Fn(R, R) -> R + Sync + Send,
{
    let chunk = chunk.max(1);
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() && items.len() > chunk {
        use rayon::prelude::*;
        return items.par_chunks(chunk).map(f).reduce_with(merge);
    }
    let _ = strategy;
    items.chunks(chunk).map(f).reduce(merge)
}
