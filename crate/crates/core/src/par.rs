//! Thin switch between rayon and plain iterators.
//!
//! Every helper returns results in index order, so callers see the same
//! output with or without the `parallel` feature.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps every index in `0..len` to a batch and concatenates the batches in
/// index order.
pub(crate) fn flat_map_indices<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        let batches: Vec<Vec<T>> = (0..len).into_par_iter().map(f).collect();
        concat(batches)
    }
    #[cfg(not(feature = "parallel"))]
    {
        concat((0..len).map(f).collect())
    }
}

/// Folds `0..len` into accumulators and merges them.
///
/// `reduce` must be associative and `init` must produce its identity; the
/// accumulator may carry per-worker scratch space.
pub(crate) fn fold_indices<A, I, F, R>(len: usize, init: I, fold: F, reduce: R) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, usize) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len)
            .into_par_iter()
            .fold(&init, &fold)
            .reduce(&init, &reduce)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = &reduce;
        (0..len).fold(init(), fold)
    }
}

pub(crate) fn sort_unstable_by<T, F>(items: &mut [T], cmp: F)
where
    T: Send,
    F: Fn(&T, &T) -> std::cmp::Ordering + Sync,
{
    #[cfg(feature = "parallel")]
    {
        items.par_sort_unstable_by(cmp)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.sort_unstable_by(cmp)
    }
}

pub(crate) fn sort_unstable<T: Ord + Send>(items: &mut [T]) {
    #[cfg(feature = "parallel")]
    {
        items.par_sort_unstable()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.sort_unstable()
    }
}

fn concat<T>(batches: Vec<Vec<T>>) -> Vec<T> {
    let total = batches.iter().map(Vec::len).sum();
    let mut out = Vec::with_capacity(total);
    for mut b in batches {
        out.append(&mut b);
    }
    out
}
