//! Deterministic reductions and grid-parallel maps.
//!
//! Reductions accumulate fixed-size chunks sequentially and combine the
//! partial sums in chunk order, so the result is bit-identical for any
//! rayon thread count.  Maps write disjoint per-point slots and are
//! trivially deterministic.

use rayon::prelude::*;

/// Chunk length for deterministic partial sums.
const CHUNK: usize = 8192;

/// Sum `f(i)` for `i` in `0..n` with a fixed, thread-count-independent
/// association order.
pub fn indexed_sum<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let nchunks = n.div_ceil(CHUNK);
    let partials: Vec<f64> = (0..nchunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = n.min(lo + CHUNK);
            let mut s = 0.0;
            for i in lo..hi {
                s += f(i);
            }
            s
        })
        .collect();
    partials.iter().sum()
}

/// Maximum of `f(i)` over `0..n` (deterministic for max regardless of order).
pub fn indexed_max<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let nchunks = n.div_ceil(CHUNK);
    let partials: Vec<f64> = (0..nchunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = n.min(lo + CHUNK);
            let mut s = f64::NEG_INFINITY;
            for i in lo..hi {
                s = s.max(f(i));
            }
            s
        })
        .collect();
    partials.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
}

/// Fill `out`, viewed as consecutive `stride`-sized slots, by calling
/// `f(slot_index, slot)` on each slot in parallel.
pub fn fill_slots<T, F>(out: &mut [T], stride: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync,
{
    debug_assert_eq!(out.len() % stride.max(1), 0);
    if stride == 0 {
        return;
    }
    out.par_chunks_mut(stride)
        .enumerate()
        .for_each(|(i, slot)| f(i, slot));
}
