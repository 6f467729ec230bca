//! Minimum distance with the projective enumeration split across threads.

use std::num::NonZeroUsize;
use std::thread;

use sumrank_core::{LinearCode, Metric, Result};

/// Chunks per thread; smaller chunks balance uneven early exits.
const CHUNKS_PER_THREAD: u128 = 4;

/// Default worker count: the available parallelism.
pub fn default_threads() -> usize {
    thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

/// Exact minimum distance; the result does not depend on `threads`.
pub fn min_distance(
    code: &LinearCode,
    metric: Metric,
    budget: u64,
    threads: usize,
) -> Result<usize> {
    if let Some(d) = code.distance_precheck(metric, budget)? {
        return Ok(d);
    }
    let total = code.projective_count();
    let threads = threads.max(1) as u128;
    if threads == 1 || total < 1024 {
        return Ok(code
            .min_weight_in_range(metric, 0, total)
            .expect("nonzero code has codewords"));
    }
    let chunks = (threads * CHUNKS_PER_THREAD).min(total);
    let bounds: Vec<(u128, u128)> = (0..chunks)
        .map(|i| (total * i / chunks, total * (i + 1) / chunks))
        .collect();
    let per_thread: Vec<Vec<(u128, u128)>> = (0..threads)
        .map(|w| {
            bounds
                .iter()
                .copied()
                .skip(w as usize)
                .step_by(threads as usize)
                .collect()
        })
        .collect();
    let best = thread::scope(|s| {
        let handles: Vec<_> = per_thread
            .iter()
            .map(|ranges| {
                s.spawn(move || {
                    ranges
                        .iter()
                        .filter_map(|&(a, b)| code.min_weight_in_range(metric, a, b))
                        .min()
                })
            })
            .collect();
        handles
            .into_iter()
            .filter_map(|h| h.join().expect("worker panicked"))
            .min()
    });
    Ok(best.expect("nonzero code has codewords"))
}
