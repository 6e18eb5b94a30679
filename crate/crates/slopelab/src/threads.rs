//! Worker-count control and an order-preserving parallel map.

use std::env;
use std::num::NonZeroUsize;
use std::thread;

/// Maximum number of worker threads, from `SLOPELAB_THREADS` when set
/// (values below one are treated as one), otherwise the machine's
/// available parallelism capped at eight.
pub fn thread_cap() -> usize {
    if let Ok(text) = env::var("SLOPELAB_THREADS") {
        if let Ok(n) = text.trim().parse::<usize>() {
            return n.max(1);
        }
    }
    thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1)
        .min(8)
}

/// Applies `f` to every item on up to [`thread_cap`] workers, returning
/// results in input order. Falls back to a sequential pass for small
/// inputs, so output never depends on the worker count.
pub fn ordered_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = thread_cap().min(items.len().max(1));
    if workers <= 1 || items.len() < 32 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let mut out: Vec<Option<R>> = Vec::with_capacity(items.len());
    out.resize_with(items.len(), || None);
    thread::scope(|scope| {
        let mut rest = out.as_mut_slice();
        for piece in items.chunks(chunk) {
            let (head, tail) = rest.split_at_mut(piece.len());
            rest = tail;
            let f = &f;
            scope.spawn(move || {
                for (slot, item) in head.iter_mut().zip(piece) {
                    *slot = Some(f(item));
                }
            });
        }
    });
    out.into_iter().map(|r| r.expect("worker filled slot")).collect()
}
