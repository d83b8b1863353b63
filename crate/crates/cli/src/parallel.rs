//! Index-ordered parallel map over sample indices.

use std::num::NonZeroUsize;
use std::thread;

pub fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

/// Applies `f` to `0..n` on up to `workers` threads. Each thread takes one
/// contiguous block and results are concatenated in index order, so the
/// output does not depend on `workers`. Stops at the first error in index order.
pub fn map_indices<T, E, F>(n: u64, workers: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(u64) -> Result<T, E> + Sync,
{
    let workers = workers.max(1).min(n.max(1) as usize);
    if workers == 1 {
        return (0..n).map(&f).collect();
    }
    let chunk = n.div_ceil(workers as u64);
    let f = &f;
    let blocks: Vec<Result<Vec<T>, E>> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let (lo, hi) = (w * chunk, ((w + 1) * chunk).min(n));
                s.spawn(move || (lo..hi).map(f).collect::<Result<Vec<T>, E>>())
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(n as usize);
    for block in blocks {
        out.extend(block?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_independent_of_workers() {
        let serial: Vec<u64> = map_indices::<_, (), _>(1000, 1, |k| Ok(k * k)).unwrap();
        for w in [2, 3, 7, 64, 5000] {
            assert_eq!(map_indices::<_, (), _>(1000, w, |k| Ok(k * k)).unwrap(), serial);
        }
        assert!(map_indices::<u64, (), _>(0, 4, |k| Ok(k)).unwrap().is_empty());
    }

    #[test]
    fn first_error_wins() {
        let r: Result<Vec<u64>, u64> = map_indices(100, 4, |k| if k % 30 == 29 { Err(k) } else { Ok(k) });
        assert_eq!(r, Err(29));
    }
}
