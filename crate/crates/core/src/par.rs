//! Deterministic work distribution.
//!
//! Parallelism in this crate is only ever applied to independent jobs whose
//! results are consumed in index order, so worker counts affect wall time and
//! nothing else.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

/// Runs `job(0..count)` on up to `workers` threads and returns the results in
/// index order. With `workers <= 1` (or a single job) everything runs on the
/// calling thread.
pub(crate) fn run_ordered<T, F>(count: usize, workers: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    if workers <= 1 || count <= 1 {
        return (0..count).map(job).collect();
    }
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<T>> = (0..count).map(|_| None).collect();
    std::thread::scope(|scope| {
        let (tx, rx) = mpsc::channel();
        for _ in 0..workers.min(count) {
            let tx = tx.clone();
            let next = &next;
            let job = &job;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    return;
                }
                if tx.send((i, job(i))).is_err() {
                    return;
                }
            });
        }
        drop(tx);
        for (i, value) in rx {
            slots[i] = Some(value);
        }
    });
    slots.into_iter().map(|s| s.expect("every job produces a result")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_index_order() {
        let squares = run_ordered(100, 4, |i| i * i);
        assert_eq!(squares, (0..100).map(|i| i * i).collect::<Vec<_>>());
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let one = run_ordered(37, 1, |i| i as u64 * 3 + 1);
        let eight = run_ordered(37, 8, |i| i as u64 * 3 + 1);
        assert_eq!(one, eight);
    }
}
