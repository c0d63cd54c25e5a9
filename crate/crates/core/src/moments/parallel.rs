//! Deterministic chunked map: the work range is cut into fixed-size chunks,
//! workers claim chunks from an atomic counter, and the per-chunk results
//! are returned in chunk order. The chunk size never depends on the thread
//! count, and every chunk is processed sequentially inside, so the combined
//! result is bit-identical for any number of threads.

use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub fn run_chunked<T, F>(total: usize, chunk_size: usize, threads: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> T + Sync,
{
    assert!(chunk_size > 0);
    let n_chunks = total.div_ceil(chunk_size);
    let chunk_range = |c: usize| (c * chunk_size)..((c + 1) * chunk_size).min(total);
    if threads <= 1 || n_chunks <= 1 {
        return (0..n_chunks).map(|c| work(chunk_range(c))).collect();
    }
    let results: Mutex<Vec<Option<T>>> = Mutex::new((0..n_chunks).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads.min(n_chunks) {
            scope.spawn(|| loop {
                let c = next.fetch_add(1, Ordering::Relaxed);
                if c >= n_chunks {
                    break;
                }
                let value = work(chunk_range(c));
                results.lock().unwrap()[c] = Some(value);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|v| v.expect("every chunk completed"))
        .collect()
}
