//! A shard runner on OS threads.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use ratio_lab_core::search::{Hit, ShardRunner};

/// Runs shards on `jobs` scoped threads that pull the next shard index from a shared
/// counter. Output order is shard order, so results do not depend on `jobs`.
#[derive(Debug, Clone, Copy)]
pub struct Threaded {
    pub jobs: usize,
}

impl Threaded {
    pub fn new(jobs: usize) -> Self {
        Threaded { jobs: jobs.max(1) }
    }

    /// One job per available core.
    pub fn available() -> Self {
        Threaded::new(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
    }
}

impl ShardRunner for Threaded {
    fn run(&self, shards: usize, job: &(dyn Fn(usize) -> Vec<Hit> + Sync)) -> Vec<Vec<Hit>> {
        if self.jobs <= 1 || shards <= 1 {
            return (0..shards).map(job).collect();
        }
        let next = AtomicUsize::new(0);
        let slots: Vec<Mutex<Vec<Hit>>> = (0..shards).map(|_| Mutex::new(Vec::new())).collect();
        std::thread::scope(|s| {
            for _ in 0..self.jobs.min(shards) {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= shards {
                        break;
                    }
                    let out = job(i);
                    *slots[i].lock().expect("shard slot") = out;
                });
            }
        });
        slots.into_iter().map(|m| m.into_inner().expect("shard slot")).collect()
    }
}
