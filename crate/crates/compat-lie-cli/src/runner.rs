//! Threaded execution of classification orbit jobs.
//!
//! Jobs are independent (pure functions of their inputs); workers pull from a
//! shared queue and results are re-sorted by job index afterwards, so the
//! output is identical to a sequential run regardless of scheduling.

use std::sync::Mutex;

use compat_lie::classify::{run_orbit_job, JobRunner, OrbitJob, OrbitJobResult};
use compat_lie::error::{Error, Result};

pub struct ThreadedRunner {
    pub workers: usize,
}

impl ThreadedRunner {
    pub fn new(workers: usize) -> ThreadedRunner {
        ThreadedRunner { workers: workers.max(1) }
    }
}

impl JobRunner for ThreadedRunner {
    fn run(&mut self, jobs: Vec<OrbitJob>) -> Result<Vec<OrbitJobResult>> {
        if self.workers == 1 || jobs.len() <= 1 {
            return jobs.iter().map(run_orbit_job).collect();
        }
        let queue = Mutex::new(jobs);
        let results: Mutex<Vec<Result<OrbitJobResult>>> = Mutex::new(Vec::new());
        std::thread::scope(|scope| {
            for _ in 0..self.workers {
                scope.spawn(|| loop {
                    let job = {
                        let mut q = queue.lock().expect("queue lock");
                        q.pop()
                    };
                    let Some(job) = job else { break };
                    let result = run_orbit_job(&job);
                    results.lock().expect("results lock").push(result);
                });
            }
        });
        let mut collected = results
            .into_inner()
            .map_err(|_| Error::Diagnostic("worker poisoned the results lock".into()))?
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        collected.sort_by_key(|r| r.index);
        Ok(collected)
    }
}
