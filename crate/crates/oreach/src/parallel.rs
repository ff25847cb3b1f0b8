//! Quantifier elimination batches on a rayon pool. Results come back in
//! job order, so verdicts do not depend on the number of threads.

use std::collections::BTreeSet;

use oreach_core::breach::{QeExecutor, QeJob};
use oreach_core::cover::{eliminate_with, CoverError, CoverOptions, CoverResult};
use oreach_core::logic::Name;
use oreach_core::ontology::UniversalTheory;
use rayon::prelude::*;

pub struct Pool {
    pool: rayon::ThreadPool,
}

impl Pool {
    pub fn new(threads: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        Ok(Pool { pool: rayon::ThreadPoolBuilder::new().num_threads(threads).build()? })
    }
}

impl QeExecutor for Pool {
    fn run(
        &self,
        t: &UniversalTheory,
        scope: &BTreeSet<Name>,
        opts: CoverOptions,
        jobs: &[QeJob],
    ) -> Vec<Result<CoverResult, CoverError>> {
        self.pool.install(|| jobs.par_iter().map(|j| eliminate_with(t, &j.delta, &j.drop, scope, opts)).collect())
    }
}
