//! Multi-threaded oracle. Work is split over `X`; each worker returns its
//! hits in `Y` order and the per-`X` blocks are concatenated in `X` order,
//! so the result equals the serial one exactly.

use matdioph_core::families::SolutionPair;
use matdioph_core::mat2::all_bounded;
use matdioph_core::oracle::{enumerate_solutions, solutions_for_x, OracleResult, PowerTable};
use matdioph_core::solver::verify;
use matdioph_core::EquationSpec;
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuildError, ThreadPoolBuilder};

/// `jobs = 0` lets rayon pick the worker count.
pub fn pool(jobs: usize) -> Result<ThreadPool, ThreadPoolBuildError> {
    ThreadPoolBuilder::new().num_threads(jobs).build()
}

pub fn enumerate_par(spec: &EquationSpec, bound: u32, pool: &ThreadPool) -> OracleResult {
    let table = PowerTable::new(spec.n, bound);
    let xs = all_bounded(bound);
    let blocks: Vec<Vec<_>> = pool.install(|| {
        xs.par_iter()
            .map(|x| solutions_for_x(spec, &table, x))
            .collect()
    });
    OracleResult::from_pairs(spec.clone(), bound, blocks.into_iter().flatten().collect())
}

/// Oracle hits tagged with their family, in oracle order.
pub fn tagged(spec: &EquationSpec, bound: u32, jobs: usize) -> Result<(OracleResult, Vec<SolutionPair>), ThreadPoolBuildError> {
    if jobs == 1 {
        let res = enumerate_solutions(spec, bound);
        let pairs = res.solutions.iter().map(|(x, y)| verify(x, y, spec)).collect();
        return Ok((res, pairs));
    }
    let pool = pool(jobs)?;
    let res = enumerate_par(spec, bound, &pool);
    let pairs = pool.install(|| {
        res.solutions
            .par_iter()
            .map(|(x, y)| verify(x, y, spec))
            .collect()
    });
    Ok((res, pairs))
}
