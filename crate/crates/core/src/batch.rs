//! Batched execution of independent QAOA runs, in parallel (rayon) or
//! sequentially, plus the deterministic seed fan-out shared by both.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;
use crate::qaoa::{run_single, BuiltProblem, QaoaConfig, RunRecord};

/// SplitMix64-style finalizer. Written out by hand so derived seeds stay
/// stable across library and compiler versions.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent stream seed from a master seed and a path of
/// indices (e.g. [instance], or [instance, run]).
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    let mut s = splitmix64(master);
    for &p in path {
        s = splitmix64(s ^ splitmix64(p.wrapping_add(0xa076_1d64_78bd_642f)));
    }
    s
}

/// One unit of work: a compiled problem, a config and a run seed.
pub struct RunTask<'a> {
    pub problem: &'a BuiltProblem,
    pub config: &'a QaoaConfig,
    pub seed: u64,
}

/// Executes every task in order on the current thread.
pub fn run_batch_sequential(tasks: &[RunTask<'_>]) -> Result<Vec<RunRecord>> {
    tasks.iter().map(|t| run_single(t.problem, t.config, t.seed)).collect()
}

/// Executes the tasks across the rayon thread pool. Output order matches
/// input order, so results are identical to the sequential runner.
#[cfg(feature = "parallel")]
pub fn run_batch(tasks: &[RunTask<'_>]) -> Result<Vec<RunRecord>> {
    tasks.par_iter().map(|t| run_single(t.problem, t.config, t.seed)).collect()
}

/// Sequential fallback under `--no-default-features`.
#[cfg(not(feature = "parallel"))]
pub fn run_batch(tasks: &[RunTask<'_>]) -> Result<Vec<RunRecord>> {
    run_batch_sequential(tasks)
}

fn run_timed(t: &RunTask<'_>) -> Result<(RunRecord, f64)> {
    let start = std::time::Instant::now();
    let rec = run_single(t.problem, t.config, t.seed)?;
    Ok((rec, start.elapsed().as_secs_f64()))
}

/// [`run_batch`] with per-run wall time in seconds. The timing is the only
/// nondeterministic output.
#[cfg(feature = "parallel")]
pub fn run_batch_timed(tasks: &[RunTask<'_>]) -> Result<Vec<(RunRecord, f64)>> {
    tasks.par_iter().map(run_timed).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn run_batch_timed(tasks: &[RunTask<'_>]) -> Result<Vec<(RunRecord, f64)>> {
    tasks.iter().map(run_timed).collect()
}
