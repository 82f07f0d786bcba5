//! Run-level figures of merit (success rate, approximation ratio, feasible
//! weight) and the linear-interpolation quantiles used to aggregate them
//! across runs and instances.

use serde::{Deserialize, Serialize};

use crate::problems::ProblemInstance;
use crate::qaoa::{BuiltProblem, ConstraintMode, RunRecord};

/// 1 when any shot's problem-register part hits the optimal set, else 0.
pub fn success(run: &RunRecord, instance: &ProblemInstance) -> f64 {
    let hit = run.samples.iter().any(|s| instance.optimal_set.binary_search(&s.problem_index).is_ok());
    if hit {
        1.0
    } else {
        0.0
    }
}

/// Best sampled energy relative to the feasible optimum:
/// min_s (E_s - E0) / |E0| over the run's shots, with E_s the penalized
/// energy. `None` when E0 = 0 (constraint-only problems), where the ratio
/// is undefined.
pub fn approximation_ratio(run: &RunRecord, instance: &ProblemInstance) -> Option<f64> {
    if instance.e0 == 0.0 {
        return None;
    }
    run.samples
        .iter()
        .map(|s| (s.penalized_energy - instance.e0) / instance.e0.abs())
        .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.min(r))))
}

/// Feasible weight of the uniform initial state: the fraction of working-
/// register basis states that are feasible. In slack mode this carries the
/// extra 1/d_r factors, since only one slack level per feasible x is exact.
pub fn baseline_feasible_weight(problem: &BuiltProblem) -> f64 {
    let n_feasible = problem.feasible.iter().filter(|&&b| b).count();
    let effective_dim = match problem.ancilla_site {
        // the ancilla is pinned to 0, not in superposition
        Some(_) => problem.register.total_dim() / problem.register.dims().last().unwrap(),
        None => problem.register.total_dim(),
    };
    n_feasible as f64 / effective_dim as f64
}

/// Quantile with linear interpolation between order statistics (the common
/// statistical-library default). `q` in [0, 1].
pub fn quantile(values: &[f64], q: f64) -> Option<f64> {
    if values.is_empty() || !(0.0..=1.0).contains(&q) {
        return None;
    }
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("quantile over non-finite values"));
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    Some(sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo]))
}

pub fn median(values: &[f64]) -> Option<f64> {
    quantile(values, 0.5)
}

/// Median with a 20%-80% inter-quantile band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantileSummary {
    pub median: f64,
    pub q20: f64,
    pub q80: f64,
    pub n: usize,
}

pub fn summarize(values: &[f64]) -> Option<QuantileSummary> {
    Some(QuantileSummary {
        median: quantile(values, 0.5)?,
        q20: quantile(values, 0.2)?,
        q80: quantile(values, 0.8)?,
        n: values.len(),
    })
}

/// All per-run metrics in one record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunMetrics {
    pub mode: ConstraintMode,
    pub success: f64,
    pub approximation_ratio: Option<f64>,
    pub feasible_weight: f64,
    pub baseline: f64,
    pub final_energy: f64,
    pub n_evaluations: usize,
    pub termination_reason: String,
}

pub fn evaluate_run(
    run: &RunRecord,
    problem: &BuiltProblem,
    instance: &ProblemInstance,
) -> RunMetrics {
    RunMetrics {
        mode: problem.mode,
        success: success(run, instance),
        approximation_ratio: approximation_ratio(run, instance),
        feasible_weight: run.feasible_weight,
        baseline: baseline_feasible_weight(problem),
        final_energy: run.final_energy,
        n_evaluations: run.n_evaluations,
        termination_reason: run.termination_reason.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{gen_constraint_only, gen_random_spin};
    use crate::qaoa::{BuiltProblem, ConstraintMode, SampleRecord};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fake_run(samples: Vec<SampleRecord>) -> RunRecord {
        RunRecord {
            seed: 0,
            params: vec![],
            final_energy: 0.0,
            penalized_minimum: 0.0,
            n_evaluations: 0,
            converged: true,
            termination_reason: "ftol".into(),
            samples,
            feasible_weight: 0.0,
        }
    }

    fn sample(problem_index: usize, penalized_energy: f64) -> SampleRecord {
        SampleRecord { index: problem_index, problem_index, penalized_energy, cost_energy: 0.0 }
    }

    #[test]
    fn quantiles_match_the_interpolating_definition() {
        let values: Vec<f64> = (1..=100).map(|v| v as f64).collect();
        assert_abs_diff_eq!(quantile(&values, 0.5).unwrap(), 50.5, epsilon = 1e-12);
        assert_abs_diff_eq!(quantile(&values, 0.2).unwrap(), 20.8, epsilon = 1e-12);
        assert_abs_diff_eq!(quantile(&values, 0.8).unwrap(), 80.2, epsilon = 1e-12);
        assert_eq!(quantile(&values, 0.0), Some(1.0));
        assert_eq!(quantile(&values, 1.0), Some(100.0));
        assert_eq!(median(&[3.0]), Some(3.0));
        assert_eq!(median(&[1.0, 2.0]), Some(1.5));
        assert_eq!(median(&[]), None);
    }

    #[test]
    fn success_checks_problem_digits_against_the_optimal_set() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let inst = gen_random_spin(6, -1.0, 1, 4.0, &mut rng).unwrap();
        let k_opt = inst.optimal_set[0];
        let k_bad = (0..64).find(|k| !inst.optimal_set.contains(k)).unwrap();
        let hit = fake_run(vec![sample(k_bad, 0.0), sample(k_opt, 0.0)]);
        let miss = fake_run(vec![sample(k_bad, 0.0)]);
        assert_eq!(success(&hit, &inst), 1.0);
        assert_eq!(success(&miss, &inst), 0.0);
    }

    #[test]
    fn approximation_ratio_takes_the_best_shot() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let inst = gen_random_spin(6, -1.0, 1, 4.0, &mut rng).unwrap();
        let e0 = inst.e0;
        assert!(e0 < 0.0);
        let run = fake_run(vec![sample(0, e0 + 2.0), sample(1, e0 + 0.5), sample(2, e0 + 8.0)]);
        let r = approximation_ratio(&run, &inst).unwrap();
        assert_abs_diff_eq!(r, 0.5 / e0.abs(), epsilon = 1e-12);
    }

    #[test]
    fn approximation_ratio_undefined_at_zero_optimum() {
        let inst = gen_constraint_only(6, -1.0, 1, 4.0).unwrap();
        let run = fake_run(vec![sample(0, 1.0)]);
        assert_eq!(approximation_ratio(&run, &inst), None);
    }

    #[test]
    fn baselines_per_mode() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let inst = gen_random_spin(6, -1.0, 1, 4.0, &mut rng).unwrap();
        let n_feasible = inst.feasible_mask.iter().filter(|&&b| b).count() as f64;

        let direct = BuiltProblem::build(&inst, ConstraintMode::DirectPenalty { a: 1 }).unwrap();
        assert_abs_diff_eq!(baseline_feasible_weight(&direct), n_feasible / 64.0, epsilon = 1e-15);

        // slack dim 3: only one of the 3 slack levels matches each feasible x
        let slack = BuiltProblem::build(&inst, ConstraintMode::Slack).unwrap();
        assert_abs_diff_eq!(
            baseline_feasible_weight(&slack),
            n_feasible / (64.0 * 3.0),
            epsilon = 1e-15
        );

        // circuit mode: the pinned ancilla contributes no dilution
        let circ = BuiltProblem::build(&inst, ConstraintMode::CircuitPenalty { a: 1 }).unwrap();
        assert_abs_diff_eq!(baseline_feasible_weight(&circ), n_feasible / 64.0, epsilon = 1e-15);
    }

    #[test]
    fn uniform_state_weight_equals_baseline() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let inst = gen_random_spin(6, -1.0, 1, 4.0, &mut rng).unwrap();
        for mode in [
            ConstraintMode::DirectPenalty { a: 1 },
            ConstraintMode::Slack,
            ConstraintMode::CircuitPenalty { a: 1 },
        ] {
            let built = BuiltProblem::build(&inst, mode).unwrap();
            let init = built.initial_state();
            let w: f64 = built
                .feasible
                .iter()
                .enumerate()
                .filter(|&(_, &ok)| ok)
                .map(|(k, _)| init.probability(k))
                .sum();
            assert_abs_diff_eq!(w, baseline_feasible_weight(&built), epsilon = 1e-13);
        }
    }
}
