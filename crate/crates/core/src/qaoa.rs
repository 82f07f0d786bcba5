//! Variational engine: builds a problem in one of the three constraint
//! encodings (direct diagonal penalty, slack qudits, or the ancilla-qudit
//! circuit realization of the direct penalty), applies the alternating
//! ansatz, and optimizes the angles with Powell's method.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ancilla::{apply_hamming_phase_scaled, HammingPhasePlan};
use crate::error::{Error, Result};
use crate::hamiltonians::{
    build_penalized_diagonal, extend_with_slack, feasible_mask, penalty_value,
    DiagonalHamiltonian, SlackExtension,
};
use crate::operators::{apply_mixer_layer, MixerSpec};
use crate::optimizer::{minimize_powell, OptimizerConfig};
use crate::problems::ProblemInstance;
use crate::register::{MixedRegister, StateVector};

/// How inequality constraints enter the cost Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ConstraintMode {
    /// H_C plus lambda * g(P) added directly to the diagonal; g(y) = y^a
    /// for y > 0 and 0 otherwise.
    DirectPenalty { a: u8 },
    /// One slack qudit per constraint and a quadratic equality penalty
    /// lambda * (P + s)^2.
    Slack,
    /// Same penalized diagonal as `DirectPenalty`, but each layer's penalty
    /// phase is realized as a SUM-gate circuit onto a shared ancilla qudit.
    CircuitPenalty { a: u8 },
}

impl ConstraintMode {
    /// Short label used in result tables: "a0", "a1", "a2", "slack",
    /// "circuit_a1", ...
    pub fn label(&self) -> String {
        match self {
            ConstraintMode::DirectPenalty { a } => format!("a{a}"),
            ConstraintMode::Slack => "slack".into(),
            ConstraintMode::CircuitPenalty { a } => format!("circuit_a{a}"),
        }
    }
}

/// Order of the two operations inside one ansatz layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayerOrder {
    /// Cost phase first, then the mixer (the conventional order; with the
    /// opposite order a depth-1 all-qubit ansatz has a constant objective,
    /// because the uniform state is an eigenstate of the x mixer).
    #[default]
    CostFirst,
    MixerFirst,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QaoaConfig {
    /// Circuit depth p.
    pub layers: usize,
    pub mode: ConstraintMode,
    /// Samples drawn from the final state.
    pub shots: usize,
    #[serde(default)]
    pub layer_order: LayerOrder,
    /// Overrides the depth-derived Powell defaults when set.
    #[serde(default)]
    pub optimizer: Option<OptimizerConfig>,
}

impl QaoaConfig {
    pub fn new(layers: usize, mode: ConstraintMode, shots: usize) -> Self {
        Self { layers, mode, shots, layer_order: LayerOrder::default(), optimizer: None }
    }
}

/// A benchmark instance compiled for one constraint mode: the (possibly
/// extended) register, the diagonals driving the phases and the objective,
/// the mixer assignment and, in circuit mode, the ancilla phase plans.
#[derive(Debug, Clone)]
pub struct BuiltProblem {
    pub mode: ConstraintMode,
    /// Working register, including slack qudits or the ancilla.
    pub register: MixedRegister,
    /// Objective diagonal (cost plus penalties) on the working register.
    pub penalized: DiagonalHamiltonian,
    /// Bare cost replicated onto the working register.
    pub cost: DiagonalHamiltonian,
    /// Diagonal exponentiated in each layer's phase step. Matches
    /// `penalized` except in circuit mode, where the penalties are applied
    /// by `plans` instead.
    phase_diag: DiagonalHamiltonian,
    /// Per-index feasibility on the working register.
    pub feasible: Vec<bool>,
    pub mixer: MixerSpec,
    /// One SUM-gate phase plan per constraint (circuit mode only).
    pub plans: Vec<HammingPhasePlan>,
    pub slack: Option<SlackExtension>,
    pub ancilla_site: Option<usize>,
}

impl BuiltProblem {
    pub fn build(instance: &ProblemInstance, mode: ConstraintMode) -> Result<Self> {
        match mode {
            ConstraintMode::DirectPenalty { a } => Self::build_direct(instance, a),
            ConstraintMode::Slack => Self::build_slack(instance),
            ConstraintMode::CircuitPenalty { a } => Self::build_circuit(instance, a),
        }
    }

    fn build_direct(instance: &ProblemInstance, a: u8) -> Result<Self> {
        let constraints: Vec<_> = instance
            .constraints
            .iter()
            .map(|c| c.with_exponent(a))
            .collect::<Result<_>>()?;
        let penalized = build_penalized_diagonal(&instance.cost, &constraints)?;
        let feasible = feasible_mask(&instance.register, &constraints, None);
        let mixer = MixerSpec::standard(&instance.register)?;
        Ok(Self {
            mode: ConstraintMode::DirectPenalty { a },
            register: instance.register.clone(),
            phase_diag: penalized.clone(),
            penalized,
            cost: instance.cost.clone(),
            feasible,
            mixer,
            plans: Vec::new(),
            slack: None,
            ancilla_site: None,
        })
    }

    fn build_slack(instance: &ProblemInstance) -> Result<Self> {
        let (ext, penalized) = extend_with_slack(&instance.cost, &instance.constraints)?;
        let register = ext.extended_register().clone();
        let cost_values: Vec<f64> = (0..register.total_dim())
            .map(|k| instance.cost.values()[ext.problem_index(k)])
            .collect();
        let cost = DiagonalHamiltonian::new(&register, cost_values)?;
        let feasible = feasible_mask(&register, &instance.constraints, Some(&ext));
        let mixer = MixerSpec::standard(&register)?;
        Ok(Self {
            mode: ConstraintMode::Slack,
            register,
            phase_diag: penalized.clone(),
            penalized,
            cost,
            feasible,
            mixer,
            plans: Vec::new(),
            slack: Some(ext),
            ancilla_site: None,
        })
    }

    fn build_circuit(instance: &ProblemInstance, a: u8) -> Result<Self> {
        let constraints: Vec<_> = instance
            .constraints
            .iter()
            .map(|c| c.with_exponent(a))
            .collect::<Result<_>>()?;
        let n_summed_max = constraints
            .iter()
            .map(|c| c.site_set().len())
            .max()
            .ok_or_else(|| Error::InvalidProblem("circuit mode needs at least one constraint".into()))?;
        let ancilla_dim = n_summed_max + 1;
        let register = instance.register.extended(&[ancilla_dim])?;
        let ancilla_site = register.n_sites() - 1;

        let mut plans = Vec::with_capacity(constraints.len());
        for cons in &constraints {
            let negated: Vec<usize> = cons.negated_sites().to_vec();
            let plain: Vec<usize> =
                cons.site_set().iter().copied().filter(|s| !negated.contains(s)).collect();
            let g_table: Vec<f64> = cons
                .p_of_weight()
                .iter()
                .map(|&p| cons.lambda() * penalty_value(p, a))
                .collect();
            plans.push(HammingPhasePlan::new(
                register.dims(),
                plain,
                negated,
                ancilla_site,
                g_table,
            )?);
        }

        // ancilla stride is 1, so extended index = x * d_a + ancilla digit
        let pen_small = build_penalized_diagonal(&instance.cost, &constraints)?;
        let penalized = DiagonalHamiltonian::new(
            &register,
            (0..register.total_dim()).map(|k| pen_small.values()[k / ancilla_dim]).collect(),
        )?;
        let cost = DiagonalHamiltonian::new(
            &register,
            (0..register.total_dim())
                .map(|k| instance.cost.values()[k / ancilla_dim])
                .collect(),
        )?;
        let phase_diag = cost.clone();
        let mask_small = feasible_mask(&instance.register, &constraints, None);
        let feasible: Vec<bool> = (0..register.total_dim())
            .map(|k| k % ancilla_dim == 0 && mask_small[k / ancilla_dim])
            .collect();
        let mixer = MixerSpec::standard_excluding(&register, ancilla_site)?;
        Ok(Self {
            mode: ConstraintMode::CircuitPenalty { a },
            register,
            penalized,
            cost,
            phase_diag,
            feasible,
            mixer,
            plans,
            slack: None,
            ancilla_site: Some(ancilla_site),
        })
    }

    /// Number of variational parameters per layer: alpha and beta, plus
    /// gamma when any site uses the squeezed qudit mixer.
    pub fn params_per_layer(&self) -> usize {
        if self.mixer.has_squeezing() {
            3
        } else {
            2
        }
    }

    /// Strips slack or ancilla digits from a working-register basis index.
    pub fn problem_index(&self, index: usize) -> usize {
        if let Some(ext) = &self.slack {
            return ext.problem_index(index);
        }
        if self.ancilla_site.is_some() {
            let d_a = *self.register.dims().last().unwrap();
            return index / d_a;
        }
        index
    }

    /// Initial state: uniform over the problem (and slack) digits; the
    /// ancilla, when present, is pinned to level 0.
    pub fn initial_state(&self) -> StateVector {
        match self.ancilla_site {
            None => StateVector::uniform(&self.register),
            Some(_) => {
                let d_a = *self.register.dims().last().unwrap();
                let total = self.register.total_dim();
                let amp = Complex64::new(1.0 / ((total / d_a) as f64).sqrt(), 0.0);
                let amps = (0..total)
                    .map(|k| if k % d_a == 0 { amp } else { Complex64::new(0.0, 0.0) })
                    .collect();
                StateVector::from_amplitudes(&self.register, amps).expect("normalized by construction")
            }
        }
    }

    fn apply_cost_phase(&self, state: &mut StateVector, alpha: f64) -> Result<()> {
        state.apply_diagonal_phase(self.phase_diag.values(), alpha)?;
        for plan in &self.plans {
            apply_hamming_phase_scaled(state, plan, alpha)?;
        }
        Ok(())
    }
}

/// <state| diag |state> for a diagonal operator.
pub fn energy(state: &StateVector, diag: &DiagonalHamiltonian) -> f64 {
    state
        .amplitudes()
        .iter()
        .zip(diag.values())
        .map(|(a, &v)| a.norm_sqr() * v)
        .sum()
}

/// Applies the full depth-p ansatz to the problem's initial state. `params`
/// holds, per layer, (alpha, beta) or (alpha, beta, gamma).
pub fn apply_ansatz(
    problem: &BuiltProblem,
    layers: usize,
    layer_order: LayerOrder,
    params: &[f64],
) -> Result<StateVector> {
    let ppl = problem.params_per_layer();
    if params.len() != ppl * layers {
        return Err(Error::InvalidConfig(format!(
            "{} parameters for {layers} layers of {ppl}",
            params.len()
        )));
    }
    let mut state = problem.initial_state();
    for l in 0..layers {
        let alpha = params[l * ppl];
        let beta = params[l * ppl + 1];
        let gamma = if ppl == 3 { params[l * ppl + 2] } else { 0.0 };
        match layer_order {
            LayerOrder::CostFirst => {
                problem.apply_cost_phase(&mut state, alpha)?;
                apply_mixer_layer(&mut state, &problem.mixer, beta, gamma)?;
            }
            LayerOrder::MixerFirst => {
                apply_mixer_layer(&mut state, &problem.mixer, beta, gamma)?;
                problem.apply_cost_phase(&mut state, alpha)?;
            }
        }
    }
    Ok(state)
}

/// One sampled shot, with its energies under the penalized and bare cost
/// diagonals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    /// Basis index on the working register.
    pub index: usize,
    /// Same shot with slack/ancilla digits stripped.
    pub problem_index: usize,
    pub penalized_energy: f64,
    pub cost_energy: f64,
}

/// Outcome of one optimized QAOA run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub params: Vec<f64>,
    /// Objective value at the optimized angles.
    pub final_energy: f64,
    /// Minimum of the penalized diagonal; `final_energy` can never sit
    /// below it (variational bound).
    pub penalized_minimum: f64,
    pub n_evaluations: usize,
    pub converged: bool,
    pub termination_reason: String,
    pub samples: Vec<SampleRecord>,
    /// Total probability weight on feasible basis states in the final state.
    pub feasible_weight: f64,
}

/// Optimizes the angles from a uniform-random start in [0, 2 pi)^n, then
/// samples the optimized state. All randomness comes from one ChaCha stream
/// seeded with `seed`.
pub fn run_single(problem: &BuiltProblem, config: &QaoaConfig, seed: u64) -> Result<RunRecord> {
    if config.layers == 0 {
        return Err(Error::InvalidConfig("depth must be at least 1".into()));
    }
    let n = problem.params_per_layer() * config.layers;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();

    let mut objective = |params: &[f64]| -> f64 {
        match apply_ansatz(problem, config.layers, config.layer_order, params) {
            Ok(state) => energy(&state, &problem.penalized),
            Err(_) => f64::NAN,
        }
    };
    let opt_config = config.optimizer.clone().unwrap_or_else(|| OptimizerConfig::default_for(n));
    let result = minimize_powell(&mut objective, &x0, &opt_config)?;

    let state = apply_ansatz(problem, config.layers, config.layer_order, &result.x_best)?;
    let final_energy = energy(&state, &problem.penalized);
    let penalized_minimum = problem.penalized.min_value();
    debug_assert!(final_energy >= penalized_minimum - 1e-9);

    let feasible_weight: f64 = problem
        .feasible
        .iter()
        .enumerate()
        .filter(|&(_, &ok)| ok)
        .map(|(k, _)| state.probability(k))
        .sum();

    let samples = state
        .sample(config.shots, &mut rng)?
        .into_iter()
        .map(|k| SampleRecord {
            index: k,
            problem_index: problem.problem_index(k),
            penalized_energy: problem.penalized.values()[k],
            cost_energy: problem.cost.values()[k],
        })
        .collect();

    Ok(RunRecord {
        seed,
        params: result.x_best,
        final_energy,
        penalized_minimum,
        n_evaluations: result.n_evaluations,
        converged: result.converged,
        termination_reason: result.termination_reason.as_str().into(),
        samples,
        feasible_weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{gen_constraint_only, gen_ev_problem, gen_random_spin};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spin_instance(m0: f64) -> ProblemInstance {
        let mut rng = ChaCha8Rng::seed_from_u64(100);
        gen_random_spin(6, m0, 1, 4.0, &mut rng).unwrap()
    }

    #[test]
    fn parameter_counts_per_mode() {
        let inst = spin_instance(-1.0);
        let direct = BuiltProblem::build(&inst, ConstraintMode::DirectPenalty { a: 1 }).unwrap();
        assert_eq!(direct.params_per_layer(), 2);
        let slack = BuiltProblem::build(&inst, ConstraintMode::Slack).unwrap();
        assert_eq!(slack.params_per_layer(), 3, "slack qudits bring the squeezing parameter");
        let circ = BuiltProblem::build(&inst, ConstraintMode::CircuitPenalty { a: 1 }).unwrap();
        assert_eq!(circ.params_per_layer(), 2, "the excluded ancilla adds no parameter");
    }

    #[test]
    fn registers_per_mode() {
        let inst = spin_instance(-1.0);
        let direct = BuiltProblem::build(&inst, ConstraintMode::DirectPenalty { a: 1 }).unwrap();
        assert_eq!(direct.register.total_dim(), 64);
        // m0 = -1: feasible S_tot in {-3,...,-1} -> slack dim 3
        let slack = BuiltProblem::build(&inst, ConstraintMode::Slack).unwrap();
        assert_eq!(slack.register.dims(), &[2, 2, 2, 2, 2, 2, 3]);
        let circ = BuiltProblem::build(&inst, ConstraintMode::CircuitPenalty { a: 1 }).unwrap();
        assert_eq!(circ.register.dims(), &[2, 2, 2, 2, 2, 2, 7]);
        assert_eq!(circ.plans.len(), 1);
        assert_eq!(circ.plans[0].gate_count().sum_gates, 12);
    }

    #[test]
    fn zero_angles_give_initial_state() {
        let inst = spin_instance(-1.0);
        for mode in [
            ConstraintMode::DirectPenalty { a: 1 },
            ConstraintMode::Slack,
            ConstraintMode::CircuitPenalty { a: 1 },
        ] {
            let built = BuiltProblem::build(&inst, mode).unwrap();
            let zeros = vec![0.0; built.params_per_layer() * 2];
            let out = apply_ansatz(&built, 2, LayerOrder::CostFirst, &zeros).unwrap();
            let init = built.initial_state();
            for (a, b) in out.amplitudes().iter().zip(init.amplitudes()) {
                assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-12);
                assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn energy_of_basis_and_uniform_states() {
        let inst = spin_instance(-1.0);
        let built = BuiltProblem::build(&inst, ConstraintMode::DirectPenalty { a: 2 }).unwrap();
        let basis = StateVector::basis_state(&built.register, 5).unwrap();
        assert_abs_diff_eq!(
            energy(&basis, &built.penalized),
            built.penalized.values()[5],
            epsilon = 1e-12
        );
        let uniform = StateVector::uniform(&built.register);
        let mean: f64 =
            built.penalized.values().iter().sum::<f64>() / built.register.total_dim() as f64;
        assert_abs_diff_eq!(energy(&uniform, &built.penalized), mean, epsilon = 1e-9);
    }

    #[test]
    fn uniform_feasible_weight_is_the_feasible_fraction() {
        let inst = spin_instance(-1.0);
        for mode in [ConstraintMode::DirectPenalty { a: 1 }, ConstraintMode::Slack] {
            let built = BuiltProblem::build(&inst, mode).unwrap();
            let uniform = StateVector::uniform(&built.register);
            let w: f64 = built
                .feasible
                .iter()
                .enumerate()
                .filter(|&(_, &ok)| ok)
                .map(|(k, _)| uniform.probability(k))
                .sum();
            let n_feasible = built.feasible.iter().filter(|&&b| b).count();
            assert_abs_diff_eq!(
                w,
                n_feasible as f64 / built.register.total_dim() as f64,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn circuit_matches_direct_at_fixed_angles() {
        let inst = spin_instance(-1.0);
        let direct = BuiltProblem::build(&inst, ConstraintMode::DirectPenalty { a: 1 }).unwrap();
        let circ = BuiltProblem::build(&inst, ConstraintMode::CircuitPenalty { a: 1 }).unwrap();
        let d_a = *circ.register.dims().last().unwrap();
        let params = [0.7, -0.3, 1.9, 0.45];
        let s_direct = apply_ansatz(&direct, 2, LayerOrder::CostFirst, &params).unwrap();
        let s_circ = apply_ansatz(&circ, 2, LayerOrder::CostFirst, &params).unwrap();
        for (k, amp) in s_circ.amplitudes().iter().enumerate() {
            if k % d_a == 0 {
                let expect = s_direct.amplitudes()[k / d_a];
                assert!((amp - expect).norm() < 1e-10, "index {k}");
            } else {
                assert!(amp.norm() < 1e-12, "ancilla leaked at index {k}");
            }
        }
        assert_abs_diff_eq!(
            energy(&s_circ, &circ.penalized),
            energy(&s_direct, &direct.penalized),
            epsilon = 1e-10
        );
    }

    #[test]
    fn circuit_matches_direct_on_ev_instance() {
        // multiple constraints, some on negated sites
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let inst = gen_ev_problem(2, 4, vec![2, 2], 1, 1, 4.0, &mut rng).unwrap();
        let direct = BuiltProblem::build(&inst, ConstraintMode::DirectPenalty { a: 1 }).unwrap();
        let circ = BuiltProblem::build(&inst, ConstraintMode::CircuitPenalty { a: 1 }).unwrap();
        let d_a = *circ.register.dims().last().unwrap();
        assert_eq!(d_a, 5);
        let params = [1.1, 0.2];
        let s_direct = apply_ansatz(&direct, 1, LayerOrder::CostFirst, &params).unwrap();
        let s_circ = apply_ansatz(&circ, 1, LayerOrder::CostFirst, &params).unwrap();
        for (k, amp) in s_circ.amplitudes().iter().enumerate() {
            if k % d_a == 0 {
                assert!((amp - s_direct.amplitudes()[k / d_a]).norm() < 1e-10);
            } else {
                assert!(amp.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn layer_order_changes_the_state() {
        let inst = spin_instance(-1.0);
        let built = BuiltProblem::build(&inst, ConstraintMode::DirectPenalty { a: 1 }).unwrap();
        let params = [0.7, -0.3];
        let a = apply_ansatz(&built, 1, LayerOrder::CostFirst, &params).unwrap();
        let b = apply_ansatz(&built, 1, LayerOrder::MixerFirst, &params).unwrap();
        let overlap: f64 = a
            .amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| x.conj() * y)
            .sum::<Complex64>()
            .norm();
        assert!(overlap < 1.0 - 1e-6);
    }

    #[test]
    fn run_single_is_deterministic() {
        let inst = spin_instance(-1.0);
        let built = BuiltProblem::build(&inst, ConstraintMode::DirectPenalty { a: 1 }).unwrap();
        let config = QaoaConfig::new(1, ConstraintMode::DirectPenalty { a: 1 }, 64);
        let r1 = run_single(&built, &config, 17).unwrap();
        let r2 = run_single(&built, &config, 17).unwrap();
        assert_eq!(r1, r2);
        let r3 = run_single(&built, &config, 18).unwrap();
        assert_ne!(r1.params, r3.params);
    }

    #[test]
    fn run_single_respects_variational_bound() {
        let inst = spin_instance(-1.0);
        for mode in [
            ConstraintMode::DirectPenalty { a: 1 },
            ConstraintMode::Slack,
            ConstraintMode::CircuitPenalty { a: 1 },
        ] {
            let built = BuiltProblem::build(&inst, mode).unwrap();
            let config = QaoaConfig::new(1, mode, 64);
            for seed in 0..3 {
                let rec = run_single(&built, &config, seed).unwrap();
                assert!(
                    rec.final_energy >= rec.penalized_minimum - 1e-9,
                    "mode {} seed {seed}: {} < {}",
                    mode.label(),
                    rec.final_energy,
                    rec.penalized_minimum
                );
                assert_eq!(rec.samples.len(), 64);
                assert!(rec.feasible_weight >= 0.0 && rec.feasible_weight <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn run_improves_on_constraint_only_problem() {
        let inst = gen_constraint_only(6, -1.0, 1, 4.0).unwrap();
        let built = BuiltProblem::build(&inst, ConstraintMode::DirectPenalty { a: 1 }).unwrap();
        let config = QaoaConfig::new(1, ConstraintMode::DirectPenalty { a: 1 }, 64);
        let uniform_w = built.feasible.iter().filter(|&&b| b).count() as f64
            / built.register.total_dim() as f64;
        let best_w = (0..3)
            .map(|seed| run_single(&built, &config, seed).unwrap().feasible_weight)
            .fold(f64::MIN, f64::max);
        assert!(best_w > uniform_w, "optimizer never beat the uniform baseline");
    }

    #[test]
    fn sample_energies_are_consistent() {
        let inst = spin_instance(-1.0);
        let built = BuiltProblem::build(&inst, ConstraintMode::Slack).unwrap();
        let config = QaoaConfig::new(1, ConstraintMode::Slack, 32);
        let rec = run_single(&built, &config, 5).unwrap();
        for s in &rec.samples {
            assert_eq!(s.problem_index, built.problem_index(s.index));
            assert_eq!(s.penalized_energy, built.penalized.values()[s.index]);
            assert_eq!(s.cost_energy, inst.cost.values()[s.problem_index]);
        }
    }

    #[test]
    fn mode_labels() {
        assert_eq!(ConstraintMode::DirectPenalty { a: 0 }.label(), "a0");
        assert_eq!(ConstraintMode::DirectPenalty { a: 2 }.label(), "a2");
        assert_eq!(ConstraintMode::Slack.label(), "slack");
        assert_eq!(ConstraintMode::CircuitPenalty { a: 1 }.label(), "circuit_a1");
    }
}
