//! Cross-module verification: circuit-vs-diagonal equivalence, slack
//! completeness, brute-force optimum agreement and the benchmark
//! feasibility counts, reported as one pass/fail line each.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qudit_qaoa::ancilla::{apply_hamming_phase, HammingPhasePlan};
use qudit_qaoa::hamiltonians::extend_with_slack;
use qudit_qaoa::problems::{gen_ev_problem, gen_random_spin};
use qudit_qaoa::{MixedRegister, StateVector};

use crate::experiment::CliError;

#[derive(Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    fn record(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check { name, passed, detail });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Random state with the ancilla (last site) pinned to level 0, the
/// precondition of the phase circuit.
fn random_pinned_state(reg: &MixedRegister, rng: &mut ChaCha8Rng) -> StateVector {
    let d_a = *reg.dims().last().unwrap();
    let mut amps: Vec<num_complex::Complex64> = (0..reg.total_dim())
        .map(|k| {
            if k % d_a == 0 {
                num_complex::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            } else {
                num_complex::Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::from_amplitudes(reg, amps).unwrap()
}

/// Max deviation between the SUM-gate circuit and the equivalent diagonal
/// phase over `cases` random setups with up to `n_max` summed qubits.
pub fn circuit_vs_diagonal_deviation(cases: usize, n_max: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let n = rng.gen_range(1..=n_max);
        let mut dims = vec![2usize; n];
        dims.push(n + 1 + rng.gen_range(0..3));
        let reg = MixedRegister::new(dims.clone()).unwrap();
        let negated: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let plain: Vec<usize> = (0..n).filter(|s| !negated.contains(s)).collect();
        let g_table: Vec<f64> = (0..=n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let plan =
            HammingPhasePlan::new(&dims, plain.clone(), negated.clone(), n, g_table.clone())
                .unwrap();

        let mut circuit = random_pinned_state(&reg, &mut rng);
        let mut direct = circuit.clone();
        apply_hamming_phase(&mut circuit, &plan).unwrap();
        let diag: Vec<f64> = (0..reg.total_dim())
            .map(|k| {
                let m: usize = plain.iter().map(|&s| reg.digit_at(k, s)).sum::<usize>()
                    + negated.iter().map(|&s| 1 - reg.digit_at(k, s)).sum::<usize>();
                g_table[m]
            })
            .collect();
        direct.apply_diagonal_phase(&diag, 1.0).unwrap();
        let dev = circuit
            .amplitudes()
            .iter()
            .zip(direct.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        worst = worst.max(dev);
    }
    worst
}

/// Runs every cross-module oracle and returns the report.
pub fn run_verification() -> Result<Report, CliError> {
    let mut report = Report::default();

    let dev = circuit_vs_diagonal_deviation(100, 6, 2024);
    report.record(
        "circuit_vs_diagonal",
        dev < 1e-10,
        format!("max deviation over 100 random cases: {dev:.3e}"),
    );

    // SUM-gate count: 2 per summed site
    let dims = vec![2, 2, 2, 2, 2, 2, 2, 2, 2, 10];
    let plan =
        HammingPhasePlan::new(&dims, (0..9).collect(), vec![], 9, vec![0.0; 10]).unwrap();
    let gates = plan.gate_count();
    report.record(
        "sum_gate_count",
        gates.sum_gates == 18 && gates.phase_shifts == 1,
        format!("9 summed qubits -> {} SUM gates, {} phase shift", gates.sum_gates, gates.phase_shifts),
    );

    // EV feasibility: each EV needs >= 2 of 4 disjoint slots -> C(4,2) = 6
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ev = gen_ev_problem(2, 4, vec![2, 2], 1, 1, 4.0, &mut rng)?;
    let n_feasible = ev.feasible_mask.iter().filter(|&&b| b).count();
    report.record(
        "ev_feasible_count",
        n_feasible == 6,
        format!("{n_feasible} of {} basis states feasible", ev.register.total_dim()),
    );

    let (ext, slack_diag) = extend_with_slack(&ev.cost, &ev.constraints)?;
    report.record(
        "ev_slack_dimension",
        ext.extended_register().total_dim() == 36864 && ext.slack_dims() == [3, 3, 2, 2, 2, 2],
        format!(
            "slack dims {:?} -> total dim {}",
            ext.slack_dims(),
            ext.extended_register().total_dim()
        ),
    );

    // slack completeness: exactly one zero-penalty slack assignment per
    // feasible x, none for unfeasible x
    let block = ext.slack_block_dim();
    let complete = (0..ev.register.total_dim()).all(|x| {
        let zeros = (0..block)
            .filter(|s| slack_diag.values()[x * block + s] - ev.cost.values()[x] < 1e-9)
            .count();
        zeros == usize::from(ev.feasible_mask[x])
    });
    report.record("slack_completeness", complete, "one exact slack assignment per feasible state".into());

    // brute-force optimum agreement on random spin instances
    let mut ok = true;
    let mut detail = String::new();
    for (i, m0) in [-2.0, 0.0, 3.0].iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + i as u64);
        let inst = gen_random_spin(6, *m0, 1, 4.0, &mut rng)?;
        let brute = inst
            .cost
            .values()
            .iter()
            .zip(&inst.feasible_mask)
            .filter(|&(_, &f)| f)
            .map(|(&v, _)| v)
            .fold(f64::INFINITY, f64::min);
        if (brute - inst.e0).abs() > 1e-12 {
            ok = false;
        }
        detail = format!("E0 matches exhaustive scan on N=6, m0 in {{-2, 0, 3}}");
    }
    report.record("brute_force_e0", ok, detail);

    Ok(report)
}
