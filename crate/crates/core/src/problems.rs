//! Generators for the three benchmark problem families: a random Ising spin
//! model under a magnetization constraint, the constraint-only sampling
//! problem, and a small EV charging schedule with per-vehicle energy
//! requirements and per-time-step fuse limits.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonians::{
    build_ising_diagonal, feasible_mask, ConstraintSpec, DiagonalHamiltonian,
};
use crate::register::MixedRegister;

/// Data needed to rebuild an instance bit-identically, serialized as JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum InstanceData {
    RandomSpin { n: usize, m0: f64, j: Vec<Vec<f64>>, h: Vec<f64> },
    ConstraintOnly { n: usize, m0: f64 },
    EvCharging { n_ev: usize, t: usize, e_max: usize, e_required: Vec<usize>, prices: Vec<f64> },
}

/// One fully built benchmark instance: register, bare cost, constraints and
/// the exhaustively computed feasible optimum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemInstance {
    pub register: MixedRegister,
    pub cost: DiagonalHamiltonian,
    pub constraints: Vec<ConstraintSpec>,
    pub feasible_mask: Vec<bool>,
    /// Minimum bare cost over feasible states.
    pub e0: f64,
    /// All feasible basis indices attaining `e0`.
    pub optimal_set: Vec<usize>,
    pub seed: u64,
    pub data: InstanceData,
}

impl ProblemInstance {
    fn finish(
        register: MixedRegister,
        cost: DiagonalHamiltonian,
        constraints: Vec<ConstraintSpec>,
        seed: u64,
        data: InstanceData,
    ) -> Result<Self> {
        let mask = feasible_mask(&register, &constraints, None);
        let mut e0 = f64::INFINITY;
        for (k, &feasible) in mask.iter().enumerate() {
            if feasible && cost.values()[k] < e0 {
                e0 = cost.values()[k];
            }
        }
        if !e0.is_finite() {
            return Err(Error::InvalidProblem("instance has no feasible state".into()));
        }
        let optimal_set: Vec<usize> = mask
            .iter()
            .enumerate()
            .filter(|&(k, &feasible)| feasible && (cost.values()[k] - e0).abs() <= 1e-9)
            .map(|(k, _)| k)
            .collect();
        Ok(Self { register, cost, constraints, feasible_mask: mask, e0, optimal_set, seed, data })
    }

    /// Rebuilds the instance from its serialized form.
    pub fn from_data(data: InstanceData, seed: u64, a: u8, lambda: f64) -> Result<Self> {
        match data {
            InstanceData::RandomSpin { n, m0, ref j, ref h } => {
                let register = MixedRegister::qubits(n)?;
                let cost = build_ising_diagonal(j, h, &register)?;
                let cons = crate::hamiltonians::magnetization_constraint(n, m0, a, lambda)?;
                Self::finish(register, cost, vec![cons], seed, data)
            }
            InstanceData::ConstraintOnly { n, m0 } => gen_constraint_only(n, m0, a, lambda),
            InstanceData::EvCharging { n_ev, t, e_max, ref e_required, ref prices } => {
                build_ev(n_ev, t, e_max, e_required.clone(), prices.clone(), a, lambda, seed)
            }
        }
    }
}

/// Random Ising instance with Gaussian couplings and fields and a single
/// magnetization constraint S_tot <= m0.
pub fn gen_random_spin<R: Rng>(
    n: usize,
    m0: f64,
    a: u8,
    lambda: f64,
    rng: &mut R,
) -> Result<ProblemInstance> {
    if n > 16 {
        return Err(Error::InvalidProblem(format!("N = {n} exceeds the exhaustive-oracle limit 16")));
    }
    let register = MixedRegister::qubits(n)?;
    let normal = StandardNormal;
    let mut j = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in i + 1..n {
            let v: f64 = normal.sample(rng);
            j[i][k] = v;
            j[k][i] = v;
        }
    }
    let h: Vec<f64> = (0..n).map(|_| normal.sample(rng)).collect();
    let cost = build_ising_diagonal(&j, &h, &register)?;
    let cons = crate::hamiltonians::magnetization_constraint(n, m0, a, lambda)?;
    let data = InstanceData::RandomSpin { n, m0, j, h };
    ProblemInstance::finish(register, cost, vec![cons], 0, data)
}

/// Constraint-only instance: the cost is identically zero, so every
/// feasible state is optimal with E0 = 0.
pub fn gen_constraint_only(n: usize, m0: f64, a: u8, lambda: f64) -> Result<ProblemInstance> {
    let register = MixedRegister::qubits(n)?;
    let cost = DiagonalHamiltonian::zero(&register);
    let cons = crate::hamiltonians::magnetization_constraint(n, m0, a, lambda)?;
    let data = InstanceData::ConstraintOnly { n, m0 };
    ProblemInstance::finish(register, cost, vec![cons], 0, data)
}

/// EV charging instance: binary charging levels x_{n,t} laid out at site
/// n*T + t, cost sum_t c_t sum_n x_{n,t} with c_t ~ U(0,1), one
/// required-energy constraint per EV and one fuse constraint per time step.
pub fn gen_ev_problem<R: Rng>(
    n_ev: usize,
    t: usize,
    e_required: Vec<usize>,
    e_max: usize,
    a: u8,
    lambda: f64,
    rng: &mut R,
) -> Result<ProblemInstance> {
    let prices: Vec<f64> = (0..t).map(|_| rng.gen_range(0.0..1.0)).collect();
    build_ev(n_ev, t, e_max, e_required, prices, a, lambda, 0)
}

fn build_ev(
    n_ev: usize,
    t: usize,
    e_max: usize,
    e_required: Vec<usize>,
    prices: Vec<f64>,
    a: u8,
    lambda: f64,
    seed: u64,
) -> Result<ProblemInstance> {
    if n_ev * t > 16 {
        return Err(Error::InvalidProblem("N_EV * T exceeds the exhaustive-oracle limit 16".into()));
    }
    if e_required.len() != n_ev || prices.len() != t {
        return Err(Error::InvalidProblem("E_required / price vector length mismatch".into()));
    }
    // level 1 = charging; multi-level charging is out of scope
    let register = MixedRegister::qubits(n_ev * t)?;
    let site = |n: usize, step: usize| n * t + step;

    let mut values = vec![0.0; register.total_dim()];
    for (k, v) in values.iter_mut().enumerate() {
        let mut cost = 0.0;
        for (step, &price) in prices.iter().enumerate() {
            let charging =
                (0..n_ev).filter(|&n| register.digit_at(k, site(n, step)) == 1).count();
            cost += price * charging as f64;
        }
        *v = cost;
    }
    let cost = DiagonalHamiltonian::new(&register, values)?;

    let mut constraints = Vec::new();
    // required energy, in negated-bit Hamming form:
    // E_req - sum_t x <= 0  <=>  sum_t (1 - x) - (T - E_req) <= 0
    for (n, &e_req) in e_required.iter().enumerate() {
        if e_req > t {
            return Err(Error::InvalidProblem(format!(
                "EV {n} requires {e_req} units over only {t} time steps"
            )));
        }
        let sites: Vec<usize> = (0..t).map(|step| site(n, step)).collect();
        let p: Vec<f64> = (0..=t).map(|m| m as f64 - (t - e_req) as f64).collect();
        constraints.push(ConstraintSpec::new(sites.clone(), sites, p, lambda, a)?);
    }
    // fuse limit per time step: sum_n x - E_max <= 0
    for step in 0..t {
        let sites: Vec<usize> = (0..n_ev).map(|n| site(n, step)).collect();
        let p: Vec<f64> = (0..=n_ev).map(|m| m as f64 - e_max as f64).collect();
        constraints.push(ConstraintSpec::new(sites, vec![], p, lambda, a)?);
    }

    let data = InstanceData::EvCharging { n_ev, t, e_max, e_required, prices };
    ProblemInstance::finish(register, cost, constraints, seed, data)
        .map_err(|_| Error::InvalidProblem("EV instance is globally infeasible".into()))
}
