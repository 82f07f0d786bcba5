//! Diagonal cost Hamiltonians, direct inequality penalties g(P_r(x)) and the
//! slack-variable register extension with its quadratic penalties.
//!
//! Spin convention: qubit level 0 carries sigma = +1, i.e. spin value +1/2.
//! Magnetization constraints are expressed in spin-1/2 values, which makes
//! the slack qudit dimension come out as N/2 + 1 + m0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::register::MixedRegister;

/// Default penalty factor for all constraints.
pub const DEFAULT_LAMBDA: f64 = 4.0;

/// One real eigenvalue per basis index of a register.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagonalHamiltonian {
    register: MixedRegister,
    values: Vec<f64>,
}

impl DiagonalHamiltonian {
    pub fn new(register: &MixedRegister, values: Vec<f64>) -> Result<Self> {
        if values.len() != register.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for total dim {}",
                values.len(),
                register.total_dim()
            )));
        }
        Ok(Self { register: register.clone(), values })
    }

    pub fn zero(register: &MixedRegister) -> Self {
        Self { register: register.clone(), values: vec![0.0; register.total_dim()] }
    }

    pub fn register(&self) -> &MixedRegister {
        &self.register
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

/// One inequality constraint P_r(x) <= 0 over a set of qubit sites.
///
/// P_r depends only on the generalized Hamming weight
/// m* = sum_{i in sites\negated} x_i + sum_{i in negated} (1 - x_i), through
/// the lookup `p_of_weight[m*]`. All constraints in the benchmark problems
/// are of this form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstraintSpec {
    /// Sites the constraint reads (must be qubit sites).
    site_set: Vec<usize>,
    /// Subset of `site_set` read as negated bits.
    negated_sites: Vec<usize>,
    /// P value per generalized Hamming weight m* in 0..=site_set.len().
    p_of_weight: Vec<f64>,
    /// Penalty weight, > 0.
    lambda: f64,
    /// Penalty exponent in {0, 1, 2}.
    exponent_a: u8,
}

impl ConstraintSpec {
    pub fn new(
        site_set: Vec<usize>,
        negated_sites: Vec<usize>,
        p_of_weight: Vec<f64>,
        lambda: f64,
        exponent_a: u8,
    ) -> Result<Self> {
        if lambda <= 0.0 {
            return Err(Error::InvalidConstraint(format!("lambda must be > 0, got {lambda}")));
        }
        if exponent_a > 2 {
            return Err(Error::InvalidConstraint(format!("exponent a must be 0, 1 or 2, got {exponent_a}")));
        }
        if p_of_weight.len() != site_set.len() + 1 {
            return Err(Error::InvalidConstraint(format!(
                "{} weight values for {} sites",
                p_of_weight.len(),
                site_set.len()
            )));
        }
        if !negated_sites.iter().all(|s| site_set.contains(s)) {
            return Err(Error::InvalidConstraint("negated site not in site set".into()));
        }
        if !p_of_weight.iter().any(|&p| p <= 0.0) {
            return Err(Error::InvalidConstraint("feasible set is empty".into()));
        }
        Ok(Self { site_set, negated_sites, p_of_weight, lambda, exponent_a })
    }

    pub fn site_set(&self) -> &[usize] {
        &self.site_set
    }

    pub fn negated_sites(&self) -> &[usize] {
        &self.negated_sites
    }

    pub fn p_of_weight(&self) -> &[f64] {
        &self.p_of_weight
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn exponent_a(&self) -> u8 {
        self.exponent_a
    }

    pub fn with_exponent(&self, a: u8) -> Result<Self> {
        Self::new(
            self.site_set.clone(),
            self.negated_sites.clone(),
            self.p_of_weight.clone(),
            self.lambda,
            a,
        )
    }

    /// Generalized Hamming weight m* of the digits of one basis index.
    pub fn weight_of(&self, register: &MixedRegister, index: usize) -> usize {
        let mut m = 0usize;
        for &site in &self.site_set {
            let bit = register.digit_at(index, site);
            if self.negated_sites.contains(&site) {
                m += 1 - bit;
            } else {
                m += bit;
            }
        }
        m
    }

    /// P_r evaluated on one basis index.
    pub fn p_value(&self, register: &MixedRegister, index: usize) -> f64 {
        self.p_of_weight[self.weight_of(register, index)]
    }

    /// Sorted distinct feasible values of -P_r (slack values).
    fn feasible_slack_values(&self) -> Vec<f64> {
        let mut vals: Vec<f64> =
            self.p_of_weight.iter().filter(|&&p| p <= 0.0).map(|&p| -p).collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals.dedup();
        vals
    }
}

/// g(y) = y^a Theta(y), with Theta(0) = 0 (the boundary is feasible).
pub fn penalty_value(y: f64, a: u8) -> f64 {
    if y <= 0.0 {
        0.0
    } else {
        match a {
            0 => 1.0,
            1 => y,
            2 => y * y,
            _ => y.powi(a as i32),
        }
    }
}

/// Ising diagonal: values[k] = sum_i h_i s_i + sum_{ij} J_ij s_i s_j with
/// s_i = +/-1 read from bit i (level 0 -> +1). The double sum runs over all
/// ordered pairs; J must be symmetric.
pub fn build_ising_diagonal(
    j: &[Vec<f64>],
    h: &[f64],
    register: &MixedRegister,
) -> Result<DiagonalHamiltonian> {
    let n = register.n_sites();
    if register.dims().iter().any(|&d| d != 2) {
        return Err(Error::DimensionMismatch("Ising diagonal needs an all-qubit register".into()));
    }
    if j.len() != n || h.len() != n || j.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch("J/h size does not match register".into()));
    }
    for a in 0..n {
        for b in 0..n {
            if (j[a][b] - j[b][a]).abs() > 1e-12 {
                return Err(Error::DimensionMismatch("J must be symmetric".into()));
            }
        }
    }
    let mut values = vec![0.0; register.total_dim()];
    let mut spins = vec![1.0f64; n];
    for (k, v) in values.iter_mut().enumerate() {
        for (site, s) in spins.iter_mut().enumerate() {
            *s = if register.digit_at(k, site) == 0 { 1.0 } else { -1.0 };
        }
        let mut e = 0.0;
        for a in 0..n {
            e += h[a] * spins[a];
            for b in 0..n {
                e += j[a][b] * spins[a] * spins[b];
            }
        }
        *v = e;
    }
    DiagonalHamiltonian::new(register, values)
}

/// h_c plus the direct penalty sum_r lambda_r g(P_r(x)); feasible
/// configurations keep exactly their bare cost.
pub fn build_penalized_diagonal(
    h_c: &DiagonalHamiltonian,
    constraints: &[ConstraintSpec],
) -> Result<DiagonalHamiltonian> {
    let register = h_c.register();
    for cons in constraints {
        if let Some(&s) = cons.site_set.iter().find(|&&s| s >= register.n_sites()) {
            return Err(Error::InvalidConstraint(format!("site {s} out of range")));
        }
    }
    let mut values = h_c.values().to_vec();
    for cons in constraints {
        for (k, v) in values.iter_mut().enumerate() {
            *v += cons.lambda * penalty_value(cons.p_value(register, k), cons.exponent_a);
        }
    }
    DiagonalHamiltonian::new(register, values)
}

/// Magnetization constraint P(x) = S_tot - m0 <= 0 with
/// S_tot = sum_i s_i, s_i in {+1/2, -1/2} and level 0 -> +1/2.
pub fn magnetization_constraint(n: usize, m0: f64, a: u8, lambda: f64) -> Result<ConstraintSpec> {
    let half_n = n as f64 / 2.0;
    let on_grid = ((m0 + half_n) - (m0 + half_n).round()).abs() < 1e-9;
    if !on_grid || m0 < -half_n - 1e-9 || m0 > half_n + 1e-9 {
        return Err(Error::InvalidConstraint(format!(
            "m0 = {m0} not on the half-integer grid [-{half_n}, {half_n}]"
        )));
    }
    // weight m counts down-spins (level 1), so S_tot = N/2 - m
    let p_of_weight: Vec<f64> = (0..=n).map(|m| half_n - m as f64 - m0).collect();
    ConstraintSpec::new((0..n).collect(), vec![], p_of_weight, lambda, a)
}

/// Register enlargement for the slack-variable encoding: one qudit per
/// constraint with dimension equal to the constraint's number of feasible
/// values. Constraints with a single feasible value get no extra site (a
/// one-level qudit carries no state).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlackExtension {
    original_register: MixedRegister,
    extended_register: MixedRegister,
    /// Slack qudit dimension per constraint, in constraint order; entries of
    /// 1 are represented by no site.
    slack_dims: Vec<usize>,
    /// Site index in the extended register per constraint with slack_dim > 1.
    slack_sites: Vec<Option<usize>>,
}

impl SlackExtension {
    pub fn original_register(&self) -> &MixedRegister {
        &self.original_register
    }

    pub fn extended_register(&self) -> &MixedRegister {
        &self.extended_register
    }

    pub fn slack_dims(&self) -> &[usize] {
        &self.slack_dims
    }

    pub fn slack_sites(&self) -> &[Option<usize>] {
        &self.slack_sites
    }

    /// Problem-register part of an extended basis index (slack digits
    /// stripped).
    pub fn problem_index(&self, extended_index: usize) -> usize {
        extended_index / self.slack_block_dim()
    }

    /// Product of all slack dimensions.
    pub fn slack_block_dim(&self) -> usize {
        self.extended_register.total_dim() / self.original_register.total_dim()
    }

    /// Slack value (= qudit level) of constraint `r` in an extended index.
    pub fn slack_value(&self, extended_index: usize, r: usize) -> usize {
        match self.slack_sites[r] {
            Some(site) => self.extended_register.digit_at(extended_index, site),
            None => 0,
        }
    }
}

/// Extends the register with slack qudits and builds the slack-penalized
/// diagonal values[(x, s)] = h_c[x] + sum_r lambda_r (P_r(x) + s_r)^2.
///
/// The slack qudit level index IS the slack value, so each constraint's
/// feasible -P values must be exactly the integers {0, ..., d_r - 1}.
pub fn extend_with_slack(
    h_c: &DiagonalHamiltonian,
    constraints: &[ConstraintSpec],
) -> Result<(SlackExtension, DiagonalHamiltonian)> {
    let original = h_c.register();
    let mut slack_dims = Vec::with_capacity(constraints.len());
    for (r, cons) in constraints.iter().enumerate() {
        let vals = cons.feasible_slack_values();
        for (i, &v) in vals.iter().enumerate() {
            if (v - i as f64).abs() > 1e-9 {
                return Err(Error::SlackNotRepresentable(format!(
                    "constraint {r}: feasible -P values {vals:?} are not the consecutive integers 0..{}",
                    vals.len()
                )));
            }
        }
        slack_dims.push(vals.len());
    }
    let mut extra = Vec::new();
    let mut slack_sites = Vec::with_capacity(constraints.len());
    for &d in &slack_dims {
        if d > 1 {
            slack_sites.push(Some(original.n_sites() + extra.len()));
            extra.push(d);
        } else {
            slack_sites.push(None);
        }
    }
    let extended_register = original.extended(&extra)?;
    let ext = SlackExtension {
        original_register: original.clone(),
        extended_register: extended_register.clone(),
        slack_dims,
        slack_sites,
    };

    let mut values = vec![0.0; extended_register.total_dim()];
    for (k, v) in values.iter_mut().enumerate() {
        let x = ext.problem_index(k);
        let mut e = h_c.values()[x];
        for (r, cons) in constraints.iter().enumerate() {
            let s = ext.slack_value(k, r) as f64;
            let p = cons.p_value(original, x);
            e += cons.lambda * (p + s) * (p + s);
        }
        *v = e;
    }
    let diag = DiagonalHamiltonian::new(&extended_register, values)?;
    Ok((ext, diag))
}

/// Feasibility mask per basis index. Without slack: P_r(x) <= 0 for all r.
/// With slack: additionally s_r = -P_r(x) for every constraint.
pub fn feasible_mask(
    register: &MixedRegister,
    constraints: &[ConstraintSpec],
    slack: Option<&SlackExtension>,
) -> Vec<bool> {
    let mut mask = vec![true; register.total_dim()];
    match slack {
        None => {
            for (k, ok) in mask.iter_mut().enumerate() {
                *ok = constraints.iter().all(|c| c.p_value(register, k) <= 0.0);
            }
        }
        Some(ext) => {
            debug_assert_eq!(register.total_dim(), ext.extended_register().total_dim());
            for (k, ok) in mask.iter_mut().enumerate() {
                let x = ext.problem_index(k);
                *ok = constraints.iter().enumerate().all(|(r, c)| {
                    let p = c.p_value(ext.original_register(), x);
                    p <= 0.0 && (p + ext.slack_value(k, r) as f64).abs() < 1e-9
                });
            }
        }
    }
    mask
}
