//! Mixed-radix computational basis, state-vector storage and the elementary
//! state transforms (single-site unitaries, diagonal phases, sampling) that
//! every gate in the crate is built from.
//!
//! Site 0 is the most significant digit of a basis index; this convention is
//! fixed globally and shared by the slack and ancilla extensions.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Norm tolerance used by test assertions.
pub const NORM_TOL: f64 = 1e-10;
/// Looser runtime guard applied before sampling.
pub const SAMPLE_NORM_TOL: f64 = 1e-6;

/// An ordered list of site dimensions (qubits d=2, qudits d>2) defining a
/// mixed-radix computational basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedRegister {
    dims: Vec<usize>,
    total_dim: usize,
}

impl MixedRegister {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidRegister("register has no sites".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidRegister(format!("site dimension {d} < 2")));
        }
        let total_dim = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).ok_or_else(
            || Error::InvalidRegister("total dimension overflows usize".into()),
        )?;
        Ok(Self { dims, total_dim })
    }

    /// Register of `n` qubits.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_sites(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, site: usize) -> usize {
        self.dims[site]
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    /// Product of the dimensions of all sites after `site` (its stride in the
    /// mixed-radix index).
    pub fn stride(&self, site: usize) -> usize {
        self.dims[site + 1..].iter().product()
    }

    /// Mixed-radix encoding, site 0 most significant.
    pub fn encode_digits(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} digits for {} sites",
                digits.len(),
                self.dims.len()
            )));
        }
        let mut index = 0usize;
        for (site, (&digit, &dim)) in digits.iter().zip(&self.dims).enumerate() {
            if digit >= dim {
                return Err(Error::DigitOutOfRange { site, digit, dim });
            }
            index = index * dim + digit;
        }
        Ok(index)
    }

    /// Inverse of [`encode_digits`](Self::encode_digits).
    pub fn decode_index(&self, index: usize) -> Result<Vec<usize>> {
        if index >= self.total_dim {
            return Err(Error::IndexOutOfRange { index, total_dim: self.total_dim });
        }
        let mut digits = vec![0usize; self.dims.len()];
        let mut rem = index;
        for (site, &dim) in self.dims.iter().enumerate().rev() {
            digits[site] = rem % dim;
            rem /= dim;
        }
        Ok(digits)
    }

    /// Digit of `site` within basis index `index`, without a full decode.
    pub fn digit_at(&self, index: usize, site: usize) -> usize {
        (index / self.stride(site)) % self.dims[site]
    }

    /// Register with `extra` site dimensions appended (least significant).
    pub fn extended(&self, extra: &[usize]) -> Result<Self> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(extra);
        Self::new(dims)
    }
}

/// Normalized complex amplitude array over a [`MixedRegister`]'s basis.
#[derive(Debug, Clone)]
pub struct StateVector {
    register: MixedRegister,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Uniform superposition 1/sqrt(D) over every basis state.
    pub fn uniform(register: &MixedRegister) -> Self {
        let d = register.total_dim();
        let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
        Self { register: register.clone(), amplitudes: vec![amp; d] }
    }

    /// Computational basis state |index>.
    pub fn basis_state(register: &MixedRegister, index: usize) -> Result<Self> {
        if index >= register.total_dim() {
            return Err(Error::IndexOutOfRange { index, total_dim: register.total_dim() });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); register.total_dim()];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { register: register.clone(), amplitudes })
    }

    pub fn from_amplitudes(register: &MixedRegister, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != register.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for total dim {}",
                amplitudes.len(),
                register.total_dim()
            )));
        }
        Ok(Self { register: register.clone(), amplitudes })
    }

    pub fn register(&self) -> &MixedRegister {
        &self.register
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Probability of basis index `k`.
    pub fn probability(&self, k: usize) -> f64 {
        self.amplitudes[k].norm_sqr()
    }

    /// Applies a d x d unitary to one site, mixing amplitude blocks that
    /// differ only in that site's digit.
    pub fn apply_single_site_unitary(&mut self, site: usize, matrix: &[Vec<Complex64>]) -> Result<()> {
        let d = self.register.dim(site);
        if matrix.len() != d || matrix.iter().any(|row| row.len() != d) {
            return Err(Error::DimensionMismatch(format!(
                "matrix {}x? applied to site of dim {d}",
                matrix.len()
            )));
        }
        debug_assert!(
            unitarity_deviation(matrix) < NORM_TOL,
            "non-unitary matrix applied to site {site}"
        );
        let stride = self.register.stride(site);
        let block = stride * d;
        let total = self.register.total_dim();
        let mut scratch = vec![Complex64::new(0.0, 0.0); d];
        for base in (0..total).step_by(block) {
            for inner in 0..stride {
                for (k, s) in scratch.iter_mut().enumerate() {
                    *s = self.amplitudes[base + k * stride + inner];
                }
                for (k, row) in matrix.iter().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (l, &m) in row.iter().enumerate() {
                        acc += m * scratch[l];
                    }
                    self.amplitudes[base + k * stride + inner] = acc;
                }
            }
        }
        Ok(())
    }

    /// amplitude[k] *= exp(i * angle * diag[k]).
    pub fn apply_diagonal_phase(&mut self, diag: &[f64], angle: f64) -> Result<()> {
        if diag.len() != self.register.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "diagonal of length {} for total dim {}",
                diag.len(),
                self.register.total_dim()
            )));
        }
        for (a, &v) in self.amplitudes.iter_mut().zip(diag) {
            *a *= Complex64::from_polar(1.0, angle * v);
        }
        Ok(())
    }

    /// Permutes amplitudes: new[perm(k)] = old[k]. `perm` must be a bijection.
    pub fn apply_permutation(&mut self, perm: impl Fn(usize) -> usize) {
        let mut out = vec![Complex64::new(0.0, 0.0); self.amplitudes.len()];
        for (k, &a) in self.amplitudes.iter().enumerate() {
            out[perm(k)] = a;
        }
        self.amplitudes = out;
    }

    /// Draws `shots` i.i.d. basis indices from the Born distribution.
    pub fn sample<R: Rng>(&self, shots: usize, rng: &mut R) -> Result<Vec<usize>> {
        let norm = self.norm();
        if (norm - 1.0).abs() > SAMPLE_NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        // cumulative Born weights; binary search per shot
        let mut cdf = Vec::with_capacity(self.amplitudes.len());
        let mut acc = 0.0;
        for a in &self.amplitudes {
            acc += a.norm_sqr();
            cdf.push(acc);
        }
        let total = acc;
        let mut samples = Vec::with_capacity(shots);
        for _ in 0..shots {
            let u: f64 = rng.gen::<f64>() * total;
            let k = cdf.partition_point(|&c| c <= u).min(cdf.len() - 1);
            samples.push(k);
        }
        Ok(samples)
    }
}

/// Max-abs deviation of M M^dagger from the identity.
pub fn unitarity_deviation(matrix: &[Vec<Complex64>]) -> f64 {
    let d = matrix.len();
    let mut dev: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += matrix[i][k] * matrix[j][k].conj();
            }
            let expect = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((acc - expect).norm());
        }
    }
    dev
}
