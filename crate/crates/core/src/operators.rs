//! Angular-momentum operators for arbitrary local dimension, exact
//! small-matrix exponentials, and the mixer layers applied between cost
//! phases.
//!
//! Level convention: basis level k of a d-level site carries the Lz
//! eigenvalue l - k with l = (d-1)/2, so level 0 maps to +l.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::register::{MixedRegister, StateVector};

/// Lz eigenvalues and the Lx matrix for one local dimension.
#[derive(Debug, Clone)]
pub struct AngularMomentumSet {
    d: usize,
    /// Lz eigenvalue per level, level 0 first.
    lz: Vec<f64>,
    /// Symmetric tridiagonal Lx, row-major d x d.
    lx: Vec<Vec<f64>>,
}

impl AngularMomentumSet {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn lz(&self) -> &[f64] {
        &self.lz
    }

    pub fn lx(&self) -> &[Vec<f64>] {
        &self.lx
    }
}

/// Builds {Lz, Lx} for local dimension d with representation index
/// l = (d-1)/2. Off-diagonals follow the ladder-operator formula
/// <m±1|Lx|m> = sqrt(l(l+1) - m(m±1)) / 2.
pub fn angular_momentum(d: usize) -> Result<AngularMomentumSet> {
    if d < 2 {
        return Err(Error::DimensionMismatch(format!("angular momentum needs d >= 2, got {d}")));
    }
    let l = (d as f64 - 1.0) / 2.0;
    let lz: Vec<f64> = (0..d).map(|k| l - k as f64).collect();
    let mut lx = vec![vec![0.0; d]; d];
    for k in 0..d - 1 {
        // couples levels k (m) and k+1 (m-1)
        let m = lz[k];
        let v = 0.5 * (l * (l + 1.0) - m * (m - 1.0)).sqrt();
        lx[k][k + 1] = v;
        lx[k + 1][k] = v;
    }
    Ok(AngularMomentumSet { d, lz, lx })
}

/// exp(i * angle * h) for a Hermitian h, computed by exact
/// eigendecomposition (d <= 32).
pub fn expm_hermitian(h: &[Vec<Complex64>], angle: f64) -> Result<Vec<Vec<Complex64>>> {
    let d = h.len();
    if d == 0 || d > 32 || h.iter().any(|row| row.len() != d) {
        return Err(Error::DimensionMismatch(format!("expm_hermitian on {d}x? matrix")));
    }
    let mut dev: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            dev = dev.max((h[i][j] - h[j][i].conj()).norm());
        }
    }
    if dev > 1e-12 {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let m = DMatrix::from_fn(d, d, |i, j| h[i][j]);
    let eig = m.symmetric_eigen();
    // U = V exp(i*angle*D) V^dagger
    let phases: Vec<Complex64> =
        eig.eigenvalues.iter().map(|&e| Complex64::from_polar(1.0, angle * e)).collect();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += eig.eigenvectors[(i, k)] * phases[k] * eig.eigenvectors[(j, k)].conj();
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

/// Real-symmetric convenience wrapper around [`expm_hermitian`].
pub fn expm_real_symmetric(h: &[Vec<f64>], angle: f64) -> Result<Vec<Vec<Complex64>>> {
    let hc: Vec<Vec<Complex64>> =
        h.iter().map(|row| row.iter().map(|&v| Complex64::new(v, 0.0)).collect()).collect();
    expm_hermitian(&hc, angle)
}

/// Per-site mixer assignment over a register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiteMixer {
    /// Pauli sigma_x mixer, qubit sites only: exp(i beta sigma_x).
    QubitX,
    /// exp(i [beta Lx + gamma Lz^2]) on any local dimension.
    QuditSqueezed,
    /// Site excluded from the mixer (phase ancilla).
    None,
}

/// Mixer layer over a [`MixedRegister`]: one [`SiteMixer`] per site.
#[derive(Debug, Clone)]
pub struct MixerSpec {
    sites: Vec<SiteMixer>,
}

impl MixerSpec {
    pub fn new(register: &MixedRegister, sites: Vec<SiteMixer>) -> Result<Self> {
        if sites.len() != register.n_sites() {
            return Err(Error::DimensionMismatch(format!(
                "{} mixer assignments for {} sites",
                sites.len(),
                register.n_sites()
            )));
        }
        for (i, (&kind, &d)) in sites.iter().zip(register.dims()).enumerate() {
            if kind == SiteMixer::QubitX && d != 2 {
                return Err(Error::DimensionMismatch(format!(
                    "qubit_x mixer assigned to site {i} of dim {d}"
                )));
            }
        }
        Ok(Self { sites })
    }

    /// sigma_x everywhere on an all-qubit register.
    pub fn all_qubit_x(register: &MixedRegister) -> Result<Self> {
        Self::new(register, vec![SiteMixer::QubitX; register.n_sites()])
    }

    /// sigma_x on qubit sites, Lx + squeezing on qudit sites.
    pub fn standard(register: &MixedRegister) -> Result<Self> {
        let sites = register
            .dims()
            .iter()
            .map(|&d| if d == 2 { SiteMixer::QubitX } else { SiteMixer::QuditSqueezed })
            .collect();
        Self::new(register, sites)
    }

    /// Same as [`standard`](Self::standard) with one site left out of the
    /// mixer entirely.
    pub fn standard_excluding(register: &MixedRegister, excluded: usize) -> Result<Self> {
        let sites = register
            .dims()
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                if i == excluded {
                    SiteMixer::None
                } else if d == 2 {
                    SiteMixer::QubitX
                } else {
                    SiteMixer::QuditSqueezed
                }
            })
            .collect();
        Self::new(register, sites)
    }

    pub fn sites(&self) -> &[SiteMixer] {
        &self.sites
    }

    /// True when any site uses the squeezed qudit mixer; decides whether
    /// gamma is a variational parameter.
    pub fn has_squeezing(&self) -> bool {
        self.sites.iter().any(|&s| s == SiteMixer::QuditSqueezed)
    }
}

/// Exact single-site mixer unitary: exp(i beta sigma_x) for qubit sites,
/// exp(i [beta Lx + gamma Lz^2]) for qudit sites. Lx and Lz^2 do not commute
/// on one site, so the exponential is taken jointly.
pub fn mixer_unitary(kind: SiteMixer, d: usize, beta: f64, gamma: f64) -> Result<Vec<Vec<Complex64>>> {
    let ops = angular_momentum(d)?;
    match kind {
        SiteMixer::QubitX => {
            // sigma_x = 2 Lx for d = 2
            let h: Vec<Vec<f64>> =
                ops.lx.iter().map(|row| row.iter().map(|&v| 2.0 * v).collect()).collect();
            expm_real_symmetric(&h, beta)
        }
        SiteMixer::QuditSqueezed => {
            let mut h: Vec<Vec<f64>> =
                ops.lx.iter().map(|row| row.iter().map(|&v| beta * v).collect()).collect();
            for (k, row) in h.iter_mut().enumerate() {
                row[k] += gamma * ops.lz[k] * ops.lz[k];
            }
            expm_real_symmetric(&h, 1.0)
        }
        SiteMixer::None => {
            Err(Error::DimensionMismatch("mixer_unitary on an excluded site".into()))
        }
    }
}

/// Applies one mixer layer. Single-site terms commute across sites, so the
/// layer is a product of exact per-site unitaries.
pub fn apply_mixer_layer(
    state: &mut StateVector,
    mixer: &MixerSpec,
    beta: f64,
    gamma: f64,
) -> Result<()> {
    if mixer.sites.len() != state.register().n_sites() {
        return Err(Error::DimensionMismatch("mixer does not match state register".into()));
    }
    let dims = state.register().dims().to_vec();
    for (site, &kind) in mixer.sites.iter().enumerate() {
        if kind == SiteMixer::None {
            continue;
        }
        let u = mixer_unitary(kind, dims[site], beta, gamma)?;
        state.apply_single_site_unitary(site, &u)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::register::NORM_TOL;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent dense matrix exponential: scaling-and-squaring Taylor
    /// series of exp(i*angle*h).
    fn expm_taylor(h: &[Vec<f64>], angle: f64) -> Vec<Vec<Complex64>> {
        let d = h.len();
        let a: Vec<Vec<Complex64>> =
            h.iter().map(|row| row.iter().map(|&v| c(0.0, angle * v)).collect()).collect();
        let norm: f64 = a.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max) * d as f64;
        let s = norm.log2().ceil().max(0.0) as u32 + 4;
        let scale = 1.0 / 2f64.powi(s as i32);
        let mut term: Vec<Vec<Complex64>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect())
            .collect();
        let mut out = term.clone();
        for n in 1..30 {
            let mut next = vec![vec![c(0.0, 0.0); d]; d];
            for i in 0..d {
                for j in 0..d {
                    let mut acc = c(0.0, 0.0);
                    for k in 0..d {
                        acc += term[i][k] * a[k][j] * scale;
                    }
                    next[i][j] = acc / (n as f64);
                }
            }
            term = next;
            for i in 0..d {
                for j in 0..d {
                    out[i][j] += term[i][j];
                }
            }
        }
        for _ in 0..s {
            let mut sq = vec![vec![c(0.0, 0.0); d]; d];
            for i in 0..d {
                for j in 0..d {
                    let mut acc = c(0.0, 0.0);
                    for k in 0..d {
                        acc += out[i][k] * out[k][j];
                    }
                    sq[i][j] = acc;
                }
            }
            out = sq;
        }
        out
    }

    fn mat_dev(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
        a.iter()
            .flatten()
            .zip(b.iter().flatten())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn spin_half_is_pauli_over_two() {
        let ops = angular_momentum(2).unwrap();
        assert_eq!(ops.lz(), &[0.5, -0.5]);
        assert_abs_diff_eq!(ops.lx()[0][1], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(ops.lx()[1][0], 0.5, epsilon = 1e-15);
        assert!(angular_momentum(1).is_err());
    }

    #[test]
    fn qutrit_ladder_offdiagonals() {
        // oracle: <m-1|Lx|m> = sqrt(l(l+1) - m(m-1))/2 with l=1, m in {1, 0}
        let ops = angular_momentum(3).unwrap();
        let l = 1.0f64;
        for (k, m) in [(0usize, 1.0f64), (1, 0.0)] {
            let expect = 0.5 * (l * (l + 1.0) - m * (m - 1.0)).sqrt();
            assert_abs_diff_eq!(ops.lx()[k][k + 1], expect, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(ops.lx()[0][1], 1.0 / 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn traces_vanish() {
        for d in 2..=10 {
            let ops = angular_momentum(d).unwrap();
            let tz: f64 = ops.lz().iter().sum();
            let tx: f64 = (0..d).map(|k| ops.lx()[k][k]).sum();
            assert_abs_diff_eq!(tz, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(tx, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn commutator_and_ladder_relations() {
        // Ly := i(Lx Lz - Lz Lx); check [Lx, Lz] = -i Ly and the ladder
        // relations [Lz, L+/-] = +/- L+/- within 1e-10.
        for d in 2..=8 {
            let ops = angular_momentum(d).unwrap();
            let n = d;
            let lz = &ops.lz;
            let lx = &ops.lx;
            // ly[i][j] = i * (lx lz - lz lx)[i][j]; lz diagonal
            let mut ly = vec![vec![c(0.0, 0.0); n]; n];
            for i in 0..n {
                for j in 0..n {
                    ly[i][j] = c(0.0, 1.0) * (lx[i][j] * lz[j] - lz[i] * lx[i][j]);
                }
            }
            // [Lx, Lz] should equal -i Ly = (lx lz - lz lx)
            for i in 0..n {
                for j in 0..n {
                    let comm = lx[i][j] * lz[j] - lz[i] * lx[i][j];
                    let rhs = c(0.0, -1.0) * ly[i][j];
                    assert!((c(comm, 0.0) - rhs).norm() < 1e-10);
                }
            }
            // ladder: L+/- = Lx +/- i Ly; [Lz, L+/-] = +/- L+/-
            for sign in [1.0f64, -1.0] {
                for i in 0..n {
                    for j in 0..n {
                        let lpm = c(lx[i][j], 0.0) + c(0.0, sign) * ly[i][j];
                        let comm = (lz[i] - lz[j]) * lpm;
                        assert!((comm - sign * lpm).norm() < 1e-10, "d={d}");
                    }
                }
            }
            // [Lx, Ly] = i Lz pins the off-diagonal magnitudes
            for i in 0..n {
                for j in 0..n {
                    let mut comm = c(0.0, 0.0);
                    for k in 0..n {
                        comm += lx[i][k] * ly[k][j] - ly[i][k] * lx[k][j];
                    }
                    let expect = if i == j { c(0.0, lz[i]) } else { c(0.0, 0.0) };
                    assert!((comm - expect).norm() < 1e-10, "d={d}");
                }
            }
        }
    }

    #[test]
    fn expm_zero_angle_is_identity() {
        let ops = angular_momentum(4).unwrap();
        let u = expm_real_symmetric(ops.lx(), 0.0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!((u[i][j] - c(expect, 0.0)).norm(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn expm_matches_closed_form_rx() {
        // h = sigma_x / 2 -> exp(i theta sigma_x / 2) =
        // [[cos(t/2), i sin(t/2)], [i sin(t/2), cos(t/2)]]
        let h = vec![vec![0.0, 0.5], vec![0.5, 0.0]];
        for theta in [0.3, 1.0, 2.7, -1.9] {
            let u = expm_real_symmetric(&h, theta).unwrap();
            let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            let expect =
                vec![vec![c(ct, 0.0), c(0.0, st)], vec![c(0.0, st), c(ct, 0.0)]];
            assert!(mat_dev(&u, &expect) < 1e-12, "theta={theta}");
        }
    }

    #[test]
    fn expm_rejects_non_hermitian() {
        let h = vec![vec![c(0.0, 0.0), c(1.0, 0.5)], vec![c(1.0, 0.5), c(0.0, 0.0)]];
        assert!(expm_hermitian(&h, 1.0).is_err());
    }

    #[test]
    fn expm_unitarity_on_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let d = rng.gen_range(2..=6);
            let mut h = vec![vec![0.0; d]; d];
            for i in 0..d {
                for j in i..d {
                    let v: f64 = rng.gen_range(-2.0..2.0);
                    h[i][j] = v;
                    h[j][i] = v;
                }
            }
            let angle: f64 = rng.gen_range(-3.0..3.0);
            let u = expm_real_symmetric(&h, angle).unwrap();
            assert!(crate::register::unitarity_deviation(&u) < 1e-10);
        }
    }

    #[test]
    fn mixer_identity_at_zero_angles() {
        let reg = MixedRegister::new(vec![2, 3]).unwrap();
        let mixer = MixerSpec::standard(&reg).unwrap();
        let mut psi = StateVector::uniform(&reg);
        let before = psi.amplitudes().to_vec();
        apply_mixer_layer(&mut psi, &mixer, 0.0, 0.0).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(&before) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn qubit_mixer_matches_closed_form() {
        // exp(i beta sigma_x) = [[cos b, i sin b], [i sin b, cos b]]
        for beta in [0.4, std::f64::consts::PI, -1.2] {
            let u = mixer_unitary(SiteMixer::QubitX, 2, beta, 0.7).unwrap();
            let expect = vec![
                vec![c(beta.cos(), 0.0), c(0.0, beta.sin())],
                vec![c(0.0, beta.sin()), c(beta.cos(), 0.0)],
            ];
            assert!(mat_dev(&u, &expect) < 1e-12);
        }
        // beta = pi maps |0> to -|0> (exp(i pi sigma_x) = -I)
        let reg = MixedRegister::qubits(1).unwrap();
        let mut psi = StateVector::basis_state(&reg, 0).unwrap();
        let mixer = MixerSpec::all_qubit_x(&reg).unwrap();
        apply_mixer_layer(&mut psi, &mixer, std::f64::consts::PI, 0.0).unwrap();
        assert!((psi.amplitudes()[0] - c(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn qubit_site_with_zero_gamma_equals_sigma_x_mixer() {
        // a d=2 squeezed-mixer site with gamma=0 is NOT the sigma_x mixer
        // (Lx = sigma_x/2), while QubitX is exactly exp(i beta sigma_x)
        let beta = 0.8;
        let qx = mixer_unitary(SiteMixer::QubitX, 2, beta, 0.0).unwrap();
        let ops = angular_momentum(2).unwrap();
        let sx: Vec<Vec<f64>> =
            ops.lx().iter().map(|r| r.iter().map(|&v| 2.0 * v).collect()).collect();
        let direct = expm_real_symmetric(&sx, beta).unwrap();
        assert!(mat_dev(&qx, &direct) < 1e-12);
    }

    #[test]
    fn squeezed_mixer_pure_gamma_is_diagonal_phase() {
        // d=3, beta=0: exp(i g Lz^2) has diagonal phases exp(i g lz[k]^2)
        let g = 1.3;
        let u = mixer_unitary(SiteMixer::QuditSqueezed, 3, 0.0, g).unwrap();
        let ops = angular_momentum(3).unwrap();
        for k in 0..3 {
            let expect = Complex64::from_polar(1.0, g * ops.lz()[k] * ops.lz()[k]);
            assert!((u[k][k] - expect).norm() < 1e-12);
            for j in 0..3 {
                if j != k {
                    assert!(u[k][j].norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn joint_exponential_differs_from_split() {
        // exp(i [b Lx + g Lz^2]) must match a dense series oracle and must
        // NOT equal exp(i b Lx) exp(i g Lz^2) for generic angles.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ops = angular_momentum(3).unwrap();
        for _ in 0..5 {
            let beta: f64 = rng.gen_range(0.5..2.5);
            let gamma: f64 = rng.gen_range(0.5..2.5);
            let joint = mixer_unitary(SiteMixer::QuditSqueezed, 3, beta, gamma).unwrap();

            let mut h = vec![vec![0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    h[i][j] = beta * ops.lx()[i][j];
                }
                h[i][i] += gamma * ops.lz()[i] * ops.lz()[i];
            }
            let oracle = expm_taylor(&h, 1.0);
            assert!(mat_dev(&joint, &oracle) < 1e-9);

            let ux = expm_real_symmetric(ops.lx(), beta).unwrap();
            let mut lz2 = vec![vec![0.0; 3]; 3];
            for i in 0..3 {
                lz2[i][i] = ops.lz()[i] * ops.lz()[i];
            }
            let uz = expm_real_symmetric(&lz2, gamma).unwrap();
            let mut split = vec![vec![c(0.0, 0.0); 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        split[i][j] += ux[i][k] * uz[k][j];
                    }
                }
            }
            assert!(mat_dev(&joint, &split) > 1e-3, "split must differ for generic angles");
        }
    }

    #[test]
    fn mixer_layer_preserves_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let reg = MixedRegister::new(vec![2, 3, 2, 4]).unwrap();
        let mixer = MixerSpec::standard(&reg).unwrap();
        for _ in 0..10 {
            let mut psi = StateVector::uniform(&reg);
            let beta = rng.gen_range(0.0..std::f64::consts::TAU);
            let gamma = rng.gen_range(0.0..std::f64::consts::TAU);
            apply_mixer_layer(&mut psi, &mixer, beta, gamma).unwrap();
            assert!((psi.norm() - 1.0).abs() < NORM_TOL);
        }
    }

    #[test]
    fn qubit_x_rejected_on_qudit_site() {
        let reg = MixedRegister::new(vec![2, 3]).unwrap();
        assert!(MixerSpec::new(&reg, vec![SiteMixer::QubitX, SiteMixer::QubitX]).is_err());
    }
}
