//! Derivative-free minimization: Powell's direction-set method with a
//! Brent line search and golden-ratio auto-bracketing. No internal
//! randomness; results are a deterministic function of the objective, the
//! start point and the configuration.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

const GOLD: f64 = 1.618_033_988_749_894_8;
const CGOLD: f64 = 0.381_966_011_250_105_2;
const TINY: f64 = 1e-25;
const GLIMIT: f64 = 100.0;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Relative parameter tolerance of the line searches.
    pub xtol: f64,
    /// Relative function-decrease tolerance of the outer loop.
    pub ftol: f64,
    pub max_iterations: usize,
    pub max_evaluations: usize,
}

impl OptimizerConfig {
    /// Reference-library defaults for an n-parameter problem:
    /// xtol = ftol = 1e-4, iteration and evaluation caps of 1000 * n.
    pub fn default_for(n_params: usize) -> Self {
        Self {
            xtol: 1e-4,
            ftol: 1e-4,
            max_iterations: 1000 * n_params.max(1),
            max_evaluations: 1000 * n_params.max(1),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.xtol <= 0.0 || self.ftol <= 0.0 {
            return Err(Error::InvalidConfig("optimizer tolerances must be > 0".into()));
        }
        if self.max_iterations == 0 || self.max_evaluations == 0 {
            return Err(Error::InvalidConfig("optimizer limits must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminationReason {
    Xtol,
    Ftol,
    MaxIterations,
    MaxEvaluations,
}

impl TerminationReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            TerminationReason::Xtol => "xtol",
            TerminationReason::Ftol => "ftol",
            TerminationReason::MaxIterations => "max_iter",
            TerminationReason::MaxEvaluations => "max_eval",
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimizerResult {
    pub x_best: Vec<f64>,
    pub f_best: f64,
    pub n_evaluations: usize,
    pub converged: bool,
    pub termination_reason: TerminationReason,
}

/// Objective wrapper that counts evaluations and flags non-finite values.
struct Counted<'a, F> {
    f: &'a mut F,
    n: usize,
    max: usize,
    non_finite: bool,
}

impl<'a, F: FnMut(&[f64]) -> f64> Counted<'a, F> {
    fn call(&mut self, x: &[f64]) -> f64 {
        self.n += 1;
        let v = (self.f)(x);
        if !v.is_finite() {
            self.non_finite = true;
        }
        v
    }

    fn exhausted(&self) -> bool {
        self.n >= self.max
    }
}

/// Brackets a minimum of `phi` downhill from (a, b): returns (a, b, c) with
/// phi(b) below both ends. Golden-ratio expansion with parabolic probes.
fn bracket(phi: &mut impl FnMut(f64) -> f64, mut ax: f64, mut bx: f64) -> (f64, f64, f64, f64, f64, f64) {
    let mut fa = phi(ax);
    let mut fb = phi(bx);
    if fb > fa {
        std::mem::swap(&mut ax, &mut bx);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut cx = bx + GOLD * (bx - ax);
    let mut fc = phi(cx);
    while fb > fc {
        let r = (bx - ax) * (fb - fc);
        let q = (bx - cx) * (fb - fa);
        let denom = 2.0 * (q - r).abs().max(TINY) * (q - r).signum();
        let mut u = bx - ((bx - cx) * q - (bx - ax) * r) / denom;
        let ulim = bx + GLIMIT * (cx - bx);
        let mut fu;
        if (bx - u) * (u - cx) > 0.0 {
            fu = phi(u);
            if fu < fc {
                return (bx, u, cx, fb, fu, fc);
            } else if fu > fb {
                return (ax, bx, u, fa, fb, fu);
            }
            u = cx + GOLD * (cx - bx);
            fu = phi(u);
        } else if (cx - u) * (u - ulim) > 0.0 {
            fu = phi(u);
            if fu < fc {
                bx = cx;
                cx = u;
                u = cx + GOLD * (cx - bx);
                fb = fc;
                fc = fu;
                fu = phi(u);
            }
        } else if (u - ulim) * (ulim - cx) >= 0.0 {
            u = ulim;
            fu = phi(u);
        } else {
            u = cx + GOLD * (cx - bx);
            fu = phi(u);
        }
        ax = bx;
        bx = cx;
        cx = u;
        fa = fb;
        fb = fc;
        fc = fu;
    }
    (ax, bx, cx, fa, fb, fc)
}

/// Brent's method on a bracketing triple (a, b, c) with
/// phi(b) <= phi(a), phi(b) <= phi(c). Golden-section steps safeguarded by
/// parabolic interpolation; at most ~100 evaluations.
pub fn brent_minimize(
    phi: &mut impl FnMut(f64) -> f64,
    bracket: (f64, f64, f64),
    tol: f64,
) -> Result<(f64, f64)> {
    let (ax, bx, cx) = bracket;
    let (fa, fb, fc) = (phi(ax), phi(bx), phi(cx));
    if fa == fb && fb == fc {
        // degenerate flat bracket
        return Ok(((ax + cx) / 2.0, fb));
    }
    if fb > fa || fb > fc || (bx - ax) * (cx - bx) <= 0.0 {
        return Err(Error::InvalidBracket);
    }
    brent_core(phi, ax, bx, cx, fb, tol, 100, &mut false)
}

/// Brent iteration shared by the public entry point and the Powell line
/// search. `budget_hit` lets an external evaluation budget cut the loop.
fn brent_core(
    phi: &mut impl FnMut(f64) -> f64,
    ax: f64,
    bx: f64,
    cx: f64,
    fbx: f64,
    tol: f64,
    max_iter: usize,
    stop: &mut bool,
) -> Result<(f64, f64)> {
    let (mut a, mut b) = (ax.min(cx), ax.max(cx));
    let mut x = bx;
    let mut w = bx;
    let mut v = bx;
    let mut fx = fbx;
    let mut fw = fx;
    let mut fv = fx;
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    for _ in 0..max_iter {
        let xm = 0.5 * (a + b);
        let tol1 = tol * x.abs() + 1e-11;
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) || *stop {
            break;
        }
        let mut use_golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let etemp = e;
            e = d;
            if p.abs() < (0.5 * q * etemp).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                use_golden = false;
            }
        }
        if use_golden {
            e = if x >= xm { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = phi(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            w = x;
            x = u;
            fv = fw;
            fw = fx;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                w = u;
                fv = fw;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Ok((x, fx))
}

/// Line-minimizes f from `x` along `dir`; returns the new point, its value
/// and the step length taken.
fn line_minimize<F: FnMut(&[f64]) -> f64>(
    counted: &mut Counted<'_, F>,
    x: &[f64],
    dir: &[f64],
    fx: f64,
    xtol: f64,
) -> Result<(Vec<f64>, f64, f64)> {
    let n = x.len();
    if counted.exhausted() {
        return Ok((x.to_vec(), fx, 0.0));
    }
    let mut probe = vec![0.0; n];
    let mut stop = false;
    let mut phi = |t: f64| {
        for i in 0..n {
            probe[i] = x[i] + t * dir[i];
        }
        counted.call(&probe)
    };
    let (ax, bx, cx, _fa, fb, _fc) = bracket(&mut phi, 0.0, 1.0);
    // tol scaled as in the reference implementation's inner search
    let (t_min, f_min) = brent_core(&mut phi, ax, bx, cx, fb, xtol * 100.0, 100, &mut stop)?;
    drop(phi);
    if counted.non_finite {
        return Err(Error::NonFiniteObjective { n_evaluations: counted.n });
    }
    if f_min <= fx {
        let point: Vec<f64> = (0..n).map(|i| x[i] + t_min * dir[i]).collect();
        return Ok((point, f_min, t_min));
    }
    // no improvement found along this direction
    Ok((x.to_vec(), fx, 0.0))
}

/// Powell's method: sweep line minimizations over a direction set, then
/// replace the direction of largest decrease with the net displacement when
/// Powell's criterion favors it.
pub fn minimize_powell<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    x0: &[f64],
    config: &OptimizerConfig,
) -> Result<OptimizerResult> {
    config.validate()?;
    let n = x0.len();
    let mut counted = Counted { f, n: 0, max: config.max_evaluations, non_finite: false };
    let mut dirs: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let mut x = x0.to_vec();
    let mut fx = counted.call(&x);
    if counted.non_finite {
        return Err(Error::NonFiniteObjective { n_evaluations: counted.n });
    }

    let mut reason = TerminationReason::MaxIterations;
    let mut converged = false;
    for _iter in 0..config.max_iterations {
        let x_start = x.clone();
        let f_start = fx;
        let mut biggest_dec = 0.0;
        let mut biggest_idx = 0;
        for (i, dir) in dirs.iter().enumerate() {
            let f_before = fx;
            let (x_new, f_new, _t) = line_minimize(&mut counted, &x, dir, fx, config.xtol)?;
            x = x_new;
            fx = f_new;
            if f_before - fx > biggest_dec {
                biggest_dec = f_before - fx;
                biggest_idx = i;
            }
            if counted.exhausted() {
                break;
            }
        }
        debug_assert!(fx <= f_start + 1e-12, "Powell sweep must not increase the objective");

        if 2.0 * (f_start - fx) <= config.ftol * (f_start.abs() + fx.abs()) + 1e-20 {
            reason = TerminationReason::Ftol;
            converged = true;
            break;
        }
        let max_move = x
            .iter()
            .zip(&x_start)
            .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(1.0))
            .fold(0.0, f64::max);
        if max_move < config.xtol * 1e-2 {
            reason = TerminationReason::Xtol;
            converged = true;
            break;
        }
        if counted.exhausted() {
            reason = TerminationReason::MaxEvaluations;
            break;
        }

        // Powell's direction-replacement criterion
        let x_extrap: Vec<f64> = x.iter().zip(&x_start).map(|(a, b)| 2.0 * a - b).collect();
        let f_extrap = counted.call(&x_extrap);
        if counted.non_finite {
            return Err(Error::NonFiniteObjective { n_evaluations: counted.n });
        }
        if f_extrap < f_start {
            let t = 2.0 * (f_start - 2.0 * fx + f_extrap)
                * (f_start - fx - biggest_dec).powi(2)
                - biggest_dec * (f_start - f_extrap).powi(2);
            if t < 0.0 {
                let new_dir: Vec<f64> =
                    x.iter().zip(&x_start).map(|(a, b)| a - b).collect();
                let (x_new, f_new, _t) =
                    line_minimize(&mut counted, &x, &new_dir, fx, config.xtol)?;
                x = x_new;
                fx = f_new;
                dirs[biggest_idx] = dirs[n - 1].clone();
                dirs[n - 1] = new_dir;
            }
        }
        if counted.exhausted() {
            reason = TerminationReason::MaxEvaluations;
            break;
        }
    }
    Ok(OptimizerResult {
        x_best: x,
        f_best: fx,
        n_evaluations: counted.n,
        converged,
        termination_reason: reason,
    })
}
