//! Numerical checks of the conditions a period function must satisfy.
//!
//! All residuals are divided by a common scale `max |ψ|` over a fixed
//! reference grid in `(0, 10]`, so they are comparable across parameters.

use num_complex::Complex64;

use super::period::Psi;
use crate::error::Result;
use crate::psl2::GroupElement;
use crate::transfer::{real_pow, tau_action};

pub const DEFAULT_SAMPLES: usize = 100;
const SAMPLE_HI: f64 = 10.0;
/// One-sided stencil for the boundary fit.
pub const BOUNDARY_STENCIL: [f64; 3] = [1e-2, 2e-2, 4e-2];

/// `t_k = 10 k / (m + 1)`, `k = 1..=m`.
pub fn sample_grid(m: usize) -> Vec<f64> {
    (1..=m)
        .map(|k| SAMPLE_HI * k as f64 / (m + 1) as f64)
        .collect()
}

/// `max |ψ|` over the reference grid and its images under `t -> t+1` and
/// `t -> t/(t+1)`.
pub fn psi_scale(psi: &Psi) -> Result<f64> {
    let mut scale = 0.0f64;
    for t in sample_grid(DEFAULT_SAMPLES) {
        for x in [t, t + 1.0, t / (t + 1.0)] {
            scale = scale.max(psi.eval(x)?.norm());
        }
    }
    Ok(scale)
}

/// `max_t |ψ(t) − ψ(t+1) − (t+1)^{-2s} ψ(t/(t+1))| / max|ψ|` over `m`
/// points of `(0, 10)`.
pub fn three_term_residual(psi: &Psi, m: usize) -> Result<f64> {
    let s = psi.s();
    let mut worst = 0.0f64;
    for t in sample_grid(m) {
        let lhs = psi.eval(t)?;
        let rhs = psi.eval(t + 1.0)? + real_pow(t + 1.0, 2.0 * s) * psi.eval(t / (t + 1.0))?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst / psi_scale(psi)?)
}

/// The raw rows `(t, ψ(t), ψ(t+1), ψ(t/(t+1)))` behind the three-term
/// residual, for export.
pub fn three_term_samples(psi: &Psi, m: usize) -> Result<Vec<(f64, [Complex64; 3])>> {
    sample_grid(m)
        .into_iter()
        .map(|t| {
            Ok((
                t,
                [psi.eval(t)?, psi.eval(t + 1.0)?, psi.eval(t / (t + 1.0))?],
            ))
        })
        .collect()
}

/// Three-term residual recomputed from exported rows.
pub fn three_term_from_samples(s: Complex64, rows: &[(f64, [Complex64; 3])], scale: f64) -> f64 {
    let worst = rows
        .iter()
        .map(|(t, [a, b, c])| (a - b - real_pow(t + 1.0, 2.0 * s) * c).norm())
        .fold(0.0, f64::max);
    worst / scale
}

/// `c_S`: `ψ` on `(0, ∞)`, `−|t|^{-2s} ψ(−1/t)` on `(−∞, 0)`.
pub fn c_s(psi: &Psi, t: f64) -> Result<Complex64> {
    if t > 0.0 {
        psi.eval(t)
    } else {
        Ok(-real_pow(t.abs(), 2.0 * psi.s()) * psi.eval(-1.0 / t)?)
    }
}

/// Boundary values `(g₊(ε_i), g₋(−ε_i))` on the stencil.
pub fn boundary_samples(psi: &Psi) -> Result<[(f64, Complex64, Complex64); 3]> {
    let mut out = [(0.0, Complex64::default(), Complex64::default()); 3];
    for (o, &e) in out.iter_mut().zip(&BOUNDARY_STENCIL) {
        *o = (e, c_s(psi, e)?, c_s(psi, -e)?);
    }
    Ok(out)
}

/// Coefficients at 0 of the quadratic through three points.
fn quadratic_at_zero(xs: [f64; 3], ys: [Complex64; 3]) -> [Complex64; 3] {
    // Newton divided differences, then expand around 0
    let d01 = (ys[1] - ys[0]) / (xs[1] - xs[0]);
    let d12 = (ys[2] - ys[1]) / (xs[2] - xs[1]);
    let d012 = (d12 - d01) / (xs[2] - xs[0]);
    // p(x) = y0 + d01 (x - x0) + d012 (x - x0)(x - x1)
    let c2 = d012;
    let c1 = d01 - d012 * (xs[0] + xs[1]);
    let c0 = ys[0] - d01 * xs[0] + d012 * xs[0] * xs[1];
    [c0, c1, c2]
}

/// Mismatch of one-sided quadratic fits of `c_S` at 0.
pub fn boundary_from_samples(samples: &[(f64, Complex64, Complex64); 3], scale: f64) -> f64 {
    let xs = samples.map(|(e, _, _)| e);
    let plus = quadratic_at_zero(xs, samples.map(|(_, p, _)| p));
    let minus = quadratic_at_zero(xs.map(|e| -e), samples.map(|(_, _, m)| m));
    plus.iter()
        .zip(&minus)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
        / scale
}

/// Whether `c_S` extends smoothly across 0: fits quadratics to `c_S` on the
/// stencils `{ε}` and `{−ε}` and returns the largest coefficient mismatch
/// over orders 0..=2, divided by `max|ψ|`.
pub fn boundary_residual(psi: &Psi) -> Result<f64> {
    Ok(boundary_from_samples(
        &boundary_samples(psi)?,
        psi_scale(psi)?,
    ))
}

/// Sample points for the cocycle relations, from each of `(0, ∞)`,
/// `(−1, 0)` and `(−∞, −1)`.
pub fn cocycle_points() -> Vec<f64> {
    let mut pts = Vec::new();
    for k in 1..=20 {
        let u = k as f64 / 21.0;
        pts.push(10.0 * u);
        pts.push(-u);
        pts.push(-1.0 - 10.0 * u);
    }
    pts
}

/// `r1 = max|τ_s(S) c + c|`, `r2 = max|(τ_s((ST)²) + τ_s(ST) + 1) c|` for
/// an arbitrary `c`, divided by `scale`.
pub fn cocycle_residuals_of<F>(c: F, s: Complex64, scale: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Complex64,
{
    let sg = GroupElement::s();
    let st = sg.compose(&GroupElement::t())?;
    let st2 = st.compose(&st)?;
    let (mut r1, mut r2) = (0.0f64, 0.0f64);
    for t in cocycle_points() {
        let a = tau_action(&sg, s, &c, t)? + c(t);
        let b = tau_action(&st2, s, &c, t)? + tau_action(&st, s, &c, t)? + c(t);
        r1 = r1.max(a.norm());
        r2 = r2.max(b.norm());
    }
    Ok((r1 / scale, r2 / scale))
}

/// Cocycle residuals of `c_S` built from `ψ` (with `c_T = 0`).
pub fn cocycle_residuals(psi: &Psi) -> Result<(f64, f64)> {
    let nan = Complex64::new(f64::NAN, f64::NAN);
    let c = |t: f64| c_s(psi, t).unwrap_or(nan);
    let (r1, r2) = cocycle_residuals_of(c, psi.s(), psi_scale(psi)?)?;
    // a NaN from a failed evaluation must not read as a pass
    Ok((nan_to_inf(r1), nan_to_inf(r2)))
}

fn nan_to_inf(x: f64) -> f64 {
    if x.is_nan() {
        f64::INFINITY
    } else {
        x
    }
}
