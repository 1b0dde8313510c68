//! Critical-line scan for zeros of `det(I ∓ M(1/2 + iR))` and refinement of
//! the dips into checked resonances.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::period::{reconstruct_psi, PeriodFunction};
use super::residuals::{
    boundary_residual, cocycle_residuals, three_term_residual, DEFAULT_SAMPLES,
};
use crate::error::{Error, Result};
use crate::transfer::{fredholm_det, gauss_matrix, Discretization, SpectralParameter};

pub const DEFAULT_DIP_FACTOR: f64 = 0.05;
pub const REFINE_TOL: f64 = 1e-7;

/// Discretization used for refinement when none is given. The scan grid only
/// has to separate dips; the period function needs more nodes at large `R`.
pub const REFINE_DISCRETIZATION: Discretization = Discretization {
    n: 32,
    n_max: 100,
    k: 6,
};

/// Acceptance thresholds for a refined resonance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub three_term: f64,
    pub cocycle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            three_term: 1e-6,
            cocycle: 1e-5,
        }
    }
}

/// Grid `lo, lo + step, …` up to `hi` (inclusive within rounding).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl ScanRange {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(lo > 0.0 && hi > lo && step > 0.0) || !hi.is_finite() {
            return Err(Error::param(format!(
                "scan range needs 0 < lo < hi and step > 0, got {lo}:{hi}:{step}"
            )));
        }
        if (hi - lo) / step > 1e7 {
            return Err(Error::param("scan grid has more than 1e7 points"));
        }
        Ok(Self { lo, hi, step })
    }

    pub fn points(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.lo + k as f64 * self.step).collect()
    }
}

/// A local minimum of `|d_parity|` on the scan grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DipCandidate {
    pub r: f64,
    pub parity: i8,
    pub det_abs: f64,
    /// `dip_factor × median |d_parity|` for this scan.
    pub threshold: f64,
}

/// `(d₊(R), d₋(R))` for the operator at `1/2 + iR`.
pub fn det_pair(r: f64, disc: Discretization) -> Result<(Complex64, Complex64)> {
    let m = gauss_matrix(SpectralParameter::critical(r), disc)?;
    Ok((fredholm_det(&m, 1.0), fredholm_det(&m, -1.0)))
}

/// Scan with an arbitrary determinant pair; `det_fn` must be pure.
pub fn scan_with<F>(range: ScanRange, dip_factor: f64, det_fn: F) -> Result<Vec<DipCandidate>>
where
    F: Fn(f64) -> Result<(Complex64, Complex64)> + Sync,
{
    let rs = range.points();
    let values: Vec<(f64, f64)> = rs
        .par_iter()
        .map(|&r| det_fn(r).map(|(p, m)| (p.norm(), m.norm())))
        .collect::<Result<_>>()?;

    let mut out = Vec::new();
    for (parity, pick) in [(1i8, 0usize), (-1, 1)] {
        let abs: Vec<f64> = values
            .iter()
            .map(|v| if pick == 0 { v.0 } else { v.1 })
            .collect();
        let threshold = dip_factor * median(&abs);
        for k in 1..abs.len().saturating_sub(1) {
            if abs[k] < abs[k - 1] && abs[k] <= abs[k + 1] && abs[k] < threshold {
                out.push(DipCandidate {
                    r: rs[k],
                    parity,
                    det_abs: abs[k],
                    threshold,
                });
            }
        }
    }
    out.sort_by(|a, b| a.r.total_cmp(&b.r).then(b.parity.cmp(&a.parity)));
    Ok(out)
}

fn median(v: &[f64]) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    let mut w = v.to_vec();
    w.sort_by(f64::total_cmp);
    let n = w.len();
    if n % 2 == 1 {
        w[n / 2]
    } else {
        0.5 * (w[n / 2 - 1] + w[n / 2])
    }
}

/// Dip candidates of `|det(I ∓ M(1/2 + iR))|` on the grid.
pub fn scan_critical_line(
    range: ScanRange,
    disc: Discretization,
    dip_factor: f64,
) -> Result<Vec<DipCandidate>> {
    disc.validate()?;
    scan_with(range, dip_factor, |r| det_pair(r, disc))
}

/// Brent's minimization of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn brent_minimize<F>(f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    const GOLDEN: f64 = 0.381_966_011_250_105_1;
    const MAX_ITER: usize = 200;
    let mut x = a + GOLDEN * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x)?;
    let (mut fw, mut fv) = (fx, fx);
    let (mut d, mut e) = (0.0f64, 0.0f64);
    for _ in 0..MAX_ITER {
        let m = 0.5 * (a + b);
        let tol1 = tol * 0.5 + 1e-15 * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            return Ok((x, fx));
        }
        let mut golden = true;
        if e.abs() > tol1 {
            // parabola through (v, fv), (w, fw), (x, fx)
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            if p.abs() < (0.5 * q * e).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if m > x { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x < m { b - x } else { a - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let fu = f(u)?;
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            (v, fv, w, fw, x, fx) = (w, fw, x, fx, u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                (v, fv, w, fw) = (w, fw, u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    Err(Error::NonConvergence(format!(
        "Brent minimization did not reach tolerance {tol:e}"
    )))
}

/// A refined dip with every residual check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResonanceResult {
    pub r: f64,
    pub parity: i8,
    pub lambda: f64,
    pub det_abs_min: f64,
    /// Eigenvalue of `M` used for the period function.
    pub mu_re: f64,
    pub mu_im: f64,
    pub three_term_residual: f64,
    pub boundary_residual: f64,
    pub cocycle_r1: f64,
    pub cocycle_r2: f64,
    pub accepted: bool,
    pub n: usize,
    pub n_max: usize,
    pub k: usize,
    pub step: f64,
}

/// Residual checks of the period function at `1/2 + iR` with the given
/// parity, packaged as a result.
pub fn evaluate_at(
    r: f64,
    parity: i8,
    disc: Discretization,
    step: f64,
    tol: Tolerances,
) -> Result<ResonanceResult> {
    let m = gauss_matrix(SpectralParameter::critical(r), disc)?;
    let sign = f64::from(parity);
    let det_abs_min = fredholm_det(&m, sign).norm();
    let pf = PeriodFunction::from_operator(m, sign)?;
    let psi = reconstruct_psi(&pf);
    let three_term = three_term_residual(&psi, DEFAULT_SAMPLES)?;
    let boundary = boundary_residual(&psi)?;
    let (r1, r2) = cocycle_residuals(&psi)?;
    // boundary is reported, not gating: one-sided fits near 0 are coarse
    let accepted = three_term < tol.three_term && r1 < tol.cocycle && r2 < tol.cocycle;
    Ok(ResonanceResult {
        r,
        parity,
        lambda: 0.25 + r * r,
        det_abs_min,
        mu_re: pf.mu().re,
        mu_im: pf.mu().im,
        three_term_residual: three_term,
        boundary_residual: boundary,
        cocycle_r1: r1,
        cocycle_r2: r2,
        accepted,
        n: disc.n,
        n_max: disc.n_max,
        k: disc.k,
        step,
    })
}

/// Minimizes `log|d_parity(R)|` on `[R0 − step, R0 + step]` and checks the
/// period function at the minimizer.
pub fn refine_resonance(
    r0: f64,
    parity: i8,
    disc: Discretization,
    step: f64,
    tol: Tolerances,
) -> Result<ResonanceResult> {
    if parity != 1 && parity != -1 {
        return Err(Error::param(format!(
            "parity must be +1 or -1, got {parity}"
        )));
    }
    disc.validate()?;
    let sign = f64::from(parity);
    let objective = |r: f64| -> Result<f64> {
        let m = gauss_matrix(SpectralParameter::critical(r), disc)?;
        Ok(fredholm_det(&m, sign).norm().max(f64::MIN_POSITIVE).ln())
    };
    let (lo, hi) = (r0 - step, r0 + step);
    let (r, _) = brent_minimize(objective, lo, hi, REFINE_TOL)?;
    if r - lo < 2.0 * REFINE_TOL || hi - r < 2.0 * REFINE_TOL {
        return Err(Error::NonConvergence(format!(
            "no interior minimum of |d| near R = {r0}"
        )));
    }
    evaluate_at(r, parity, disc, step, tol)
}

/// Outcome of refining one dip: a result or the reason it failed.
#[derive(Clone, Debug)]
pub struct RefinedDip {
    pub candidate: DipCandidate,
    pub result: std::result::Result<ResonanceResult, String>,
}

/// Scan with `scan_disc`, then refine every candidate in parallel with
/// `refine_disc`; output in scan order.
pub fn find_resonances(
    range: ScanRange,
    scan_disc: Discretization,
    refine_disc: Discretization,
    dip_factor: f64,
    tol: Tolerances,
) -> Result<Vec<RefinedDip>> {
    refine_disc.validate()?;
    let candidates = scan_critical_line(range, scan_disc, dip_factor)?;
    Ok(candidates
        .par_iter()
        .map(|c| RefinedDip {
            candidate: *c,
            result: refine_resonance(c.r, c.parity, refine_disc, range.step, tol)
                .map_err(|e| e.to_string()),
        })
        .collect())
}

/// `s (1 − s)`.
pub fn lambda_of(s: Complex64) -> Complex64 {
    s * (1.0 - s)
}
