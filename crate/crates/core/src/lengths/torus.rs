//! The flat torus `R/Z` as a toy model: one closed geodesic of length 1 in
//! each direction, zeta function `(1 - e^{-s})^2`, spectrum `(2πk)^2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `(1 - e^{-s})^2`.
pub fn torus_zeta(s: Complex64) -> Complex64 {
    let u = 1.0 - (-s).exp();
    u * u
}

fn torus_zeta_d1(s: Complex64) -> Complex64 {
    let e = (-s).exp();
    2.0 * (1.0 - e) * e
}

fn torus_zeta_d2(s: Complex64) -> Complex64 {
    let e = (-s).exp();
    2.0 * e * (2.0 * e - 1.0)
}

/// Laplace spectrum up to `|k| <= k_max` as `(eigenvalue, multiplicity)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusSpectrum {
    pub k_max: u32,
    pub eigenvalues: Vec<(f64, u32)>,
}

pub fn torus_spectrum(k_max: u32) -> TorusSpectrum {
    let eigenvalues = (0..=k_max)
        .map(|k| {
            let v = 2.0 * PI * k as f64;
            (v * v, if k == 0 { 1 } else { 2 })
        })
        .collect();
    TorusSpectrum { k_max, eigenvalues }
}

/// A located zero with its numerically determined order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusZero {
    pub s: Complex64,
    pub order: u32,
    /// `|f'(s)|` and `|f''(s)|` from central differences.
    pub d1: f64,
    pub d2: f64,
}

const DIFF_STEP: f64 = 1e-4;

fn order_of(f: impl Fn(Complex64) -> Complex64, s: Complex64) -> (u32, f64, f64) {
    let h = DIFF_STEP;
    let (fp, f0, fm) = (f(s + h), f(s), f(s - h));
    let d1 = ((fp - fm) / (2.0 * h)).norm();
    let d2 = ((fp - 2.0 * f0 + fm) / (h * h)).norm();
    let order = if d1 > 1e-6 {
        1
    } else if d2 > 0.1 {
        2
    } else {
        3
    };
    (order, d1, d2)
}

/// Zeros of `torus_zeta` in `{x + 2πi y : |x| <= x_max, |y| <= y_max}`.
///
/// Local minima of `|ζ_T|` on a grid seed Newton's method for `f / f'`,
/// whose zeros are simple whatever the multiplicity of the zeros of `f`.
pub fn torus_zeros(x_max: f64, y_max: f64) -> Result<Vec<TorusZero>> {
    if !(x_max > 0.0 && y_max > 0.0) {
        return Err(Error::param("scan box must have positive size"));
    }
    let (nx, ny) = (
        (40.0 * x_max).ceil() as usize,
        (100.0 * y_max).ceil() as usize,
    );
    let point = |i: usize, j: usize| {
        Complex64::new(
            -x_max + 2.0 * x_max * i as f64 / nx as f64,
            2.0 * PI * (-y_max + 2.0 * y_max * j as f64 / ny as f64),
        )
    };
    let grid: Vec<Vec<f64>> = (0..=nx)
        .map(|i| (0..=ny).map(|j| torus_zeta(point(i, j)).norm()).collect())
        .collect();

    let mut zeros: Vec<TorusZero> = Vec::new();
    for i in 0..=nx {
        for j in 0..=ny {
            let v = grid[i][j];
            let is_min = (i.saturating_sub(1)..=(i + 1).min(nx))
                .all(|a| (j.saturating_sub(1)..=(j + 1).min(ny)).all(|b| grid[a][b] >= v));
            if !is_min || v > 0.1 {
                continue;
            }
            let Some(s) = newton_root(point(i, j)) else {
                continue;
            };
            let inside = s.re.abs() <= x_max + 1e-12 && (s.im / (2.0 * PI)).abs() <= y_max + 1e-12;
            if !inside || zeros.iter().any(|z| (z.s - s).norm() < 1e-6) {
                continue;
            }
            let (order, d1, d2) = order_of(torus_zeta, s);
            zeros.push(TorusZero { s, order, d1, d2 });
        }
    }
    zeros.sort_by(|a, b| a.s.im.total_cmp(&b.s.im));
    Ok(zeros)
}

fn newton_root(mut s: Complex64) -> Option<Complex64> {
    for _ in 0..100 {
        let f = torus_zeta(s);
        if f == Complex64::new(0.0, 0.0) {
            return Some(s);
        }
        let (d1, d2) = (torus_zeta_d1(s), torus_zeta_d2(s));
        // u = f/f', u' = 1 - f f'' / f'^2
        let step = f * d1 / (d1 * d1 - f * d2);
        if !step.is_finite() {
            return None;
        }
        s -= step;
        if step.norm() < 1e-15 * s.norm().max(1.0) {
            return Some(s);
        }
    }
    (torus_zeta(s).norm() < 1e-20).then_some(s)
}
