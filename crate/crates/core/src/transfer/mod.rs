//! Transfer operators of the Farey map.
//!
//! Two forms live here. The two-branch operator
//! `(L_s f)(t) = f(t+1) + (t+1)^{-2s} f(t/(t+1))` acts on arbitrary
//! functions and is only ever evaluated pointwise (residual checks). For
//! determinants and eigenpairs we sum the translation branch out, which
//! gives the one-branch operator
//!
//! ```text
//! (G_s h)(x) = Σ_{n≥1} (x+n)^{-2s} h(1/(x+n))
//! ```
//!
//! and discretize it by collocation at Chebyshev nodes of `[0, 2]`.
//! The n-sum is truncated at `n_max`; the remainder is handled by expanding
//! each cardinal function in its Taylor series at 0 and summing against
//! Hurwitz zeta values.

pub mod grid;
pub mod hurwitz;
pub mod linalg;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::psl2::GroupElement;

pub use grid::CollocationGrid;
pub use hurwitz::hurwitz_zeta;
pub use linalg::CMatrix;

pub const DEFAULT_N: usize = 24;
pub const DEFAULT_N_MAX: usize = 50;
pub const DEFAULT_TAYLOR_ORDER: usize = 4;
pub const MAX_TAYLOR_ORDER: usize = 6;

/// `s = sigma + i R`, with Laplace eigenvalue `lambda = s (1 - s)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralParameter {
    pub sigma: f64,
    pub r: f64,
}

impl SpectralParameter {
    pub fn new(sigma: f64, r: f64) -> Self {
        Self { sigma, r }
    }

    pub fn critical(r: f64) -> Self {
        Self { sigma: 0.5, r }
    }

    pub fn s(&self) -> Complex64 {
        Complex64::new(self.sigma, self.r)
    }

    pub fn lambda(&self) -> Complex64 {
        let s = self.s();
        s * (1.0 - s)
    }
}

impl From<Complex64> for SpectralParameter {
    fn from(s: Complex64) -> Self {
        Self {
            sigma: s.re,
            r: s.im,
        }
    }
}

/// Discretization settings shared by every operator matrix of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Discretization {
    pub n: usize,
    pub n_max: usize,
    pub k: usize,
}

impl Default for Discretization {
    fn default() -> Self {
        Self {
            n: DEFAULT_N,
            n_max: DEFAULT_N_MAX,
            k: DEFAULT_TAYLOR_ORDER,
        }
    }
}

impl Discretization {
    pub fn new(n: usize, n_max: usize, k: usize) -> Result<Self> {
        let d = Self { n, n_max, k };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 4 {
            return Err(Error::param(format!("N must be >= 4, got {}", self.n)));
        }
        if self.n_max < 10 {
            return Err(Error::param(format!(
                "n_max must be >= 10, got {}",
                self.n_max
            )));
        }
        if self.k > MAX_TAYLOR_ORDER {
            return Err(Error::param(format!(
                "tail Taylor order must be <= {MAX_TAYLOR_ORDER}, got {}",
                self.k
            )));
        }
        Ok(())
    }
}

/// `x^{-w}` for `x > 0` on the principal branch.
pub(crate) fn real_pow(x: f64, w: Complex64) -> Complex64 {
    (-w * x.ln()).exp()
}

/// Collocation matrix of the accelerated operator at one `s`.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    s: SpectralParameter,
    disc: Discretization,
    grid: CollocationGrid,
    taylor: Vec<Vec<f64>>,
    entries: CMatrix,
}

impl OperatorMatrix {
    pub fn s(&self) -> SpectralParameter {
        self.s
    }

    pub fn discretization(&self) -> Discretization {
        self.disc
    }

    pub fn grid(&self) -> &CollocationGrid {
        &self.grid
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// Applies the accelerated operator to the interpolant of `values` at an
    /// arbitrary `x >= 0`, with the same truncation and tail as the matrix.
    pub fn apply_at(&self, values: &[Complex64], x: f64) -> Result<Complex64> {
        if !(x >= grid::INTERVAL_LO) {
            return Err(Error::domain(format!(
                "accelerated operator evaluated at x = {x} < 0"
            )));
        }
        let two_s = 2.0 * self.s.s();
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 1..=self.disc.n_max {
            let y = x + n as f64;
            acc += real_pow(y, two_s) * self.grid.interpolate(values, 1.0 / y);
        }
        let shift = x + self.disc.n_max as f64 + 1.0;
        for m in 0..=self.disc.k {
            let c: Complex64 = self.taylor.iter().zip(values).map(|(t, v)| v * t[m]).sum();
            acc += c * hurwitz_zeta(two_s + m as f64, shift)?;
        }
        Ok(acc)
    }
}

/// Builds `M[i][j] = Σ_{n=1}^{n_max} (x_i+n)^{-2s} ℓ_j(1/(x_i+n)) + tail_j(x_i)`.
pub fn gauss_matrix(s: SpectralParameter, disc: Discretization) -> Result<OperatorMatrix> {
    disc.validate()?;
    if !(s.sigma >= 0.5) || !s.r.is_finite() {
        return Err(Error::param(format!(
            "accelerated operator needs Re s >= 1/2, got s = {}",
            s.s()
        )));
    }
    let grid = CollocationGrid::new(disc.n)?;
    let taylor = grid.taylor_at_zero(disc.k);
    let two_s = 2.0 * s.s();
    let n = disc.n;

    let mut rows = Vec::with_capacity(n);
    for &x in grid.nodes() {
        let mut row = vec![Complex64::new(0.0, 0.0); n];
        for k in 1..=disc.n_max {
            let y = x + k as f64;
            let weight = real_pow(y, two_s);
            for (r, l) in row.iter_mut().zip(grid.cardinals(1.0 / y)) {
                *r += weight * l;
            }
        }
        let shift = x + disc.n_max as f64 + 1.0;
        for m in 0..=disc.k {
            let z = hurwitz_zeta(two_s + m as f64, shift)?;
            for (r, t) in row.iter_mut().zip(&taylor) {
                *r += z * t[m];
            }
        }
        rows.push(row);
    }
    Ok(OperatorMatrix {
        s,
        disc,
        grid,
        taylor,
        entries: CMatrix::from_rows(rows)?,
    })
}

/// `det(I - sign * M)`.
pub fn fredholm_det(m: &OperatorMatrix, sign: f64) -> Complex64 {
    m.entries.identity_minus(sign).det()
}

/// Eigenvalue of `M` closest to `mu`, with its node-value eigenvector scaled
/// to 1 at the node nearest `x = 1`.
pub fn eigenpair_near(m: &OperatorMatrix, mu: Complex64) -> Result<(Complex64, Vec<Complex64>)> {
    let (lambda, v) = linalg::inverse_iteration(&m.entries, mu)?;
    let anchor = v[m.grid.nearest_node(1.0)];
    if anchor.norm() == 0.0 {
        return Err(Error::NonConvergence(
            "eigenvector vanishes at the normalization node".into(),
        ));
    }
    Ok((lambda, v.iter().map(|z| z / anchor).collect()))
}

/// `τ_s(g) f (t) = |(g^{-1})'(t)|^s f(g^{-1} t) = |c t + d|^{-2s} f(g^{-1} t)`
/// where `[[a, b], [c, d]] = g^{-1}`.
///
/// Powers are taken of the positive real `|c t + d|` on the principal branch.
pub fn tau_action<F>(g: &GroupElement, s: Complex64, f: F, t: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let h = g.inverse();
    let den = h.c() as f64 * t + h.d() as f64;
    if den == 0.0 {
        return Err(Error::Pole(t));
    }
    let image = (h.a() as f64 * t + h.b() as f64) / den;
    Ok(real_pow(den.abs(), 2.0 * s) * f(image))
}

/// The two-branch operator at `t > 0`: `f(t+1) + (t+1)^{-2s} f(t/(t+1))`.
pub fn farey_apply<F>(s: Complex64, f: F, t: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    f(t + 1.0) + real_pow(t + 1.0, 2.0 * s) * f(t / (t + 1.0))
}
