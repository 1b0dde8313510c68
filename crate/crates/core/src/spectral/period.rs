//! Eigenfunctions of the accelerated operator and the period functions built
//! from them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::transfer::{eigenpair_near, grid, real_pow, OperatorMatrix, SpectralParameter};

/// Eigenpair residual accepted at construction, relative to `‖h‖∞`.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-8;

/// An eigenfunction `h` of the accelerated operator with eigenvalue `mu`
/// close to `parity = ±1`, known by its node values.
#[derive(Clone, Debug)]
pub struct PeriodFunction {
    matrix: OperatorMatrix,
    parity: f64,
    mu: Complex64,
    node_values: Vec<Complex64>,
}

impl PeriodFunction {
    /// Takes the eigenpair of `matrix` nearest `parity`.
    pub fn from_operator(matrix: OperatorMatrix, parity: f64) -> Result<Self> {
        if parity != 1.0 && parity != -1.0 {
            return Err(Error::param(format!(
                "parity must be +1 or -1, got {parity}"
            )));
        }
        let (mu, node_values) = eigenpair_near(&matrix, Complex64::new(parity, 0.0))?;
        let pf = Self {
            matrix,
            parity,
            mu,
            node_values,
        };
        let r = pf.eigen_residual();
        if !(r < EIGEN_RESIDUAL_TOL) {
            return Err(Error::NonConvergence(format!(
                "eigenpair residual {r:e} exceeds {EIGEN_RESIDUAL_TOL:e}"
            )));
        }
        Ok(pf)
    }

    /// `‖M h − μ h‖∞ / ‖h‖∞`.
    pub fn eigen_residual(&self) -> f64 {
        let mh = self.matrix.entries().mul_vec(&self.node_values);
        let num = mh
            .iter()
            .zip(&self.node_values)
            .map(|(a, b)| (a - self.mu * b).norm())
            .fold(0.0, f64::max);
        let den = self
            .node_values
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        num / den
    }

    pub fn s(&self) -> SpectralParameter {
        self.matrix.s()
    }

    pub fn parity(&self) -> f64 {
        self.parity
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    pub fn node_values(&self) -> &[Complex64] {
        &self.node_values
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    /// Copy with node values multiplied by `c`.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            node_values: self.node_values.iter().map(|v| v * c).collect(),
            ..self.clone()
        }
    }

    /// Copy whose reconstruction uses the opposite parity sign.
    pub fn with_flipped_parity(&self) -> Self {
        Self {
            parity: -self.parity,
            ..self.clone()
        }
    }

    /// `h(y)` for `y >= 0`: interpolation on the grid, and the eigen-relation
    /// `h = μ^{-1} G h` beyond it.
    pub fn h(&self, y: f64) -> Result<Complex64> {
        if !(y >= grid::INTERVAL_LO) || !y.is_finite() {
            return Err(Error::domain(format!("h evaluated at {y}")));
        }
        if y <= grid::INTERVAL_HI {
            Ok(self.matrix.grid().interpolate(&self.node_values, y))
        } else {
            Ok(self.matrix.apply_at(&self.node_values, y)? / self.mu)
        }
    }
}

/// The period function reconstructed from `h`:
/// `ψ(x) = h(x − 1)` for `x > 1`, `ψ(x) = ε x^{-2s} h(1/x − 1)` for
/// `0 < x <= 1`.
///
/// When `G h = ε h` exactly this equals `h(x) + ε x^{-2s} h(1/x)` on all of
/// `(0, ∞)`, which solves the three-term equation.
#[derive(Clone, Debug)]
pub struct Psi {
    pf: PeriodFunction,
}

pub fn reconstruct_psi(pf: &PeriodFunction) -> Psi {
    Psi { pf: pf.clone() }
}

impl Psi {
    pub fn period_function(&self) -> &PeriodFunction {
        &self.pf
    }

    pub fn s(&self) -> Complex64 {
        self.pf.s().s()
    }

    pub fn eval(&self, x: f64) -> Result<Complex64> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::domain(format!(
                "psi evaluated at {x}, outside (0, inf)"
            )));
        }
        if x > 1.0 {
            self.pf.h(x - 1.0)
        } else {
            Ok(self.pf.parity * real_pow(x, 2.0 * self.s()) * self.pf.h(1.0 / x - 1.0)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::{gauss_matrix, Discretization};

    fn gauss_pf() -> PeriodFunction {
        let m = gauss_matrix(SpectralParameter::new(1.0, 0.0), Discretization::default()).unwrap();
        PeriodFunction::from_operator(m, 1.0).unwrap()
    }

    #[test]
    fn gauss_density_everywhere() {
        let pf = gauss_pf();
        assert!(pf.eigen_residual() < 1e-12);
        // normalized to 1 at the node nearest 1, so h = c / (1 + y)
        let grid = pf.matrix().grid();
        let c = 1.0 + grid.nodes()[grid.nearest_node(1.0)];
        for y in [0.0, 0.3, 1.0, 1.999, 2.5, 10.0, 123.0] {
            let got = pf.h(y).unwrap();
            assert!((got - c / (1.0 + y)).norm() < 1e-9, "y={y}: {got}");
        }
        assert!(pf.h(-0.1).is_err());
    }

    #[test]
    fn gauss_period_function_is_inverse() {
        // h = c/(1+x) at s = 1: ψ(x) = c/x on both branches
        let pf = gauss_pf();
        let psi = reconstruct_psi(&pf);
        let c = pf.h(0.0).unwrap();
        for x in [0.05, 0.5, 1.0, 1.0 + 1e-12, 3.0, 40.0] {
            let got = psi.eval(x).unwrap();
            assert!(
                (got - c / x).norm() < 1e-8 * (1.0 / x).max(1.0),
                "x={x}: {got}"
            );
        }
        assert!(psi.eval(0.0).is_err() && psi.eval(-1.0).is_err());
    }

    #[test]
    fn linear_in_h() {
        let pf = gauss_pf();
        let k = Complex64::new(2.0, -3.0);
        let (a, b) = (reconstruct_psi(&pf), reconstruct_psi(&pf.scaled(k)));
        for x in [0.2, 0.9, 1.7, 15.0] {
            assert!((b.eval(x).unwrap() - k * a.eval(x).unwrap()).norm() < 1e-13);
        }
    }

    #[test]
    fn rejects_bad_parity() {
        let m = gauss_matrix(SpectralParameter::new(1.0, 0.0), Discretization::default()).unwrap();
        assert!(PeriodFunction::from_operator(m, 0.5).is_err());
    }
}
