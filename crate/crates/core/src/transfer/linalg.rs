//! Small dense complex matrices: LU with partial pivoting, determinants and
//! shifted inverse iteration.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::param("matrix rows must all have length n"));
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `I - sign * self`.
    pub fn identity_minus(&self, sign: f64) -> CMatrix {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|x| *x *= -sign);
        for i in 0..self.n {
            out[(i, i)] += ONE;
        }
        out
    }

    pub fn conj(&self) -> CMatrix {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn lu(&self) -> Lu {
        Lu::factor(self.clone())
    }

    pub fn det(&self) -> Complex64 {
        self.lu().det()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// `P A = L U`, packed in one matrix; `singular` records an exactly zero pivot.
#[derive(Clone, Debug)]
pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
    parity: f64,
    singular: bool,
}

impl Lu {
    fn factor(mut a: CMatrix) -> Lu {
        let n = a.n;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut parity = 1.0;
        let mut singular = false;
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, a[(i, k)].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if pmax == 0.0 {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                parity = -parity;
            }
            let pivot = a[(k, k)];
            for i in k + 1..n {
                let factor = a[(i, k)] / pivot;
                a[(i, k)] = factor;
                for j in k + 1..n {
                    let u = a[(k, j)];
                    a[(i, j)] -= factor * u;
                }
            }
        }
        Lu {
            lu: a,
            perm,
            parity,
            singular,
        }
    }

    pub fn det(&self) -> Complex64 {
        if self.singular {
            return ZERO;
        }
        (0..self.lu.n).fold(Complex64::new(self.parity, 0.0), |acc, i| {
            acc * self.lu[(i, i)]
        })
    }

    /// Solves `A x = b`; zero pivots are replaced by a tiny multiple of the
    /// largest entry so shifts sitting exactly on an eigenvalue still work.
    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.n;
        let tiny = self.lu.max_abs().max(1.0) * f64::EPSILON * f64::EPSILON;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= l * xj;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= u * xj;
            }
            let mut d = self.lu[(i, i)];
            if d == ZERO {
                d = Complex64::new(tiny, 0.0);
            }
            x[i] /= d;
        }
        x
    }
}

fn inf_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalue of `a` closest to `shift` and its eigenvector (∞-normalized),
/// by shifted inverse iteration from a fixed start vector.
pub fn inverse_iteration(a: &CMatrix, shift: Complex64) -> Result<(Complex64, Vec<Complex64>)> {
    const MAX_ITER: usize = 500;
    let n = a.dim();
    let mut shifted = a.clone();
    for i in 0..n {
        shifted[(i, i)] -= shift;
    }
    let lu = shifted.lu();
    let mut v: Vec<Complex64> = (0..n)
        .map(|j| Complex64::new(1.0 + 0.25 * ((j + 1) as f64).sin(), 0.0))
        .collect();
    let scale = a.max_abs().max(1.0);
    let mut last = Complex64::new(f64::NAN, f64::NAN);
    for _ in 0..MAX_ITER {
        let w = lu.solve(&v);
        let norm = inf_norm(&w);
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NonConvergence("inverse iteration broke down".into()));
        }
        v = w.iter().map(|z| z / norm).collect();
        let av = a.mul_vec(&v);
        let num: Complex64 = v.iter().zip(&av).map(|(x, y)| x.conj() * y).sum();
        let den: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        let lambda = num / den;
        let resid = inf_norm(
            &av.iter()
                .zip(&v)
                .map(|(y, x)| y - lambda * x)
                .collect::<Vec<_>>(),
        );
        let settled = (lambda - last).norm() <= 4.0 * f64::EPSILON * scale;
        if resid <= 1e-14 * scale || settled {
            return Ok((lambda, v));
        }
        last = lambda;
    }
    Err(Error::NonConvergence(format!(
        "inverse iteration near {shift} did not converge in {MAX_ITER} steps"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn det_of_known_matrices() {
        let m = CMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(1.0, 1.0)],
            vec![c(0.0, 3.0), c(4.0, 0.0)],
        ])
        .unwrap();
        // 8 - (1+i)(3i) = 8 - 3i + 3 = 11 - 3i
        assert!((m.det() - c(11.0, -3.0)).norm() < 1e-14);
        assert_eq!(CMatrix::zeros(5).identity_minus(1.0).det(), c(1.0, 0.0));
        assert_eq!(CMatrix::zeros(3).det(), c(0.0, 0.0));
    }

    #[test]
    fn det_needs_pivoting() {
        let m = CMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(5.0, 0.0)],
        ])
        .unwrap();
        assert!((m.det() - c(-5.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn solve_round_trip() {
        let m = CMatrix::from_rows(vec![
            vec![c(4.0, 1.0), c(1.0, 0.0), c(0.0, -2.0)],
            vec![c(1.0, 0.0), c(3.0, 0.0), c(1.0, 1.0)],
            vec![c(0.5, 0.0), c(-1.0, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let b = vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, -1.0)];
        let x = m.lu().solve(&b);
        let back = m.mul_vec(&x);
        for (u, v) in back.iter().zip(&b) {
            assert!((u - v).norm() < 1e-14);
        }
    }

    #[test]
    fn inverse_iteration_finds_nearest_diagonal() {
        let mut m = CMatrix::zeros(4);
        for (i, d) in [1.0, 2.5, -3.0, 7.0].iter().enumerate() {
            m[(i, i)] = c(*d, 0.0);
        }
        m[(0, 1)] = c(1e-3, 0.0);
        let (lambda, v) = inverse_iteration(&m, c(2.2, 0.0)).unwrap();
        assert!((lambda - c(2.5, 0.0)).norm() < 1e-12);
        assert!(v[1].norm() > 0.99);
        let (lambda, _) = inverse_iteration(&m, c(-2.0, 0.5)).unwrap();
        assert!((lambda - c(-3.0, 0.0)).norm() < 1e-12);
        // shift exactly on an eigenvalue
        let (lambda, _) = inverse_iteration(&m, c(7.0, 0.0)).unwrap();
        assert!((lambda - c(7.0, 0.0)).norm() < 1e-12);
    }
}
