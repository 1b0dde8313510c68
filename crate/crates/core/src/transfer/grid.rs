use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Collocation interval. Every inverse branch `x -> 1/(x+n)` maps it into
/// `(0, 1]`, and the neutral point 0 lands on the midpoint, so thin Bernstein
/// ellipses around it are mapped strictly inside themselves.
pub const INTERVAL_LO: f64 = 0.0;
pub const INTERVAL_HI: f64 = 2.0;

/// Chebyshev points of the first kind on `[0, 2]`, increasing, with
/// their barycentric weights.
#[derive(Clone, Debug, PartialEq)]
pub struct CollocationGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl CollocationGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::param(format!("grid size must be >= 4, got {n}")));
        }
        let center = 0.5 * (INTERVAL_LO + INTERVAL_HI);
        let half = 0.5 * (INTERVAL_HI - INTERVAL_LO);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for j in 0..n {
            let theta = (2 * j + 1) as f64 * PI / (2 * n) as f64;
            nodes.push(center - half * theta.cos());
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            weights.push(sign * theta.sin());
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Index of the node closest to `x`; ties go to the lower index.
    pub fn nearest_node(&self, x: f64) -> usize {
        let mut best = 0;
        for (j, node) in self.nodes.iter().enumerate() {
            if (node - x).abs() < (self.nodes[best] - x).abs() {
                best = j;
            }
        }
        best
    }

    /// Values of all Lagrange cardinal functions at a real point.
    pub fn cardinals(&self, x: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        if let Some(j) = self.nodes.iter().position(|&node| node == x) {
            out[j] = 1.0;
            return out;
        }
        let mut total = 0.0;
        for ((o, node), w) in out.iter_mut().zip(&self.nodes).zip(&self.weights) {
            *o = w / (x - node);
            total += *o;
        }
        out.iter_mut().for_each(|o| *o /= total);
        out
    }

    /// Cardinal functions at a complex point.
    pub fn cardinals_complex(&self, z: Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.len()];
        if let Some(j) = self
            .nodes
            .iter()
            .position(|&node| z == Complex64::new(node, 0.0))
        {
            out[j] = Complex64::new(1.0, 0.0);
            return out;
        }
        let mut total = Complex64::new(0.0, 0.0);
        for ((o, node), w) in out.iter_mut().zip(&self.nodes).zip(&self.weights) {
            *o = *w / (z - node);
            total += *o;
        }
        out.iter_mut().for_each(|o| *o /= total);
        out
    }

    /// Barycentric interpolation of node values at a real point.
    pub fn interpolate(&self, values: &[Complex64], x: f64) -> Complex64 {
        self.cardinals(x)
            .iter()
            .zip(values)
            .map(|(l, v)| v * l)
            .sum()
    }

    /// Taylor coefficients at 0 of every cardinal function, orders `0..=order`;
    /// `coeffs[j][m]` is the `x^m` coefficient of the j-th cardinal function.
    ///
    /// The cardinals are polynomials of degree `N - 1`, so the trapezoidal
    /// rule for the Cauchy integral on a circle with more than `N + order`
    /// points returns their coefficients exactly, up to rounding.
    pub fn taylor_at_zero(&self, order: usize) -> Vec<Vec<f64>> {
        const RADIUS: f64 = 0.05;
        let points = (self.len() + order + 1).next_power_of_two().max(32);
        let mut coeffs = vec![vec![0.0; order + 1]; self.len()];
        for k in 0..points {
            let theta = 2.0 * PI * k as f64 / points as f64;
            let z = Complex64::from_polar(RADIUS, theta);
            let card = self.cardinals_complex(z);
            for (j, l) in card.iter().enumerate() {
                for (m, c) in coeffs[j].iter_mut().enumerate() {
                    *c += (l * Complex64::from_polar(1.0, -(m as f64) * theta)).re;
                }
            }
        }
        for row in &mut coeffs {
            for (m, c) in row.iter_mut().enumerate() {
                *c /= points as f64 * RADIUS.powi(m as i32);
            }
        }
        coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_strictly_increasing_inside_interval() {
        let g = CollocationGrid::new(24).unwrap();
        assert!(g.nodes().windows(2).all(|w| w[0] < w[1]));
        assert!(g.nodes()[0] > INTERVAL_LO && g.nodes()[23] < INTERVAL_HI);
        for &x in g.nodes() {
            for n in 1..200 {
                let y = 1.0 / (x + n as f64);
                assert!(y > 0.0 && y <= 1.0);
                assert!(x + n as f64 >= 1.0);
            }
        }
        assert!(CollocationGrid::new(3).is_err());
    }

    #[test]
    fn interpolation_reproduces_polynomials() {
        let g = CollocationGrid::new(12).unwrap();
        let p = |x: f64| 3.0 - 2.0 * x + 0.5 * x.powi(5) - 0.01 * x.powi(11);
        let vals: Vec<Complex64> = g
            .nodes()
            .iter()
            .map(|&x| Complex64::new(p(x), 0.0))
            .collect();
        for x in [0.0, 0.01, 0.3, 1.0, 1.7, 2.0] {
            assert!((g.interpolate(&vals, x).re - p(x)).abs() < 1e-12);
        }
        assert_eq!(g.interpolate(&vals, g.nodes()[3]), vals[3]);
    }

    #[test]
    fn taylor_coefficients_of_polynomial_interpolant() {
        let g = CollocationGrid::new(24).unwrap();
        // p(x) = 1 - 2x + 3x^2 + 0.5x^4 - x^7
        let p = |x: f64| 1.0 - 2.0 * x + 3.0 * x * x + 0.5 * x.powi(4) - x.powi(7);
        let want = [1.0, -2.0, 3.0, 0.0, 0.5, 0.0, 0.0];
        let c = g.taylor_at_zero(6);
        for (m, w) in want.iter().enumerate() {
            let got: f64 = g
                .nodes()
                .iter()
                .enumerate()
                .map(|(j, &x)| p(x) * c[j][m])
                .sum();
            // rounding in the contour sum is amplified by radius^-m
            assert!(
                (got - w).abs() * 0.05f64.powi(m as i32) < 1e-12,
                "order {m}: {got} vs {w}"
            );
        }
    }

    #[test]
    fn nearest_node_is_closest() {
        let g = CollocationGrid::new(24).unwrap();
        let j = g.nearest_node(1.0);
        assert!(j == 11 || j == 12);
        for &x in g.nodes() {
            assert!((g.nodes()[j] - 1.0).abs() <= (x - 1.0).abs());
        }
        assert_eq!(g.nearest_node(-10.0), 0);
        assert_eq!(g.nearest_node(g.nodes()[5]), 5);
    }
}
