//! Exact arithmetic in PSL(2,Z) and its Möbius action on P¹(R).
//!
//! Elements are stored as sign-normalized integer matrices: `c > 0`, or
//! `c == 0` and `a > 0`. Since `g` and `-g` act identically, this picks one
//! canonical representative per group element, so derived `Eq`/`Hash`
//! coincide with equality in the group.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

fn mul(x: i128, y: i128) -> Result<i128> {
    x.checked_mul(y).ok_or(Error::Overflow("matrix product"))
}

fn add(x: i128, y: i128) -> Result<i128> {
    x.checked_add(y).ok_or(Error::Overflow("matrix product"))
}

impl GroupElement {
    /// Builds and normalizes `[[a, b], [c, d]]`; fails unless `ad - bc = 1`.
    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Result<Self> {
        let det = add(
            mul(a, d)?,
            mul(b, c)?
                .checked_neg()
                .ok_or(Error::Overflow("determinant"))?,
        )?;
        if det != 1 {
            return Err(Error::domain(format!(
                "[[{a}, {b}], [{c}, {d}]] has determinant {det}, expected 1"
            )));
        }
        Ok(Self::normalized(a, b, c, d))
    }

    fn normalized(a: i128, b: i128, c: i128, d: i128) -> Self {
        if c < 0 || (c == 0 && a < 0) {
            Self {
                a: -a,
                b: -b,
                c: -c,
                d: -d,
            }
        } else {
            Self { a, b, c, d }
        }
    }

    pub fn identity() -> Self {
        Self::normalized(1, 0, 0, 1)
    }

    /// `S = [[0, 1], [-1, 0]]`, stored as `[[0, -1], [1, 0]]`.
    pub fn s() -> Self {
        Self::normalized(0, 1, -1, 0)
    }

    /// `T = [[1, 1], [0, 1]]`, the translation `x -> x + 1`.
    pub fn t() -> Self {
        Self::normalized(1, 1, 0, 1)
    }

    /// `T1 = [[1, 0], [1, 1]]`.
    pub fn t1() -> Self {
        Self::normalized(1, 0, 1, 1)
    }

    /// `T2 = [[1, 1], [0, 1]]` (equal to `T`).
    pub fn t2() -> Self {
        Self::t()
    }

    pub fn a(&self) -> i128 {
        self.a
    }
    pub fn b(&self) -> i128 {
        self.b
    }
    pub fn c(&self) -> i128 {
        self.c
    }
    pub fn d(&self) -> i128 {
        self.d
    }

    pub fn entries(&self) -> [i128; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// The representative `-g`, which is the same group element.
    pub fn negate(&self) -> [i128; 4] {
        [-self.a, -self.b, -self.c, -self.d]
    }

    pub fn compose(&self, h: &GroupElement) -> Result<GroupElement> {
        let a = add(mul(self.a, h.a)?, mul(self.b, h.c)?)?;
        let b = add(mul(self.a, h.b)?, mul(self.b, h.d)?)?;
        let c = add(mul(self.c, h.a)?, mul(self.d, h.c)?)?;
        let d = add(mul(self.c, h.b)?, mul(self.d, h.d)?)?;
        Ok(Self::normalized(a, b, c, d))
    }

    pub fn inverse(&self) -> GroupElement {
        Self::normalized(self.d, -self.b, -self.c, self.a)
    }

    /// `g^n` for `n >= 0` by repeated squaring.
    pub fn pow(&self, mut n: u32) -> Result<GroupElement> {
        let mut base = *self;
        let mut acc = Self::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.compose(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.compose(&base)?;
            }
        }
        Ok(acc)
    }

    /// `h g h^{-1}`.
    pub fn conjugate_by(&self, h: &GroupElement) -> Result<GroupElement> {
        h.compose(self)?.compose(&h.inverse())
    }

    /// Absolute value of the trace; well defined on PSL(2,Z).
    pub fn trace(&self) -> u128 {
        (self.a + self.d).unsigned_abs()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.trace() > 2
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Boundary action `x -> (a x + b) / (c x + d)` on P¹(R).
    pub fn mobius(&self, x: ExtendedReal) -> ExtendedReal {
        let (a, b, c, d) = (self.a as f64, self.b as f64, self.c as f64, self.d as f64);
        match x {
            ExtendedReal::Infinity => {
                if self.c == 0 {
                    ExtendedReal::Infinity
                } else {
                    ExtendedReal::Finite(a / c)
                }
            }
            ExtendedReal::Finite(x) => {
                let den = c * x + d;
                if den == 0.0 {
                    ExtendedReal::Infinity
                } else {
                    ExtendedReal::Finite((a * x + b) / den)
                }
            }
        }
    }

    /// Derivative of the Möbius map at a real point, `1 / (c t + d)^2`.
    pub fn derivative(&self, t: f64) -> Result<f64> {
        let den = self.c as f64 * t + self.d as f64;
        if den == 0.0 {
            return Err(Error::Pole(t));
        }
        Ok(1.0 / (den * den))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// A point of P¹(R): a finite real or the single unsigned point at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    Infinity,
}

impl ExtendedReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(x) => Some(x),
            ExtendedReal::Infinity => None,
        }
    }

    /// Chordal distance on P¹(R); 0 iff equal, ∞ is at distance
    /// `1/sqrt(1+x^2)` from `x`.
    pub fn chordal_distance(self, other: ExtendedReal) -> f64 {
        use ExtendedReal::*;
        match (self, other) {
            (Infinity, Infinity) => 0.0,
            (Finite(x), Infinity) | (Infinity, Finite(x)) => 1.0 / (1.0 + x * x).sqrt(),
            (Finite(x), Finite(y)) => (x - y).abs() / ((1.0 + x * x).sqrt() * (1.0 + y * y).sqrt()),
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(x: f64) -> Self {
        ExtendedReal::Finite(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i128, b: i128, c: i128, d: i128) -> GroupElement {
        GroupElement::new(a, b, c, d).unwrap()
    }

    #[test]
    fn compose_examples() {
        let g = GroupElement::t1().compose(&GroupElement::t2()).unwrap();
        assert_eq!(g.entries(), [1, 1, 1, 2]);
        assert_eq!(g.compose(&GroupElement::identity()).unwrap(), g);
        let s = GroupElement::s();
        assert!(s.compose(&s).unwrap().is_identity());
    }

    #[test]
    fn modular_relations() {
        let s = GroupElement::s();
        let tinv_s = GroupElement::t().inverse().compose(&s).unwrap();
        assert!(tinv_s.pow(3).unwrap().is_identity());
        assert!(!tinv_s.is_identity());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(GroupElement::t().inverse().entries(), [1, -1, 0, 1]);
        assert!(GroupElement::identity().inverse().is_identity());
        // [[2,-1],[-1,1]] normalizes to [[-2,1],[1,-1]]
        assert_eq!(m(1, 1, 1, 2).inverse(), m(2, -1, -1, 1));
        assert_eq!(m(1, 1, 1, 2).inverse().entries(), [-2, 1, 1, -1]);
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(
            GroupElement::s().mobius(2.0.into()),
            ExtendedReal::Finite(-0.5)
        );
        assert_eq!(
            GroupElement::t().mobius(ExtendedReal::Infinity),
            ExtendedReal::Infinity
        );
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let y = m(1, 1, 1, 2).mobius(phi.into()).finite().unwrap();
        assert!((y - phi).abs() < 1e-15);
        // pole and image of infinity
        assert_eq!(m(1, 1, 1, 2).mobius((-2.0).into()), ExtendedReal::Infinity);
        assert_eq!(
            m(1, 1, 1, 2).mobius(ExtendedReal::Infinity),
            ExtendedReal::Finite(1.0)
        );
    }

    #[test]
    fn hyperbolic_classification() {
        assert!(!GroupElement::t().is_hyperbolic());
        assert!(m(1, 1, 1, 2).is_hyperbolic());
        assert!(!GroupElement::s().is_hyperbolic());
        assert_eq!(m(1, 1, 1, 2).trace(), 3);
    }

    #[test]
    fn normalization_identifies_sign() {
        let g = m(2, 1, 1, 1);
        let [a, b, c, d] = g.negate();
        assert_eq!(GroupElement::new(a, b, c, d).unwrap(), g);
        assert_eq!(m(-1, 0, 0, -1), GroupElement::identity());
        assert!(m(0, 1, -1, 0).c() > 0);
    }

    #[test]
    fn bad_determinant_rejected() {
        assert!(matches!(
            GroupElement::new(2, 0, 0, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn overflow_is_reported() {
        let big = m(1, 1 << 100, 0, 1);
        assert!(matches!(
            big.compose(&m(1, 0, 1 << 100, 1)),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn derivative_and_pole() {
        let g = m(1, 1, 1, 2);
        assert_eq!(g.derivative(0.0).unwrap(), 0.25);
        assert!(matches!(g.derivative(-2.0), Err(Error::Pole(_))));
    }
}
