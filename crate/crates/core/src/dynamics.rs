//! The Farey map `F` on `(0, ∞)`, its coding over `{T1, T2}` and
//! enumeration of its periodic orbits.
//!
//! A periodic orbit of `F` is coded by a cyclic word over the two branch
//! letters. Primitive cyclic words are represented by their minimal rotation
//! (a Lyndon word, with `L1 < L2`), which makes output order reproducible.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::psl2::GroupElement;

/// Branch letter: `L1` codes `T1 = [[1,0],[1,1]]` (orbit point in `(0,1)`),
/// `L2` codes `T2 = [[1,1],[0,1]]` (orbit point in `(1,∞)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    L1,
    L2,
}

impl Letter {
    pub fn matrix(self) -> GroupElement {
        match self {
            Letter::L1 => GroupElement::t1(),
            Letter::L2 => GroupElement::t2(),
        }
    }

    fn as_char(self) -> char {
        match self {
            Letter::L1 => '1',
            Letter::L2 => '2',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::domain("empty word"));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether both letters occur, i.e. the word codes a hyperbolic element.
    pub fn is_mixed(&self) -> bool {
        self.0.contains(&Letter::L1) && self.0.contains(&Letter::L2)
    }

    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        let n = v.len();
        v.rotate_left(k % n);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|ch| match ch {
                '1' => Ok(Letter::L1),
                '2' => Ok(Letter::L2),
                other => Err(Error::domain(format!(
                    "invalid letter {other:?} in word {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}

/// A primitive cyclic word with both letters, stored as its minimal rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace {
    canonical: Word,
}

impl Necklace {
    pub fn word(&self) -> &Word {
        &self.canonical
    }

    pub fn matrix(&self) -> GroupElement {
        // Lyndon words of trace within enumeration bounds never overflow i128.
        word_matrix(&self.canonical).expect("necklace matrix overflow")
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

impl FromStr for Necklace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        canonicalize(&s.parse()?)
    }
}

/// One step of `F`: `x/(1-x)` on `(0,1)`, `x-1` on `(1,∞)`.
pub fn farey_step(x: f64) -> Result<(f64, Letter)> {
    if !(x > 0.0) || x == 1.0 || !x.is_finite() {
        return Err(Error::domain(format!("farey_step undefined at x = {x}")));
    }
    if x < 1.0 {
        Ok((x / (1.0 - x), Letter::L1))
    } else {
        Ok((x - 1.0, Letter::L2))
    }
}

/// The first `n` branch letters of the `F`-orbit of `x`.
pub fn orbit_code(x: f64, n: usize) -> Result<Vec<Letter>> {
    let mut code = Vec::with_capacity(n);
    let mut y = x;
    for i in 0..n {
        let (next, letter) = farey_step(y).map_err(|_| {
            Error::domain(format!(
                "orbit of {x} hit a branch boundary at step {i} (iterate {y})"
            ))
        })?;
        code.push(letter);
        y = next;
    }
    Ok(code)
}

/// Ordered product of the letters' generator matrices.
pub fn word_matrix(w: &Word) -> Result<GroupElement> {
    w.letters()
        .iter()
        .try_fold(GroupElement::identity(), |acc, l| acc.compose(&l.matrix()))
}

/// Lexicographically least rotation (`L1 < L2`).
pub fn min_rotation(w: &Word) -> Word {
    let n = w.len();
    let s = w.letters();
    let mut best = 0;
    for k in 1..n {
        let cmp = (0..n)
            .map(|i| s[(k + i) % n].cmp(&s[(best + i) % n]))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal);
        if cmp == Ordering::Less {
            best = k;
        }
    }
    w.rotate(best)
}

/// False iff `w` is a proper power of a shorter word.
pub fn is_primitive(w: &Word) -> bool {
    let s = w.letters();
    let n = s.len();
    // KMP failure function: the smallest period is n - fail[n].
    let mut fail = vec![0usize; n + 1];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    let period = n - fail[n];
    !(period < n && n.is_multiple_of(period))
}

pub fn canonicalize(w: &Word) -> Result<Necklace> {
    if !w.is_mixed() {
        return Err(Error::domain(format!(
            "word {w} uses a single letter and codes a parabolic element"
        )));
    }
    if !is_primitive(w) {
        return Err(Error::domain(format!("word {w} is a proper power")));
    }
    Ok(Necklace {
        canonical: min_rotation(w),
    })
}

/// All primitive necklaces with `trace(word_matrix) <= max_trace`, sorted by
/// `(trace, word)`.
///
/// Depth-first search over prenecklaces (the Fredricksen–Kessler–Maiorana
/// tree), so every Lyndon word is visited exactly once. Products of `T1` and
/// `T2` have nonnegative entries, which makes the trace nondecreasing along
/// extensions and lets the search prune on the trace of the prefix. A mixed
/// word of length `m` has trace at least `m + 1`, bounding the depth.
pub fn enumerate_necklaces(max_trace: u64) -> Vec<(Necklace, u64)> {
    let mut out = Vec::new();
    if max_trace < 3 {
        return out;
    }
    let max_len = (max_trace - 1) as usize;
    let mut word = vec![Letter::L1];
    fkm(&mut word, 1, T1_U64, max_trace, max_len, &mut out);
    out.sort_by(|(n1, t1), (n2, t2)| t1.cmp(t2).then_with(|| n1.cmp(n2)));
    out
}

const T1_U64: [u64; 4] = [1, 0, 1, 1];

fn mul_u64(m: [u64; 4], l: Letter) -> [u64; 4] {
    let [a, b, c, d] = m;
    match l {
        // [[a,b],[c,d]] * [[1,0],[1,1]]
        Letter::L1 => [a + b, b, c + d, d],
        // [[a,b],[c,d]] * [[1,1],[0,1]]
        Letter::L2 => [a, a + b, c, c + d],
    }
}

fn fkm(
    word: &mut Vec<Letter>,
    period: usize,
    mat: [u64; 4],
    max_trace: u64,
    max_len: usize,
    out: &mut Vec<(Necklace, u64)>,
) {
    let t = word.len();
    let trace = mat[0] + mat[3];
    if t >= 2 && period == t {
        // Lyndon words of length >= 2 contain both letters.
        out.push((
            Necklace {
                canonical: Word(word.clone()),
            },
            trace,
        ));
    }
    if t == max_len {
        return;
    }
    let floor = word[t - period];
    for letter in [Letter::L1, Letter::L2] {
        if letter < floor {
            continue;
        }
        let next = mul_u64(mat, letter);
        if next[0] + next[3] > max_trace {
            continue;
        }
        let p = if letter == floor { period } else { t + 1 };
        word.push(letter);
        fkm(word, p, next, max_trace, max_len, out);
        word.pop();
    }
}

/// A real quadratic irrational `(p + √D) / q` with `q | D - p²`.
///
/// `q` carries the sign of the irrational part and may be negative; `D` is a
/// positive non-square. Equality compares values, not representations.
#[derive(Clone, Copy, Debug)]
pub struct QuadraticIrrational {
    p: i128,
    q: i128,
    disc: i128,
}

fn ck(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow("quadratic irrational"))
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn is_square(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i128;
    (r.saturating_sub(2)..=r + 2).any(|k| k >= 0 && k * k == n)
}

/// Sign of `alpha + beta * √disc` (nonzero for irrational values).
fn sign_surd(alpha: i128, beta: i128, disc: i128) -> Result<Ordering> {
    let sa = alpha.cmp(&0);
    let sb = beta.cmp(&0);
    if sa == Ordering::Equal {
        return Ok(sb);
    }
    if sb == Ordering::Equal || sa == sb {
        return Ok(sa);
    }
    // opposite signs: compare alpha^2 with beta^2 disc
    let a2 = ck(alpha.checked_mul(alpha))?;
    let b2d = ck(ck(beta.checked_mul(beta))?.checked_mul(disc))?;
    Ok(match a2.cmp(&b2d) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    })
}

impl QuadraticIrrational {
    /// `(p + √disc) / q`, normalized and reduced.
    pub fn new(p: i128, disc: i128, q: i128) -> Result<Self> {
        if q == 0 {
            return Err(Error::domain("zero denominator"));
        }
        if disc <= 0 || is_square(disc) {
            return Err(Error::domain(format!(
                "{disc} is not a positive non-square"
            )));
        }
        let (mut p, mut disc, mut q) = (p, disc, q);
        let rem = ck(disc.checked_sub(ck(p.checked_mul(p))?))?;
        if rem % q != 0 {
            let qa = q.abs();
            p = ck(p.checked_mul(qa))?;
            disc = ck(disc.checked_mul(ck(q.checked_mul(q))?))?;
            q = ck(q.checked_mul(qa))?;
        }
        let g0 = gcd(p, q);
        let mut best = 1;
        let mut k = 1;
        let mut divisors = Vec::new();
        while k * k <= g0 {
            if g0 % k == 0 {
                divisors.push(k);
                divisors.push(g0 / k);
            }
            k += 1;
        }
        divisors.sort_unstable_by(|a, b| b.cmp(a));
        for g in divisors {
            let g2 = g * g;
            if disc % g2 != 0 {
                continue;
            }
            let (pp, dd, qq) = (p / g, disc / g2, q / g);
            if (dd - pp * pp) % qq == 0 {
                best = g;
                break;
            }
        }
        Ok(Self {
            p: p / best,
            q: q / best,
            disc: disc / (best * best),
        })
    }

    pub fn p(&self) -> i128 {
        self.p
    }
    pub fn q(&self) -> i128 {
        self.q
    }
    pub fn disc(&self) -> i128 {
        self.disc
    }

    pub fn to_f64(&self) -> f64 {
        let root = (self.disc as f64).sqrt();
        let (p, q) = (self.p as f64, self.q as f64);
        if self.p < 0 {
            // p + √D = (D - p²) / (√D - p) avoids cancellation
            let num = (self.disc - self.p * self.p) as f64;
            num / ((root - p) * q)
        } else {
            (p + root) / q
        }
    }

    /// Sign of `self - n` for an integer `n`.
    pub fn cmp_int(&self, n: i128) -> Result<Ordering> {
        let alpha = ck(self.p.checked_sub(ck(n.checked_mul(self.q))?))?;
        let s = sign_surd(alpha, 1, self.disc)?;
        Ok(if self.q > 0 { s } else { s.reverse() })
    }

    /// Exact Möbius image `g · self`.
    pub fn mobius(&self, g: &GroupElement) -> Result<Self> {
        let (a, b, c, d) = (g.a(), g.b(), g.c(), g.d());
        let (p, q, disc) = (self.p, self.q, self.disc);
        // (A + a√D)/(B + c√D) with A = ap + bq, B = cp + dq; rationalize.
        let big_a = ck(ck(a.checked_mul(p))?.checked_add(ck(b.checked_mul(q))?))?;
        let big_b = ck(ck(c.checked_mul(p))?.checked_add(ck(d.checked_mul(q))?))?;
        let x =
            ck(ck(big_a.checked_mul(big_b))?
                .checked_sub(ck(ck(a.checked_mul(c))?.checked_mul(disc))?))?;
        let z =
            ck(ck(big_b.checked_mul(big_b))?
                .checked_sub(ck(ck(c.checked_mul(c))?.checked_mul(disc))?))?;
        // coefficient of √D is (ad - bc) q = q
        let e = ck(ck(q.checked_mul(q))?.checked_mul(disc))?;
        if q > 0 {
            Self::new(x, e, z)
        } else {
            Self::new(-x, e, -z)
        }
    }

    /// Exact step of `F`; the value is irrational so it never hits 1.
    pub fn farey_step(&self) -> Result<(Self, Letter)> {
        if self.cmp_int(0)? != Ordering::Greater {
            return Err(Error::domain(format!("farey_step undefined at {self}")));
        }
        if self.cmp_int(1)? == Ordering::Less {
            Ok((self.mobius(&GroupElement::t1().inverse())?, Letter::L1))
        } else {
            Ok((self.mobius(&GroupElement::t2().inverse())?, Letter::L2))
        }
    }

    pub fn orbit_code(&self, n: usize) -> Result<(Vec<Letter>, Self)> {
        let mut x = *self;
        let mut code = Vec::with_capacity(n);
        for _ in 0..n {
            let (y, l) = x.farey_step()?;
            code.push(l);
            x = y;
        }
        Ok((code, x))
    }
}

impl PartialEq for QuadraticIrrational {
    fn eq(&self, other: &Self) -> bool {
        // p/q = p'/q' and D/q^2 = D'/q'^2
        self.p * other.q == other.p * self.q
            && self.disc * other.q * other.q == other.disc * self.q * self.q
            && self.q.signum() == other.q.signum()
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + √{})/{}", self.p, self.disc, self.q)
    }
}

/// Attracting fixed point of a hyperbolic element on P¹(R).
pub fn fixed_point(g: &GroupElement) -> Result<QuadraticIrrational> {
    if !g.is_hyperbolic() {
        return Err(Error::domain(format!("{g} is not hyperbolic")));
    }
    if g.c() == 0 {
        return Err(Error::domain(format!("{g} fixes ∞")));
    }
    let tr = g.a() + g.d();
    let disc = ck(ck(tr.checked_mul(tr))?.checked_sub(4))?;
    // roots ((a-d) ± √disc)/(2c); the attracting one has |c x + d| > 1
    if tr > 0 {
        QuadraticIrrational::new(g.a() - g.d(), disc, 2 * g.c())
    } else {
        QuadraticIrrational::new(g.d() - g.a(), disc, -2 * g.c())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn farey_step_examples() {
        let r2 = 2f64.sqrt();
        let (y, l) = farey_step(r2).unwrap();
        assert_eq!(l, L2);
        assert!((y - (r2 - 1.0)).abs() < 1e-15);

        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let (y, l) = farey_step(phi).unwrap();
        assert_eq!(l, L1);
        assert!((y - (5f64.sqrt() + 1.0) / 2.0).abs() < 1e-14);

        let (y, l) = farey_step(0.25).unwrap();
        assert_eq!(l, L1);
        assert!((y - 1.0 / 3.0).abs() < 1e-16);

        for bad in [0.0, -1.0, 1.0, f64::NAN] {
            assert!(farey_step(bad).is_err());
        }
    }

    #[test]
    fn orbit_code_examples() {
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        assert_eq!(orbit_code(phi, 4).unwrap(), vec![L1, L2, L1, L2]);
        assert_eq!(orbit_code(2f64.sqrt(), 2).unwrap(), vec![L2, L1]);
        assert_eq!(orbit_code(2.5, 1).unwrap(), vec![L2]);
        // 2.5 -> 1.5 -> 0.5 -> 1 -> boundary
        assert!(orbit_code(2.5, 5).is_err());
    }

    #[test]
    fn word_matrix_examples() {
        let g = word_matrix(&w("12")).unwrap();
        assert_eq!(g.entries(), [1, 1, 1, 2]);
        assert_eq!(g.trace(), 3);
        let g = word_matrix(&w("22")).unwrap();
        assert_eq!(g.entries(), [1, 2, 0, 1]);
        assert_eq!(g.trace(), 2);
        let g = word_matrix(&w("112")).unwrap();
        assert_eq!(g.entries(), [1, 1, 2, 3]);
        assert_eq!(g.trace(), 4);
    }

    #[test]
    fn canonicalize_and_primitivity() {
        assert_eq!(canonicalize(&w("21")).unwrap().word(), &w("12"));
        assert!(!is_primitive(&w("1212")));
        assert!(is_primitive(&w("112")));
        assert!(canonicalize(&w("111")).is_err());
        assert!(canonicalize(&w("2")).is_err());
        assert!(canonicalize(&w("1212")).is_err());
        assert!(Word::new(vec![]).is_err());
    }

    #[test]
    fn enumeration_small_cases() {
        let three = enumerate_necklaces(3);
        assert_eq!(three.len(), 1);
        assert_eq!(three[0].0.word(), &w("12"));
        assert_eq!(three[0].1, 3);
        assert!(enumerate_necklaces(2).is_empty());
        assert!(enumerate_necklaces(0).is_empty());
    }

    /// Brute force over all mixed words up to a length bound that is safe by
    /// the `trace >= len + 1` bound.
    fn brute_necklaces(max_trace: u64) -> Vec<(String, u64)> {
        let max_len = (max_trace - 1) as usize;
        let mut found = std::collections::BTreeSet::new();
        for len in 2..=max_len {
            for bits in 0u64..(1 << len) {
                let letters: Vec<Letter> = (0..len)
                    .map(|i| if bits >> i & 1 == 1 { L2 } else { L1 })
                    .collect();
                let word = Word(letters);
                if !word.is_mixed() || !is_primitive(&word) {
                    continue;
                }
                let tr = word_matrix(&word).unwrap().trace() as u64;
                if tr <= max_trace {
                    found.insert((tr, min_rotation(&word).to_string()));
                }
            }
        }
        found.into_iter().map(|(t, s)| (s, t)).collect()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for max_trace in [3, 5, 8, 11, 14] {
            let mut fast: Vec<(String, u64)> = enumerate_necklaces(max_trace)
                .into_iter()
                .map(|(n, t)| (n.to_string(), t))
                .collect();
            let mut slow = brute_necklaces(max_trace);
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow, "max_trace {max_trace}");
        }
    }

    #[test]
    fn enumeration_sorted_and_unique() {
        let list = enumerate_necklaces(40);
        for pair in list.windows(2) {
            assert!((pair[0].1, &pair[0].0) < (pair[1].1, &pair[1].0));
        }
        for (n, t) in &list {
            assert_eq!(n.matrix().trace() as u64, *t);
            assert_eq!(&min_rotation(n.word()), n.word());
        }
    }

    /// Mixed words of length m have trace in [m + 1, Lucas(m)] (m even for
    /// the upper end), with both ends attained.
    #[test]
    fn trace_bounds_by_length() {
        let lucas = |m: usize| {
            let (mut a, mut b) = (2u128, 1u128);
            for _ in 0..m {
                (a, b) = (b, a + b);
            }
            a
        };
        for len in 2..=10usize {
            let mut lo = u128::MAX;
            let mut hi = 0;
            for bits in 0u64..(1 << len) {
                let word = Word(
                    (0..len)
                        .map(|i| if bits >> i & 1 == 1 { L2 } else { L1 })
                        .collect(),
                );
                if !word.is_mixed() {
                    continue;
                }
                let tr = word_matrix(&word).unwrap().trace();
                lo = lo.min(tr);
                hi = hi.max(tr);
            }
            assert_eq!(lo, len as u128 + 1, "length {len}");
            if len % 2 == 0 {
                let alt: String = "12".repeat(len / 2);
                assert_eq!(word_matrix(&w(&alt)).unwrap().trace(), lucas(len));
                assert_eq!(hi, lucas(len), "length {len}");
            }
        }
    }

    #[test]
    fn fixed_point_examples() {
        let x = fixed_point(&word_matrix(&w("12")).unwrap()).unwrap();
        assert_eq!((x.p(), x.disc(), x.q()), (-1, 5, 2));
        let x = fixed_point(&word_matrix(&w("112")).unwrap()).unwrap();
        assert_eq!((x.p(), x.disc(), x.q()), (-1, 3, 2));
        assert!((x.to_f64() - (3f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
        assert!(fixed_point(&GroupElement::t()).is_err());
        let g = GroupElement::new(2, 1, 1, 1)
            .unwrap()
            .compose(&GroupElement::t())
            .unwrap();
        assert!(fixed_point(&g.inverse()).is_ok());
    }

    #[test]
    fn fixed_point_is_fixed_and_codes_its_word() {
        for (neck, _) in enumerate_necklaces(30) {
            let g = neck.matrix();
            let x = fixed_point(&g).unwrap();
            assert_eq!(x.mobius(&g).unwrap(), x);
            let (code, back) = x.orbit_code(neck.word().len()).unwrap();
            assert_eq!(code, neck.word().letters());
            assert_eq!(back, x);
            // floating point orbit agrees
            let xf = x.to_f64();
            let float_code = orbit_code(xf, neck.word().len()).unwrap();
            assert_eq!(float_code, neck.word().letters());
            let mut y = xf;
            for _ in 0..neck.word().len() {
                y = farey_step(y).unwrap().0;
            }
            assert!((y - xf).abs() < 1e-10, "{neck}: {y} vs {xf}");
        }
    }

    #[test]
    fn fixed_point_negative_trace_representative() {
        // same element, attracting point must not depend on the representative
        let g = word_matrix(&w("1122")).unwrap();
        let x = fixed_point(&g).unwrap();
        let fx = x.to_f64();
        let den = g.c() as f64 * fx + g.d() as f64;
        assert!(den.abs() > 1.0);
    }

    #[test]
    fn quadratic_irrational_normalization() {
        // (-2 + √12)/4 reduces to (-1 + √3)/2
        let x = QuadraticIrrational::new(-2, 12, 4).unwrap();
        assert_eq!((x.p(), x.disc(), x.q()), (-1, 3, 2));
        // q ∤ D - p² gets rescaled: (1 + √2)/3 -> (3 + √18)/9
        let y = QuadraticIrrational::new(1, 2, 3).unwrap();
        assert_eq!((y.disc() - y.p() * y.p()) % y.q(), 0);
        assert!((y.to_f64() - (1.0 + 2f64.sqrt()) / 3.0).abs() < 1e-15);
        assert!(QuadraticIrrational::new(1, 4, 3).is_err());
        assert_eq!(y.cmp_int(1).unwrap(), Ordering::Less);
        assert_eq!(y.cmp_int(0).unwrap(), Ordering::Greater);
    }

    #[test]
    fn rotations_are_conjugate() {
        for (neck, t) in enumerate_necklaces(20) {
            let word = neck.word();
            for k in 0..word.len() {
                let r = word.rotate(k);
                assert_eq!(word_matrix(&r).unwrap().trace() as u64, t);
                assert_eq!(canonicalize(&r).unwrap(), neck);
            }
        }
    }
}
