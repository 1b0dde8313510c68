//! Brute-force count of primitive hyperbolic conjugacy classes, independent
//! of the necklace coding.
//!
//! Enumerates the ball of words over `{S, T, T^-1}`, keeps primitive
//! hyperbolic elements of small trace and merges those related by a short
//! conjugator. A class none of whose members lies strictly inside the ball
//! may have lost conjugacy links to the boundary; such classes are reported
//! instead of counted.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::psl2::GroupElement;

pub const MAX_WORD_LENGTH: u32 = 16;
pub const CONJUGATOR_LENGTH: u32 = 6;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct OracleReport {
    /// Resolved classes per trace.
    pub counts: BTreeMap<u64, usize>,
    /// `(trace, representative)` of each class that could not be resolved.
    pub unresolved: Vec<(u64, GroupElement)>,
}

impl OracleReport {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }
}

fn generators() -> [GroupElement; 3] {
    [
        GroupElement::s(),
        GroupElement::t(),
        GroupElement::t().inverse(),
    ]
}

/// Word length of every element reachable with at most `radius` generators.
fn ball(radius: u32) -> Result<HashMap<GroupElement, u32>> {
    let mut dist = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(GroupElement::identity(), 0);
    queue.push_back(GroupElement::identity());
    while let Some(g) = queue.pop_front() {
        let d = dist[&g];
        if d == radius {
            continue;
        }
        for h in generators() {
            let next = g.compose(&h)?;
            if let std::collections::hash_map::Entry::Vacant(slot) = dist.entry(next) {
                slot.insert(d + 1);
                queue.push_back(next);
            }
        }
    }
    Ok(dist)
}

/// Whether `g` is not a proper power in PSL(2,Z).
///
/// If `±g = h^k` with `tr h = τ`, then `h^k = a_k h - a_{k-1} I` where
/// `a_0 = 0, a_1 = 1, a_{j+1} = τ a_j - a_{j-1}`; so `h` is recovered from
/// `g` and must be integral with determinant 1.
pub fn is_primitive_element(g: &GroupElement) -> bool {
    let t = g.trace() as i128;
    if t <= 2 {
        return true;
    }
    for k in 2u32.. {
        // smallest |tr h^k| is at τ = 3; stop once that exceeds |tr g|
        if power_trace(3, k) > t {
            break;
        }
        for tau in 3i128.. {
            let tk = power_trace(tau, k);
            if tk > t {
                break;
            }
            if tk == t && root_exists(g, tau, k) {
                return false;
            }
        }
    }
    true
}

fn chebyshev_pair(tau: i128, k: u32) -> (i128, i128) {
    let (mut prev, mut cur) = (0i128, 1i128);
    for _ in 1..k {
        let next = tau.saturating_mul(cur).saturating_sub(prev);
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

/// `tr(h^k)` for `tr h = tau > 2`, saturating.
fn power_trace(tau: i128, k: u32) -> i128 {
    let (prev, cur) = chebyshev_pair(tau, k);
    cur.saturating_mul(tau)
        .saturating_sub(prev.saturating_mul(2))
}

fn root_exists(g: &GroupElement, tau: i128, k: u32) -> bool {
    let (prev, cur) = chebyshev_pair(tau, k);
    // choose the sign of g whose trace is positive, matching tau > 0
    let [a, b, c, d] = if g.a() + g.d() > 0 {
        g.entries()
    } else {
        g.negate()
    };
    let (ha, hb, hc, hd) = (a + prev, b, c, d + prev);
    if [ha, hb, hc, hd].iter().any(|x| x % cur != 0) {
        return false;
    }
    GroupElement::new(ha / cur, hb / cur, hc / cur, hd / cur).is_ok()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Counts primitive hyperbolic classes of trace `<= max_trace` among words
/// of length `<= word_length_bound`.
pub fn conjugacy_oracle(max_trace: u64, word_length_bound: u32) -> Result<OracleReport> {
    if word_length_bound > MAX_WORD_LENGTH {
        return Err(Error::param(format!(
            "word_length_bound must be <= {MAX_WORD_LENGTH}, got {word_length_bound}"
        )));
    }
    let all = ball(word_length_bound)?;
    let mut members: Vec<(GroupElement, u32)> = all
        .iter()
        .filter(|(g, _)| {
            let t = g.trace();
            t > 2 && t <= max_trace as u128 && is_primitive_element(g)
        })
        .map(|(g, d)| (*g, *d))
        .collect();
    members.sort();
    let index: HashMap<GroupElement, usize> = members
        .iter()
        .enumerate()
        .map(|(i, (g, _))| (*g, i))
        .collect();

    let mut conjugators: Vec<GroupElement> = ball(CONJUGATOR_LENGTH.min(word_length_bound))?
        .into_keys()
        .collect();
    conjugators.sort();

    let mut uf = UnionFind((0..members.len()).collect());
    for (i, (g, _)) in members.iter().enumerate() {
        for c in &conjugators {
            let h = g.conjugate_by(c)?;
            if let Some(&j) = index.get(&h) {
                uf.union(i, j);
            }
        }
    }

    // per class: trace, smallest word length, representative
    let mut classes: BTreeMap<usize, (u64, u32, GroupElement)> = BTreeMap::new();
    for (i, (g, d)) in members.iter().enumerate() {
        let root = uf.find(i);
        let entry = classes.entry(root).or_insert((g.trace() as u64, *d, *g));
        if *d < entry.1 {
            entry.1 = *d;
            entry.2 = *g;
        }
    }

    let mut report = OracleReport::default();
    for (trace, depth, rep) in classes.into_values() {
        if depth + 2 <= word_length_bound {
            *report.counts.entry(trace).or_insert(0) += 1;
        } else {
            report.unresolved.push((trace, rep));
        }
    }
    report.unresolved.sort();
    Ok(report)
}
