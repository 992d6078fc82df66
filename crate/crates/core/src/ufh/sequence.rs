use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer sequence on ℤ that is periodic to the left of `core_start` and
/// to the right of the core.
///
/// For `n < core_start` the value is `left_period[(n - core_start) mod L]`,
/// so the block immediately left of the core is `left_period` itself. For
/// `n >= core_start + core.len()` the value is
/// `right_period[(n - core_start - core.len()) mod R]`. An empty period
/// stands for the zero tail.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct EventuallyPeriodicSequence {
    pub core: Vec<i64>,
    pub core_start: i64,
    #[serde(default)]
    pub left_period: Vec<i64>,
    #[serde(default)]
    pub right_period: Vec<i64>,
}

/// One or both directions of partial summation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
    Both,
}

fn primitive(p: &[i64]) -> Vec<i64> {
    if p.is_empty() || p.iter().all(|&x| x == 0) {
        return vec![0];
    }
    let n = p.len();
    for d in 1..=n {
        if n % d == 0 && (d..n).all(|i| p[i] == p[i - d]) {
            return p[..d].to_vec();
        }
    }
    unreachable!()
}

fn zero_as_empty(p: Vec<i64>) -> Vec<i64> {
    if p == [0] {
        Vec::new()
    } else {
        p
    }
}

impl EventuallyPeriodicSequence {
    pub fn new(core: Vec<i64>, core_start: i64, left_period: Vec<i64>, right_period: Vec<i64>) -> Self {
        EventuallyPeriodicSequence {
            core,
            core_start,
            left_period,
            right_period,
        }
    }

    pub fn constant(c: i64) -> Self {
        Self::new(Vec::new(), 0, vec![c], vec![c])
    }

    /// Unit mass at index `n`.
    pub fn delta(n: i64) -> Self {
        Self::new(vec![1], n, Vec::new(), Vec::new())
    }

    /// Purely periodic sequence with `period[0]` at index 0.
    pub fn periodic(period: Vec<i64>) -> Self {
        Self::new(Vec::new(), 0, period.clone(), period)
    }

    fn core_end(&self) -> i64 {
        self.core_start + self.core.len() as i64
    }

    fn left_len(&self) -> i64 {
        self.left_period.len().max(1) as i64
    }

    fn right_len(&self) -> i64 {
        self.right_period.len().max(1) as i64
    }

    fn left_ext(&self, n: i64) -> i64 {
        if self.left_period.is_empty() {
            0
        } else {
            self.left_period[(n - self.core_start).rem_euclid(self.left_len()) as usize]
        }
    }

    fn right_ext(&self, n: i64) -> i64 {
        if self.right_period.is_empty() {
            0
        } else {
            self.right_period[(n - self.core_end()).rem_euclid(self.right_len()) as usize]
        }
    }

    pub fn value(&self, n: i64) -> i64 {
        if n < self.core_start {
            self.left_ext(n)
        } else if n < self.core_end() {
            self.core[(n - self.core_start) as usize]
        } else {
            self.right_ext(n)
        }
    }

    /// sup |b_n|.
    pub fn sup_norm(&self) -> i64 {
        self.core
            .iter()
            .chain(&self.left_period)
            .chain(&self.right_period)
            .map(|x| x.abs())
            .max()
            .unwrap_or(0)
    }

    pub fn left_sum(&self) -> i64 {
        self.left_period.iter().sum()
    }

    pub fn right_sum(&self) -> i64 {
        self.right_period.iter().sum()
    }

    /// Canonical representative: primitive periods, the longest possible
    /// right tail, then the longest left tail not overlapping it. Purely
    /// periodic sequences are anchored at index 0 with an empty core.
    pub fn normalized(&self) -> Self {
        let lp = primitive(&self.left_period);
        let rp = primitive(&self.right_period);
        let (ll, rl) = (lp.len() as i64, rp.len() as i64);
        let (s, e) = (self.core_start, self.core_end());
        let lext = |n: i64| lp[(n - s).rem_euclid(ll) as usize];
        let rext = |n: i64| rp[(n - e).rem_euclid(rl) as usize];
        let value = |n: i64| {
            if n < s {
                lext(n)
            } else if n < e {
                self.core[(n - s) as usize]
            } else {
                rext(n)
            }
        };
        let same_tails = ll == rl && (0..ll).all(|k| lext(s + k) == rext(s + k));
        if same_tails && (s..e).all(|n| value(n) == rext(n)) {
            let p: Vec<i64> = (0..rl).map(rext).collect();
            let p = zero_as_empty(p);
            return Self::new(Vec::new(), 0, p.clone(), p);
        }
        // The tails differ, so the right-periodic run ends within one joint
        // period below the core.
        let mut r = e;
        let floor = s - ll * rl;
        while r > floor && value(r - 1) == rext(r - 1) {
            r -= 1;
        }
        debug_assert!(r > floor);
        let mut l = s.min(r);
        while l < r && value(l) == lext(l) {
            l += 1;
        }
        Self::new(
            (l..r).map(value).collect(),
            l,
            zero_as_empty((0..ll).map(|j| lext(l - ll + j)).collect()),
            zero_as_empty((0..rl).map(|j| rext(r + j)).collect()),
        )
    }

    /// Pointwise combination. Tails combine with the lcm of the periods.
    pub fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        let start = self.core_start.min(other.core_start);
        let end = self.core_end().max(other.core_end());
        let l = self.left_len().lcm(&other.left_len());
        let r = self.right_len().lcm(&other.right_len());
        let v = |n| f(self.value(n), other.value(n));
        Self::new(
            (start..end).map(v).collect(),
            start,
            (0..l).map(|j| v(start - l + j)).collect(),
            (0..r).map(|j| v(end + j)).collect(),
        )
        .normalized()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: i64) -> Self {
        let m = |p: &Vec<i64>| p.iter().map(|x| c * x).collect();
        Self::new(m(&self.core), self.core_start, m(&self.left_period), m(&self.right_period))
            .normalized()
    }

    /// `(S^k b)_n = b_{n-k}`: moves the sequence `k` steps to the right.
    pub fn translated(&self, k: i64) -> Self {
        Self::new(
            self.core.clone(),
            self.core_start + k,
            self.left_period.clone(),
            self.right_period.clone(),
        )
    }

    /// Zeroes every index below `lo`.
    pub fn restricted_from(&self, lo: i64) -> Self {
        let ind = Self::new(Vec::new(), lo, Vec::new(), vec![1]);
        self.zip_with(&ind, |a, b| a * b)
    }

    fn signed_value(&self, side: Side, n: i64) -> i64 {
        match side {
            Side::Left => self.value(-n),
            _ => self.value(n),
        }
    }

    /// Number of terms after which the one-sided partial sums from 0 are
    /// inside the periodic regime for at least one full period.
    fn horizon(&self, side: Side) -> i64 {
        match side {
            Side::Right => self.core_end().max(0) + self.right_len(),
            Side::Left => (1 - self.core_start).max(0) + self.left_len(),
            Side::Both => unreachable!(),
        }
    }

    fn side_bound(&self, side: Side) -> i64 {
        let mut acc = 0i64;
        let mut sup = 0i64;
        for n in 0..=self.horizon(side) {
            acc += self.signed_value(side, n);
            sup = sup.max(acc.abs());
        }
        sup
    }

    /// Smallest N with |Σ_{n=0}^{N} b_{±n}| > `bound` on a side whose period
    /// does not sum to zero.
    pub fn exceeding_index(&self, side: Side, bound: i64) -> Option<(i64, i64)> {
        let (drift, len) = match side {
            Side::Left => (self.left_sum(), self.left_len()),
            Side::Right => (self.right_sum(), self.right_len()),
            Side::Both => return None,
        };
        if drift == 0 {
            return None;
        }
        let h = self.horizon(side);
        // After the horizon the sum gains `drift` per period, so this many
        // periods suffice.
        let periods = (bound + self.side_bound(side)).abs() / drift.abs() + 2;
        let limit = h + periods * len + len;
        let mut acc = 0i64;
        for n in 0..=limit {
            acc += self.signed_value(side, n);
            if acc.abs() > bound {
                return Some((n, acc));
            }
        }
        unreachable!("drift guarantees growth")
    }

    /// Membership in S: partial sums from index 0 uniformly bounded in the
    /// requested direction(s). Exact: a side is bounded iff its period sums
    /// to zero.
    pub fn in_s(&self, side: Side) -> SDecision {
        let sides = match side {
            Side::Both => vec![Side::Right, Side::Left],
            s => vec![s],
        };
        let mut bound = 0;
        for s in sides {
            let drift = if s == Side::Left {
                self.left_sum()
            } else {
                self.right_sum()
            };
            if drift != 0 {
                let probe = 10 * (self.side_bound(s) + self.sup_norm() + 1);
                let (index, sum) = self
                    .exceeding_index(s, probe)
                    .expect("nonzero drift grows");
                return SDecision {
                    member: false,
                    certificate: SCertificate::Unbounded {
                        side: s,
                        period_sum: drift,
                        period_len: if s == Side::Left {
                            self.left_len()
                        } else {
                            self.right_len()
                        } as usize,
                        probe,
                        index,
                        partial_sum: sum,
                    },
                };
            }
            bound += self.side_bound(s);
        }
        SDecision {
            member: true,
            certificate: SCertificate::Bounded { bound },
        }
    }

    /// Brute-force partial sums over `terms` indices; returns the largest
    /// |partial sum| seen on each requested side. Test oracle.
    pub fn brute_force_partial_sup(&self, side: Side, terms: i64) -> i64 {
        match side {
            Side::Both => {
                self.brute_force_partial_sup(Side::Left, terms)
                    + self.brute_force_partial_sup(Side::Right, terms)
            }
            s => {
                let mut acc = 0i64;
                let mut sup = 0i64;
                for n in 0..terms {
                    acc += self.signed_value(s, n);
                    sup = sup.max(acc.abs());
                }
                sup
            }
        }
    }

    /// `(I - S) b`, i.e. `b_n - b_{n-1}`.
    pub fn shift_difference(&self) -> Self {
        self.sub(&self.translated(1))
    }

    /// True iff `(I - S) b = 0`, i.e. `b` is constant.
    pub fn in_shift_kernel(&self) -> bool {
        let d = self.shift_difference();
        d.core.is_empty() && d.left_period.is_empty() && d.right_period.is_empty()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("sequence JSON: {e}")))
    }
}

impl PartialEq for EventuallyPeriodicSequence {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        a.core == b.core
            && a.core_start == b.core_start
            && a.left_period == b.left_period
            && a.right_period == b.right_period
    }
}

impl Eq for EventuallyPeriodicSequence {}

impl fmt::Display for EventuallyPeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:?})* {:?}@{} ({:?})*",
            self.left_period, self.core, self.core_start, self.right_period
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SCertificate {
    /// Every partial sum from 0 (both directions summed for [`Side::Both`])
    /// has absolute value at most `bound`.
    Bounded { bound: i64 },
    /// The period on `side` drifts by `period_sum` per `period_len` terms;
    /// the partial sum up to `index` already exceeds `probe` in absolute value.
    Unbounded {
        side: Side,
        period_sum: i64,
        period_len: usize,
        probe: i64,
        index: i64,
        partial_sum: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SDecision {
    pub member: bool,
    pub certificate: SCertificate,
}

/// Class data of a 0-chain on the line or the half-line modulo S: the
/// average value of each periodic tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0LineClassInvariant {
    pub left_density: Option<Rational64>,
    pub right_density: Rational64,
}

impl K0LineClassInvariant {
    pub fn is_zero(&self) -> bool {
        self.right_density == Rational64::from_integer(0)
            && self.left_density.is_none_or(|d| d == Rational64::from_integer(0))
    }
}

fn density(p: &[i64]) -> Rational64 {
    if p.is_empty() {
        Rational64::from_integer(0)
    } else {
        Rational64::new(p.iter().sum(), p.len() as i64)
    }
}

/// Invariant of the class of `b` in ℓ∞ℤ(ℤ)/S(ℤ) (`half_line = false`) or
/// ℓ∞ℤ(ℕ₀)/S(ℕ₀).
pub fn line_invariant(b: &EventuallyPeriodicSequence, half_line: bool) -> K0LineClassInvariant {
    K0LineClassInvariant {
        left_density: (!half_line).then(|| density(&b.left_period)),
        right_density: density(&b.right_period),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(core: &[i64], start: i64, l: &[i64], r: &[i64]) -> EventuallyPeriodicSequence {
        EventuallyPeriodicSequence::new(core.to_vec(), start, l.to_vec(), r.to_vec())
    }

    #[test]
    fn evaluation_conventions() {
        let s = seq(&[7, 8], 3, &[1, 2, 3], &[4, 5]);
        assert_eq!(s.value(2), 3);
        assert_eq!(s.value(0), 1);
        assert_eq!(s.value(-1), 3);
        assert_eq!(s.value(3), 7);
        assert_eq!(s.value(5), 4);
        assert_eq!(s.value(6), 5);
        assert_eq!(s.value(7), 4);
    }

    #[test]
    fn normalization_decides_equality() {
        assert_eq!(seq(&[1, 1], 4, &[1], &[1, 1]), EventuallyPeriodicSequence::constant(1));
        assert_eq!(seq(&[1], 0, &[1, 2], &[2, 1]), seq(&[], 5, &[2, 1], &[2, 1]));
        assert_ne!(EventuallyPeriodicSequence::delta(0), EventuallyPeriodicSequence::delta(1));
        let n = seq(&[0, 5, 0], -1, &[], &[0, 0]).normalized();
        assert_eq!((n.core.clone(), n.core_start), (vec![5], 0));
        assert!(n.left_period.is_empty() && n.right_period.is_empty());
    }

    #[test]
    fn spec_membership_examples() {
        let d = EventuallyPeriodicSequence::new(vec![1], 0, vec![], vec![0]);
        assert!(d.in_s(Side::Right).member);
        let one = EventuallyPeriodicSequence::constant(1);
        let dec = one.in_s(Side::Right);
        assert!(!dec.member);
        let SCertificate::Unbounded { index, partial_sum, probe, .. } = dec.certificate else {
            panic!()
        };
        assert_eq!(partial_sum, index + 1);
        assert!(partial_sum > probe);
        let alt = EventuallyPeriodicSequence::periodic(vec![1, -1]);
        let dec = alt.in_s(Side::Both);
        assert!(dec.member);
        assert_eq!(alt.brute_force_partial_sup(Side::Right, 10_000), 1);
    }

    #[test]
    fn shift_kernel() {
        assert!(EventuallyPeriodicSequence::constant(5).in_shift_kernel());
        assert!(!EventuallyPeriodicSequence::delta(0).in_shift_kernel());
        assert!(!EventuallyPeriodicSequence::periodic(vec![1, 2]).in_shift_kernel());
        assert!(EventuallyPeriodicSequence::default().in_shift_kernel());
    }

    #[test]
    fn densities() {
        let inv = line_invariant(&EventuallyPeriodicSequence::constant(1), false);
        assert_eq!(inv.left_density, Some(Rational64::from_integer(1)));
        assert!(!inv.is_zero());
        let p = EventuallyPeriodicSequence::periodic(vec![2, -1, -1]);
        assert!(line_invariant(&p, false).is_zero());
        assert_eq!(p.brute_force_partial_sup(Side::Right, 10_000), 2);
        assert!(line_invariant(&EventuallyPeriodicSequence::delta(0), true).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = seq(&[3], 0, &[1, 2], &[1]);
        let b = seq(&[], 2, &[1], &[1, 0, 0]);
        let c = a.add(&b);
        for n in -20..20 {
            assert_eq!(c.value(n), a.value(n) + b.value(n));
            assert_eq!(a.translated(3).value(n), a.value(n - 3));
            assert_eq!(a.restricted_from(1).value(n), if n >= 1 { a.value(n) } else { 0 });
        }
    }
}
