//! Additive energy bounds.
//!
//! The energy `E(A,B) = Σ_c C(r_{A,B}(c), 2)` counts unordered pairs of
//! distinct representations of the same sum. With `T` the set of differences
//! having more than `k` representations, the energy is capped by
//! `(|T||B|(|B|−k) + (k−1)|A||B|) / 2`, which in turn forces
//!
//! ```text
//! Σ_{i≤t} |A +_i B| ≥ t·min{ |A||B| / (t + √(t(t−1))),  |A|²|B| / (|T|(|B|−k) + k|A|) }
//! ```
//!
//! All comparisons are exact: the surd `√(t(t−1))` is handled by squaring
//! both sides of a sign-checked integer inequality.

use std::time::Instant;

use serde::Serialize;

use crate::kernel::RepProfile;
use crate::ops::difference_counts;
use crate::set::GSet;
use crate::theorems::{Branch, CheckError, Pair, TheoremId, TheoremVerdict};

/// `{x : r_{A,−B}(x) > k}`, the smallest admissible exceptional set.
pub fn derive_exceptional_set(a: &GSet, b: &GSet, k: u32) -> Result<GSet, CheckError> {
    Ok(difference_counts(a, b)?.at_least(k + 1))
}

/// `t · min{ N/(t + √(t(t−1))), P/Q }` with `N = |A||B|`, `P = |A|²|B|`,
/// `Q = |T|(|B|−k) + k|A|`. The first term is irrational for `t ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnergyLowerBound {
    pub t: u64,
    pub pairs: u64,
    pub num: u64,
    pub den: u64,
}

impl EnergyLowerBound {
    /// `m ≥ t·N/(t+s)` with `s = √(t(t−1))`, i.e. `m·s ≥ t(N − m)`.
    fn clears_surd_term(&self, m: u64) -> bool {
        let (t, n) = (self.t as i128, self.pairs as i128);
        let m = m as i128;
        let need = t * (n - m);
        need <= 0 || m * m * t * (t - 1) >= need * need
    }

    /// `m ≥ t·P/Q`.
    fn clears_rational_term(&self, m: u64) -> bool {
        m as i128 * self.den as i128 >= self.t as i128 * self.num as i128
    }

    /// Exact test of `m ≥ t·min{…}`.
    pub fn is_met_by(&self, m: u64) -> bool {
        self.clears_surd_term(m) || self.clears_rational_term(m)
    }

    /// Exact test of the weaker form `m ≥ min{ N/2, t·P/Q }`.
    pub fn weak_form_met_by(&self, m: u64) -> bool {
        2 * m as u128 >= self.pairs as u128 || self.clears_rational_term(m)
    }

    /// Smallest integer meeting the bound (the bound's ceiling).
    pub fn ceil(&self) -> u64 {
        smallest_meeting(self.t * self.pairs, |m| self.is_met_by(m))
    }

    /// Ceiling of the weaker form.
    pub fn weak_form_ceil(&self) -> u64 {
        smallest_meeting(self.t * self.pairs, |m| self.weak_form_met_by(m))
    }

    /// Binary floating-point value rounded towards zero, never above the
    /// true real value.
    pub fn value_lower(&self) -> f64 {
        const GUARD: f64 = 1.0 - 1.0 / (1u64 << 40) as f64;
        let t = self.t as f64;
        let surd = t * self.pairs as f64 / (t + (t * (t - 1.0)).sqrt());
        let ratio = t * self.num as f64 / self.den as f64;
        surd.min(ratio) * GUARD
    }
}

/// Smallest `m` in `[0, hi]` with `pred(m)`; `pred` must be monotone and
/// true at `hi`.
fn smallest_meeting(hi: u64, pred: impl Fn(u64) -> bool) -> u64 {
    let (mut lo, mut hi) = (0u64, hi);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

#[derive(Debug, Clone, Serialize)]
pub struct EnergyReport {
    pub energy: u64,
    #[serde(rename = "T", serialize_with = "as_list")]
    pub exceptional: GSet,
    pub k: u32,
    pub t: u32,
    pub lower_bound: EnergyLowerBound,
    /// Right side of `2·E(A,B) ≤ |T||B|(|B|−k) + (k−1)|A||B|`.
    pub upper_bound_rhs: u64,
}

fn as_list<S: serde::Serializer>(s: &GSet, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(s.iter())
}

fn preconditions(a: &GSet, b: &GSet, t_set: &GSet, k: u32) -> bool {
    k >= 1 && a.len() >= b.len() && b.len() >= k as usize && a.len() >= t_set.len()
}

pub fn energy_lower_bound(a: &GSet, b: &GSet, t_set: &GSet, k: u32, t: u32) -> Option<EnergyLowerBound> {
    if !preconditions(a, b, t_set, k) || t == 0 {
        return None;
    }
    let (na, nb, nt, k) = (a.len() as u64, b.len() as u64, t_set.len() as u64, k as u64);
    Some(EnergyLowerBound { t: t as u64, pairs: na * nb, num: na * na * nb, den: nt * (nb - k) + k * na })
}

fn upper_rhs(a: &GSet, b: &GSet, t_set: &GSet, k: u32) -> u64 {
    let (na, nb, nt, k) = (a.len() as u64, b.len() as u64, t_set.len() as u64, k as u64);
    nt * nb * (nb - k) + (k - 1) * na * nb
}

impl Pair {
    /// `2·E(A,B) ≤ |T||B|(|B|−k) + (k−1)|A||B|`, checked for both `E(A,B)`
    /// and `E(A,−B)`, which must agree.
    pub fn energy_upper(&self, diffs: &RepProfile, t_set: &GSet, k: u32) -> TheoremVerdict {
        let start = Instant::now();
        let (a, b) = (self.a(), self.b());
        let required = diffs.at_least(k + 1);
        if !preconditions(a, b, t_set, k) || !required.is_subset(t_set) {
            return na(TheoremId::EnergyUpper, start);
        }
        let e = self.profile().energy();
        let e_neg = diffs.energy();
        let rhs = upper_rhs(a, b, t_set, k);
        let holds = e == e_neg && 2 * e <= rhs;
        // lhs ≥ rhs convention: report the slack as (rhs, 2E).
        let branch = if holds { Branch::Bound } else { Branch::Violated };
        verdict(TheoremId::EnergyUpper, holds, branch, rhs as i64, 2 * e as i64, start)
    }

    /// The energy lower bound with `T` auto-derived from `k`.
    pub fn energy_lemma(&self, diffs: &RepProfile, k: u32, t: u32) -> (TheoremVerdict, Option<EnergyReport>) {
        let start = Instant::now();
        let (a, b) = (self.a(), self.b());
        let t_set = diffs.at_least(k + 1);
        let Some(bound) = energy_lower_bound(a, b, &t_set, k, t) else {
            return (na(TheoremId::Energy, start), None);
        };
        let sigma = self.profile().pollard_sum(t);
        let holds = bound.is_met_by(sigma) && bound.weak_form_met_by(sigma);
        let branch = if holds { Branch::Bound } else { Branch::Violated };
        let report = EnergyReport {
            energy: self.profile().energy(),
            upper_bound_rhs: upper_rhs(a, b, &t_set, k),
            exceptional: t_set,
            k,
            t,
            lower_bound: bound,
        };
        let rhs = bound.ceil().max(bound.weak_form_ceil()) as i64;
        (verdict(TheoremId::Energy, holds, branch, sigma as i64, rhs, start), Some(report))
    }
}

fn na(id: TheoremId, start: Instant) -> TheoremVerdict {
    verdict(id, true, Branch::NotApplicable, 0, 0, start)
}

fn verdict(theorem: TheoremId, holds: bool, branch: Branch, lhs: i64, rhs: i64, start: Instant) -> TheoremVerdict {
    TheoremVerdict { theorem, holds, branch, lhs, rhs, witness: None, elapsed_ns: start.elapsed().as_nanos() as u64 }
}

pub fn check_energy_upper_bound(a: &GSet, b: &GSet, t_set: &GSet, k: u32) -> Result<TheoremVerdict, CheckError> {
    a.same_group(t_set)?;
    let pair = Pair::new(a, b)?;
    let diffs = difference_counts(a, b)?;
    Ok(pair.energy_upper(&diffs, t_set, k))
}

pub fn check_energy_lemma(a: &GSet, b: &GSet, k: u32, t: u32) -> Result<TheoremVerdict, CheckError> {
    Ok(energy_report(a, b, k, t)?.0)
}

/// Runs the lemma and returns its verdict with the full report (absent when
/// not applicable).
pub fn energy_report(a: &GSet, b: &GSet, k: u32, t: u32) -> Result<(TheoremVerdict, Option<EnergyReport>), CheckError> {
    let pair = Pair::new(a, b)?;
    let diffs = difference_counts(a, b)?;
    Ok(pair.energy_lemma(&diffs, k, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn set(g: &GroupSpec, xs: &[usize]) -> GSet {
        GSet::from_elems(g, xs.iter().copied()).unwrap()
    }

    fn z5_ap() -> GSet {
        set(&GroupSpec::cyclic(5).unwrap(), &[0, 1, 2])
    }

    #[test]
    fn exceptional_sets() {
        let a = z5_ap();
        assert!(derive_exceptional_set(&a, &a, 3).unwrap().is_empty());
        assert_eq!(derive_exceptional_set(&a, &a, 2).unwrap().to_vec(), vec![0]);
        assert!(derive_exceptional_set(&a, &a, 5).unwrap().is_empty());
        let diffs = difference_counts(&a, &a).unwrap();
        assert_eq!(diffs.counts(), &[3, 2, 1, 1, 2]);
    }

    #[test]
    fn upper_bound_examples() {
        let a = z5_ap();
        let g = a.group().clone();
        let v = check_energy_upper_bound(&a, &a, &GSet::empty(&g), 3).unwrap();
        assert_eq!((v.holds, v.lhs, v.rhs), (true, 18, 10));
        let v = check_energy_upper_bound(&a, &a, &set(&g, &[0]), 2).unwrap();
        assert_eq!((v.holds, v.lhs, v.rhs), (true, 12, 10));
        let o = set(&g, &[1]);
        let v = check_energy_upper_bound(&o, &o, &GSet::empty(&g), 1).unwrap();
        assert_eq!((v.holds, v.lhs, v.rhs), (true, 0, 0));
        // T too small for k = 2
        let v = check_energy_upper_bound(&a, &a, &GSet::empty(&g), 2).unwrap();
        assert_eq!(v.branch, Branch::NotApplicable);
    }

    #[test]
    fn lower_bound_examples() {
        let a = z5_ap();
        let g = a.group().clone();
        let b = energy_lower_bound(&a, &a, &GSet::empty(&g), 3, 2).unwrap();
        // 2·min{9/(2+√2), 27/9}
        let want = 2.0 * (9.0 / (2.0 + 2f64.sqrt())).min(3.0);
        assert!(b.value_lower() <= want && want - b.value_lower() < 1e-9);
        assert!((b.value_lower() - 5.2721).abs() < 1e-3);
        assert_eq!(b.ceil(), 6);
        assert!(b.is_met_by(6) && !b.is_met_by(5));
        // weak form: min{4.5, 6}
        assert_eq!(b.weak_form_ceil(), 5);

        // t = 1: min{|A||B|, second term}
        let b = energy_lower_bound(&a, &a, &GSet::empty(&g), 3, 1).unwrap();
        assert_eq!(b.ceil(), 3);
        // T = ∅, k = |B|: the denominator is k|A|, so the second term is |A|
        let b = energy_lower_bound(&a, &a, &GSet::empty(&g), 3, 1).unwrap();
        assert_eq!(b.den, 3 * 3);
        assert_eq!(b.num / b.den, a.len() as u64);
        assert!(b.is_met_by(b.pairs));
    }

    #[test]
    fn lemma_examples() {
        let a = z5_ap();
        let v = check_energy_lemma(&a, &a, 3, 2).unwrap();
        assert_eq!((v.holds, v.lhs, v.rhs), (true, 8, 6));
        let (v, report) = energy_report(&a, &a, 2, 2).unwrap();
        assert!(v.holds);
        let report = report.unwrap();
        assert_eq!(report.exceptional.to_vec(), vec![0]);
        assert_eq!(report.energy, 5);
        assert_eq!((report.lower_bound.num, report.lower_bound.den), (27, 7));
        assert!((report.lower_bound.value_lower() - 2.0 * 9.0 / (2.0 + 2f64.sqrt())).abs() < 1e-9);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["T"], serde_json::json!([0]));
        // |A| < |B| is outside the lemma's hypotheses
        let g = a.group().clone();
        let v = check_energy_lemma(&set(&g, &[0]), &a, 1, 1).unwrap();
        assert_eq!(v.branch, Branch::NotApplicable);
    }

    #[test]
    fn degenerate_cap() {
        let g = GroupSpec::cyclic(11).unwrap();
        let a = set(&g, &[0, 1, 2, 3]);
        let b = set(&g, &[0, 5]);
        let v = check_energy_lemma(&a, &b, 2, 1).unwrap();
        assert!(v.holds);
        assert_eq!(v.lhs, 8);
    }
}
