//! Verdict-producing checkers for Kneser/Pollard-type statements about
//! `Σ_{i=1}^t |A +_i B|`.
//!
//! Each checker evaluates one statement on one concrete pair `(A, B)` in
//! exact integer arithmetic and reports which branch of the statement held.
//! A verdict with `holds == false` is a counterexample.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::group::{is_prime, Elem};
use crate::kernel::{rep_counts, RepProfile};
use crate::ops::{holes_rho, sumset_unchecked};
use crate::set::{GSet, SetError};
use crate::subgroup::{stabilizer, subgroup_lattice, Subgroup, SubgroupError, SubgroupLattice};

/// Witness search is exponential in `t`; larger `t` is refused.
pub const DEFAULT_MAX_WITNESS_T: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Kneser,
    Pollard,
    Chowla,
    GreenRuzsa,
    Main,
    T2,
    Corollary,
    Mult,
    Critical,
    Remark,
    Energy,
    EnergyUpper,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::Kneser,
        TheoremId::Pollard,
        TheoremId::Chowla,
        TheoremId::GreenRuzsa,
        TheoremId::Main,
        TheoremId::T2,
        TheoremId::Corollary,
        TheoremId::Mult,
        TheoremId::Critical,
        TheoremId::Remark,
        TheoremId::Energy,
        TheoremId::EnergyUpper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Kneser => "kneser",
            TheoremId::Pollard => "pollard",
            TheoremId::Chowla => "chowla",
            TheoremId::GreenRuzsa => "green-ruzsa",
            TheoremId::Main => "main",
            TheoremId::T2 => "t2",
            TheoremId::Corollary => "corollary",
            TheoremId::Mult => "mult",
            TheoremId::Critical => "critical",
            TheoremId::Remark => "remark",
            TheoremId::Energy => "energy",
            TheoremId::EnergyUpper => "energy-upper",
        }
    }

    /// Whether the statement is parameterized by `t`.
    pub fn uses_t(self) -> bool {
        matches!(
            self,
            TheoremId::Pollard
                | TheoremId::Chowla
                | TheoremId::GreenRuzsa
                | TheoremId::Main
                | TheoremId::Remark
                | TheoremId::Energy
        )
    }

    /// Stable small integer, used for CLI exit codes.
    pub fn code(self) -> u8 {
        TheoremId::ALL.iter().position(|&t| t == self).unwrap() as u8
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        TheoremId::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| format!("unknown theorem '{s}'"))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branch {
    /// The unconditional lower bound held.
    WeakBound,
    /// The bound failed and a structural witness `(A′, B′, H)` was found.
    Witness,
    /// The corollary's alternative: a coset of a subgroup of order ≥ 3.
    Coset,
    /// A single-inequality statement held.
    Bound,
    /// The statement's hypotheses are not met; vacuously true.
    NotApplicable,
    /// Counterexample.
    Violated,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Branch::WeakBound => "WEAK_BOUND",
            Branch::Witness => "WITNESS",
            Branch::Coset => "COSET",
            Branch::Bound => "BOUND",
            Branch::NotApplicable => "NOT_APPLICABLE",
            Branch::Violated => "VIOLATED",
        };
        f.write_str(s)
    }
}

/// Structural witness: `A′ ⊆ A`, `B′ ⊆ B` with `l = |A∖A′| + |B∖B′|`,
/// `H = H(A +_t B)` and `ρ` the number of `H`-holes of `A′` and `B′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub a_prime: GSet,
    pub b_prime: GSet,
    pub l: usize,
    pub h: Subgroup,
    pub rho: usize,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Witness", 5)?;
        st.serialize_field("A_prime", &self.a_prime.to_vec())?;
        st.serialize_field("B_prime", &self.b_prime.to_vec())?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("H", &self.h.carrier().to_vec())?;
        st.serialize_field("rho", &self.rho)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub theorem: TheoremId,
    pub holds: bool,
    pub branch: Branch,
    pub lhs: i64,
    pub rhs: i64,
    pub witness: Option<Witness>,
    pub elapsed_ns: u64,
}

impl TheoremVerdict {
    fn new(theorem: TheoremId, holds: bool, branch: Branch, lhs: i64, rhs: i64) -> Self {
        TheoremVerdict { theorem, holds, branch, lhs, rhs, witness: None, elapsed_ns: 0 }
    }

    fn not_applicable(theorem: TheoremId) -> Self {
        Self::new(theorem, true, Branch::NotApplicable, 0, 0)
    }

    /// `lhs ≥ rhs` reported as [`Branch::Bound`], else a violation.
    fn inequality(theorem: TheoremId, lhs: i64, rhs: i64) -> Self {
        let holds = lhs >= rhs;
        Self::new(theorem, holds, if holds { Branch::Bound } else { Branch::Violated }, lhs, rhs)
    }

    pub(crate) fn timed(mut self, start: Instant) -> Self {
        self.elapsed_ns = start.elapsed().as_nanos() as u64;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
    #[error("t = {t} must satisfy 1 ≤ t ≤ min(|A|,|B|) = {min}")]
    TOutOfRange { t: u32, min: usize },
    #[error("witness search supports t ≤ {max} (got {t})")]
    TTooLarge { t: u32, max: u32 },
    #[error("statement requires a cyclic group, got {0}")]
    NonCyclic(String),
    #[error("statement requires |A|, |B| ≥ {0}")]
    TooSmall(usize),
}

/// A pair `(A, B)` with its representation profile, shared by all checkers.
#[derive(Debug, Clone)]
pub struct Pair {
    a: GSet,
    b: GSet,
    profile: RepProfile,
}

impl Pair {
    /// Both sets must be nonempty and live in the same group.
    pub fn new(a: &GSet, b: &GSet) -> Result<Self, CheckError> {
        a.same_group(b)?;
        if a.is_empty() || b.is_empty() {
            return Err(SetError::Empty.into());
        }
        Ok(Pair { a: a.clone(), b: b.clone(), profile: rep_counts(a, b)? })
    }

    pub fn a(&self) -> &GSet {
        &self.a
    }

    pub fn b(&self) -> &GSet {
        &self.b
    }

    pub fn profile(&self) -> &RepProfile {
        &self.profile
    }

    fn sizes(&self) -> (i64, i64) {
        (self.a.len() as i64, self.b.len() as i64)
    }

    fn min_len(&self) -> usize {
        self.a.len().min(self.b.len())
    }

    fn require_t(&self, t: u32) -> Result<(), CheckError> {
        if t == 0 || t as usize > self.min_len() {
            Err(CheckError::TOutOfRange { t, min: self.min_len() })
        } else {
            Ok(())
        }
    }

    fn sigma(&self, t: u32) -> i64 {
        self.profile.pollard_sum(t) as i64
    }

    /// `|A+B| ≥ |A+H| + |B+H| − |H|` with `H = H(A+B)`, the holes form, and
    /// equality whenever `|A+B| ≤ |A| + |B| − 1`.
    pub fn kneser(&self) -> TheoremVerdict {
        let start = Instant::now();
        let sum = self.profile.at_least(1);
        let h = stabilizer(&sum);
        let (na, nb) = self.sizes();
        let hn = h.order() as i64;
        let a_h = sumset_unchecked(&self.a, h.carrier()).len() as i64;
        let b_h = sumset_unchecked(&self.b, h.carrier()).len() as i64;
        let rho = (a_h - na) + (b_h - nb);
        let lhs = sum.len() as i64;
        let rhs = a_h + b_h - hn;
        let mut holds = lhs >= rhs && lhs >= na + nb - hn + rho;
        if lhs < na + nb {
            holds &= lhs == rhs;
        }
        let branch = if holds { Branch::Bound } else { Branch::Violated };
        TheoremVerdict::new(TheoremId::Kneser, holds, branch, lhs, rhs).timed(start)
    }

    /// `Σ_{i≤t} |A +_i B| ≥ t·min(p, |A|+|B|−t)` in `Z_p`, p prime.
    pub fn pollard(&self, t: u32) -> Result<TheoremVerdict, CheckError> {
        let start = Instant::now();
        self.require_t(t)?;
        let g = self.a.group();
        if !is_prime(g.order()) {
            return Ok(TheoremVerdict::not_applicable(TheoremId::Pollard).timed(start));
        }
        let (na, nb) = self.sizes();
        let ti = t as i64;
        let rhs = ti * (g.order() as i64).min(na + nb - ti);
        Ok(TheoremVerdict::inequality(TheoremId::Pollard, self.sigma(t), rhs).timed(start))
    }

    /// Pollard's bound in `Z_n` when every nonzero difference of `B`
    /// generates the group.
    pub fn chowla(&self, t: u32) -> Result<TheoremVerdict, CheckError> {
        let start = Instant::now();
        let g = self.a.group();
        if !g.is_cyclic() {
            return Err(CheckError::NonCyclic(g.to_string()));
        }
        self.require_t(t)?;
        let n = g.order();
        let bs: Vec<Elem> = self.b.iter().collect();
        let generating =
            bs.iter().enumerate().all(|(i, &x)| bs[i + 1..].iter().all(|&y| g.element_order(g.sub(x, y)) == n));
        if !generating {
            return Ok(TheoremVerdict::not_applicable(TheoremId::Chowla).timed(start));
        }
        let (na, nb) = self.sizes();
        let ti = t as i64;
        let rhs = ti * (n as i64).min(na + nb - ti);
        Ok(TheoremVerdict::inequality(TheoremId::Chowla, self.sigma(t), rhs).timed(start))
    }

    /// `Σ_{i≤t} |A +_i B| ≥ t·min(|G|, |A|+|B|−D−t)`, `D` the largest proper
    /// subgroup order. Requires `t ≤ min(|A|,|B|)`, else not applicable.
    pub fn green_ruzsa(&self, t: u32, lattice: &SubgroupLattice) -> TheoremVerdict {
        let start = Instant::now();
        if t == 0 || t as usize > self.min_len() {
            return TheoremVerdict::not_applicable(TheoremId::GreenRuzsa).timed(start);
        }
        let g = self.a.group();
        let d = lattice.max_proper_subgroup_size() as i64;
        let (na, nb) = self.sizes();
        let ti = t as i64;
        let rhs = ti * (g.order() as i64).min(na + nb - d - ti);
        TheoremVerdict::inequality(TheoremId::GreenRuzsa, self.sigma(t), rhs).timed(start)
    }

    /// Weak bound `t|A|+t|B|−2t²+1`, else a witness with `l ≤ t−1`. For
    /// `t` above [`DEFAULT_MAX_WITNESS_T`] only the weak bound is decided;
    /// if it fails the call errors instead of searching.
    pub fn main_theorem(&self, t: u32) -> Result<TheoremVerdict, CheckError> {
        let start = Instant::now();
        self.require_t(t)?;
        let (na, nb) = self.sizes();
        let ti = t as i64;
        let weak = ti * na + ti * nb - 2 * ti * ti + 1;
        if t > DEFAULT_MAX_WITNESS_T && self.sigma(t) < weak {
            return Err(CheckError::TTooLarge { t, max: DEFAULT_MAX_WITNESS_T });
        }
        Ok(self.structural(TheoremId::Main, t, weak, t as usize - 1).timed(start))
    }

    /// The `t = 2` refinement: weak bound `2|A|+2|B|−4`, witness `l ≤ 1`.
    pub fn t2_theorem(&self) -> Result<TheoremVerdict, CheckError> {
        let start = Instant::now();
        if self.min_len() < 2 {
            return Err(CheckError::TooSmall(2));
        }
        let (na, nb) = self.sizes();
        Ok(self.structural(TheoremId::T2, 2, 2 * na + 2 * nb - 4, 1).timed(start))
    }

    fn structural(&self, id: TheoremId, t: u32, weak: i64, max_l: usize) -> TheoremVerdict {
        let sigma = self.sigma(t);
        if sigma >= weak {
            return TheoremVerdict::new(id, true, Branch::WeakBound, sigma, weak);
        }
        let violated = TheoremVerdict::new(id, false, Branch::Violated, sigma, weak);
        let target = self.profile.at_least(t);
        if target.is_empty() {
            return violated;
        }
        let h = stabilizer(&target);
        if h.is_trivial() {
            return violated;
        }
        match find_witness(&self.a, &self.b, t, &target, &h, sigma, max_l) {
            Some((w, rhs)) => {
                TheoremVerdict { witness: Some(w), ..TheoremVerdict::new(id, true, Branch::Witness, sigma, rhs) }
            }
            None => violated,
        }
    }

    /// Either `|A +_1 B| + |A +_2 B| ≥ 2|A|+2|B|−4` or some coset `x+H`
    /// with `|H| ≥ 3` lies inside `A +_2 B`.
    pub fn corollary(&self, lattice: &SubgroupLattice) -> Result<TheoremVerdict, CheckError> {
        let start = Instant::now();
        if self.min_len() < 2 {
            return Err(CheckError::TooSmall(2));
        }
        let (na, nb) = self.sizes();
        let lhs = self.sigma(2);
        let rhs = 2 * na + 2 * nb - 4;
        if lhs >= rhs {
            return Ok(TheoremVerdict::new(TheoremId::Corollary, true, Branch::WeakBound, lhs, rhs).timed(start));
        }
        let twice = self.profile.at_least(2);
        let v = match lattice.find_coset_in(&twice, 3) {
            Some((_, h)) => TheoremVerdict::new(TheoremId::Corollary, true, Branch::Coset, h.order() as i64, 3),
            None => TheoremVerdict::new(TheoremId::Corollary, false, Branch::Violated, lhs, rhs),
        };
        Ok(v.timed(start))
    }

    /// (i) with `k = |A|+|B|−|A+B| ≥ 1`, every sum has at least `k`
    /// representations; (ii) `|A|+|B| ≥ |G|+1` forces `A+B = G`.
    pub fn multiplicity(&self) -> TheoremVerdict {
        let start = Instant::now();
        let g = self.a.group();
        let (na, nb) = self.sizes();
        let sum_len = self.profile.count_at_least(1) as i64;
        let k = na + nb - sum_len;
        let covers = na + nb > g.order() as i64;
        let second_ok = !covers || sum_len == g.order() as i64;
        let v = if k >= 1 {
            let min_rep = self.profile.counts().iter().filter(|&&c| c > 0).min().copied().unwrap_or(0) as i64;
            let holds = min_rep >= k && second_ok;
            let branch = if holds { Branch::Bound } else { Branch::Violated };
            TheoremVerdict::new(TheoremId::Mult, holds, branch, min_rep, k)
        } else if covers {
            let branch = if second_ok { Branch::Bound } else { Branch::Violated };
            TheoremVerdict::new(TheoremId::Mult, second_ok, branch, sum_len, g.order() as i64)
        } else {
            TheoremVerdict::not_applicable(TheoremId::Mult)
        };
        v.timed(start)
    }

    /// If `|A+B| = |A|+|B|−1` and `A+B` is aperiodic, adding any `b ∉ B`
    /// strictly grows the sumset.
    pub fn critical_pair(&self) -> TheoremVerdict {
        let start = Instant::now();
        let (na, nb) = self.sizes();
        let sum = self.profile.at_least(1);
        let sum_len = sum.len() as i64;
        if sum_len != na + nb - 1 || !stabilizer(&sum).is_trivial() {
            return TheoremVerdict::not_applicable(TheoremId::Critical).timed(start);
        }
        let g = self.a.group();
        let mut smallest = sum_len + 1;
        for b in g.elements().filter(|&x| !self.b.contains(x)) {
            // A + (B ∪ {b}) = (A+B) ∪ (A+b)
            let grown = sum.union(&self.a.translate(b)).len() as i64;
            smallest = smallest.min(grown);
        }
        TheoremVerdict::inequality(TheoremId::Critical, smallest, sum_len + 1).timed(start)
    }

    /// When the weak bound fails, `A +_t B = A +_{2t} B` and
    /// `|H| ≥ 2t + ρ` for the witness found by [`Pair::main_theorem`].
    pub fn double_rep_remark(&self, t: u32, main: &TheoremVerdict) -> TheoremVerdict {
        let start = Instant::now();
        match main.branch {
            Branch::WeakBound => TheoremVerdict::not_applicable(TheoremId::Remark),
            Branch::Witness => {
                let w = main.witness.as_ref().expect("witness branch carries a witness");
                let same = self.profile.at_least(t) == self.profile.at_least(2 * t);
                let lhs = w.h.order() as i64;
                let rhs = 2 * t as i64 + w.rho as i64;
                let holds = same && lhs >= rhs;
                let branch = if holds { Branch::Bound } else { Branch::Violated };
                TheoremVerdict::new(TheoremId::Remark, holds, branch, lhs, rhs)
            }
            _ => TheoremVerdict::new(TheoremId::Remark, false, Branch::Violated, main.lhs, main.rhs),
        }
        .timed(start)
    }
}

/// Searches `(A′, B′)` with `l = |A∖A′|+|B∖B′| ≤ max_l`, ascending in `l`,
/// then by the number of deletions from `A` (ascending), then lexicographic
/// in the deleted elements. Returns the first pair with
/// `A′ +_t B′ = A′ + B′ = target` whose stabilizer bound holds, together with
/// the bound's right side.
fn find_witness(
    a: &GSet,
    b: &GSet,
    t: u32,
    target: &GSet,
    h: &Subgroup,
    sigma: i64,
    max_l: usize,
) -> Option<(Witness, i64)> {
    let av: Vec<Elem> = a.iter().collect();
    let bv: Vec<Elem> = b.iter().collect();
    let (na, nb, ti, hn) = (a.len() as i64, b.len() as i64, t as i64, h.order() as i64);
    for l in 0..=max_l {
        for da in 0..=l.min(av.len()) {
            let db = l - da;
            if db > bv.len() {
                continue;
            }
            let found = each_combination(&av, da, &mut |del_a| {
                let mut a2 = a.clone();
                for &x in del_a {
                    a2.remove(x);
                }
                each_combination(&bv, db, &mut |del_b| {
                    let mut b2 = b.clone();
                    for &y in del_b {
                        b2.remove(y);
                    }
                    if a2.is_empty() || b2.is_empty() {
                        return None;
                    }
                    let prof = rep_counts(&a2, &b2).ok()?;
                    if prof.at_least(1) != *target || prof.at_least(t) != *target {
                        return None;
                    }
                    let rho = holes_rho(&a2, &b2, h).ok()? as i64;
                    let li = l as i64;
                    let rhs = ti * na + ti * nb - (ti - li) * (hn - rho) - ti * li;
                    let floor = ti * na + ti * nb - ti * hn;
                    (sigma >= rhs && rhs >= floor).then(|| {
                        let w = Witness { a_prime: a2.clone(), b_prime: b2, l, h: h.clone(), rho: rho as usize };
                        (w, rhs)
                    })
                })
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Calls `f` on each `k`-subset of `items` in lexicographic order, stopping
/// at the first `Some`.
pub(crate) fn each_combination<T: Copy, R>(items: &[T], k: usize, f: &mut dyn FnMut(&[T]) -> Option<R>) -> Option<R> {
    fn go<T: Copy, R>(
        items: &[T],
        k: usize,
        start: usize,
        cur: &mut Vec<T>,
        f: &mut dyn FnMut(&[T]) -> Option<R>,
    ) -> Option<R> {
        if cur.len() == k {
            return f(cur);
        }
        let need = k - cur.len();
        for i in start..=items.len().saturating_sub(need) {
            if items.len() < need {
                break;
            }
            cur.push(items[i]);
            let r = go(items, k, i + 1, cur, f);
            cur.pop();
            if r.is_some() {
                return r;
            }
        }
        None
    }
    if k > items.len() {
        return None;
    }
    go(items, k, 0, &mut Vec::with_capacity(k), f)
}

/// Re-derives a witness verdict from scratch with the naive kernel. Returns
/// a description of the first failed condition.
pub fn revalidate_witness(a: &GSet, b: &GSet, t: u32, verdict: &TheoremVerdict) -> Result<(), String> {
    use crate::kernel::{rep_counts_with, Kernel};
    let w = verdict.witness.as_ref().ok_or("verdict has no witness")?;
    if !w.a_prime.is_subset(a) || !w.b_prime.is_subset(b) {
        return Err("witness sets are not subsets".into());
    }
    let l = (a.len() - w.a_prime.len()) + (b.len() - w.b_prime.len());
    if l != w.l || l + 1 > t as usize {
        return Err(format!("l = {l} (recorded {}) exceeds t − 1", w.l));
    }
    let full = rep_counts_with(a, b, Kernel::Naive).map_err(|e| e.to_string())?;
    let sub = rep_counts_with(&w.a_prime, &w.b_prime, Kernel::Naive).map_err(|e| e.to_string())?;
    let target = full.at_least(t);
    if sub.at_least(t) != target || sub.at_least(1) != target {
        return Err("A′ +_t B′ = A′ + B′ = A +_t B fails".into());
    }
    if stabilizer(&target) != w.h || w.h.is_trivial() {
        return Err("H is not the nontrivial stabilizer of A +_t B".into());
    }
    let holes = |s: &GSet| sumset_unchecked(s, w.h.carrier()).len() - s.len();
    let rho = holes(&w.a_prime) + holes(&w.b_prime);
    if rho != w.rho {
        return Err(format!("ρ = {rho}, recorded {}", w.rho));
    }
    let (ti, na, nb, hn) = (t as i64, a.len() as i64, b.len() as i64, w.h.order() as i64);
    let (li, rho) = (l as i64, rho as i64);
    let sigma = full.pollard_sum(t) as i64;
    let rhs = ti * na + ti * nb - (ti - li) * (hn - rho) - ti * li;
    if sigma != verdict.lhs || rhs != verdict.rhs {
        return Err("recorded sides differ from recomputation".into());
    }
    if sigma < rhs || rhs < ti * na + ti * nb - ti * hn {
        return Err("stabilizer bound chain fails".into());
    }
    Ok(())
}

pub fn check_kneser(a: &GSet, b: &GSet) -> Result<TheoremVerdict, CheckError> {
    Ok(Pair::new(a, b)?.kneser())
}

pub fn check_pollard_cyclic(a: &GSet, b: &GSet, t: u32) -> Result<TheoremVerdict, CheckError> {
    Pair::new(a, b)?.pollard(t)
}

pub fn check_chowla_pollard(a: &GSet, b: &GSet, t: u32) -> Result<TheoremVerdict, CheckError> {
    Pair::new(a, b)?.chowla(t)
}

pub fn check_green_ruzsa(a: &GSet, b: &GSet, t: u32) -> Result<TheoremVerdict, CheckError> {
    let lattice = subgroup_lattice(a.group())?;
    Ok(Pair::new(a, b)?.green_ruzsa(t, &lattice))
}

pub fn check_main_theorem(a: &GSet, b: &GSet, t: u32) -> Result<TheoremVerdict, CheckError> {
    Pair::new(a, b)?.main_theorem(t)
}

pub fn check_t2_theorem(a: &GSet, b: &GSet) -> Result<TheoremVerdict, CheckError> {
    Pair::new(a, b)?.t2_theorem()
}

pub fn check_corollary(a: &GSet, b: &GSet) -> Result<TheoremVerdict, CheckError> {
    let lattice = subgroup_lattice(a.group())?;
    Pair::new(a, b)?.corollary(&lattice)
}

pub fn check_multiplicity_prop(a: &GSet, b: &GSet) -> Result<TheoremVerdict, CheckError> {
    Ok(Pair::new(a, b)?.multiplicity())
}

pub fn check_critical_pair(a: &GSet, b: &GSet) -> Result<TheoremVerdict, CheckError> {
    Ok(Pair::new(a, b)?.critical_pair())
}

pub fn check_double_rep_remark(a: &GSet, b: &GSet, t: u32) -> Result<TheoremVerdict, CheckError> {
    let pair = Pair::new(a, b)?;
    let main = pair.main_theorem(t)?;
    Ok(pair.double_rep_remark(t, &main))
}
