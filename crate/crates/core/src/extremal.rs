//! Constructors for the two tightness families and exact checks of their
//! defect identities `x² − x|H|` and `x² − x|L|`.
//!
//! Family 1 lives in `Z_h × Z_q` with `H = Z_h × {0}`; `A` and `B` are
//! `H`-periodic with images arithmetic progressions of difference `d`.
//! Family 2 takes a chain `0 < L < H < G` with `G/H` cyclic and sets
//! `A = (G∖H) ∪ L`, `B = (B′∖H) ∪ L` for an `H`-periodic progression `B′`.

use serde::Serialize;
use thiserror::Error;

use crate::group::{gcd, Elem, GroupError, GroupSpec};
use crate::kernel::rep_counts;
use crate::ops::sumset_unchecked;
use crate::set::GSet;
use crate::subgroup::{stabilizer, subgroup_lattice_with_max, Subgroup, SubgroupError};
use crate::theorems::each_combination;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExampleError {
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("chain 0 < L < H < G violated: {0}")]
    Chain(String),
    #[error("G/H is not cyclic")]
    NonCyclicQuotient,
    #[error("step {0} does not generate G/H")]
    BadStep(Elem),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<(), ExampleError> {
    if ok {
        Ok(())
    } else {
        Err(ExampleError::Constraint(what()))
    }
}

/// One member of a tightness family.
#[derive(Debug, Clone)]
pub struct ExampleInstance {
    pub family: u8,
    pub group: GroupSpec,
    pub a: GSet,
    pub b: GSet,
    /// `H` for family 1, `L` for family 2: the predicted stabilizer of `A +_t B`.
    pub period: Subgroup,
    /// The intermediate subgroup `H` of family 2.
    pub outer: Option<Subgroup>,
    pub t: u32,
    pub x: usize,
    pub s: Option<usize>,
    pub r: usize,
    pub d: Option<usize>,
    pub predicted_defect: i64,
}

/// Both sides of the defect identity for one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectCheck {
    pub pollard_sum: i64,
    pub t_a: i64,
    pub t_b: i64,
    pub t_squared: i64,
    pub defect: i64,
    pub predicted: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExampleReport {
    pub family: u8,
    pub group: GroupSpec,
    #[serde(rename = "A")]
    pub a: Vec<Elem>,
    #[serde(rename = "B")]
    pub b: Vec<Elem>,
    #[serde(rename = "H")]
    pub h: Vec<Elem>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<Elem>>,
    pub t: u32,
    pub x: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub identity: DefectCheck,
    pub stabilizer: Vec<Elem>,
    pub stabilizer_matches: bool,
}

impl ExampleInstance {
    /// `Σ_{i≤t} |A +_i B| − t|A| − t|B| + t²` computed from the rep counts.
    pub fn identity(&self) -> DefectCheck {
        let prof = rep_counts(&self.a, &self.b).expect("instance sets are nonempty");
        let t = self.t as i64;
        let pollard_sum = prof.pollard_sum(self.t) as i64;
        let (t_a, t_b) = (t * self.a.len() as i64, t * self.b.len() as i64);
        let defect = pollard_sum - t_a - t_b + t * t;
        DefectCheck {
            pollard_sum,
            t_a,
            t_b,
            t_squared: t * t,
            defect,
            predicted: self.predicted_defect,
            holds: defect == self.predicted_defect,
        }
    }

    pub fn t_sums(&self) -> GSet {
        rep_counts(&self.a, &self.b).expect("instance sets are nonempty").at_least(self.t)
    }

    pub fn report(&self) -> ExampleReport {
        let stab = stabilizer(&self.t_sums());
        let (h, l) = match &self.outer {
            Some(h) => (h.carrier().to_vec(), Some(self.period.carrier().to_vec())),
            None => (self.period.carrier().to_vec(), None),
        };
        ExampleReport {
            family: self.family,
            group: self.group.clone(),
            a: self.a.to_vec(),
            b: self.b.to_vec(),
            h,
            l,
            t: self.t,
            x: self.x,
            s: self.s,
            r: self.r,
            d: self.d,
            identity: self.identity(),
            stabilizer_matches: stab == self.period,
            stabilizer: stab.carrier().to_vec(),
        }
    }
}

/// Family 1 in `Z_{h_order} × Z_{quotient_order}`:
/// `A = H + {0, d, …, (s−1)d}`, `B = H + {0, d, …, (r−1)d}`, `t = (r−1)|H| + x`.
pub fn build_example1(
    h_order: usize,
    quotient_order: usize,
    d: usize,
    s: usize,
    r: usize,
    x: usize,
) -> Result<ExampleInstance, ExampleError> {
    require(h_order >= 2, || format!("|H| ≥ 2 (|H| = {h_order})"))?;
    require(quotient_order >= 1, || "quotient order ≥ 1".into())?;
    require(d < quotient_order, || format!("0 ≤ d < {quotient_order} (d = {d})"))?;
    require(r >= 2, || format!("r ≥ 2 (r = {r})"))?;
    require(s >= r, || format!("s ≥ r (s = {s}, r = {r})"))?;
    require((1..h_order).contains(&x), || format!("1 ≤ x ≤ |H|−1 (x = {x}, |H| = {h_order})"))?;
    let ord_d = quotient_order / gcd(d, quotient_order);
    require(r + s - 1 <= ord_d, || format!("r+s−1 ≤ ord(d) ({} > {ord_d})", r + s - 1))?;

    let group = GroupSpec::new(&[h_order, quotient_order])?;
    let h = Subgroup::from_set(GSet::from_fn(&group, |e| group.digits(e)[1] == 0))?;
    let progression = |len: usize| {
        GSet::from_elems(&group, (0..len).map(|i| group.index(&[0, i * d % quotient_order])))
            .expect("progression stays in range")
    };
    let a = sumset_unchecked(&progression(s), h.carrier());
    let b = sumset_unchecked(&progression(r), h.carrier());
    let t = ((r - 1) * h_order + x) as u32;
    let (xi, hi) = (x as i64, h_order as i64);
    Ok(ExampleInstance {
        family: 1,
        group,
        a,
        b,
        period: h,
        outer: None,
        t,
        x,
        s: Some(s),
        r,
        d: Some(d),
        predicted_defect: xi * xi - xi * hi,
    })
}

/// Family 2 with `B′` stepping by the smallest generator of `G/H`.
pub fn build_example2(
    group: &GroupSpec,
    h: &Subgroup,
    l: &Subgroup,
    r: usize,
    x: usize,
) -> Result<ExampleInstance, ExampleError> {
    check_chain(group, h, l)?;
    let step = h.quotient_generator().ok_or(ExampleError::NonCyclicQuotient)?;
    build_example2_with_step(group, h, l, r, x, step)
}

fn check_chain(group: &GroupSpec, h: &Subgroup, l: &Subgroup) -> Result<(), ExampleError> {
    if h.group() != group || l.group() != group {
        return Err(ExampleError::Chain("subgroups belong to a different group".into()));
    }
    let chain = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(ExampleError::Chain(msg.into())) };
    chain(!l.is_trivial(), "L is trivial")?;
    chain(l.is_subgroup_of(h) && l.order() < h.order(), "L is not a proper subgroup of H")?;
    chain(!h.is_whole(), "H = G")?;
    if !h.has_cyclic_quotient() {
        return Err(ExampleError::NonCyclicQuotient);
    }
    Ok(())
}

/// Family 2 with an explicit step: `B′ = H + {0, g, …, (r−1)g}`,
/// `t = (r−1)|H| + x`.
pub fn build_example2_with_step(
    group: &GroupSpec,
    h: &Subgroup,
    l: &Subgroup,
    r: usize,
    x: usize,
    step: Elem,
) -> Result<ExampleInstance, ExampleError> {
    check_chain(group, h, l)?;
    if !group.contains(step) || h.quotient_order(step) != h.index() {
        return Err(ExampleError::BadStep(step));
    }
    require(r >= 2, || format!("r ≥ 2 (r = {r})"))?;
    require(r <= h.index(), || format!("r ≤ |G/H| (r = {r}, |G/H| = {})", h.index()))?;
    require((1..l.order()).contains(&x), || format!("1 ≤ x ≤ |L|−1 (x = {x}, |L| = {})", l.order()))?;

    let terms = GSet::from_elems(group, (0..r).map(|i| group.scale(i, step))).expect("in range");
    let b_prime = sumset_unchecked(&terms, h.carrier());
    let a = h.carrier().complement().union(l.carrier());
    let b = b_prime.difference(h.carrier()).union(l.carrier());
    let t = ((r - 1) * h.order() + x) as u32;
    let (xi, li) = (x as i64, l.order() as i64);
    Ok(ExampleInstance {
        family: 2,
        group: group.clone(),
        a,
        b,
        period: l.clone(),
        outer: Some(h.clone()),
        t,
        x,
        s: None,
        r,
        d: None,
        predicted_defect: xi * xi - xi * li,
    })
}

/// Parameters `(h_order, quotient_order, d, s, r, x)` of family 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Example1Params {
    pub h_order: usize,
    pub quotient_order: usize,
    pub d: usize,
    pub s: usize,
    pub r: usize,
    pub x: usize,
}

impl Example1Params {
    pub fn t(&self) -> u32 {
        ((self.r - 1) * self.h_order + self.x) as u32
    }

    pub fn build(&self) -> Result<ExampleInstance, ExampleError> {
        build_example1(self.h_order, self.quotient_order, self.d, self.s, self.r, self.x)
    }
}

/// Every admissible family-1 parameter tuple with `|H| ≤ max_h` and
/// quotient order `≤ max_q`.
pub fn example1_params(max_h: usize, max_q: usize) -> Vec<Example1Params> {
    let mut out = Vec::new();
    for h_order in 2..=max_h {
        for quotient_order in 1..=max_q {
            for d in 0..quotient_order {
                let ord_d = quotient_order / gcd(d, quotient_order);
                for r in 2..=ord_d {
                    for s in r..=(ord_d + 1 - r) {
                        for x in 1..h_order {
                            out.push(Example1Params { h_order, quotient_order, d, s, r, x });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Family-1 tuples with a prescribed `t`. Since `t = (r−1)|H| + x ≥ |H| + 1
/// ≥ 3`, this is empty for `t ≤ 2`.
pub fn example1_params_with_t(t: u32, max_h: usize, max_q: usize) -> Vec<Example1Params> {
    example1_params(max_h, max_q).into_iter().filter(|p| p.t() == t).collect()
}

/// All chains `0 < L < H < G` with `G/H` cyclic, as `(H, L)` pairs.
pub fn example2_chains(group: &GroupSpec) -> Result<Vec<(Subgroup, Subgroup)>, ExampleError> {
    let lattice = subgroup_lattice_with_max(group, group.order().max(1))?;
    let subs = lattice.subgroups();
    let mut out = Vec::new();
    for h in subs.iter().filter(|h| !h.is_whole() && h.has_cyclic_quotient()) {
        for l in subs {
            if !l.is_trivial() && l.order() < h.order() && l.is_subgroup_of(h) {
                out.push((h.clone(), l.clone()));
            }
        }
    }
    Ok(out)
}

/// Every admissible family-2 instance over `group` (all chains, `r`, `x`).
pub fn example2_instances(group: &GroupSpec) -> Result<Vec<ExampleInstance>, ExampleError> {
    let mut out = Vec::new();
    for (h, l) in example2_chains(group)? {
        for r in 2..=h.index() {
            for x in 1..l.order() {
                out.push(build_example2(group, &h, &l, r, x)?);
            }
        }
    }
    Ok(out)
}

/// Family-2 values of `t` are `(r−1)|H| + x ≥ |H| + 1 ≥ 2|L| + 1 ≥ 5`.
pub fn example2_min_t() -> u32 {
    5
}

/// Decides whether some `A′ ⊆ A`, `B′ ⊆ B` with `|A∖A′| + |B∖B′| ≤ t−1`
/// satisfies `A′ +_t B′ = A′ + B′ = A +_t B`. Returns `None` when more than
/// `budget` candidate `B′` would have to be examined.
///
/// Both conditions only get easier as `A′` grows inside
/// `{a : a + B′ ⊆ A +_t B}`, so it suffices to try that maximal `A′` for each
/// `B′`; and every sum needs `t` representations, so `|B′| ≥ t`.
pub fn equal_sums_witness_exists(a: &GSet, b: &GSet, t: u32, budget: u64) -> Option<bool> {
    let target = rep_counts(a, b).ok()?.at_least(t);
    if target.is_empty() || t == 0 {
        return Some(false);
    }
    let t_us = t as usize;
    if a.len() < t_us || b.len() < t_us {
        return Some(false);
    }
    let max_db = (t_us - 1).min(b.len() - t_us);
    let cost: u64 = (0..=max_db).map(|k| binomial(b.len() as u64, k as u64)).fold(0u64, u64::saturating_add);
    if cost > budget {
        return None;
    }
    let bv: Vec<Elem> = b.iter().collect();
    let g = a.group();
    for db in 0..=max_db {
        let hit = each_combination(&bv, db, &mut |del| {
            let mut b2 = b.clone();
            for &y in del {
                b2.remove(y);
            }
            let a_star = GSet::from_fn(g, |x| a.contains(x) && b2.translate(x).is_subset(&target));
            if a.len() - a_star.len() + db > t_us - 1 || a_star.is_empty() {
                return None;
            }
            let prof = rep_counts(&a_star, &b2).ok()?;
            (prof.at_least(1) == target && prof.at_least(t) == target).then_some(())
        });
        if hit.is_some() {
            return Some(true);
        }
    }
    Some(false)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}
