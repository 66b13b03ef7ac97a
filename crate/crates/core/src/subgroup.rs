//! Subgroups, stabilizers and subgroup lattices of small groups.

use std::collections::HashSet;

use thiserror::Error;

use crate::group::{Elem, GroupSpec};
use crate::ops::sumset_unchecked;
use crate::set::GSet;

/// Default ceiling on group order for [`subgroup_lattice`].
pub const DEFAULT_LATTICE_MAX: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubgroupError {
    #[error("set is not a subgroup: {0}")]
    NotClosed(String),
    #[error("subgroup lattice limited to order ≤ {max} (group has order {order})")]
    LatticeTooLarge { order: usize, max: usize },
}

/// A subgroup, carried as the set of its elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    carrier: GSet,
}

impl Subgroup {
    /// Validates that `set` contains 0 and is closed under addition.
    pub fn from_set(set: GSet) -> Result<Self, SubgroupError> {
        let g = set.group();
        if !set.contains(0) {
            return Err(SubgroupError::NotClosed(format!("{set} lacks 0")));
        }
        for x in set.iter() {
            for y in set.iter() {
                if !set.contains(g.add(x, y)) {
                    return Err(SubgroupError::NotClosed(format!("{x}+{y} escapes {set}")));
                }
            }
        }
        Ok(Subgroup { carrier: set })
    }

    pub(crate) fn from_set_unchecked(set: GSet) -> Self {
        Subgroup { carrier: set }
    }

    pub fn trivial(group: &GroupSpec) -> Self {
        Subgroup { carrier: GSet::singleton(group, 0).expect("0 is always in range") }
    }

    pub fn whole(group: &GroupSpec) -> Self {
        Subgroup { carrier: GSet::full(group) }
    }

    /// `⟨x⟩`.
    pub fn cyclic(group: &GroupSpec, x: Elem) -> Self {
        let mut set = GSet::empty(group);
        let mut y = 0;
        loop {
            let _ = set.insert(y);
            y = group.add(y, x);
            if y == 0 {
                break;
            }
        }
        Subgroup { carrier: set }
    }

    /// Subgroup generated by `gens`.
    pub fn generated_by(group: &GroupSpec, gens: &[Elem]) -> Self {
        gens.iter().fold(Subgroup::trivial(group), |h, &x| h.join(&Subgroup::cyclic(group, x)))
    }

    /// `H + K`, the smallest subgroup containing both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        Subgroup { carrier: sumset_unchecked(&self.carrier, &other.carrier) }
    }

    pub fn carrier(&self) -> &GSet {
        &self.carrier
    }

    pub fn group(&self) -> &GroupSpec {
        self.carrier.group()
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.group().order()
    }

    pub fn index(&self) -> usize {
        self.group().order() / self.order()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.carrier.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.carrier.is_subset(&other.carrier)
    }

    /// Order of `x + H` in `G/H`.
    pub fn quotient_order(&self, x: Elem) -> usize {
        let g = self.group();
        let mut y = x;
        let mut m = 1;
        while !self.contains(y) {
            y = g.add(y, x);
            m += 1;
        }
        m
    }

    /// True when `G/H` is cyclic.
    pub fn has_cyclic_quotient(&self) -> bool {
        self.quotient_generator().is_some()
    }

    /// Smallest element whose coset generates `G/H`.
    pub fn quotient_generator(&self) -> Option<Elem> {
        let idx = self.index();
        self.group().elements().find(|&x| self.quotient_order(x) == idx)
    }

    /// One representative per coset, the smallest element of each.
    pub fn coset_representatives(&self) -> Vec<Elem> {
        let g = self.group();
        let mut covered = GSet::empty(g);
        let mut reps = Vec::with_capacity(self.index());
        for x in g.elements() {
            if !covered.contains(x) {
                reps.push(x);
                covered = covered.union(&self.carrier.translate(x));
            }
        }
        reps
    }
}

/// `H(S) = {x : x + S = S}`. The empty set is stabilized by the whole group.
pub fn stabilizer(s: &GSet) -> Subgroup {
    let g = s.group();
    let Some(s0) = s.first() else {
        return Subgroup::whole(g);
    };
    // x + s0 ∈ S is necessary, so x ranges over S − s0.
    let carrier = GSet::from_elems(g, s.iter().map(|y| g.sub(y, s0)).filter(|&x| x == 0 || s.translate(x) == *s))
        .expect("differences stay in range");
    Subgroup::from_set_unchecked(carrier)
}

pub fn is_periodic(s: &GSet) -> bool {
    !stabilizer(s).is_trivial()
}

/// Every subgroup of a small group.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    group: GroupSpec,
    subgroups: Vec<Subgroup>,
}

impl SubgroupLattice {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// Subgroups ordered by order, then by carrier.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Largest order of a proper subgroup; 0 for the trivial group.
    pub fn max_proper_subgroup_size(&self) -> usize {
        self.subgroups.iter().filter(|h| !h.is_whole()).map(Subgroup::order).max().unwrap_or(0)
    }

    /// A coset `x + H ⊆ s` with `|H| ≥ min_order`, if one exists.
    pub fn find_coset_in(&self, s: &GSet, min_order: usize) -> Option<(Elem, &Subgroup)> {
        self.subgroups
            .iter()
            .filter(|h| h.order() >= min_order && h.order() <= s.len())
            .find_map(|h| s.iter().find(|&x| h.carrier().translate(x).is_subset(s)).map(|x| (x, h)))
    }
}

/// Subgroup lattice by join closure: start from `{0}`, join with every cyclic
/// subgroup until no new subgroup appears.
pub fn subgroup_lattice(group: &GroupSpec) -> Result<SubgroupLattice, SubgroupError> {
    subgroup_lattice_with_max(group, DEFAULT_LATTICE_MAX)
}

pub fn subgroup_lattice_with_max(group: &GroupSpec, max: usize) -> Result<SubgroupLattice, SubgroupError> {
    if group.order() > max {
        return Err(SubgroupError::LatticeTooLarge { order: group.order(), max });
    }
    let mut cyclic: Vec<Subgroup> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for x in group.elements() {
        let c = Subgroup::cyclic(group, x);
        if seen_cyclic.insert(c.carrier().clone()) {
            cyclic.push(c);
        }
    }
    let mut seen: HashSet<GSet> = HashSet::new();
    let mut frontier = vec![Subgroup::trivial(group)];
    seen.insert(frontier[0].carrier().clone());
    let mut all = frontier.clone();
    while let Some(h) = frontier.pop() {
        for c in &cyclic {
            if c.is_subgroup_of(&h) {
                continue;
            }
            let j = h.join(c);
            if seen.insert(j.carrier().clone()) {
                all.push(j.clone());
                frontier.push(j);
            }
        }
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.carrier().to_vec().cmp(&b.carrier().to_vec())));
    Ok(SubgroupLattice { group: group.clone(), subgroups: all })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(g: &GroupSpec, xs: &[usize]) -> GSet {
        GSet::from_elems(g, xs.iter().copied()).unwrap()
    }

    #[test]
    fn stabilizer_examples() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        assert!(stabilizer(&set(&z4, &[0, 1])).is_trivial());
        let z6 = GroupSpec::cyclic(6).unwrap();
        assert_eq!(stabilizer(&set(&z6, &[0, 1, 3, 4])).carrier().to_vec(), vec![0, 3]);
        assert_eq!(stabilizer(&set(&z6, &[0, 3])).carrier().to_vec(), vec![0, 3]);
        assert!(stabilizer(&GSet::empty(&z6)).is_whole());
        assert!(is_periodic(&GSet::full(&z6)));
    }

    #[test]
    fn from_set_validates_closure() {
        let z6 = GroupSpec::cyclic(6).unwrap();
        assert!(Subgroup::from_set(set(&z6, &[0, 2, 4])).is_ok());
        assert!(Subgroup::from_set(set(&z6, &[0, 2])).is_err());
        assert!(Subgroup::from_set(set(&z6, &[2, 4])).is_err());
    }

    /// Brute force: every subset containing 0 and closed under addition.
    fn subgroups_by_enumeration(g: &GroupSpec) -> Vec<Vec<usize>> {
        let n = g.order();
        let mut out = Vec::new();
        for mask in 0u64..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let elems: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let closed = elems.iter().all(|&x| elems.iter().all(|&y| mask >> g.add(x, y) & 1 == 1));
            if closed {
                out.push(elems);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    #[test]
    fn lattice_examples() {
        let z4 = subgroup_lattice(&GroupSpec::cyclic(4).unwrap()).unwrap();
        let got: Vec<_> = z4.subgroups().iter().map(|h| h.carrier().to_vec()).collect();
        assert_eq!(got, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        let v4 = subgroup_lattice(&GroupSpec::new(&[2, 2]).unwrap()).unwrap();
        assert_eq!(v4.len(), 5);
        let z5 = subgroup_lattice(&GroupSpec::cyclic(5).unwrap()).unwrap();
        assert_eq!(z5.len(), 2);
        assert_eq!(z5.max_proper_subgroup_size(), 1);
        assert!(matches!(
            subgroup_lattice(&GroupSpec::cyclic(257).unwrap()),
            Err(SubgroupError::LatticeTooLarge { .. })
        ));
    }

    #[test]
    fn lattice_matches_subset_enumeration() {
        for shape in [&[2, 2][..], &[2, 4], &[2, 2, 2], &[3, 3], &[12], &[2, 6], &[2, 2, 4], &[16]] {
            let g = GroupSpec::new(shape).unwrap();
            let lat = subgroup_lattice(&g).unwrap();
            let got: Vec<_> = lat.subgroups().iter().map(|h| h.carrier().to_vec()).collect();
            assert_eq!(got, subgroups_by_enumeration(&g), "{g}");
        }
    }

    #[test]
    fn max_proper_is_order_over_least_prime() {
        for shape in [&[12][..], &[2, 2, 2], &[3, 5], &[9, 3], &[7], &[1]] {
            let g = GroupSpec::new(shape).unwrap();
            let lat = subgroup_lattice(&g).unwrap();
            let want = crate::group::factorize(g.order()).first().map_or(0, |&(p, _)| g.order() / p);
            assert_eq!(lat.max_proper_subgroup_size(), want, "{g}");
        }
    }

    #[test]
    fn quotients_and_cosets() {
        let g = GroupSpec::new(&[2, 8]).unwrap();
        let h = Subgroup::generated_by(&g, &[g.index(&[1, 0]), g.index(&[0, 4])]);
        assert_eq!(h.order(), 4);
        assert!(h.has_cyclic_quotient());
        assert_eq!(h.coset_representatives().len(), 4);
        let k = Subgroup::generated_by(&g, &[g.index(&[0, 2])]);
        assert_eq!(k.order(), 4);
        assert!(!k.has_cyclic_quotient());
    }

    #[test]
    fn coset_search() {
        let g = GroupSpec::cyclic(9).unwrap();
        let lat = subgroup_lattice(&g).unwrap();
        let s = set(&g, &[1, 4, 7, 8]);
        let (x, h) = lat.find_coset_in(&s, 3).unwrap();
        assert_eq!(h.order(), 3);
        assert!(h.carrier().translate(x).is_subset(&s));
        assert!(lat.find_coset_in(&set(&g, &[0, 1, 2]), 3).is_none());
    }
}
