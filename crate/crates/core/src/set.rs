//! Bitset-backed subsets of a finite abelian group.

use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::bits::{self, Words};
use crate::group::{Elem, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("sets live in different groups ({0} vs {1})")]
    GroupMismatch(String, String),
    #[error("element {elem} is outside a group of order {order}")]
    OutOfRange { elem: usize, order: usize },
    #[error("operation needs a nonempty set")]
    Empty,
    #[error("representation threshold must be at least 1")]
    ZeroThreshold,
}

/// A subset of a [`GroupSpec`], stored as its characteristic bit vector with
/// a cached cardinality.
#[derive(Clone)]
pub struct GSet {
    group: GroupSpec,
    words: Words,
    card: usize,
}

impl GSet {
    pub fn empty(group: &GroupSpec) -> Self {
        GSet { group: group.clone(), words: smallvec::smallvec![0; bits::word_count(group.order())], card: 0 }
    }

    pub fn full(group: &GroupSpec) -> Self {
        let mut s = Self::empty(group);
        for x in group.elements() {
            s.raw_insert(x);
        }
        s.card = group.order();
        s
    }

    pub fn singleton(group: &GroupSpec, x: Elem) -> Result<Self, SetError> {
        Self::from_elems(group, [x])
    }

    /// Collects elements into a set; duplicates collapse.
    pub fn from_elems<I>(group: &GroupSpec, elems: I) -> Result<Self, SetError>
    where
        I: IntoIterator<Item = Elem>,
    {
        let mut s = Self::empty(group);
        for x in elems {
            if !group.contains(x) {
                return Err(SetError::OutOfRange { elem: x, order: group.order() });
            }
            s.raw_insert(x);
        }
        s.recount();
        Ok(s)
    }

    /// Builds a set from a membership predicate over all elements.
    pub fn from_fn(group: &GroupSpec, mut member: impl FnMut(Elem) -> bool) -> Self {
        let mut s = Self::empty(group);
        for x in group.elements() {
            if member(x) {
                s.raw_insert(x);
            }
        }
        s.recount();
        s
    }

    /// Interprets the low `order` bits of `mask` as the characteristic
    /// vector. Only for groups of order ≤ 64.
    pub fn from_mask(group: &GroupSpec, mask: u64) -> Self {
        assert!(group.order() <= 64, "from_mask needs order ≤ 64");
        let keep = if group.order() == 64 { !0 } else { (1u64 << group.order()) - 1 };
        let mut s = Self::empty(group);
        s.words[0] = mask & keep;
        s.recount();
        s
    }

    pub(crate) fn from_words(group: &GroupSpec, words: Words) -> Self {
        debug_assert_eq!(words.len(), bits::word_count(group.order()));
        let mut s = GSet { group: group.clone(), words, card: 0 };
        s.recount();
        s
    }

    #[inline]
    fn raw_insert(&mut self, x: Elem) {
        self.words[x / 64] |= 1 << (x % 64);
    }

    fn recount(&mut self) {
        self.card = bits::popcount(&self.words);
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.card
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        x < self.group.order() && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        bits::ones(&self.words)
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<Elem> {
        self.iter().next()
    }

    pub fn insert(&mut self, x: Elem) -> Result<bool, SetError> {
        if !self.group.contains(x) {
            return Err(SetError::OutOfRange { elem: x, order: self.group.order() });
        }
        let fresh = !self.contains(x);
        if fresh {
            self.raw_insert(x);
            self.card += 1;
        }
        Ok(fresh)
    }

    pub fn remove(&mut self, x: Elem) -> bool {
        let present = self.contains(x);
        if present {
            self.words[x / 64] &= !(1 << (x % 64));
            self.card -= 1;
        }
        present
    }

    pub fn same_group(&self, other: &GSet) -> Result<(), SetError> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(SetError::GroupMismatch(self.group.to_string(), other.group.to_string()))
        }
    }

    fn zip_words(&self, other: &GSet, f: impl Fn(u64, u64) -> u64) -> GSet {
        debug_assert_eq!(self.group, other.group);
        let words = self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect();
        GSet::from_words(&self.group, words)
    }

    pub fn union(&self, other: &GSet) -> GSet {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &GSet) -> GSet {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &GSet) -> GSet {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &GSet) -> bool {
        self.group == other.group && self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn complement(&self) -> GSet {
        let full = GSet::full(&self.group);
        full.difference(self)
    }

    /// `x + S`.
    pub fn translate(&self, x: Elem) -> GSet {
        let g = &self.group;
        let mut dst = self.words.clone();
        let mut scratch = self.words.clone();
        bits::translate_into(
            &self.words,
            g.order(),
            g.orders(),
            g.strides(),
            &g.digits(x % g.order()),
            &mut dst,
            &mut scratch,
        );
        GSet { group: self.group.clone(), words: dst, card: self.card }
    }

    /// `−S`, the elementwise inverse.
    pub fn negate(&self) -> GSet {
        let g = &self.group;
        let mut out = GSet::empty(g);
        for x in self.iter() {
            out.raw_insert(g.neg(x));
        }
        out.card = self.card;
        out
    }
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.words == other.words
    }
}

impl Eq for GSet {}

impl Hash for GSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.group.hash(state);
        self.words.hash(state);
    }
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊆{}", self, self.group)
    }
}

/// Formats as the set literal `{i1,i2,…}` over flat indices.
impl fmt::Display for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}
