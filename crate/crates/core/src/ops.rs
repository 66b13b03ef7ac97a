//! Set-level primitives: sumsets, i-representable sums, holes, the Dyson
//! transform, Sidon detection and additive energy.

use crate::bits;
use crate::group::Elem;
use crate::kernel::{rep_counts, RepProfile};
use crate::set::{GSet, SetError};
use crate::subgroup::Subgroup;

fn nonempty(s: &GSet) -> Result<(), SetError> {
    if s.is_empty() {
        Err(SetError::Empty)
    } else {
        Ok(())
    }
}

/// `A + B`, the set of all pairwise sums.
pub fn sumset(a: &GSet, b: &GSet) -> Result<GSet, SetError> {
    a.same_group(b)?;
    nonempty(a)?;
    nonempty(b)?;
    Ok(sumset_unchecked(a, b))
}

/// Sumset of possibly empty sets over the same group (empty if either is).
pub(crate) fn sumset_unchecked(a: &GSet, b: &GSet) -> GSet {
    let g = a.group();
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let words = bits::word_count(g.order());
    if small.len() * large.len() <= small.len() * words * (g.rank() + 1) * 4 {
        let ls: Vec<Elem> = large.iter().collect();
        let mut out = GSet::empty(g);
        for x in small.iter() {
            for &y in &ls {
                let _ = out.insert(g.add(x, y));
            }
        }
        return out;
    }
    let src = large.words();
    let mut acc: bits::Words = smallvec::smallvec![0; words];
    let mut dst = vec![0u64; words];
    let mut scratch = vec![0u64; words];
    for x in small.iter() {
        bits::translate_into(src, g.order(), g.orders(), g.strides(), &g.digits(x), &mut dst, &mut scratch);
        for (o, d) in acc.iter_mut().zip(&dst) {
            *o |= d;
        }
    }
    GSet::from_words(g, acc)
}

/// `A +_i B = {g : r_{A,B}(g) ≥ i}`.
pub fn i_representable(a: &GSet, b: &GSet, i: u32) -> Result<GSet, SetError> {
    if i == 0 {
        return Err(SetError::ZeroThreshold);
    }
    Ok(rep_counts(a, b)?.at_least(i))
}

/// `Σ_{i=1}^t |A +_i B|`.
pub fn pollard_sum(a: &GSet, b: &GSet, t: u32) -> Result<u64, SetError> {
    if t == 0 {
        return Err(SetError::ZeroThreshold);
    }
    Ok(rep_counts(a, b)?.pollard_sum(t))
}

/// Number of `H`-holes in `A` and `B`: `|A+H| − |A| + |B+H| − |B|`.
pub fn holes_rho(a: &GSet, b: &GSet, h: &Subgroup) -> Result<usize, SetError> {
    a.same_group(b)?;
    a.same_group(h.carrier())?;
    let holes = |s: &GSet| sumset_unchecked(s, h.carrier()).len() - s.len();
    Ok(holes(a) + holes(b))
}

/// The Dyson transform `(A(x), B(x)) = (A ∪ (x+B), A ∩ (x+B))`.
pub fn dyson_transform(a: &GSet, b: &GSet, x: Elem) -> Result<(GSet, GSet), SetError> {
    a.same_group(b)?;
    if !a.group().contains(x) {
        return Err(SetError::OutOfRange { elem: x, order: a.group().order() });
    }
    let shifted = b.translate(x);
    Ok((a.union(&shifted), a.intersection(&shifted)))
}

/// True when every nonzero difference of `B` has a single representation.
pub fn is_sidon(b: &GSet) -> Result<bool, SetError> {
    nonempty(b)?;
    let diffs = rep_counts(b, &b.negate())?;
    Ok(diffs.counts().iter().enumerate().all(|(g, &c)| g == 0 || c < 2))
}

/// Reduced additive energy `Σ_c C(r_{A,B}(c), 2)`.
pub fn additive_energy(a: &GSet, b: &GSet) -> Result<u64, SetError> {
    Ok(rep_counts(a, b)?.energy())
}

/// Profile of `r_{A,−B}(x) = |(x+B) ∩ A|`, the difference counts.
pub fn difference_counts(a: &GSet, b: &GSet) -> Result<RepProfile, SetError> {
    rep_counts(a, &b.negate())
}
