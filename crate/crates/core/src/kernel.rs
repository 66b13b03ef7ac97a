//! Representation counting `r_{A,B}(g) = |(g − B) ∩ A|`.
//!
//! Three interchangeable kernels produce the same [`RepProfile`]:
//!
//! * `Naive` walks all `|A|·|B|` pairs.
//! * `Bitset` translates the larger set by each element of the smaller one
//!   and accumulates the translates into bit-sliced counters, so each
//!   translate costs `O(order / 64)` word operations.
//! * `Transform` performs a multi-dimensional cyclic convolution with FFTs
//!   along each factor and rounds the result.
//!
//! [`Kernel::Auto`] picks one from a rough cost model.

use std::fmt;
use std::str::FromStr;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::bits::{self, SlicedCounter};
use crate::group::{Elem, GroupSpec};
use crate::set::{GSet, SetError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Kernel {
    #[default]
    Auto,
    Naive,
    Bitset,
    Transform,
}

impl FromStr for Kernel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Kernel::Auto),
            "naive" => Ok(Kernel::Naive),
            "bitset" => Ok(Kernel::Bitset),
            "transform" => Ok(Kernel::Transform),
            other => Err(format!("unknown kernel '{other}' (auto|naive|bitset|transform)")),
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kernel::Auto => "auto",
            Kernel::Naive => "naive",
            Kernel::Bitset => "bitset",
            Kernel::Transform => "transform",
        })
    }
}

/// Below this order the transform kernel is never chosen automatically.
pub const TRANSFORM_MIN_ORDER: usize = 1 << 14;

/// The representation function of a pair `(A, B)`.
#[derive(Clone, PartialEq, Eq)]
pub struct RepProfile {
    group: GroupSpec,
    counts: Vec<u32>,
    total: u64,
}

impl fmt::Debug for RepProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RepProfile")
            .field("group", &self.group)
            .field("counts", &self.counts)
            .field("total", &self.total)
            .finish()
    }
}

impl RepProfile {
    fn new(group: &GroupSpec, counts: Vec<u32>) -> Self {
        let total = counts.iter().map(|&c| c as u64).sum();
        RepProfile { group: group.clone(), counts, total }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    #[inline]
    pub fn count(&self, g: Elem) -> u32 {
        self.counts[g]
    }

    /// `Σ_g r(g)`, always `|A|·|B|`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn max_count(&self) -> u32 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    /// `A +_i B = {g : r(g) ≥ i}`.
    pub fn at_least(&self, i: u32) -> GSet {
        let mut words: bits::Words = smallvec::smallvec![0; bits::word_count(self.group.order())];
        for (g, &c) in self.counts.iter().enumerate() {
            if c >= i {
                words[g / 64] |= 1 << (g % 64);
            }
        }
        GSet::from_words(&self.group, words)
    }

    /// `|A +_i B|`.
    pub fn count_at_least(&self, i: u32) -> usize {
        self.counts.iter().filter(|&&c| c >= i).count()
    }

    /// `Σ_{i=1}^t |A +_i B| = Σ_g min(r(g), t)`.
    pub fn pollard_sum(&self, t: u32) -> u64 {
        self.counts.iter().map(|&c| c.min(t) as u64).sum()
    }

    /// Reduced additive energy `Σ_g C(r(g), 2)`.
    pub fn energy(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64 * (c as u64).saturating_sub(1) / 2).sum()
    }
}

/// Computes the representation profile with an automatically chosen kernel.
pub fn rep_counts(a: &GSet, b: &GSet) -> Result<RepProfile, SetError> {
    rep_counts_with(a, b, Kernel::Auto)
}

pub fn rep_counts_with(a: &GSet, b: &GSet, kernel: Kernel) -> Result<RepProfile, SetError> {
    a.same_group(b)?;
    let kernel = match kernel {
        Kernel::Auto => choose_kernel(a, b),
        k => k,
    };
    let g = a.group();
    let counts = match kernel {
        Kernel::Naive => naive_counts(a, b),
        Kernel::Bitset => bitset_counts(a, b),
        Kernel::Transform => transform_counts(a, b),
        Kernel::Auto => unreachable!(),
    };
    Ok(RepProfile::new(g, counts))
}

/// Cost model behind [`Kernel::Auto`]. Units are roughly "word operations".
pub fn choose_kernel(a: &GSet, b: &GSet) -> Kernel {
    let g = a.group();
    let small = a.len().min(b.len()) as f64;
    let words = bits::word_count(g.order()) as f64;
    let rank = g.rank() as f64;
    let naive = a.len() as f64 * b.len() as f64 * (1.0 + rank);
    let planes = (small + 1.0).log2().ceil().max(1.0);
    let bitset = small * words * (2.0 * rank + planes) + g.order() as f64 * planes / 8.0;
    if g.order() >= TRANSFORM_MIN_ORDER {
        let n = g.order() as f64;
        let transform = 24.0 * n * n.log2();
        if transform < bitset && transform < naive {
            return Kernel::Transform;
        }
    }
    if naive <= bitset {
        Kernel::Naive
    } else {
        Kernel::Bitset
    }
}

fn naive_counts(a: &GSet, b: &GSet) -> Vec<u32> {
    let g = a.group();
    let mut counts = vec![0u32; g.order()];
    let bs: Vec<Elem> = b.iter().collect();
    for x in a.iter() {
        for &y in &bs {
            counts[g.add(x, y)] += 1;
        }
    }
    counts
}

fn bitset_counts(a: &GSet, b: &GSet) -> Vec<u32> {
    // r_{A,B} = r_{B,A}: translate the larger set by each element of the smaller.
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let g = a.group();
    let n = g.order();
    let src = large.words();
    let mut counter = SlicedCounter::new(src.len(), small.len());
    let mut dst = vec![0u64; src.len()];
    let mut scratch = vec![0u64; src.len()];
    for x in small.iter() {
        bits::translate_into(src, n, g.orders(), g.strides(), &g.digits(x), &mut dst, &mut scratch);
        counter.add(&dst);
    }
    counter.into_counts(n)
}

/// Applies an in-place FFT along every factor axis of `data`.
fn transform_axes(g: &GroupSpec, data: &mut [Complex<f64>], planner: &mut FftPlanner<f64>, inverse: bool) {
    let n = g.order();
    let mut line = Vec::new();
    for (&len, &stride) in g.orders().iter().zip(g.strides()) {
        if len == 1 {
            continue;
        }
        let fft = if inverse { planner.plan_fft_inverse(len) } else { planner.plan_fft_forward(len) };
        let block = len * stride;
        line.resize(len, Complex::default());
        for base in (0..n).step_by(block) {
            for off in 0..stride {
                let start = base + off;
                for (k, slot) in line.iter_mut().enumerate() {
                    *slot = data[start + k * stride];
                }
                fft.process(&mut line);
                for (k, v) in line.iter().enumerate() {
                    data[start + k * stride] = *v;
                }
            }
        }
    }
}

fn transform_counts(a: &GSet, b: &GSet) -> Vec<u32> {
    let g = a.group();
    let n = g.order();
    let indicator = |s: &GSet| {
        let mut v = vec![Complex::new(0.0, 0.0); n];
        for x in s.iter() {
            v[x].re = 1.0;
        }
        v
    };
    let mut planner = FftPlanner::new();
    let mut fa = indicator(a);
    let mut fb = indicator(b);
    transform_axes(g, &mut fa, &mut planner, false);
    transform_axes(g, &mut fb, &mut planner, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    transform_axes(g, &mut fa, &mut planner, true);
    let scale = n as f64;
    fa.iter()
        .map(|c| {
            let v = c.re / scale;
            debug_assert!((v - v.round()).abs() < 0.25, "transform rounding drift {v}");
            v.round().max(0.0) as u32
        })
        .collect()
}
