//! Finite abelian groups presented as direct products of cyclic factors.
//!
//! Elements are addressed by a flat index in `[0, order)`. The flattening is
//! mixed radix with the first factor most significant:
//! `index(a) = Σ_j a_j · Π_{m>j} n_m`.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

/// Default ceiling on the group order accepted by [`GroupSpec::new`].
pub const DEFAULT_MAX_ORDER: usize = 1 << 20;

/// A group element, as its flat index.
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group needs at least one cyclic factor")]
    NoFactors,
    #[error("cyclic factor orders must be at least 1 (got {0})")]
    ZeroFactor(usize),
    #[error("group order exceeds the configured maximum of {max}")]
    TooLarge { max: usize },
}

/// A finite abelian group `Z_{n_1} × … × Z_{n_k}`.
///
/// The presentation is kept as given; `[2, 3]` and `[6]` are distinct values
/// even though they are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupWire", into = "GroupWire")]
pub struct GroupSpec {
    orders: SmallVec<[usize; 4]>,
    strides: SmallVec<[usize; 4]>,
    order: usize,
}

#[derive(Serialize, Deserialize)]
struct GroupWire {
    orders: Vec<usize>,
}

impl TryFrom<GroupWire> for GroupSpec {
    type Error = GroupError;
    fn try_from(w: GroupWire) -> Result<Self, GroupError> {
        GroupSpec::new(&w.orders)
    }
}

impl From<GroupSpec> for GroupWire {
    fn from(g: GroupSpec) -> Self {
        GroupWire { orders: g.orders.to_vec() }
    }
}

impl GroupSpec {
    /// Builds a group with the default order ceiling.
    pub fn new(orders: &[usize]) -> Result<Self, GroupError> {
        Self::with_max(orders, DEFAULT_MAX_ORDER)
    }

    pub fn with_max(orders: &[usize], max_order: usize) -> Result<Self, GroupError> {
        if orders.is_empty() {
            return Err(GroupError::NoFactors);
        }
        let mut order: usize = 1;
        for &n in orders {
            if n == 0 {
                return Err(GroupError::ZeroFactor(n));
            }
            order = order.checked_mul(n).filter(|&o| o <= max_order).ok_or(GroupError::TooLarge { max: max_order })?;
        }
        let mut strides: SmallVec<[usize; 4]> = SmallVec::from_elem(1, orders.len());
        for j in (0..orders.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * orders[j + 1];
        }
        Ok(GroupSpec { orders: orders.iter().copied().collect(), strides, order })
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        Self::new(&[n])
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    /// Distance in flat index between consecutive values of factor `j`.
    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        x < self.order
    }

    pub fn digits(&self, x: Elem) -> SmallVec<[usize; 4]> {
        self.orders.iter().zip(&self.strides).map(|(&n, &s)| (x / s) % n).collect()
    }

    /// Flattens component digits; each digit is reduced modulo its factor.
    pub fn index(&self, digits: &[usize]) -> Elem {
        assert_eq!(digits.len(), self.rank(), "digit count must match rank");
        digits.iter().zip(self.orders.iter().zip(&self.strides)).map(|(&d, (&n, &s))| (d % n) * s).sum()
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        if self.orders.len() == 1 {
            let s = x + y;
            return if s >= self.order { s - self.order } else { s };
        }
        let mut out = 0;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let d = (x / s) % n + (y / s) % n;
            out += if d >= n { d - n } else { d } * s;
        }
        out
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        if self.orders.len() == 1 {
            return if x == 0 { 0 } else { self.order - x };
        }
        let mut out = 0;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let d = (x / s) % n;
            out += if d == 0 { 0 } else { n - d } * s;
        }
        out
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    /// `m·x` for a nonnegative multiplier.
    pub fn scale(&self, m: usize, x: Elem) -> Elem {
        let digits: SmallVec<[usize; 4]> = self
            .digits(x)
            .iter()
            .zip(&self.orders)
            .map(|(&d, &n)| ((d as u128 * m as u128) % n as u128) as usize)
            .collect();
        self.index(&digits)
    }

    /// Order of `x` in the group: lcm over factors of `n_j / gcd(x_j, n_j)`.
    pub fn element_order(&self, x: Elem) -> usize {
        self.digits(x).iter().zip(&self.orders).map(|(&d, &n)| n / gcd(d, n)).fold(1, lcm)
    }

    /// True when the presented group is cyclic (factors pairwise coprime).
    pub fn is_cyclic(&self) -> bool {
        self.orders.iter().fold(1usize, |acc, &n| lcm(acc, n)) == self.order
    }

    /// Sorted invariant factors `d_1 | d_2 | … | d_r` (all > 1); `[1]` for the
    /// trivial group. Isomorphic presentations share the same value.
    pub fn invariant_factors(&self) -> Vec<usize> {
        let mut powers: Vec<(usize, Vec<usize>)> = Vec::new();
        for &n in &self.orders {
            for (p, e) in factorize(n) {
                match powers.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, v)) => v.push(p.pow(e)),
                    None => powers.push((p, vec![p.pow(e)])),
                }
            }
        }
        let width = powers.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        if width == 0 {
            return vec![1];
        }
        let mut factors = vec![1usize; width];
        for (_, mut v) in powers {
            v.sort_unstable_by(|a, b| b.cmp(a));
            for (i, q) in v.into_iter().enumerate() {
                factors[width - 1 - i] *= q;
            }
        }
        factors
    }

    /// Iterates every element in flat order.
    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.orders.iter().enumerate() {
            if i > 0 {
                f.write_str("×")?;
            }
            write!(f, "Z_{n}")?;
        }
        Ok(())
    }
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}
