//! Word-level primitives over `u64` bit vectors.
//!
//! Translation of a set by a group element is a composition of blocked
//! rotations of its characteristic vector: adding `g_j` to factor `j` rotates
//! every block of `n_j · stride_j` bits by `g_j · stride_j`.

pub(crate) type Words = smallvec::SmallVec<[u64; 2]>;

#[inline]
pub(crate) fn word_count(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// 64 bits starting at bit `pos`; positions past the slice read as zero.
#[inline]
fn read_word(words: &[u64], pos: usize) -> u64 {
    let (w, s) = (pos / 64, pos % 64);
    let lo = words.get(w).copied().unwrap_or(0) >> s;
    if s == 0 {
        lo
    } else {
        lo | words.get(w + 1).copied().unwrap_or(0) << (64 - s)
    }
}

/// Copies `n` bits from `src[src_pos..]` to `dst[dst_pos..]`.
pub(crate) fn copy_bits(src: &[u64], src_pos: usize, dst: &mut [u64], dst_pos: usize, n: usize) {
    let mut done = 0;
    while done < n {
        let d = dst_pos + done;
        let (w, s) = (d / 64, d % 64);
        let take = (64 - s).min(n - done);
        let mask = if take == 64 { !0 } else { (1u64 << take) - 1 };
        let chunk = read_word(src, src_pos + done) & mask;
        dst[w] = (dst[w] & !(mask << s)) | (chunk << s);
        done += take;
    }
}

/// Rotates every block of `block` bits in `src[..len]` towards higher indices
/// by `shift`, writing into `dst`. `len` must be a multiple of `block`.
pub(crate) fn rotate_blocks(src: &[u64], dst: &mut [u64], len: usize, block: usize, shift: usize) {
    debug_assert!(block > 0 && len % block == 0 && shift < block);
    if shift == 0 {
        dst[..src.len()].copy_from_slice(src);
        return;
    }
    let mut start = 0;
    while start < len {
        copy_bits(src, start, dst, start + shift, block - shift);
        copy_bits(src, start + block - shift, dst, start, shift);
        start += block;
    }
}

/// Translates the characteristic vector `src` by the element with `digits`
/// in a group with the given factor `orders` and `strides`. `scratch` and
/// `dst` must have the same length as `src`.
pub(crate) fn translate_into(
    src: &[u64],
    len: usize,
    orders: &[usize],
    strides: &[usize],
    digits: &[usize],
    dst: &mut [u64],
    scratch: &mut [u64],
) {
    dst.copy_from_slice(src);
    for j in 0..orders.len() {
        if digits[j] == 0 {
            continue;
        }
        scratch.copy_from_slice(dst);
        rotate_blocks(scratch, dst, len, orders[j] * strides[j], digits[j] * strides[j]);
    }
}

#[inline]
pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Iterates indices of set bits in ascending order.
pub(crate) fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            }
        })
    })
}

/// Per-position counters stored bit-sliced: plane `j` of word `w` holds bit
/// `j` of the counts for the 64 positions covered by `w`. Adding a bit vector
/// is a ripple-carry over the planes, one word at a time.
pub(crate) struct SlicedCounter {
    planes: usize,
    words: usize,
    data: Vec<u64>,
}

impl SlicedCounter {
    /// Counter able to hold values up to `max_value` without overflow.
    pub(crate) fn new(words: usize, max_value: usize) -> Self {
        let planes = (usize::BITS - max_value.leading_zeros()).max(1) as usize;
        SlicedCounter { planes, words, data: vec![0; planes * words] }
    }

    #[inline]
    pub(crate) fn add(&mut self, x: &[u64]) {
        for (w, &xw) in x.iter().enumerate().take(self.words) {
            let row = &mut self.data[w * self.planes..(w + 1) * self.planes];
            let mut carry = xw;
            for p in row.iter_mut() {
                if carry == 0 {
                    break;
                }
                let next = *p & carry;
                *p ^= carry;
                carry = next;
            }
            debug_assert_eq!(carry, 0, "sliced counter overflow");
        }
    }

    pub(crate) fn into_counts(self, len: usize) -> Vec<u32> {
        let mut out = vec![0u32; len];
        for w in 0..self.words {
            let row = &self.data[w * self.planes..(w + 1) * self.planes];
            for (j, &plane) in row.iter().enumerate() {
                for b in ones(&[plane]) {
                    let g = w * 64 + b;
                    if g < len {
                        out[g] |= 1 << j;
                    }
                }
            }
        }
        out
    }
}
