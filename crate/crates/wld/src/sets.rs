//! Bitset representations of vertex and propagator subsets.
//!
//! Both sets carry their ambient size so that complements are always taken
//! relative to `[n]` (or to the diagram's propagator list). Ambient sizes are
//! capped at 64, which keeps union/intersection/complement single-word.

use crate::error::{Error, Result};
use std::fmt;

/// A subset of the vertex set `[n] = {1, .., n}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    n: u8,
    bits: u64,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        debug_assert!(n <= 64);
        VertexSet { n: n as u8, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 64);
        VertexSet {
            n: n as u8,
            bits: if n == 64 {
                !0
            } else {
                (1u64 << n).wrapping_sub(1)
            },
        }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, vs: I) -> Result<Self> {
        let mut s = VertexSet::empty(n);
        for v in vs {
            if v < 1 || v > n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            s.bits |= 1 << (v - 1);
        }
        Ok(s)
    }

    /// Ambient size n.
    pub fn ambient(&self) -> usize {
        self.n as usize
    }

    pub fn contains(&self, v: usize) -> bool {
        v >= 1 && v <= self.n as usize && self.bits & (1 << (v - 1)) != 0
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v >= 1 && v <= self.n as usize);
        self.bits |= 1 << (v - 1);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        VertexSet { n: self.n, bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        VertexSet { n: self.n, bits: self.bits & other.bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        VertexSet { n: self.n, bits: self.bits & !other.bits }
    }

    /// Complement relative to the ambient `[n]`.
    pub fn complement(&self) -> Self {
        VertexSet {
            n: self.n,
            bits: Self::full(self.n as usize).bits & !self.bits,
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits & !other.bits == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.n as usize).filter_map(move |i| (bits & (1 << i) != 0).then_some(i + 1))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All `2^n` subsets of `[n]`, in mask order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
        debug_assert!(n <= 24, "subset enumeration is exponential");
        (0u64..1 << n).map(move |bits| VertexSet { n: n as u8, bits })
    }

    /// Subsets of `self`, in mask order.
    pub fn subsets(&self) -> impl Iterator<Item = VertexSet> + '_ {
        let n = self.n;
        let bits = self.bits;
        // iterate x = (x - bits) & bits walks submasks; do it ascending instead
        (0u64..1 << self.len()).map(move |mut idx| {
            let mut sub = 0u64;
            let mut rest = bits;
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                if idx & 1 != 0 {
                    sub |= low;
                }
                idx >>= 1;
                rest ^= low;
            }
            VertexSet { n, bits: sub }
        })
    }

    pub(crate) fn bits(&self) -> u64 {
        self.bits
    }

    pub(crate) fn from_bits(n: usize, bits: u64) -> Self {
        VertexSet { n: n as u8, bits }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A subset of a diagram's propagators, stored as indices into the
/// diagram's canonical (lexicographically sorted) propagator list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropSet {
    k: u8,
    bits: u64,
}

impl PropSet {
    pub fn empty(k: usize) -> Self {
        debug_assert!(k <= 64);
        PropSet { k: k as u8, bits: 0 }
    }

    pub fn full(k: usize) -> Self {
        debug_assert!(k <= 64);
        PropSet {
            k: k as u8,
            bits: if k == 0 {
                0
            } else if k == 64 {
                !0
            } else {
                (1u64 << k) - 1
            },
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(k: usize, idxs: I) -> Self {
        let mut s = PropSet::empty(k);
        for i in idxs {
            debug_assert!(i < k);
            s.bits |= 1 << i;
        }
        s
    }

    /// Ambient propagator count k.
    pub fn ambient(&self) -> usize {
        self.k as usize
    }

    pub fn contains(&self, idx: usize) -> bool {
        idx < self.k as usize && self.bits & (1 << idx) != 0
    }

    pub fn insert(&mut self, idx: usize) {
        debug_assert!(idx < self.k as usize);
        self.bits |= 1 << idx;
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.k, other.k);
        PropSet { k: self.k, bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.k, other.k);
        PropSet { k: self.k, bits: self.bits & other.bits }
    }

    /// Complement relative to the diagram's full propagator set.
    pub fn complement(&self) -> Self {
        PropSet {
            k: self.k,
            bits: Self::full(self.k as usize).bits & !self.bits,
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.k, other.k);
        self.bits & !other.bits == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.k as usize).filter_map(move |i| (bits & (1 << i) != 0).then_some(i))
    }

    /// All `2^k` propagator subsets, in mask order.
    pub fn all_subsets(k: usize) -> impl Iterator<Item = PropSet> {
        debug_assert!(k <= 24, "subset enumeration is exponential");
        (0u64..1 << k).map(move |bits| PropSet { k: k as u8, bits })
    }
}

impl fmt::Debug for PropSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
