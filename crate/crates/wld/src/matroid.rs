//! The matroid `M(W)` of a Wilson loop diagram, plus general matroid
//! machinery on explicit base families.
//!
//! Independence in `M(W)` is Hall's condition on the vertex/propagator
//! incidence graph, so the independence oracle is a bipartite maximum
//! matching rather than a subset scan (the scan survives as a test oracle).
//! Base families are stored explicitly for ground sets up to 16 elements;
//! beyond that only the matching oracle (`hall_rank`, `hall_independent`) is
//! available.

use crate::diagram::WilsonLoopDiagram;
use crate::error::{Error, Result};
use crate::sets::VertexSet;
use serde::{Deserialize, Serialize};

/// Largest ground set for which bases are materialized.
pub const MAX_GROUND: usize = 16;

/// A matroid on ground set `[n]` given by its family of bases.
///
/// Minors keep the original element names in `labels` (`labels[v - 1]` is the
/// name of element `v`); equality is label-aware because positroid equality
/// is label-sensitive.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawMatroid", into = "RawMatroid")]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<u64>,
    labels: Vec<usize>,
}

impl Matroid {
    /// Builds a matroid from explicit bases. Checks only the basics (bases
    /// nonempty, equal cardinality, in range); use
    /// [`Matroid::satisfies_basis_exchange`] to verify the exchange axiom.
    pub fn from_bases(n: usize, bases: &[Vec<usize>]) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::SizeBoundExceeded { n, max: MAX_GROUND });
        }
        if bases.is_empty() {
            return Err(Error::EmptyBaseFamily);
        }
        let rank = bases[0].len();
        let mut masks = Vec::with_capacity(bases.len());
        for b in bases {
            let set = VertexSet::from_iter(n, b.iter().copied())?;
            if set.len() != rank {
                return Err(Error::BasisSizeMismatch { got: set.len(), expected: rank });
            }
            masks.push(set.bits());
        }
        masks.sort_unstable();
        masks.dedup();
        Ok(Matroid { n, rank, bases: masks, labels: (1..=n).collect() })
    }

    fn from_masks(n: usize, rank: usize, mut bases: Vec<u64>, labels: Vec<usize>) -> Self {
        bases.sort_unstable();
        bases.dedup();
        debug_assert!(!bases.is_empty());
        Matroid { n, rank, bases, labels }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Original names of the ground elements (identity unless the matroid is
    /// a minor).
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Bases as sorted element lists, lexicographically ordered.
    pub fn bases(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .bases
            .iter()
            .map(|&b| VertexSet::from_bits(self.n, b).to_vec())
            .collect();
        out.sort();
        out
    }

    pub fn base_count(&self) -> usize {
        self.bases.len()
    }

    fn check_set(&self, a: &VertexSet) -> Result<()> {
        if a.ambient() != self.n {
            return Err(Error::AmbientMismatch { expected: self.n, got: a.ambient() });
        }
        Ok(())
    }

    /// `rank(A)`, the size of the largest independent subset of `A`.
    pub fn rank_of(&self, a: &VertexSet) -> Result<usize> {
        self.check_set(a)?;
        // every maximal independent subset of A extends to a basis, so
        // rank(A) = max over bases of |B ∩ A|
        Ok(self
            .bases
            .iter()
            .map(|&b| (b & a.bits()).count_ones() as usize)
            .max()
            .unwrap_or(0))
    }

    pub fn is_independent(&self, a: &VertexSet) -> Result<bool> {
        Ok(self.rank_of(a)? == a.len())
    }

    /// Per-subset rank table, indexed by bitmask.
    fn rank_table(&self) -> Vec<u8> {
        let size = 1usize << self.n;
        let mut indep = vec![false; size];
        for &b in &self.bases {
            // mark all submasks of b
            let mut sub = b;
            loop {
                indep[sub as usize] = true;
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & b;
            }
        }
        let mut rank = vec![0u8; size];
        for mask in 1..size {
            if indep[mask] {
                rank[mask] = (mask as u64).count_ones() as u8;
            } else {
                let mut best = 0;
                let mut rest = mask as u64;
                while rest != 0 {
                    let low = rest & rest.wrapping_neg();
                    best = best.max(rank[mask & !(low as usize)]);
                    rest ^= low;
                }
                rank[mask] = best;
            }
        }
        rank
    }

    /// All circuits (minimal dependent sets).
    pub fn circuits(&self) -> Vec<VertexSet> {
        let rank = self.rank_table();
        let mut out = Vec::new();
        for mask in 1u64..1 << self.n {
            let len = mask.count_ones() as usize;
            if rank[mask as usize] as usize == len {
                continue; // independent
            }
            let mut minimal = true;
            let mut rest = mask;
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                let sub = mask & !low;
                if (rank[sub as usize] as usize) < len - 1 {
                    minimal = false;
                    break;
                }
                rest ^= low;
            }
            if minimal {
                out.push(VertexSet::from_bits(self.n, mask));
            }
        }
        out.sort();
        out
    }

    /// All flats (closed sets: adding any outside element raises the rank).
    pub fn flats(&self) -> Vec<VertexSet> {
        let rank = self.rank_table();
        let mut out = Vec::new();
        for mask in 0u64..1 << self.n {
            let r = rank[mask as usize];
            let mut closed = true;
            for e in 0..self.n {
                let bit = 1u64 << e;
                if mask & bit == 0 && rank[(mask | bit) as usize] == r {
                    closed = false;
                    break;
                }
            }
            if closed {
                out.push(VertexSet::from_bits(self.n, mask));
            }
        }
        out.sort();
        out
    }

    /// Flats that are unions of circuits.
    pub fn cyclic_flats(&self) -> Vec<VertexSet> {
        let circuits = self.circuits();
        self.flats()
            .into_iter()
            .filter(|f| {
                let mut union = 0u64;
                for c in &circuits {
                    if c.is_subset(f) {
                        union |= c.bits();
                    }
                }
                union == f.bits()
            })
            .collect()
    }

    /// The smallest flat containing `A`.
    pub fn closure(&self, a: &VertexSet) -> Result<VertexSet> {
        self.check_set(a)?;
        let r = self.rank_of(a)?;
        let mut out = *a;
        for e in 1..=self.n {
            if !out.contains(e) {
                let mut with = *a;
                with.insert(e);
                if self.rank_of(&with)? == r {
                    out.insert(e);
                }
            }
        }
        Ok(out)
    }

    pub fn is_flat(&self, a: &VertexSet) -> Result<bool> {
        Ok(self.closure(a)? == *a)
    }

    /// Splits a flat into the union of its circuits and an independent rest.
    pub fn decompose_flat(&self, f: &VertexSet) -> Result<FlatDecomposition> {
        self.check_set(f)?;
        if !self.is_flat(f)? {
            return Err(Error::NotAFlat);
        }
        let mut cyclic = 0u64;
        for c in self.circuits() {
            if c.is_subset(f) {
                cyclic |= c.bits();
            }
        }
        let cyclic_part = VertexSet::from_bits(self.n, cyclic);
        Ok(FlatDecomposition {
            independent_part: f.difference(&cyclic_part),
            cyclic_part,
        })
    }

    fn minor_labels(&self, keep: &VertexSet) -> Vec<usize> {
        keep.iter().map(|v| self.labels[v - 1]).collect()
    }

    /// Contraction `M / S`: bases are `B \ S` for bases maximizing `|B ∩ S|`.
    /// The ground set `[n] \ S` is relabeled order-preservingly; original
    /// names stay in `labels`.
    pub fn contraction(&self, s: &VertexSet) -> Result<Matroid> {
        self.check_set(s)?;
        let t = self.rank_of(s)?;
        let keep = s.complement();
        let bases = self
            .bases
            .iter()
            .filter(|&&b| (b & s.bits()).count_ones() as usize == t)
            .map(|&b| compress_mask(b & keep.bits(), keep.bits()))
            .collect();
        Ok(Matroid::from_masks(
            keep.len(),
            self.rank - t,
            bases,
            self.minor_labels(&keep),
        ))
    }

    /// Restriction `M |_S`, relabeled like [`Matroid::contraction`].
    pub fn restriction(&self, s: &VertexSet) -> Result<Matroid> {
        self.check_set(s)?;
        let r = self.rank_of(s)?;
        let bases = self
            .bases
            .iter()
            .filter(|&&b| (b & s.bits()).count_ones() as usize == r)
            .map(|&b| compress_mask(b & s.bits(), s.bits()))
            .collect();
        Ok(Matroid::from_masks(s.len(), r, bases, self.minor_labels(s)))
    }

    /// The dual matroid: bases are the complements of bases.
    pub fn dual(&self) -> Matroid {
        let full = VertexSet::full(self.n).bits();
        let bases = self.bases.iter().map(|&b| full & !b).collect();
        Matroid::from_masks(self.n, self.n - self.rank, bases, self.labels.clone())
    }

    /// Whether every set of size <= rank is independent.
    pub fn is_uniform(&self) -> bool {
        self.bases.len() == binomial(self.n, self.rank)
    }

    /// Exhaustive check of the basis exchange axiom.
    pub fn satisfies_basis_exchange(&self) -> bool {
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                let mut only1 = b1 & !b2;
                while only1 != 0 {
                    let a = only1 & only1.wrapping_neg();
                    only1 ^= a;
                    let mut only2 = b2 & !b1;
                    let mut found = false;
                    while only2 != 0 {
                        let b = only2 & only2.wrapping_neg();
                        only2 ^= b;
                        if self.bases.binary_search(&((b1 & !a) | b)).is_ok() {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Label-sensitive matroid equality (identical base families; no relabeling).
pub fn matroids_equal(m1: &Matroid, m2: &Matroid) -> Result<bool> {
    if m1.n != m2.n {
        return Err(Error::GroundSizeMismatch { left: m1.n, right: m2.n });
    }
    Ok(m1 == m2)
}

/// A flat written as (union of circuits) ⊔ (independent rest).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FlatDecomposition {
    pub cyclic_part: VertexSet,
    pub independent_part: VertexSet,
}

/// Repacks the bits of `mask` (a submask of `within`) into positions
/// `0..popcount(within)`, preserving order.
fn compress_mask(mask: u64, within: u64) -> u64 {
    let mut out = 0u64;
    let mut pos = 0;
    let mut rest = within;
    while rest != 0 {
        let low = rest & rest.wrapping_neg();
        if mask & low != 0 {
            out |= 1 << pos;
        }
        pos += 1;
        rest ^= low;
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut c: u128 = 1;
    for i in 0..k.min(n - k) {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c as usize
}

/// `rank(A)` in `M(W)` via bipartite maximum matching, for any diagram with
/// `n <= 64` (no explicit base family needed).
pub fn hall_rank(d: &WilsonLoopDiagram, a: &VertexSet) -> Result<usize> {
    if a.ambient() != d.n() {
        return Err(Error::AmbientMismatch { expected: d.n(), got: a.ambient() });
    }
    Ok(matching_size(d, a))
}

/// Independence oracle for `M(W)`: `A` is independent exactly when `A` can be
/// matched injectively into the propagators it supports.
pub fn hall_independent(d: &WilsonLoopDiagram, a: &VertexSet) -> Result<bool> {
    Ok(hall_rank(d, a)? == a.len())
}

fn matching_size(d: &WilsonLoopDiagram, a: &VertexSet) -> usize {
    let k = d.k();
    let verts: Vec<usize> = a.iter().collect();
    // adjacency: vertex v — propagator p when v ∈ V(p)
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| {
            (0..k)
                .filter(|&p| d.support(d.propagators()[p]).unwrap().contains(v))
                .collect()
        })
        .collect();
    let mut matched_prop: Vec<Option<usize>> = vec![None; k];
    let mut size = 0;
    for v in 0..verts.len() {
        let mut seen = vec![false; k];
        if augment(v, &adj, &mut matched_prop, &mut seen) {
            size += 1;
        }
    }
    size
}

fn augment(
    v: usize,
    adj: &[Vec<usize>],
    matched_prop: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &p in &adj[v] {
        if !seen[p] {
            seen[p] = true;
            let free = match matched_prop[p] {
                None => true,
                Some(w) => augment(w, adj, matched_prop, seen),
            };
            if free {
                matched_prop[p] = Some(v);
                return true;
            }
        }
    }
    false
}

fn matroid_of_inner(d: &WilsonLoopDiagram) -> Result<Matroid> {
    let n = d.n();
    if n > MAX_GROUND {
        return Err(Error::SizeBoundExceeded { n, max: MAX_GROUND });
    }
    let rank = matching_size(d, &VertexSet::full(n));
    let mut bases = Vec::new();
    let mut subset = vec![0usize; rank];
    collect_bases(d, n, rank, 1, &mut subset, 0, &mut bases);
    Ok(Matroid::from_masks(n, rank, bases, (1..=n).collect()))
}

fn collect_bases(
    d: &WilsonLoopDiagram,
    n: usize,
    rank: usize,
    start: usize,
    subset: &mut [usize],
    depth: usize,
    out: &mut Vec<u64>,
) {
    if depth == rank {
        let set = VertexSet::from_iter(n, subset.iter().copied()).unwrap();
        if matching_size(d, &set) == rank {
            out.push(set.bits());
        }
        return;
    }
    for v in start..=n - (rank - depth - 1) {
        subset[depth] = v;
        collect_bases(d, n, rank, v + 1, subset, depth + 1, out);
    }
}

/// The matroid `M(W)` of a weakly admissible diagram: a set of vertices is
/// independent exactly when each of its subsets supports at least as many
/// propagators as it has vertices. The rank equals `k`.
pub fn matroid_of(d: &WilsonLoopDiagram) -> Result<Matroid> {
    if !d.is_weakly_admissible() {
        return Err(Error::NotWeaklyAdmissible);
    }
    matroid_of_inner(d)
}

/// Same construction without the weak-admissibility check. The matroid is
/// still well defined, but the structural results about `M(W)` only cover
/// the weakly admissible case.
pub fn matroid_of_permissive(d: &WilsonLoopDiagram) -> Result<Matroid> {
    matroid_of_inner(d)
}

#[derive(Serialize, Deserialize)]
struct RawMatroid {
    n: usize,
    rank: usize,
    bases: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<usize>>,
}

impl TryFrom<RawMatroid> for Matroid {
    type Error = Error;

    fn try_from(raw: RawMatroid) -> Result<Self> {
        let mut m = Matroid::from_bases(raw.n, &raw.bases)?;
        if m.rank != raw.rank {
            return Err(Error::RankMismatch { got: m.rank, declared: raw.rank });
        }
        if let Some(labels) = raw.labels {
            if labels.len() != raw.n {
                return Err(Error::AmbientMismatch { expected: raw.n, got: labels.len() });
            }
            m.labels = labels;
        }
        Ok(m)
    }
}

impl From<Matroid> for RawMatroid {
    fn from(m: Matroid) -> RawMatroid {
        let identity = m.labels.iter().copied().eq(1..=m.n);
        RawMatroid {
            n: m.n,
            rank: m.rank,
            bases: m.bases(),
            labels: if identity { None } else { Some(m.labels) },
        }
    }
}
