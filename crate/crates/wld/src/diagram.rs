//! Wilson loop diagrams: supports, flats, admissibility, and the C(W) pattern.

use crate::error::{Error, Result};
use crate::sets::{PropSet, VertexSet};
use serde::{Deserialize, Serialize};

/// An unordered pair of distinct vertices, stored canonically with `i < j`.
///
/// A propagator `(i, j)` is supported on the vertices `{i, i+1, j, j+1}`
/// (successors taken cyclically), i.e. it attaches to the edges `i` and `j`
/// of the diagram.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Propagator {
    i: usize,
    j: usize,
}

impl Propagator {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::LoopPropagator { v: a });
        }
        Ok(Propagator { i: a.min(b), j: a.max(b) })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.i, self.j)
    }
}

/// Two propagators cross when their endpoint pairs interleave around the
/// circle. With both pairs in canonical `i < j` form the cyclic test reduces
/// to the linear chain `i_p < i_q < j_p < j_q` (in one of the two orders);
/// sharing an endpoint never counts as crossing.
pub(crate) fn propagators_cross(p: Propagator, q: Propagator) -> bool {
    (p.i < q.i && q.i < p.j && p.j < q.j) || (q.i < p.i && p.i < q.j && q.j < p.j)
}

/// A Wilson loop diagram `W = (P, [n])`: the cyclically ordered vertex set
/// `[n]` (vertices are 1-based, arithmetic mod n maps into `1..=n`) plus a
/// set of propagators. `k` denotes the number of propagators.
///
/// Propagators are kept sorted lexicographically; that order fixes the row
/// order of `C(W)` and every enumeration output order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram", into = "RawDiagram")]
pub struct WilsonLoopDiagram {
    n: usize,
    props: Vec<Propagator>,
}

impl WilsonLoopDiagram {
    /// Builds a diagram on `[n]`, canonicalizing propagator pairs.
    ///
    /// `n` must lie in `3..=64` (the bitset cap). Duplicate propagators are
    /// rejected rather than collapsed, matching the set semantics of the
    /// serialization format.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices { n });
        }
        if n > 64 {
            return Err(Error::TooManyVertices { n });
        }
        if pairs.len() > 64 {
            return Err(Error::SizeBoundExceeded { n: pairs.len(), max: 64 });
        }
        let mut props = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            for v in [a, b] {
                if v < 1 || v > n {
                    return Err(Error::VertexOutOfRange { v, n });
                }
            }
            props.push(Propagator::new(a, b)?);
        }
        props.sort();
        for w in props.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicatePropagator { i: w[0].i, j: w[0].j });
            }
        }
        Ok(WilsonLoopDiagram { n, props })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.props.len()
    }

    /// Propagators in canonical order.
    pub fn propagators(&self) -> &[Propagator] {
        &self.props
    }

    /// Cyclic successor of a vertex, mapping n to 1.
    pub fn succ(&self, v: usize) -> usize {
        if v == self.n {
            1
        } else {
            v + 1
        }
    }

    /// Index of a propagator in the canonical order.
    pub fn prop_index(&self, p: Propagator) -> Result<usize> {
        self.props
            .binary_search(&p)
            .map_err(|_| Error::UnknownPropagator { i: p.i, j: p.j })
    }

    /// Builds a `PropSet` from explicit propagators of this diagram.
    pub fn prop_set<I: IntoIterator<Item = Propagator>>(&self, ps: I) -> Result<PropSet> {
        let mut s = PropSet::empty(self.k());
        for p in ps {
            s.insert(self.prop_index(p)?);
        }
        Ok(s)
    }

    pub fn full_prop_set(&self) -> PropSet {
        PropSet::full(self.k())
    }

    /// The propagators named by a `PropSet`.
    pub fn props_in(&self, set: &PropSet) -> Vec<Propagator> {
        set.iter().map(|i| self.props[i]).collect()
    }

    fn check_props(&self, set: &PropSet) -> Result<()> {
        if set.ambient() != self.k() {
            return Err(Error::AmbientMismatch { expected: self.k(), got: set.ambient() });
        }
        Ok(())
    }

    fn check_vertices(&self, set: &VertexSet) -> Result<()> {
        if set.ambient() != self.n {
            return Err(Error::AmbientMismatch { expected: self.n, got: set.ambient() });
        }
        Ok(())
    }

    fn support_unchecked(&self, p: Propagator) -> VertexSet {
        let mut s = VertexSet::empty(self.n);
        s.insert(p.i);
        s.insert(self.succ(p.i));
        s.insert(p.j);
        s.insert(self.succ(p.j));
        s
    }

    /// `V(p) = {i, i+1, j, j+1}`, the vertices supporting `p`.
    ///
    /// `p` need not belong to the diagram, but its vertices must lie in `[n]`.
    pub fn support(&self, p: Propagator) -> Result<VertexSet> {
        for v in [p.i, p.j] {
            if v < 1 || v > self.n {
                return Err(Error::VertexOutOfRange { v, n: self.n });
            }
        }
        Ok(self.support_unchecked(p))
    }

    /// `V(P)`, the union of the supports of the propagators in `P`.
    pub fn vertex_support(&self, set: &PropSet) -> Result<VertexSet> {
        self.check_props(set)?;
        let mut s = VertexSet::empty(self.n);
        for idx in set.iter() {
            s = s.union(&self.support_unchecked(self.props[idx]));
        }
        Ok(s)
    }

    /// `Prop(U)`, the propagators whose support meets `U`.
    pub fn props_on(&self, vertices: &VertexSet) -> Result<PropSet> {
        self.check_vertices(vertices)?;
        let mut s = PropSet::empty(self.k());
        for (idx, &p) in self.props.iter().enumerate() {
            if !self.support_unchecked(p).intersection(vertices).is_empty() {
                s.insert(idx);
            }
        }
        Ok(s)
    }

    /// The propagator flat `F(P) = V(P^c)^c`: vertices that support only
    /// propagators in `P`, or no propagators at all.
    pub fn propagator_flat(&self, set: &PropSet) -> Result<VertexSet> {
        self.check_props(set)?;
        Ok(self.vertex_support(&set.complement())?.complement())
    }

    /// The non-supporting vertices `F(∅)`.
    pub fn non_supporting(&self) -> VertexSet {
        self.propagator_flat(&PropSet::empty(self.k())).unwrap()
    }

    /// Weak admissibility: every nonempty `Q ⊆ P` satisfies
    /// `|V(Q)| >= |Q| + 3`, and no two propagators cross (cyclically).
    ///
    /// A family of pairwise noncrossing chords touching m marked vertices
    /// spread over c cyclic runs carries at most m - 3 + c chords, so once no
    /// pair crosses, the subset density bound reduces to its singleton case:
    /// every support must have 4 distinct vertices. The exponential subset
    /// scan is kept as a test oracle.
    pub fn is_weakly_admissible(&self) -> bool {
        if !self
            .props
            .iter()
            .all(|&p| self.support_unchecked(p).len() == 4)
        {
            return false;
        }
        for (a, &p) in self.props.iter().enumerate() {
            for &q in &self.props[a + 1..] {
                if propagators_cross(p, q) {
                    return false;
                }
            }
        }
        true
    }

    /// Admissibility: weak admissibility plus the density bound `n >= k + 4`.
    pub fn is_admissible(&self) -> bool {
        self.n >= self.k() + 4 && self.is_weakly_admissible()
    }

    /// Whether the subdiagram `(P, V(P))` is exact, i.e. `|V(P)| = |P| + 3`.
    ///
    /// `P` must be nonempty; callers are expected to work inside a weakly
    /// admissible diagram.
    pub fn is_exact(&self, set: &PropSet) -> Result<bool> {
        self.check_props(set)?;
        if set.is_empty() {
            return Err(Error::EmptyPropagatorSet);
        }
        Ok(self.vertex_support(set)?.len() == set.len() + 3)
    }

    /// The subdiagram `(P, V(P))` as a standalone diagram on `[|V(P)|]`,
    /// relabeled by the order-preserving map from `V(P)`. Returns the diagram
    /// together with the original labels (`labels[v - 1]` is the ambient
    /// vertex that became `v`).
    pub fn support_subdiagram(&self, set: &PropSet) -> Result<(WilsonLoopDiagram, Vec<usize>)> {
        self.check_props(set)?;
        if set.is_empty() {
            return Err(Error::EmptyPropagatorSet);
        }
        let support = self.vertex_support(set)?;
        let labels = support.to_vec();
        let relabel = |v: usize| labels.iter().position(|&w| w == v).unwrap() + 1;
        let pairs: Vec<(usize, usize)> = set
            .iter()
            .map(|idx| {
                let p = self.props[idx];
                (relabel(p.i), relabel(p.j))
            })
            .collect();
        Ok((WilsonLoopDiagram::new(labels.len(), &pairs)?, labels))
    }

    /// The k x n sparsity pattern of `C(W)`: row `p` has a symbolic entry at
    /// column `q` exactly when `q ∈ V(p)`. Rows follow the canonical
    /// propagator order.
    pub fn c_matrix_pattern(&self) -> CMatrixPattern {
        CMatrixPattern {
            n: self.n,
            rows: self
                .props
                .iter()
                .map(|&p| self.support_unchecked(p))
                .collect(),
        }
    }
}

/// Sparsity pattern of the matrix `C(W)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CMatrixPattern {
    n: usize,
    rows: Vec<VertexSet>,
}

impl CMatrixPattern {
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether the slot at `(row, col)` holds a symbolic entry `c_{row,col}`.
    /// `row` is 0-based, `col` is a 1-based vertex.
    pub fn has_entry(&self, row: usize, col: usize) -> bool {
        self.rows[row].contains(col)
    }

    /// Nonzero columns of one row.
    pub fn row_support(&self, row: usize) -> &VertexSet {
        &self.rows[row]
    }
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    n: usize,
    propagators: Vec<(usize, usize)>,
}

impl TryFrom<RawDiagram> for WilsonLoopDiagram {
    type Error = Error;

    fn try_from(raw: RawDiagram) -> Result<Self> {
        WilsonLoopDiagram::new(raw.n, &raw.propagators)
    }
}

impl From<WilsonLoopDiagram> for RawDiagram {
    fn from(d: WilsonLoopDiagram) -> RawDiagram {
        RawDiagram {
            n: d.n,
            propagators: d.props.iter().map(|p| p.pair()).collect(),
        }
    }
}
