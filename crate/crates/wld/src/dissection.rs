//! Polygon dissections, the bijection with weakly admissible diagrams, the
//! dual-tree maximal decomposition, and retriangulation equivalence.
//!
//! A diagram's propagators are read as diagonals of a convex n-gon (vertex i
//! of the polygon stands for edge i of the diagram). Exact subdiagrams then
//! appear as triangulated pieces of the dissection, and the equivalence
//! relation on diagrams becomes retriangulation of the maximal pieces.

use crate::catalan;
use crate::diagram::{propagators_cross, Propagator, WilsonLoopDiagram};
use crate::error::{Error, Result};
use crate::sets::PropSet;
use serde::{Deserialize, Serialize};

/// Largest polygon for which exhaustive enumeration is offered.
pub const MAX_ENUMERATION: usize = 12;

/// A convex n-gon together with a noncrossing set of non-adjacent diagonals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawDissection", into = "RawDissection")]
pub struct PolygonDissection {
    n: usize,
    diagonals: Vec<Propagator>,
}

impl PolygonDissection {
    pub fn new(n: usize, diagonals: &[(usize, usize)]) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices { n });
        }
        if n > 64 {
            return Err(Error::TooManyVertices { n });
        }
        let mut chords = Vec::with_capacity(diagonals.len());
        for &(a, b) in diagonals {
            for v in [a, b] {
                if v < 1 || v > n {
                    return Err(Error::VertexOutOfRange { v, n });
                }
            }
            if a == b {
                return Err(Error::DegenerateChord);
            }
            let c = Propagator::new(a, b)?;
            if cyclically_adjacent(n, c.i(), c.j()) {
                return Err(Error::AdjacentDiagonal { a: c.i(), b: c.j() });
            }
            chords.push(c);
        }
        chords.sort();
        for w in chords.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateDiagonal { a: w[0].i(), b: w[0].j() });
            }
        }
        for (x, &p) in chords.iter().enumerate() {
            for &q in &chords[x + 1..] {
                if propagators_cross(p, q) {
                    return Err(Error::CrossingDiagonals {
                        a: p.i(),
                        b: p.j(),
                        c: q.i(),
                        d: q.j(),
                    });
                }
            }
        }
        Ok(PolygonDissection { n, diagonals: chords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of diagonals.
    pub fn k(&self) -> usize {
        self.diagonals.len()
    }

    pub fn diagonals(&self) -> Vec<(usize, usize)> {
        self.diagonals.iter().map(|d| d.pair()).collect()
    }

    /// A triangulation carries the maximal n - 3 diagonals.
    pub fn is_triangulation(&self) -> bool {
        self.k() == self.n - 3
    }

    /// The internal faces, each as its polygon vertices in cyclic
    /// (ascending) order, sorted canonically.
    pub fn internal_faces(&self) -> Vec<Vec<usize>> {
        let mut faces = Vec::with_capacity(self.k() + 1);
        let region: Vec<usize> = (1..=self.n).collect();
        let diagonals: Vec<(usize, usize)> = self.diagonals();
        split_region(region, diagonals, &mut faces);
        faces.sort();
        faces
    }

    /// All triangulations refining this dissection, obtained by triangulating
    /// each non-triangle face independently.
    pub fn refining_triangulations(&self) -> Vec<PolygonDissection> {
        let mut result: Vec<Vec<(usize, usize)>> = vec![self.diagonals()];
        for face in self.internal_faces() {
            if face.len() <= 3 {
                continue;
            }
            let options = triangulations_of_region(&face);
            let mut next = Vec::with_capacity(result.len() * options.len());
            for base in &result {
                for opt in &options {
                    let mut set = base.clone();
                    set.extend_from_slice(opt);
                    next.push(set);
                }
            }
            result = next;
        }
        let mut out: Vec<PolygonDissection> = result
            .into_iter()
            .map(|set| PolygonDissection::new(self.n, &set).expect("refinement stays valid"))
            .collect();
        out.sort();
        out
    }

    /// The dual tree: one node per internal face and one per polygon edge
    /// (the split outer-face vertex), with a tree edge dual to every
    /// dissection edge.
    pub fn dual_tree(&self) -> DualTree {
        let faces = self.internal_faces();
        let mut nodes: Vec<DualTreeNode> =
            (0..faces.len()).map(DualTreeNode::Face).collect();
        let edge_node_base = nodes.len();
        nodes.extend((1..=self.n).map(DualTreeNode::PolygonEdge));

        let mut edges = Vec::with_capacity(self.n + self.k());
        for e in 1..=self.n {
            let succ = if e == self.n { 1 } else { e + 1 };
            let f = faces
                .iter()
                .position(|face| face_has_boundary_pair(face, e, succ))
                .expect("every polygon edge borders one internal face");
            edges.push((f, edge_node_base + e - 1, DissectionEdge::Boundary(e)));
        }
        for d in &self.diagonals {
            let mut incident = faces
                .iter()
                .enumerate()
                .filter(|(_, face)| face_has_boundary_pair(face, d.i(), d.j()))
                .map(|(i, _)| i);
            let f1 = incident.next().expect("diagonal borders two faces");
            let f2 = incident.next().expect("diagonal borders two faces");
            edges.push((f1, f2, DissectionEdge::Diagonal(d.pair())));
        }
        DualTree { nodes, edges }
    }

    /// The unique decomposition into maximal triangulated pieces and leftover
    /// polygon edges, obtained by splitting every dual-tree node of degree
    /// greater than 3 (the non-triangle faces) and reading off the forest
    /// components.
    pub fn maximal_decomposition(&self) -> MaximalDecomposition {
        let tree = self.dual_tree();
        let split: Vec<bool> = (0..tree.nodes.len())
            .map(|i| tree.degree(i) > 3)
            .collect();

        // components of tree edges: two edges touch when they share an
        // unsplit node
        let mut comp: Vec<usize> = (0..tree.edges.len()).collect();
        fn find(comp: &mut Vec<usize>, x: usize) -> usize {
            if comp[x] != x {
                let root = find(comp, comp[x]);
                comp[x] = root;
            }
            comp[x]
        }
        let mut by_node: Vec<Vec<usize>> = vec![Vec::new(); tree.nodes.len()];
        for (idx, &(a, b, _)) in tree.edges.iter().enumerate() {
            by_node[a].push(idx);
            by_node[b].push(idx);
        }
        for (node, incident) in by_node.iter().enumerate() {
            if split[node] {
                continue;
            }
            for w in incident.windows(2) {
                let (ra, rb) = (find(&mut comp, w[0]), find(&mut comp, w[1]));
                comp[ra] = rb;
            }
        }

        let mut groups: std::collections::BTreeMap<usize, Vec<&DissectionEdge>> =
            std::collections::BTreeMap::new();
        for idx in 0..tree.edges.len() {
            let root = find(&mut comp, idx);
            groups.entry(root).or_default().push(&tree.edges[idx].2);
        }

        let mut pieces = Vec::new();
        let mut boundary_edges = Vec::new();
        for group in groups.values() {
            let mut diagonals: Vec<(usize, usize)> = Vec::new();
            let mut vertices = std::collections::BTreeSet::new();
            for edge in group {
                match edge {
                    DissectionEdge::Diagonal((a, b)) => {
                        diagonals.push((*a, *b));
                        vertices.insert(*a);
                        vertices.insert(*b);
                    }
                    DissectionEdge::Boundary(e) => {
                        vertices.insert(*e);
                        vertices.insert(if *e == self.n { 1 } else { *e + 1 });
                    }
                }
            }
            if diagonals.is_empty() {
                // no propagator content: these are lone polygon edges
                for edge in group {
                    if let DissectionEdge::Boundary(e) = edge {
                        boundary_edges.push(*e);
                    }
                }
                continue;
            }
            diagonals.sort();
            let vertices: Vec<usize> = vertices.into_iter().collect();
            pieces.push(TriangulatedPiece {
                trivial: vertices.len() == 2,
                vertices,
                diagonals,
            });
        }
        pieces.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        boundary_edges.sort_unstable();
        MaximalDecomposition { pieces, boundary_edges }
    }
}

fn cyclically_adjacent(n: usize, a: usize, b: usize) -> bool {
    // a < b canonical
    b - a == 1 || (a == 1 && b == n)
}

fn face_has_boundary_pair(face: &[usize], a: usize, b: usize) -> bool {
    let Some(pa) = face.iter().position(|&v| v == a) else {
        return false;
    };
    let Some(pb) = face.iter().position(|&v| v == b) else {
        return false;
    };
    let m = face.len();
    (pa + 1) % m == pb || (pb + 1) % m == pa
}

fn split_region(
    region: Vec<usize>,
    diagonals: Vec<(usize, usize)>,
    out: &mut Vec<Vec<usize>>,
) {
    let Some(&(a, b)) = diagonals.first() else {
        // ascending order is a valid cyclic order for a convex face
        let mut face = region;
        face.sort_unstable();
        out.push(face);
        return;
    };
    let pa = region.iter().position(|&v| v == a).unwrap();
    let pb = region.iter().position(|&v| v == b).unwrap();
    let (lo, hi) = (pa.min(pb), pa.max(pb));
    let inner: Vec<usize> = region[lo..=hi].to_vec();
    let outer: Vec<usize> = region[hi..]
        .iter()
        .chain(region[..=lo].iter())
        .copied()
        .collect();
    let mut inner_diags = Vec::new();
    let mut outer_diags = Vec::new();
    for &(x, y) in &diagonals[1..] {
        if inner.contains(&x) && inner.contains(&y) {
            inner_diags.push((x, y));
        } else {
            outer_diags.push((x, y));
        }
    }
    split_region(inner, inner_diags, out);
    split_region(outer, outer_diags, out);
}

/// All triangulations of the convex polygon whose corners are `corners`
/// (given in cyclic order), returned as sorted diagonal lists. Regions with
/// fewer than 4 corners have the single empty triangulation.
pub fn triangulations_of_region(corners: &[usize]) -> Vec<Vec<(usize, usize)>> {
    // every triangulation has a unique triangle on the base edge
    // (corners[0], corners[m-1]); recurse on the two sides of its apex
    fn go(corners: &[usize]) -> Vec<Vec<(usize, usize)>> {
        let m = corners.len();
        if m < 4 {
            return vec![Vec::new()];
        }
        let chord = |a: usize, b: usize| (a.min(b), a.max(b));
        let mut out = Vec::new();
        for apex in 1..m - 1 {
            let mut extra = Vec::new();
            if apex > 1 {
                extra.push(chord(corners[0], corners[apex]));
            }
            if apex < m - 2 {
                extra.push(chord(corners[apex], corners[m - 1]));
            }
            for left in go(&corners[..=apex]) {
                for right in go(&corners[apex..]) {
                    let mut t = extra.clone();
                    t.extend_from_slice(&left);
                    t.extend_from_slice(&right);
                    t.sort();
                    out.push(t);
                }
            }
        }
        out
    }
    let mut all = go(corners);
    all.sort();
    all
}

/// One node of a dissection's dual tree.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DualTreeNode {
    /// An internal face, indexed into `internal_faces`.
    Face(usize),
    /// One copy of the split outer-face vertex, per polygon edge.
    PolygonEdge(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum DissectionEdge {
    Boundary(usize),
    Diagonal((usize, usize)),
}

/// The dual graph of a dissection with the outer-face vertex split per
/// polygon edge: n + k + 1 nodes, n + k edges, no node of degree 2.
#[derive(Clone, Debug)]
pub struct DualTree {
    nodes: Vec<DualTreeNode>,
    edges: Vec<(usize, usize, DissectionEdge)>,
}

impl DualTree {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[DualTreeNode] {
        &self.nodes
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b, _)| a == node || b == node)
            .count()
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        let n = self.nodes.len();
        if self.edges.len() + 1 != n {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut visited = 1;
        while let Some(x) = stack.pop() {
            for &(a, b, _) in &self.edges {
                let other = if a == x {
                    b
                } else if b == x {
                    a
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    visited += 1;
                    stack.push(other);
                }
            }
        }
        visited == n
    }
}

/// A triangulated piece of a dissection: its polygon vertices, its
/// diagonals, and whether it is a single diagonal.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TriangulatedPiece {
    pub vertices: Vec<usize>,
    pub diagonals: Vec<(usize, usize)>,
    pub trivial: bool,
}

impl TriangulatedPiece {
    /// Whether this subgraph really is a triangulated piece of a dissection
    /// of the n-gon: its boundary cycle closes up (every cyclically
    /// consecutive vertex pair is joined by a polygon edge or one of its
    /// diagonals) and the remaining diagonals triangulate the interior.
    ///
    /// A piece with m vertices whose boundary needs j closing diagonals is
    /// triangulated exactly when it carries m - 3 + j diagonals.
    pub fn is_triangulated(&self, n: usize) -> bool {
        let m = self.vertices.len();
        if m == 2 {
            return self.diagonals.len() == 1;
        }
        if m < 2 {
            return false;
        }
        let mut closers = 0;
        for idx in 0..m {
            let a = self.vertices[idx];
            let b = self.vertices[(idx + 1) % m];
            let (lo, hi) = (a.min(b), a.max(b));
            if cyclically_adjacent(n, lo, hi) {
                continue;
            }
            if self.diagonals.contains(&(lo, hi)) {
                closers += 1;
            } else {
                return false;
            }
        }
        self.diagonals.len() == m - 3 + closers
    }
}

/// A dissection's unique maximal decomposition: its maximal triangulated
/// pieces (each diagonal lies in exactly one) plus the polygon edges that
/// belong to no piece.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MaximalDecomposition {
    pub pieces: Vec<TriangulatedPiece>,
    pub boundary_edges: Vec<usize>,
}

/// Reads a weakly admissible diagram as a polygon dissection: propagator
/// `(i, j)` becomes the diagonal joining polygon vertices i and j.
pub fn dissection_of(d: &WilsonLoopDiagram) -> Result<PolygonDissection> {
    if !d.is_weakly_admissible() {
        return Err(Error::NotWeaklyAdmissible);
    }
    let pairs: Vec<(usize, usize)> = d.propagators().iter().map(|p| p.pair()).collect();
    PolygonDissection::new(d.n(), &pairs)
}

/// The inverse reading: a dissection's diagonals become propagators. Always
/// lands on a weakly admissible diagram.
pub fn diagram_of(p: &PolygonDissection) -> WilsonLoopDiagram {
    WilsonLoopDiagram::new(p.n(), &p.diagonals()).expect("dissections are valid diagrams")
}

/// The maximal exact subdiagrams of `d`: the propagator sets of the maximal
/// triangulated pieces of its dissection. They partition the propagators.
pub fn exact_subdiagrams(d: &WilsonLoopDiagram) -> Result<Vec<PropSet>> {
    let dec = dissection_of(d)?.maximal_decomposition();
    dec.pieces
        .iter()
        .map(|piece| {
            d.prop_set(
                piece
                    .diagonals
                    .iter()
                    .map(|&(a, b)| Propagator::new(a, b).unwrap()),
            )
        })
        .collect()
}

/// The subgraph of the dissection carved out by the subdiagram `(P, V(P))`:
/// a polygon vertex enters when both endpoints of the corresponding diagram
/// edge lie in `V(P)`; its edges are the diagonals of `P` plus the boundary
/// edges inside the vertex set.
pub fn piece_subgraph(d: &WilsonLoopDiagram, set: &PropSet) -> Result<TriangulatedPiece> {
    if set.is_empty() {
        return Err(Error::EmptyPropagatorSet);
    }
    let support = d.vertex_support(set)?;
    let vertices: Vec<usize> = (1..=d.n())
        .filter(|&e| support.contains(e) && support.contains(d.succ(e)))
        .collect();
    let mut diagonals: Vec<(usize, usize)> =
        set.iter().map(|i| d.propagators()[i].pair()).collect();
    diagonals.sort();
    Ok(TriangulatedPiece {
        trivial: vertices.len() == 2,
        vertices,
        diagonals,
    })
}

/// The multiset of maximal-piece vertex sets, the complete invariant of the
/// retriangulation equivalence class.
pub fn equivalence_key(d: &WilsonLoopDiagram) -> Result<Vec<Vec<usize>>> {
    let dec = dissection_of(d)?.maximal_decomposition();
    Ok(dec.pieces.into_iter().map(|p| p.vertices).collect())
}

/// Whether two diagrams are retriangulation-equivalent: their maximal
/// triangulated pieces cover the same vertex sets.
pub fn equivalent(d1: &WilsonLoopDiagram, d2: &WilsonLoopDiagram) -> Result<bool> {
    if d1.n() != d2.n() {
        return Err(Error::GroundSizeMismatch { left: d1.n(), right: d2.n() });
    }
    Ok(equivalence_key(d1)? == equivalence_key(d2)?)
}

/// Number of diagrams equivalent to `d` (including `d`): the product of
/// Catalan numbers `C(m_i - 2)` over the maximal pieces, where `m_i` is the
/// number of polygon vertices of the piece (trivial pieces contribute 1).
pub fn equivalence_class_size(d: &WilsonLoopDiagram) -> Result<u128> {
    let dec = dissection_of(d)?.maximal_decomposition();
    Ok(dec
        .pieces
        .iter()
        .map(|p| catalan(p.vertices.len().saturating_sub(2)))
        .product())
}

/// Every diagram equivalent to `d`, in canonical order: each maximal piece
/// region is retriangulated independently and the choices are combined.
pub fn equivalence_class(d: &WilsonLoopDiagram) -> Result<Vec<WilsonLoopDiagram>> {
    let n = d.n();
    let dec = dissection_of(d)?.maximal_decomposition();
    // per piece: the forced boundary-closing diagonals and the free interiors
    let mut piece_options: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
    for piece in &dec.pieces {
        let m = piece.vertices.len();
        let mut closers: Vec<(usize, usize)> = Vec::new();
        for idx in 0..m {
            let a = piece.vertices[idx];
            let b = piece.vertices[(idx + 1) % m];
            let (lo, hi) = (a.min(b), a.max(b));
            if !cyclically_adjacent(n, lo, hi) && !closers.contains(&(lo, hi)) {
                closers.push((lo, hi));
            }
        }
        let options: Vec<Vec<(usize, usize)>> = triangulations_of_region(&piece.vertices)
            .into_iter()
            .map(|interior| {
                let mut all = closers.clone();
                all.extend(interior);
                all
            })
            .collect();
        piece_options.push(options);
    }
    let mut combos: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for options in &piece_options {
        let mut next = Vec::with_capacity(combos.len() * options.len());
        for base in &combos {
            for opt in options {
                let mut set = base.clone();
                set.extend_from_slice(opt);
                next.push(set);
            }
        }
        combos = next;
    }
    let mut out: Vec<WilsonLoopDiagram> = combos
        .into_iter()
        .map(|pairs| WilsonLoopDiagram::new(n, &pairs).expect("retriangulation stays valid"))
        .collect();
    out.sort();
    Ok(out)
}

/// All dissections of the n-gon, ordered lexicographically by their sorted
/// diagonal lists.
pub fn enumerate_dissections(n: usize) -> Result<Vec<PolygonDissection>> {
    if n < 3 {
        return Err(Error::TooFewVertices { n });
    }
    if n > MAX_ENUMERATION {
        return Err(Error::SizeBoundExceeded { n, max: MAX_ENUMERATION });
    }
    let mut chords: Vec<Propagator> = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            if !cyclically_adjacent(n, a, b) {
                chords.push(Propagator::new(a, b).unwrap());
            }
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<Propagator> = Vec::new();
    fn extend(
        n: usize,
        chords: &[Propagator],
        start: usize,
        chosen: &mut Vec<Propagator>,
        out: &mut Vec<PolygonDissection>,
    ) {
        let pairs: Vec<(usize, usize)> = chosen.iter().map(|c| c.pair()).collect();
        out.push(PolygonDissection::new(n, &pairs).unwrap());
        for idx in start..chords.len() {
            let c = chords[idx];
            if chosen.iter().all(|&p| !propagators_cross(p, c)) {
                chosen.push(c);
                extend(n, chords, idx + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    extend(n, &chords, 0, &mut chosen, &mut out);
    Ok(out)
}

/// All weakly admissible diagrams on `[n]`, optionally filtered to exactly
/// `k` propagators, in the canonical enumeration order.
pub fn enumerate_weakly_admissible(
    n: usize,
    k: Option<usize>,
) -> Result<Vec<WilsonLoopDiagram>> {
    Ok(enumerate_dissections(n)?
        .iter()
        .filter(|p| k.map_or(true, |k| p.k() == k))
        .map(diagram_of)
        .collect())
}

#[derive(Serialize, Deserialize)]
struct RawDissection {
    n: usize,
    diagonals: Vec<(usize, usize)>,
}

impl TryFrom<RawDissection> for PolygonDissection {
    type Error = Error;

    fn try_from(raw: RawDissection) -> Result<Self> {
        PolygonDissection::new(raw.n, &raw.diagonals)
    }
}

impl From<PolygonDissection> for RawDissection {
    fn from(p: PolygonDissection) -> RawDissection {
        RawDissection { n: p.n, diagonals: p.diagonals() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(n: usize, pairs: &[(usize, usize)]) -> WilsonLoopDiagram {
        WilsonLoopDiagram::new(n, pairs).unwrap()
    }

    /// W1 with propagators (1,4),(2,4),(5,8),(5,7) on [8].
    fn w1() -> WilsonLoopDiagram {
        diagram(8, &[(1, 4), (2, 4), (5, 8), (5, 7)])
    }

    /// W3 with propagators (1,4),(1,3),(5,8),(6,8) on [8].
    fn w3() -> WilsonLoopDiagram {
        diagram(8, &[(1, 4), (1, 3), (5, 8), (6, 8)])
    }

    #[test]
    fn dissection_of_reads_propagators_as_diagonals() {
        let p = dissection_of(&w1()).unwrap();
        assert_eq!(p.diagonals(), vec![(1, 4), (2, 4), (5, 7), (5, 8)]);

        let empty = dissection_of(&diagram(6, &[])).unwrap();
        assert_eq!(empty.k(), 0);

        // the 10-gon example with a two-arc exact subdiagram
        let d = diagram(10, &[(1, 4), (2, 4), (4, 8), (1, 8), (5, 7)]);
        let p = dissection_of(&d).unwrap();
        assert_eq!(
            p.diagonals(),
            vec![(1, 4), (1, 8), (2, 4), (4, 8), (5, 7)]
        );

        assert_eq!(
            dissection_of(&diagram(6, &[(1, 3), (2, 5)])),
            Err(Error::NotWeaklyAdmissible)
        );
    }

    #[test]
    fn dissection_validation() {
        assert_eq!(
            PolygonDissection::new(6, &[(1, 2)]),
            Err(Error::AdjacentDiagonal { a: 1, b: 2 })
        );
        assert_eq!(
            PolygonDissection::new(6, &[(1, 6)]),
            Err(Error::AdjacentDiagonal { a: 1, b: 6 })
        );
        assert_eq!(
            PolygonDissection::new(6, &[(1, 3), (3, 1)]),
            Err(Error::DuplicateDiagonal { a: 1, b: 3 })
        );
        assert_eq!(
            PolygonDissection::new(6, &[(1, 3), (2, 5)]),
            Err(Error::CrossingDiagonals { a: 1, b: 3, c: 2, d: 5 })
        );
        // shared endpoints do not cross
        assert!(PolygonDissection::new(8, &[(2, 6), (6, 8)]).is_ok());
    }

    #[test]
    fn round_trips() {
        for d in [w1(), w3(), diagram(5, &[]), diagram(8, &[(1, 4), (2, 4), (5, 8)])] {
            assert_eq!(diagram_of(&dissection_of(&d).unwrap()), d);
        }
        for p in enumerate_dissections(5).unwrap() {
            assert_eq!(dissection_of(&diagram_of(&p)).unwrap(), p);
        }
    }

    #[test]
    fn pentagon_dissections_are_weakly_admissible() {
        let all = enumerate_weakly_admissible(5, None).unwrap();
        assert_eq!(all.len(), 11);
        assert!(all.iter().all(WilsonLoopDiagram::is_weakly_admissible));
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 11);
    }

    #[test]
    fn internal_faces_of_w1() {
        let p = dissection_of(&w1()).unwrap();
        let faces = p.internal_faces();
        assert_eq!(
            faces,
            vec![
                vec![1, 2, 4],
                vec![1, 4, 5, 8],
                vec![2, 3, 4],
                vec![5, 6, 7],
                vec![5, 7, 8],
            ]
        );
    }

    #[test]
    fn dual_tree_counts() {
        for d in [w1(), w3(), diagram(5, &[]), diagram(3, &[])] {
            let p = dissection_of(&d).unwrap();
            let t = p.dual_tree();
            assert_eq!(t.node_count(), p.n() + p.k() + 1);
            assert_eq!(t.edge_count(), p.n() + p.k());
            assert!(t.is_tree());
            for node in 0..t.node_count() {
                assert_ne!(t.degree(node), 2);
            }
        }
    }

    #[test]
    fn maximal_decomposition_of_w1_and_w3() {
        for d in [w1(), w3()] {
            let dec = dissection_of(&d).unwrap().maximal_decomposition();
            let vertex_sets: Vec<Vec<usize>> =
                dec.pieces.iter().map(|p| p.vertices.clone()).collect();
            assert_eq!(vertex_sets, vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8]]);
            assert_eq!(dec.boundary_edges, vec![4, 8]);
            assert!(dec.pieces.iter().all(|p| !p.trivial));
            assert!(dec.pieces.iter().all(|p| p.is_triangulated(8)));
        }
    }

    #[test]
    fn full_triangulation_is_one_piece() {
        let p = PolygonDissection::new(6, &[(1, 3), (1, 4), (1, 5)]).unwrap();
        let dec = p.maximal_decomposition();
        assert_eq!(dec.pieces.len(), 1);
        assert_eq!(dec.pieces[0].vertices, vec![1, 2, 3, 4, 5, 6]);
        assert!(dec.boundary_edges.is_empty());
    }

    #[test]
    fn lone_diagonal_is_trivial_piece() {
        let p = PolygonDissection::new(8, &[(1, 4)]).unwrap();
        let dec = p.maximal_decomposition();
        assert_eq!(dec.pieces.len(), 1);
        assert!(dec.pieces[0].trivial);
        assert_eq!(dec.pieces[0].vertices, vec![1, 4]);
        assert_eq!(dec.boundary_edges, (1..=8).collect::<Vec<_>>());
    }

    #[test]
    fn exact_subdiagrams_partition_propagators() {
        let d = diagram(8, &[(1, 4), (2, 4), (5, 8)]);
        let maximal = exact_subdiagrams(&d).unwrap();
        let sets: Vec<Vec<(usize, usize)>> = maximal
            .iter()
            .map(|p| d.props_in(p).iter().map(|q| q.pair()).collect())
            .collect();
        assert_eq!(sets, vec![vec![(1, 4), (2, 4)], vec![(5, 8)]]);
        let mut union = PropSet::empty(d.k());
        for p in &maximal {
            assert!(union.intersection(p).is_empty());
            union = union.union(p);
        }
        assert_eq!(union, d.full_prop_set());
    }

    #[test]
    fn piece_subgraph_of_two_arc_support() {
        let d = diagram(10, &[(1, 4), (2, 4), (4, 8), (1, 8), (5, 7)]);
        let p = d
            .prop_set(
                [(1, 4), (2, 4), (4, 8), (1, 8)]
                    .into_iter()
                    .map(|(a, b)| Propagator::new(a, b).unwrap()),
            )
            .unwrap();
        assert!(d.is_exact(&p).unwrap());
        let t = piece_subgraph(&d, &p).unwrap();
        assert_eq!(t.vertices, vec![1, 2, 3, 4, 8]);
        assert!(t.is_triangulated(10));
        assert!(!t.trivial);

        // four consecutive support vertices give a triangle piece
        let single = d.prop_set([Propagator::new(5, 7).unwrap()]).unwrap();
        let t = piece_subgraph(&d, &single).unwrap();
        assert_eq!(t.vertices, vec![5, 6, 7]);
        assert!(!t.trivial);
        assert!(t.is_triangulated(10));

        // a split support gives a trivial piece
        let single = d.prop_set([Propagator::new(4, 8).unwrap()]).unwrap();
        let t = piece_subgraph(&d, &single).unwrap();
        assert_eq!(t.vertices, vec![4, 8]);
        assert!(t.trivial);
        assert!(t.is_triangulated(10));
    }

    #[test]
    fn exactness_matches_triangulated_pieces() {
        let d = w1();
        for set in PropSet::all_subsets(d.k()) {
            if set.is_empty() {
                continue;
            }
            assert_eq!(
                d.is_exact(&set).unwrap(),
                piece_subgraph(&d, &set).unwrap().is_triangulated(d.n()),
                "{set:?}"
            );
        }
    }

    #[test]
    fn equivalence_of_the_example_chain() {
        let w2 = diagram(8, &[(1, 4), (2, 4), (5, 8), (6, 8)]);
        assert!(equivalent(&w1(), &w2).unwrap());
        assert!(equivalent(&w2, &w3()).unwrap());
        assert!(equivalent(&w1(), &w3()).unwrap());
        assert!(equivalent(&w1(), &w1()).unwrap());
        let other = diagram(8, &[(1, 4), (2, 4), (5, 8), (5, 7)]);
        assert!(equivalent(&w1(), &other).unwrap());
        assert!(!equivalent(&w1(), &diagram(8, &[(1, 4)])).unwrap());
        assert_eq!(
            equivalent(&w1(), &diagram(6, &[])),
            Err(Error::GroundSizeMismatch { left: 8, right: 6 })
        );
    }

    #[test]
    fn class_of_w1_has_four_members() {
        // both maximal pieces sit on 4 polygon vertices, so each region
        // retriangulates in Cat(2) = 2 ways
        assert_eq!(equivalence_class_size(&w1()).unwrap(), 4);
        let class = equivalence_class(&w1()).unwrap();
        assert_eq!(class.len(), 4);
        assert!(class.contains(&w1()));
        assert!(class.contains(&w3()));
        assert!(class.contains(&diagram(8, &[(1, 4), (2, 4), (5, 8), (6, 8)])));
        assert!(class.contains(&diagram(8, &[(1, 4), (1, 3), (5, 8), (5, 7)])));
        for member in &class {
            assert!(member.is_weakly_admissible());
            assert!(equivalent(&w1(), member).unwrap());
        }
    }

    #[test]
    fn pentagon_triangulations_form_one_class_of_five() {
        let tri = diagram(5, &[(1, 3), (1, 4)]);
        assert_eq!(equivalence_class_size(&tri).unwrap(), 5);
        let class = equivalence_class(&tri).unwrap();
        assert_eq!(class.len(), 5);
        // the pentagon's triangulations are exactly the five fans
        let expected: Vec<WilsonLoopDiagram> = vec![
            diagram(5, &[(1, 3), (1, 4)]),
            diagram(5, &[(1, 3), (3, 5)]),
            diagram(5, &[(1, 4), (2, 4)]),
            diagram(5, &[(2, 4), (2, 5)]),
            diagram(5, &[(2, 5), (3, 5)]),
        ];
        for d in &expected {
            assert!(class.contains(d), "{d:?}");
        }
    }

    #[test]
    fn class_of_diagram_without_nontrivial_pieces_is_singleton() {
        let d = diagram(8, &[(1, 4), (5, 8)]);
        assert_eq!(equivalence_class_size(&d).unwrap(), 1);
        assert_eq!(equivalence_class(&d).unwrap(), vec![d]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_weakly_admissible(4, None).unwrap().len(), 3);
        assert_eq!(enumerate_weakly_admissible(5, None).unwrap().len(), 11);
        assert_eq!(enumerate_weakly_admissible(6, None).unwrap().len(), 45);
        assert_eq!(enumerate_weakly_admissible(5, Some(2)).unwrap().len(), 5);
        let admissible: Vec<_> = enumerate_weakly_admissible(5, None)
            .unwrap()
            .into_iter()
            .filter(WilsonLoopDiagram::is_admissible)
            .collect();
        assert_eq!(admissible.len(), 6);
        assert_eq!(
            enumerate_dissections(13),
            Err(Error::SizeBoundExceeded { n: 13, max: MAX_ENUMERATION })
        );
    }

    #[test]
    fn enumeration_is_sorted_and_deterministic() {
        let all = enumerate_weakly_admissible(6, None).unwrap();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn triangulation_generator_counts_catalan() {
        for m in 2..=8 {
            let corners: Vec<usize> = (1..=m).collect();
            let tris = triangulations_of_region(&corners);
            assert_eq!(tris.len() as u128, catalan(m.saturating_sub(2)));
        }
    }

    #[test]
    fn dissection_json_round_trip() {
        let p = dissection_of(&w1()).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"n":8,"diagonals":[[1,4],[2,4],[5,7],[5,8]]}"#);
        let back: PolygonDissection = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<PolygonDissection>(r#"{"n":5,"diagonals":[[1,2]]}"#)
            .is_err());
    }
}
