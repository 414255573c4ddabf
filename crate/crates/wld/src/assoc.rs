//! An exact-rational realization of the associahedron as a secondary
//! polytope, and the parallelism tests on its faces.
//!
//! Each triangulation t of a fixed convex n-gon gets the point s_t whose
//! i-th coordinate is the total area of the triangles of t at corner i; a
//! dissection's face is the convex hull of the s_t over its refining
//! triangulations. Everything is computed over arbitrary-precision rationals
//! because parallelism and orthogonality are equality tests.

use crate::dissection::PolygonDissection;
use crate::error::{Error, Result};
use num::{BigInt, BigRational, Zero};
use std::collections::BTreeMap;

pub type Rat = BigRational;

/// Largest polygon for which all faces are enumerated and grouped.
pub const MAX_FACE_COUNTING: usize = 9;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn from_ints(x: i64, y: i64) -> Self {
        Point { x: rat(x), y: rat(y) }
    }
}

fn rat(v: i64) -> Rat {
    BigRational::from(BigInt::from(v))
}

fn cross(ox: &Rat, oy: &Rat, ax: &Rat, ay: &Rat, bx: &Rat, by: &Rat) -> Rat {
    (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)
}

/// Signed area of the triangle `(a, b, c)` by the shoelace formula; positive
/// when the corners run counterclockwise.
pub fn triangle_area(a: &Point, b: &Point, c: &Point) -> Rat {
    cross(&a.x, &a.y, &b.x, &b.y, &c.x, &c.y) / rat(2)
}

fn unsigned_area(a: &Point, b: &Point, c: &Point) -> Rat {
    let s = triangle_area(a, b, c);
    if s < Rat::zero() {
        -s
    } else {
        s
    }
}

/// Corners of a convex n-gon in counterclockwise cyclic order, no three
/// collinear.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolygonRealization {
    points: Vec<Point>,
}

impl PolygonRealization {
    /// Validates convex position: every consecutive corner triple must turn
    /// strictly left. For strictly convex polygons this also rules out any
    /// collinear triple.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let n = points.len();
        if n < 3 {
            return Err(Error::TooFewVertices { n });
        }
        for i in 0..n {
            let a = &points[i];
            let b = &points[(i + 1) % n];
            let c = &points[(i + 2) % n];
            if triangle_area(a, b, c) <= Rat::zero() {
                return Err(Error::NotATriangulation);
            }
        }
        Ok(PolygonRealization { points })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Corner `i` (1-based).
    pub fn corner(&self, i: usize) -> &Point {
        &self.points[i - 1]
    }

    /// Shoelace area of the whole polygon.
    pub fn area(&self) -> Rat {
        let n = self.n();
        let mut twice = Rat::zero();
        for i in 0..n {
            let a = &self.points[i];
            let b = &self.points[(i + 1) % n];
            twice += &a.x * &b.y - &b.x * &a.y;
        }
        twice / rat(2)
    }
}

/// The fixed realization used throughout: corners on the parabola,
/// `x_i = (i, i^2)`. Convex, counterclockwise, and no three corners are
/// collinear.
pub fn default_polygon(n: usize) -> Result<PolygonRealization> {
    if n < 3 {
        return Err(Error::TooFewVertices { n });
    }
    PolygonRealization::new(
        (1..=n as i64)
            .map(|i| Point::from_ints(i, i * i))
            .collect(),
    )
}

/// The point s_t of a triangulation: coordinate i is the sum of the
/// (unsigned) areas of the triangles of t incident to corner i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SecondaryVertex {
    pub triangulation: PolygonDissection,
    pub coords: Vec<Rat>,
}

pub fn secondary_vertex(
    poly: &PolygonRealization,
    t: &PolygonDissection,
) -> Result<SecondaryVertex> {
    if t.n() != poly.n() {
        return Err(Error::AmbientMismatch { expected: poly.n(), got: t.n() });
    }
    if !t.is_triangulation() {
        return Err(Error::NotATriangulation);
    }
    let mut coords = vec![Rat::zero(); poly.n()];
    for face in t.internal_faces() {
        debug_assert_eq!(face.len(), 3);
        let area = unsigned_area(
            poly.corner(face[0]),
            poly.corner(face[1]),
            poly.corner(face[2]),
        );
        for &v in &face {
            coords[v - 1] += area.clone();
        }
    }
    Ok(SecondaryVertex { triangulation: t.clone(), coords })
}

/// Direction of the associahedron edge whose quadrilateral has corners
/// `(i, j, k, l)` in cyclic order: supported on those four coordinates with
/// entries `(-a(j,k,l), a(i,k,l), -a(i,j,l), a(i,j,k))`, zero elsewhere.
///
/// This is `s_t1 - s_t2` where t1 holds the diagonal `(j, l)` and t2 holds
/// `(i, k)`, inside any common ambient triangulation.
pub fn edge_direction(
    poly: &PolygonRealization,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> Result<Vec<Rat>> {
    let n = poly.n();
    for v in [i, j, k, l] {
        if v < 1 || v > n {
            return Err(Error::VertexOutOfRange { v, n });
        }
    }
    // rotate to the least corner first; cyclic order then means ascending
    let mut quad = [i, j, k, l];
    let least = (0..4).min_by_key(|&p| quad[p]).unwrap();
    quad.rotate_left(least);
    if !(quad[0] < quad[1] && quad[1] < quad[2] && quad[2] < quad[3]) {
        return Err(Error::NotATriangulation);
    }
    let [i, j, k, l] = quad;
    let (pi, pj, pk, pl) = (poly.corner(i), poly.corner(j), poly.corner(k), poly.corner(l));
    let mut out = vec![Rat::zero(); n];
    out[i - 1] = -triangle_area(pj, pk, pl);
    out[j - 1] = triangle_area(pi, pk, pl);
    out[k - 1] = -triangle_area(pi, pj, pl);
    out[l - 1] = triangle_area(pi, pj, pk);
    Ok(out)
}

/// Reduced row echelon form over the rationals; zero rows dropped. Serves as
/// a canonical basis, so two spans are equal exactly when their forms match.
fn row_reduce(mut rows: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot = 0;
    for col in 0..ncols {
        if pivot == rows.len() {
            break;
        }
        let Some(r) = (pivot..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot, r);
        let inv = rows[pivot][col].clone().recip();
        for c in col..ncols {
            let v = rows[pivot][c].clone() * inv.clone();
            rows[pivot][c] = v;
        }
        for r in 0..rows.len() {
            if r != pivot && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..ncols {
                    let sub = f.clone() * rows[pivot][c].clone();
                    rows[r][c] -= sub;
                }
            }
        }
        pivot += 1;
    }
    rows.truncate(pivot);
    rows
}

/// Exact dot product of two rational vectors.
pub fn rational_dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The face of the associahedron indexed by a dissection: its secondary
/// vertices, the span of their differences, and its dimension.
#[derive(Clone, Debug)]
pub struct SecondaryFace {
    dissection: PolygonDissection,
    vertices: Vec<SecondaryVertex>,
    span: Vec<Vec<Rat>>,
    dimension: usize,
}

impl SecondaryFace {
    /// Builds the face of `dissection`: one secondary vertex per refining
    /// triangulation. Checks the construction against itself: the number of
    /// vertices is the product of Catalan numbers over the non-triangle
    /// faces, the dimension is `n - 3 - k`, and the vertex-difference span
    /// equals the span of the edge directions of the bounding quadrilaterals.
    pub fn new(poly: &PolygonRealization, dissection: &PolygonDissection) -> Result<Self> {
        if dissection.n() != poly.n() {
            return Err(Error::AmbientMismatch { expected: poly.n(), got: dissection.n() });
        }
        let refinements = dissection.refining_triangulations();
        let vertices: Vec<SecondaryVertex> = refinements
            .iter()
            .map(|t| secondary_vertex(poly, t))
            .collect::<Result<_>>()?;

        let expected_count: u128 = dissection
            .internal_faces()
            .iter()
            .filter(|f| f.len() > 3)
            .map(|f| crate::catalan(f.len() - 2))
            .product();
        assert_eq!(vertices.len() as u128, expected_count);

        let base = &vertices[0].coords;
        let diffs: Vec<Vec<Rat>> = vertices[1..]
            .iter()
            .map(|v| v.coords.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let span = row_reduce(diffs);
        let dimension = span.len();
        assert_eq!(dimension, dissection.n() - 3 - dissection.k());

        let quad_span = row_reduce(bounding_quadrilaterals(dissection)
            .into_iter()
            .map(|[i, j, k, l]| edge_direction(poly, i, j, k, l))
            .collect::<Result<_>>()?);
        assert_eq!(span, quad_span);

        Ok(SecondaryFace {
            dissection: dissection.clone(),
            vertices,
            span,
            dimension,
        })
    }

    pub fn dissection(&self) -> &PolygonDissection {
        &self.dissection
    }

    pub fn vertices(&self) -> &[SecondaryVertex] {
        &self.vertices
    }

    /// Canonical basis of the linear span of vertex differences.
    pub fn direction_span(&self) -> &[Vec<Rat>] {
        &self.span
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// The face's vertex set translated so its lexicographically least
    /// vertex sits at the origin; equal keys mean parallel faces.
    pub fn translate_key(&self) -> Vec<Vec<Rat>> {
        translate_key_of(self.vertices.iter().map(|v| v.coords.clone()).collect())
    }
}

fn translate_key_of(mut coords: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    coords.sort();
    let base = coords[0].clone();
    for c in &mut coords {
        for (v, b) in c.iter_mut().zip(&base) {
            *v -= b.clone();
        }
    }
    coords
}

/// The quadrilaterals of the edges bounding a dissection's face: every
/// 4-subset of every non-triangle internal face.
fn bounding_quadrilaterals(dissection: &PolygonDissection) -> Vec<[usize; 4]> {
    let mut quads = Vec::new();
    for face in dissection.internal_faces() {
        let m = face.len();
        if m < 4 {
            continue;
        }
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    for d in c + 1..m {
                        quads.push([face[a], face[b], face[c], face[d]]);
                    }
                }
            }
        }
    }
    quads
}

/// Convenience wrapper for [`SecondaryFace::new`].
pub fn face_of(poly: &PolygonRealization, dissection: &PolygonDissection) -> Result<SecondaryFace> {
    SecondaryFace::new(poly, dissection)
}

/// Which side of a directed chord counts as positive.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// Strictly left of the chord directed from its first to its second
    /// endpoint.
    Left,
    /// Strictly right of it.
    Right,
}

/// The one-sided normal certificate of a chord `(a, b)`: coordinate i is
/// twice the unsigned area of the triangle `(x_i, x_a, x_b)` when `x_i` lies
/// strictly on the chosen side, and 0 otherwise.
///
/// Twice-area is a positive rescaling of the distance from `x_i` to the
/// chord (by the chord's length), which preserves both normality and the
/// sign argument. The vector is orthogonal to every edge direction of every
/// face whose dissection contains the chord.
pub fn omega_plus(
    poly: &PolygonRealization,
    chord: (usize, usize),
    side: Side,
) -> Result<Vec<Rat>> {
    let (a, b) = chord;
    let n = poly.n();
    for v in [a, b] {
        if v < 1 || v > n {
            return Err(Error::VertexOutOfRange { v, n });
        }
    }
    if a == b {
        return Err(Error::DegenerateChord);
    }
    let (pa, pb) = (poly.corner(a), poly.corner(b));
    let mut out = vec![Rat::zero(); n];
    for i in 1..=n {
        if i == a || i == b {
            continue;
        }
        let s = cross(&pa.x, &pa.y, &pb.x, &pb.y, &poly.corner(i).x, &poly.corner(i).y);
        let keep = match side {
            Side::Left => s > Rat::zero(),
            Side::Right => s < Rat::zero(),
        };
        if keep {
            out[i - 1] = if s < Rat::zero() { -s } else { s };
        }
    }
    Ok(out)
}

/// Whether two dissections' faces are translates of each other, decided in
/// exact arithmetic. Span equality is used as a fast necessary condition
/// before the full translate test on the vertex sets.
pub fn faces_parallel(
    poly: &PolygonRealization,
    d1: &PolygonDissection,
    d2: &PolygonDissection,
) -> Result<bool> {
    if d1.n() != d2.n() {
        return Err(Error::GroundSizeMismatch { left: d1.n(), right: d2.n() });
    }
    let f1 = SecondaryFace::new(poly, d1)?;
    let f2 = SecondaryFace::new(poly, d2)?;
    if f1.dimension != f2.dimension || f1.span != f2.span {
        return Ok(false);
    }
    Ok(f1.translate_key() == f2.translate_key())
}

/// One parallelism class of faces.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ParallelClass {
    /// Lexicographically least member dissection.
    pub representative: PolygonDissection,
    /// Number of dissections in the class.
    pub members: usize,
    /// Face dimension, `n - 3 - k`.
    pub dimension: usize,
}

/// Groups all faces of the associahedron (every dissection, the whole
/// polytope included) by parallelism and lists the classes, ordered by
/// dimension and then by representative.
pub fn count_nonparallel_faces(n: usize) -> Result<Vec<ParallelClass>> {
    if n < 4 {
        return Err(Error::TooFewVertices { n });
    }
    if n > MAX_FACE_COUNTING {
        return Err(Error::SizeBoundExceeded { n, max: MAX_FACE_COUNTING });
    }
    let poly = default_polygon(n)?;
    // secondary vertices of all triangulations, computed once
    let mut vertex_cache: BTreeMap<PolygonDissection, Vec<Rat>> = BTreeMap::new();
    let mut classes: BTreeMap<Vec<Vec<Rat>>, (PolygonDissection, usize)> = BTreeMap::new();
    for dissection in crate::dissection::enumerate_dissections(n)? {
        let coords: Vec<Vec<Rat>> = dissection
            .refining_triangulations()
            .into_iter()
            .map(|t| {
                vertex_cache
                    .entry(t.clone())
                    .or_insert_with(|| secondary_vertex(&poly, &t).unwrap().coords)
                    .clone()
            })
            .collect();
        let key = translate_key_of(coords);
        classes
            .entry(key)
            .and_modify(|(rep, count)| {
                *count += 1;
                if dissection < *rep {
                    *rep = dissection.clone();
                }
            })
            .or_insert_with(|| (dissection.clone(), 1));
    }
    let mut out: Vec<ParallelClass> = classes
        .into_values()
        .map(|(representative, members)| ParallelClass {
            dimension: n - 3 - representative.k(),
            representative,
            members,
        })
        .collect();
    out.sort_by(|a, b| (a.dimension, &a.representative).cmp(&(b.dimension, &b.representative)));
    Ok(out)
}
