//! Independent brute-force oracles shared by the test suites. Everything in
//! here recomputes definitions from scratch (plain set arithmetic, subset
//! scans, closure searches) so the library implementations have something
//! honest to be checked against.
#![allow(dead_code)] // each test target uses its own subset of the oracles

use std::collections::{BTreeSet, VecDeque};
use wld::WilsonLoopDiagram;

/// Support of a propagator computed by hand: {i, i+1, j, j+1} mod n.
pub fn support_oracle(n: usize, (i, j): (usize, usize)) -> BTreeSet<usize> {
    let succ = |v: usize| if v == n { 1 } else { v + 1 };
    BTreeSet::from([i, succ(i), j, succ(j)])
}

/// Union of supports over a set of propagator pairs.
pub fn vertex_support_oracle(n: usize, props: &[(usize, usize)]) -> BTreeSet<usize> {
    props
        .iter()
        .flat_map(|&p| support_oracle(n, p))
        .collect()
}

/// Literal weak admissibility: the subset density bound checked over every
/// nonempty propagator subset, plus the cyclic noncrossing condition checked
/// by walking the circle.
pub fn weakly_admissible_oracle(n: usize, props: &[(usize, usize)]) -> bool {
    let k = props.len();
    for mask in 1u64..1 << k {
        let subset: Vec<(usize, usize)> = (0..k)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| props[b])
            .collect();
        if vertex_support_oracle(n, &subset).len() < subset.len() + 3 {
            return false;
        }
    }
    for (a, &p) in props.iter().enumerate() {
        for &q in &props[a + 1..] {
            if chords_interleave_oracle(n, p, q) {
                return false;
            }
        }
    }
    true
}

/// Cyclic interleaving decided by walking from one endpoint of `p` to the
/// other and counting which endpoints of `q` are passed.
pub fn chords_interleave_oracle(n: usize, p: (usize, usize), q: (usize, usize)) -> bool {
    if p.0 == q.0 || p.0 == q.1 || p.1 == q.0 || p.1 == q.1 {
        return false;
    }
    let mut inside = BTreeSet::new();
    let mut v = p.0;
    loop {
        v = if v == n { 1 } else { v + 1 };
        if v == p.1 {
            break;
        }
        inside.insert(v);
    }
    inside.contains(&q.0) != inside.contains(&q.1)
}

/// Independence in M(W) by the literal subset scan: every subset of `a` must
/// support at least as many propagators as it has vertices.
pub fn independent_oracle(d: &WilsonLoopDiagram, a: &[usize]) -> bool {
    let n = d.n();
    let props: Vec<(usize, usize)> = d.propagators().iter().map(|p| p.pair()).collect();
    for mask in 0u64..1 << a.len() {
        let subset: Vec<usize> = (0..a.len())
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| a[b])
            .collect();
        let supported = props
            .iter()
            .filter(|&&p| support_oracle(n, p).iter().any(|v| subset.contains(v)))
            .count();
        if supported < subset.len() {
            return false;
        }
    }
    true
}

/// All propagator pairs available on `[n]` (every unordered vertex pair).
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect()
}

/// The equivalence class of `d` as the literal transitive closure of
/// single exact-subdiagram replacements.
pub fn equivalence_closure_oracle(d: &WilsonLoopDiagram) -> BTreeSet<WilsonLoopDiagram> {
    let n = d.n();
    let mut seen = BTreeSet::from([d.clone()]);
    let mut queue = VecDeque::from([d.clone()]);
    while let Some(current) = queue.pop_front() {
        for neighbor in replacement_neighbors(n, &current) {
            if seen.insert(neighbor.clone()) {
                queue.push_back(neighbor);
            }
        }
    }
    seen
}

/// Single steps of the relation: swap one exact subdiagram (P, V(P)) for any
/// disjoint exact (P', V(P')) with |P'| = |P| and V(P') = V(P), keeping the
/// rest identical, landing on a weakly admissible diagram.
fn replacement_neighbors(n: usize, d: &WilsonLoopDiagram) -> Vec<WilsonLoopDiagram> {
    let props: Vec<(usize, usize)> = d.propagators().iter().map(|p| p.pair()).collect();
    let k = props.len();
    let mut out = Vec::new();
    for mask in 1u64..1 << k {
        let p_old: Vec<(usize, usize)> = (0..k)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| props[b])
            .collect();
        let rest: Vec<(usize, usize)> = (0..k)
            .filter(|b| mask & (1 << b) == 0)
            .map(|b| props[b])
            .collect();
        let support = vertex_support_oracle(n, &p_old);
        if support.len() != p_old.len() + 3 {
            continue; // not exact
        }
        // candidate propagators supported inside V(P)
        let candidates: Vec<(usize, usize)> = all_pairs(n)
            .into_iter()
            .filter(|&p| support_oracle(n, p).is_subset(&support))
            .collect();
        let m = candidates.len();
        for choice in 0u64..1 << m {
            if choice.count_ones() as usize != p_old.len() {
                continue;
            }
            let p_new: Vec<(usize, usize)> = (0..m)
                .filter(|b| choice & (1 << b) != 0)
                .map(|b| candidates[b])
                .collect();
            if vertex_support_oracle(n, &p_new) != support {
                continue;
            }
            if p_new.iter().any(|p| rest.contains(p)) {
                continue;
            }
            let mut pairs = rest.clone();
            pairs.extend(&p_new);
            if !weakly_admissible_oracle(n, &pairs) {
                continue;
            }
            out.push(WilsonLoopDiagram::new(n, &pairs).unwrap());
        }
    }
    out
}

/// Relabels a diagram by rotating every vertex by `shift` around the circle.
pub fn rotate_diagram(d: &WilsonLoopDiagram, shift: usize) -> WilsonLoopDiagram {
    let n = d.n();
    let rot = |v: usize| (v - 1 + shift) % n + 1;
    let pairs: Vec<(usize, usize)> = d
        .propagators()
        .iter()
        .map(|p| (rot(p.i()), rot(p.j())))
        .collect();
    WilsonLoopDiagram::new(n, &pairs).unwrap()
}
