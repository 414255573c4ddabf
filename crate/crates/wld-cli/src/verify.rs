//! The verification suites behind `wld verify`. Level 1 re-checks the
//! per-module invariants with independent brute-force oracles; level 2 adds
//! the cross-module theorem suites; level 3 adds seeded realization-oracle
//! checks. Diagrams are scanned in canonical enumeration order, so a
//! reported counterexample is always the lexicographically least one.

use num::Zero;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use wld::{
    catalan, default_polygon, dissection_of, enumerate_weakly_admissible, equivalence_class,
    equivalence_class_size, equivalence_key, face_of, hall_independent, matroid_of, omega_plus,
    piece_subgraph, rational_dot, realization_rank_oracle, PropSet, Side, VertexSet,
    WilsonLoopDiagram,
};

#[derive(Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub instances: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

struct Suite {
    n: usize,
    diagrams: Vec<WilsonLoopDiagram>,
    results: Vec<CheckResult>,
}

impl Suite {
    fn check<F>(&mut self, name: &'static str, mut body: F)
    where
        F: FnMut(&[WilsonLoopDiagram]) -> (usize, Option<String>),
    {
        let (instances, counterexample) = body(&self.diagrams);
        self.results.push(CheckResult {
            name,
            instances,
            ok: counterexample.is_none(),
            counterexample,
        });
    }
}

pub fn run(n: usize, level: u8, seed: u64) -> Vec<CheckResult> {
    let mut suite = Suite {
        n,
        diagrams: enumerate_weakly_admissible(n, None).unwrap(),
        results: Vec::new(),
    };
    level_one(&mut suite);
    if level >= 2 {
        level_two(&mut suite);
    }
    if level >= 3 {
        level_three(&mut suite, seed);
    }
    suite.results
}

fn json(d: &WilsonLoopDiagram) -> String {
    serde_json::to_string(d).unwrap()
}

fn level_one(suite: &mut Suite) {
    let n = suite.n;

    suite.check("support-flat identities", |diagrams| {
        let mut instances = 0;
        for d in diagrams {
            for p in PropSet::all_subsets(d.k()) {
                instances += 1;
                let flat = d.propagator_flat(&p).unwrap();
                let direct = d.vertex_support(&p.complement()).unwrap().complement();
                if flat != direct || !d.props_on(&flat).unwrap().is_subset(&p) {
                    return (instances, Some(json(d)));
                }
            }
        }
        (instances, None)
    });

    suite.check("dissection bijection round-trip", |diagrams| {
        let mut instances = 0;
        for d in diagrams {
            instances += 1;
            if wld::diagram_of(&dissection_of(d).unwrap()) != *d {
                return (instances, Some(json(d)));
            }
        }
        (instances, None)
    });

    suite.check("dual-tree shape", |diagrams| {
        let mut instances = 0;
        for d in diagrams {
            instances += 1;
            let p = dissection_of(d).unwrap();
            let t = p.dual_tree();
            let degrees_ok = (0..t.node_count()).all(|v| t.degree(v) != 2);
            if t.node_count() != n + p.k() + 1
                || t.edge_count() != n + p.k()
                || !t.is_tree()
                || !degrees_ok
            {
                return (instances, Some(json(d)));
            }
        }
        (instances, None)
    });

    suite.check("maximal pieces partition the diagonals", |diagrams| {
        let mut instances = 0;
        for d in diagrams {
            instances += 1;
            let p = dissection_of(d).unwrap();
            let dec = p.maximal_decomposition();
            let mut seen = BTreeSet::new();
            let mut ok = true;
            for piece in &dec.pieces {
                ok &= piece.is_triangulated(n);
                for diag in &piece.diagonals {
                    ok &= seen.insert(*diag);
                }
            }
            ok &= seen == p.diagonals().into_iter().collect::<BTreeSet<_>>();
            if !ok {
                return (instances, Some(json(d)));
            }
        }
        (instances, None)
    });

    suite.check("exactness = triangulated piece", |diagrams| {
        let mut instances = 0;
        for d in diagrams {
            for set in PropSet::all_subsets(d.k()) {
                if set.is_empty() {
                    continue;
                }
                instances += 1;
                let is_exact = d.is_exact(&set).unwrap();
                let piece_ok = piece_subgraph(d, &set).unwrap().is_triangulated(n);
                if is_exact != piece_ok {
                    return (instances, Some(json(d)));
                }
            }
        }
        (instances, None)
    });

    suite.check("independence matching = subset scan", |diagrams| {
        let mut instances = 0;
        for d in diagrams {
            for a in VertexSet::all_subsets(n) {
                instances += 1;
                if hall_independent(d, &a).unwrap() != subset_scan_independent(d, &a) {
                    return (instances, Some(json(d)));
                }
            }
        }
        (instances, None)
    });

    suite.check("matroid rank k and basis exchange", |diagrams| {
        let mut instances = 0;
        for d in diagrams {
            instances += 1;
            let m = matroid_of(d).unwrap();
            if m.rank() != d.k() || !m.satisfies_basis_exchange() {
                return (instances, Some(json(d)));
            }
        }
        (instances, None)
    });

    suite.check("face dimension law", |diagrams| {
        let poly = default_polygon(n).unwrap();
        let mut instances = 0;
        for d in diagrams {
            instances += 1;
            let dissection = dissection_of(d).unwrap();
            let face = face_of(&poly, &dissection).unwrap();
            if face.dimension() != n - 3 - d.k() {
                return (instances, Some(json(d)));
            }
        }
        (instances, None)
    });
}

/// Literal independence scan: every subset of `a` supports at least as many
/// propagators as it has vertices.
fn subset_scan_independent(d: &WilsonLoopDiagram, a: &VertexSet) -> bool {
    for sub in a.subsets() {
        if d.props_on(&sub).unwrap().len() < sub.len() {
            return false;
        }
    }
    true
}

fn partition_ids<K: std::hash::Hash + Eq>(keys: Vec<K>) -> Vec<usize> {
    let mut ids = HashMap::new();
    keys.into_iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(k).or_insert(next)
        })
        .collect()
}

fn level_two(suite: &mut Suite) {
    let n = suite.n;

    suite.check("same matroid iff equivalent", |diagrams| {
        let by_equiv = partition_ids(
            diagrams
                .iter()
                .map(|d| equivalence_key(d).unwrap())
                .collect(),
        );
        let by_matroid = partition_ids(
            diagrams
                .iter()
                .map(|d| matroid_of(d).unwrap().bases())
                .collect(),
        );
        let instances = diagrams.len();
        for i in 0..instances {
            if by_equiv[i] != by_matroid[i] {
                return (instances, Some(json(&diagrams[i])));
            }
        }
        (instances, None)
    });

    suite.check("exact iff uniform", |diagrams| {
        let mut instances = 0;
        for d in diagrams {
            for p in PropSet::all_subsets(d.k()) {
                if p.is_empty() {
                    continue;
                }
                instances += 1;
                let (sub, _) = d.support_subdiagram(&p).unwrap();
                let m = matroid_of(&sub).unwrap();
                if d.is_exact(&p).unwrap() != (m.is_uniform() && m.rank() == p.len()) {
                    return (instances, Some(json(d)));
                }
            }
        }
        (instances, None)
    });

    suite.check("contraction identity for exact subdiagrams", |diagrams| {
        let mut instances = 0;
        for d in diagrams {
            let m = matroid_of(d).unwrap();
            for p in PropSet::all_subsets(d.k()) {
                if p.is_empty() || !d.is_exact(&p).unwrap() {
                    continue;
                }
                instances += 1;
                let flat = d.propagator_flat(&p.complement()).unwrap();
                let contracted = m.contraction(&flat).unwrap();
                let (sub, labels) = d.support_subdiagram(&p).unwrap();
                if contracted.bases() != matroid_of(&sub).unwrap().bases()
                    || contracted.labels() != labels.as_slice()
                {
                    return (instances, Some(json(d)));
                }
            }
        }
        (instances, None)
    });

    suite.check("class enumeration equals Catalan product", |diagrams| {
        let mut instances = 0;
        for d in diagrams {
            instances += 1;
            let class = equivalence_class(d).unwrap();
            if class.len() as u128 != equivalence_class_size(d).unwrap() || !class.contains(d) {
                return (instances, Some(json(d)));
            }
        }
        (instances, None)
    });

    suite.check("parallel faces iff equivalent", |diagrams| {
        let poly = default_polygon(n).unwrap();
        let face_keys: Vec<_> = diagrams
            .iter()
            .map(|d| {
                face_of(&poly, &dissection_of(d).unwrap())
                    .unwrap()
                    .translate_key()
            })
            .collect();
        let by_face = partition_ids(face_keys);
        let by_equiv = partition_ids(
            diagrams
                .iter()
                .map(|d| equivalence_key(d).unwrap())
                .collect(),
        );
        let instances = diagrams.len();
        for i in 0..instances {
            if by_face[i] != by_equiv[i] {
                return (instances, Some(json(&diagrams[i])));
            }
        }
        (instances, None)
    });

    suite.check("face classes equal equivalence classes", |diagrams| {
        let classes = wld::count_nonparallel_faces(n).unwrap();
        let equiv_count = diagrams
            .iter()
            .map(|d| equivalence_key(d).unwrap())
            .collect::<BTreeSet<_>>()
            .len();
        if classes.len() != equiv_count {
            return (
                1,
                Some(format!(
                    "face classes {} vs equivalence classes {equiv_count}",
                    classes.len()
                )),
            );
        }
        (1, None)
    });

    suite.check("omega certificates are normal", |diagrams| {
        let poly = default_polygon(n).unwrap();
        let mut instances = 0;
        for d in diagrams {
            let dissection = dissection_of(d).unwrap();
            if dissection.k() == 0 {
                continue;
            }
            let face = face_of(&poly, &dissection).unwrap();
            for chord in dissection.diagonals() {
                for side in [Side::Left, Side::Right] {
                    instances += 1;
                    let w = omega_plus(&poly, chord, side).unwrap();
                    let ok = face
                        .direction_span()
                        .iter()
                        .all(|dir| rational_dot(&w, dir).is_zero());
                    if !ok {
                        return (instances, Some(json(d)));
                    }
                }
            }
        }
        (instances, None)
    });

    suite.check("triangulation count is Catalan", |diagrams| {
        let triangulations = diagrams.iter().filter(|d| d.k() == n - 3).count();
        if triangulations as u128 != catalan(n - 2) {
            return (1, Some(format!("{triangulations} triangulations")));
        }
        (1, None)
    });
}


fn level_three(suite: &mut Suite, seed: u64) {
    suite.check("realization oracle agrees", |diagrams| {
        let mut instances = 0;
        for (idx, d) in diagrams.iter().enumerate() {
            instances += 1;
            let expected = matroid_of(d).unwrap();
            match realization_rank_oracle(d, seed.wrapping_add(idx as u64)) {
                Ok(realized) if realized == expected => {}
                _ => return (instances, Some(json(d))),
            }
        }
        (instances, None)
    });
}
