mod common;

use std::collections::BTreeSet;

use common::polytope::{binom, k_oracle, w_oracle};

use proptest::prelude::*;
use thh_core::polytopes::{
    cyclic_kn_copies, enumerate_faces, euler_char_boundary, f_vector, facet_factors,
    FaceBracketing, FaceDescriptor, PolytopeKind::*,
};

#[test]
fn associahedron_f_vectors_match_tree_count() {
    for n in 2..=8 {
        assert_eq!(f_vector(Associahedron, n).unwrap(), k_oracle(n), "K_{n}");
    }
}

#[test]
fn cyclohedron_f_vectors_match_clique_count() {
    for n in 2..=7 {
        assert_eq!(f_vector(Cyclohedron, n).unwrap(), w_oracle(n), "W_{n}");
    }
}

#[test]
fn vertex_counts() {
    for n in 2..=8u64 {
        let k = f_vector(Associahedron, n as usize).unwrap();
        assert_eq!(k[0], binom(2 * n - 2, n - 1) / n, "Catalan for K_{n}");
        let w = f_vector(Cyclohedron, n as usize).unwrap();
        assert_eq!(w[0], binom(2 * n - 2, n - 1), "central binomial for W_{n}");
    }
}

#[test]
fn facet_counts_are_interval_counts() {
    for n in 3..=8 {
        let intervals = (2..n).map(|len| n - len + 1).sum::<usize>();
        assert_eq!(intervals, n * (n - 1) / 2 - 1);
        assert_eq!(
            enumerate_faces(Associahedron, n, 1).unwrap().len(),
            intervals
        );
    }
}

#[test]
fn euler_characteristics() {
    for kind in [Associahedron, Cyclohedron] {
        for n in 2..=8 {
            let f = f_vector(kind, n).unwrap();
            let chi: i64 = f
                .iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
                .sum();
            assert_eq!(chi, 1, "{kind:?} {n}");
            let d = f.len() - 1;
            if d == 0 {
                assert!(euler_char_boundary(kind, n).is_err());
            } else {
                let expect = 1 + if (d - 1).is_multiple_of(2) { 1 } else { -1 };
                assert_eq!(euler_char_boundary(kind, n).unwrap(), expect);
            }
        }
    }
}

fn pieces_of(face: &FaceDescriptor) -> BTreeSet<(Option<usize>, Vec<usize>)> {
    let n = face.arity();
    match face.bracketing() {
        FaceBracketing::Linear(b) => b
            .brackets()
            .iter()
            .map(|&(x, y)| (None, (x..=y).collect()))
            .collect(),
        FaceBracketing::Cyclic(c) => {
            let mut s: BTreeSet<_> = c
                .arcs()
                .iter()
                .map(|a| (None, a.elements(n).into_iter().collect()))
                .collect();
            if let Some(b) = c.basepoint() {
                s.insert((Some(b), vec![]));
            }
            s
        }
    }
}

#[test]
fn factors_account_for_dimension_and_vertices() {
    for kind in [Associahedron, Cyclohedron] {
        for n in 2..=6 {
            let d = kind.dim(n);
            let vertices: Vec<_> = enumerate_faces(kind, n, d)
                .unwrap()
                .iter()
                .map(pieces_of)
                .collect();
            for codim in 1..=d {
                for face in enumerate_faces(kind, n, codim).unwrap() {
                    let factors = facet_factors(&face).unwrap();
                    let dims: usize = factors.iter().map(|f| f.dim()).sum();
                    assert_eq!(dims, face.dim(), "{face}");
                    let product: u128 = factors.iter().map(|f| f.vertex_count()).product();
                    let mine = pieces_of(&face);
                    let below = vertices.iter().filter(|v| mine.is_subset(v)).count();
                    assert_eq!(product, below as u128, "{face}");
                }
            }
        }
    }
}

#[test]
fn kn_copies_on_the_cyclohedron() {
    for n in 2..=7 {
        let copies = cyclic_kn_copies(n).unwrap();
        assert_eq!(copies.len(), n);
        let facets = enumerate_faces(Cyclohedron, n, 1).unwrap();
        for c in &copies {
            assert!(facets.contains(c));
            assert_eq!(c.dim(), n - 2);
            let f = facet_factors(c).unwrap();
            assert_eq!(f.len(), 1);
            assert_eq!((f[0].kind, f[0].r), (Associahedron, n));
        }
        let proper = facets.iter().filter(
            |f| matches!(f.bracketing(), FaceBracketing::Cyclic(c) if c.basepoint().is_none()),
        );
        assert_eq!(proper.count() + n, facets.len());
    }
}

#[test]
fn enumeration_edges() {
    assert!(enumerate_faces(Associahedron, 1, 0).is_err());
    assert!(enumerate_faces(Associahedron, 4, 3).is_err());
    assert_eq!(enumerate_faces(Associahedron, 2, 0).unwrap().len(), 1);
    assert_eq!(enumerate_faces(Associahedron, 5, 0).unwrap().len(), 1);
    let f = enumerate_faces(Associahedron, 4, 1).unwrap();
    let brackets: Vec<_> = f
        .iter()
        .map(|x| match x.bracketing() {
            FaceBracketing::Linear(b) => b.brackets()[0],
            _ => unreachable!(),
        })
        .collect();
    assert_eq!(brackets, vec![(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]);
}

proptest! {
    #[test]
    fn faces_round_trip_through_json(n in 2usize..=6, w in any::<bool>(), pick in any::<prop::sample::Index>()) {
        let kind = if w { Cyclohedron } else { Associahedron };
        let d = kind.dim(n);
        let mut faces = Vec::new();
        for c in 0..=d {
            faces.extend(enumerate_faces(kind, n, c).unwrap());
        }
        let face = pick.get(&faces);
        let s = serde_json::to_string(face).unwrap();
        let back: FaceDescriptor = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(&back, face);
    }
}
