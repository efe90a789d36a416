mod common;

use proptest::prelude::*;
use thh_core::graded::{BaseRing, Generator, GradedRingSpec, QuotientSpec};
use thh_core::moduli::{c_matrix, CMatrix, Perturbation};
use thh_core::thh::*;

use common::{bokstedt_closed_form, bokstedt_oracle, f5_spec, lazarev_case};

fn ku2_spec() -> QuotientSpec {
    QuotientSpec::new(
        GradedRingSpec::new(BaseRing::Integers, vec![Generator::new("u", 2, true)]),
        &["2"],
    )
}

#[test]
fn bokstedt_pages_match_the_matrix_oracle() {
    for (n, p, d) in [(1u32, 3u64, 16i64), (1, 5, 30), (2, 3, 24)] {
        let run = bokstedt_run(&bokstedt_e2(n, p, d).unwrap()).unwrap();
        let bound = d.min(run.collapse_bound - 1);
        let counts = run.counts();
        let oracle = bokstedt_oracle(n, p, bound);
        let closed = bokstedt_closed_form(n, p, bound);
        assert_eq!(&counts[..=bound as usize], &oracle[..], "({n}, {p})");
        assert_eq!(oracle, closed, "({n}, {p})");
    }
}

#[test]
fn bokstedt_e2_matches_its_tensor_description() {
    let e2 = bokstedt_e2(2, 3, 20).unwrap();
    assert!(e2.generator(GenName::SigmaTau, 0).is_some());
    assert!(e2.generator(GenName::SigmaTau, 1).is_some());
    assert!(e2.generator(GenName::SigmaTau, 2).is_none());
    assert!(e2.generator(GenName::Tau, 2).is_none());
    let entries = e2.entries();
    assert!(entries.iter().all(|e| e.s >= 0));
}

#[test]
fn survivors_contain_truncated_polynomial_factors() {
    let run = bokstedt_run(&bokstedt_e2(2, 3, 52).unwrap()).unwrap();
    for a in 0..3 {
        for b in 0..3 {
            if 2 * a + 6 * b <= 52 {
                let mut f = Vec::new();
                if a > 0 {
                    f.push((GenName::SigmaTau, 0, a));
                }
                if b > 0 {
                    f.push((GenName::SigmaTau, 1, b));
                }
                assert!(run.contains(&f), "γ{a} γ{b}");
            }
        }
    }
}

#[test]
fn ku2_height_one_data_resolves_to_the_base() {
    let spec = ku2_spec();
    let pert = Perturbation::new(&spec).unwrap();
    let ring = pert.ring().clone();
    let u = thh_core::arith::Poly::var(ring.nvars(), 0, &ring.coeffs);
    let c = c_matrix(&pert, &[u]).unwrap();
    let ext = extension_from_height1(&spec, &c, 12, 16).unwrap();
    let r = resolve_cohomology(&ext).unwrap();
    assert_eq!(r.kind, ResolutionKind::CompletedBase);
    assert_eq!(r.base, "Z_2[u^±1]");
}

#[test]
fn zero_cmatrix_gives_zero_system() {
    let spec = ku2_spec();
    let pert = Perturbation::new(&spec).unwrap();
    let zero = thh_core::arith::Poly::zero(pert.ring().nvars());
    let c = c_matrix(&pert, &[zero]).unwrap();
    let ext = extension_from_height1(&spec, &c, 12, 16).unwrap();
    assert!(ext.f[0].is_zero());
    let r = resolve_cohomology(&ext).unwrap();
    assert_eq!(r.kind, ResolutionKind::Unresolved);
}

#[test]
fn invertible_two_by_two_cmatrix_gives_the_base() {
    let spec = QuotientSpec::new(
        GradedRingSpec::new(
            BaseRing::Integers,
            vec![Generator::new("u", 2, true), Generator::new("w", 0, false)],
        ),
        &["3", "w"],
    );
    let pert = Perturbation::new(&spec).unwrap();
    let a = pert.ring().clone();
    let nv = a.nvars();
    let u = thh_core::arith::Poly::var(nv, 0, &a.coeffs);
    let c = CMatrix::new(
        a,
        vec![
            vec![u.clone(), thh_core::arith::Poly::zero(nv)],
            vec![thh_core::arith::Poly::zero(nv), u],
        ],
    )
    .unwrap();
    let ext = extension_from_height1(&spec, &c, 10, 8).unwrap();
    assert!(jacobian_invertible(&ext));
    let r = resolve_cohomology(&ext).unwrap();
    assert_eq!(r.kind, ResolutionKind::CompletedBase);
}

#[test]
fn structure_change_by_quadratic_in_two_variables() {
    let spec = QuotientSpec::new(
        GradedRingSpec::new(
            BaseRing::PAdicTruncated { p: 3, n: 8 },
            vec![Generator::new("u", 2, true), Generator::new("w", 0, false)],
        ),
        &["3", "w"],
    );
    let ext = ExtensionSystem::zero(&spec, None, 10, 8).unwrap();
    let f = ext.parse("2*u*q1*q2").unwrap();
    let out = apply_structure_change(&ext, &f).unwrap();
    assert_eq!(out.display(&out.f[0]), "2*u*q2");
    assert_eq!(out.display(&out.f[1]), "2*u*q1");
    let same = apply_structure_change(&ext, &thh_core::arith::Poly::zero(ext.nvars())).unwrap();
    assert_eq!(same, ext);
}

#[test]
fn bimodule_terms_recover_structure_change() {
    for n in 2..=5usize {
        let ext = ExtensionSystem::zero(&f5_spec(8), None, 10, 8).unwrap();
        let v = ext.parse(&format!("u^{}", n - 1)).unwrap();
        let terms: Vec<BimoduleTerm> = (0..n)
            .map(|i| BimoduleTerm {
                j: vec![0; n],
                i,
                v: v.clone(),
            })
            .collect();
        let bimod = bimodule_extension_change(&ext, &terms).unwrap();
        let f = ext.parse(&format!("u^{}*q^{n}", n - 1)).unwrap();
        let structure = apply_structure_change(&ext, &f).unwrap();
        assert_eq!(bimod.f, structure.f, "n = {n}");
    }
}

#[test]
fn k1_sweep_over_leading_terms() {
    for n in 1..=3u32 {
        for a in 1..=4i64 {
            let ext = e1_extension_system(5, Some((a, n)), 12, 16).unwrap();
            let r = resolve_cohomology(&ext).unwrap();
            assert_eq!(r.rank, Some(n as u64), "a = {a}, n = {n}");
        }
    }
    let r = resolve_cohomology(&e1_extension_system(5, None, 12, 16).unwrap()).unwrap();
    assert_eq!(r.rank, Some(4));
    assert!(e1_extension_system(5, Some((1, 4)), 12, 16).is_err());
}

#[test]
fn homology_relations_are_the_capped_extensions() {
    let ext = kn_extension_system(1, 5, &[], 12, 16).unwrap();
    for j in 0..10u32 {
        let rel = pair_relation(&ext, 0, &[j]);
        let mut want = vec![(vec![j], ext.x[0].clone())];
        if j >= 4 {
            want.push((vec![j - 4], ext.f[0].clone()));
        }
        assert_eq!(rel.len(), want.len());
        assert_eq!(rel[0], want[0]);
        if let Some((idx, _)) = want.get(1) {
            assert_eq!(&rel[1].0, idx);
            assert_eq!(module_action(&[4], &[j]), Some(idx.clone()));
        }
    }
}

#[test]
fn homology_is_stable_under_truncation_increase() {
    let a = resolve_homology(&kn_extension_system(1, 3, &[], 12, 16).unwrap(), 10, 12).unwrap();
    let b = resolve_homology(&kn_extension_system(1, 3, &[], 14, 20).unwrap(), 10, 12).unwrap();
    let shifts = |h: &ResolvedHomology| h.families.iter().map(|f| f.shift).collect::<Vec<_>>();
    assert_eq!(shifts(&a), shifts(&b));
    let degs = |h: &ResolvedHomology| h.towers.iter().map(|t| t.degree).collect::<Vec<_>>();
    assert_eq!(degs(&a), degs(&b));
}

#[test]
fn resolutions_round_trip_through_json() {
    let r = resolve_cohomology(&kn_extension_system(1, 3, &[], 12, 16).unwrap()).unwrap();
    let s = serde_json::to_string(&r).unwrap();
    assert!(s.contains("\"kind\":\"free\""));
    let back: ResolvedCohomology = serde_json::from_str(&s).unwrap();
    assert_eq!(back, r);
    let c = e2_homology(&ku2_spec(), 3).unwrap();
    let back: Chart = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(back, c);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn lazarev_rank(coeffs in proptest::collection::vec(0i64..5, 5)) {
        let (rank, lazarev) = lazarev_case(&coeffs);
        prop_assert_eq!(rank, lazarev.map(|d| d as u64));
    }
}
