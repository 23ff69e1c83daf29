use std::collections::BTreeSet;

use nichols_zn::braiding::{is_connected, Gdd};
use nichols_zn::classify::{classify, enumerate_rank2, enumerate_rank3, rank2_case, weyl_orbit_gdd, CaseLabel};
use nichols_zn::nichols::rank3_dimension;
use nichols_zn::realize::{oracle_realize, BilinearSystem, Budget};

fn canonical_rank2(n: u64, d1: u64, d2: u64, e: u64) -> Gdd {
    Gdd::rank2(n, d1 as i64, d2 as i64, e as i64).canonical()
}

#[test]
fn rank2_enumeration_is_exactly_the_finite_realizable_diagrams() {
    for n in 2..=12u64 {
        let rows = enumerate_rank2(n, Budget::default()).unwrap();
        let listed: BTreeSet<Gdd> = rows.iter().map(|r| r.gdd.clone()).collect();
        assert_eq!(listed.len(), rows.len(), "duplicate rows for n = {n}");
        let mut expected = BTreeSet::new();
        for d1 in 0..n {
            for d2 in 0..n {
                for e in 1..n {
                    let g = Gdd::rank2(n, d1 as i64, d2 as i64, e as i64);
                    let realizable = oracle_realize(&BilinearSystem::new(g.clone()), Budget::default()).unwrap().is_some();
                    if realizable && rank2_case(&g).unwrap().is_finite() {
                        expected.insert(canonical_rank2(n, d1, d2, e));
                    }
                }
            }
        }
        assert_eq!(listed, expected, "n = {n}");
        for r in &rows {
            assert!(r.witness.satisfies(&BilinearSystem::new(r.gdd.clone())));
            assert!(r.label.is_rank2_case());
        }
    }
}

#[test]
fn rank3_enumeration_rows_are_consistent() {
    for n in [4u64, 6, 8, 12] {
        for r in enumerate_rank3(n, Budget::default()).unwrap() {
            assert!(is_connected(&r.gdd));
            assert!(r.witness.satisfies(&BilinearSystem::new(r.gdd.clone())), "{n}: {:?}", r.gdd);
            assert!(r.label.is_rank3_class());
            assert_eq!(r.dimension, Some(rank3_dimension(r.label, r.m, r.m2).unwrap()));
            let v = classify(&r.gdd, Budget::default()).unwrap();
            assert_eq!(v.label, r.label);
        }
    }
}

#[test]
fn rank3_verdict_is_constant_on_orbits() {
    let chain = Gdd::new(12, &[6, 6, 6], &[((0, 1), 4), ((1, 2), 8)]).unwrap();
    let label = classify(&chain, Budget::default()).unwrap().label;
    assert_eq!(label, CaseLabel::Rank3I);
    let orbit = weyl_orbit_gdd(&chain, 512);
    assert!(!orbit.truncated);
    for g in &orbit.members {
        assert_eq!(classify(g, Budget::default()).unwrap().label, label, "{g:?}");
    }
}

#[test]
fn odd_prime_moduli_have_no_rank3_classes() {
    for p in [3u64, 5, 7, 11] {
        assert!(enumerate_rank3(p, Budget::default()).unwrap().is_empty(), "p = {p}");
    }
}
