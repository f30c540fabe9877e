use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use super::*;
use crate::params::TqdParams;

fn r(n: i64, d: i64) -> Rational01 {
    Rational01::new(n, d)
}

fn ds_params() -> TqdParams {
    TqdParams::new(vec![2], vec![1], vec![]).unwrap()
}

fn six_semion() -> TqdParams {
    TqdParams::with_pairs(vec![2, 2], vec![1, 1], &[(0, 1, 1)]).unwrap()
}

/// Parameter matrix used by the cross-check tests.
fn matrix() -> Vec<TqdParams> {
    vec![
        ds_params(),
        TqdParams::new(vec![2], vec![0], vec![]).unwrap(),
        TqdParams::new(vec![3], vec![1], vec![]).unwrap(),
        TqdParams::new(vec![4], vec![1], vec![]).unwrap(),
        six_semion(),
        TqdParams::with_pairs(vec![2, 2], vec![0, 0], &[(0, 1, 1)]).unwrap(),
        TqdParams::with_pairs(vec![2, 4], vec![1, 3], &[(0, 1, 1)]).unwrap(),
        TqdParams::new(vec![2, 3], vec![1, 2], vec![]).unwrap(),
    ]
}

#[test]
fn validation_examples() {
    assert!(AnyonTheory::double_semion().validate().is_empty());
    assert!(AnyonTheory::trivial().validate().is_empty());
    let bad = AnyonTheory::cyclic(2, r(1, 3));
    assert!(!bad.validate().is_empty());
    for p in matrix() {
        assert!(tqd_theory(&p).unwrap().validate().is_empty(), "{p:?}");
    }
}

#[test]
fn braiding_and_modularity() {
    let ds = AnyonTheory::double_semion();
    assert_eq!(ds.braiding(&[1, 0], &[0, 1]).unwrap(), Rational01::ZERO);
    assert_eq!(ds.braiding(&[1, 0], &[1, 0]).unwrap(), r(1, 2));
    assert_eq!(ds.braiding(&[1, 1], &[0, 0]).unwrap(), Rational01::ZERO);
    let tc4 = AnyonTheory::toric_code(4);
    assert!(tc4.braiding(&[1, 1], &[2, 2]).unwrap().is_zero());
    assert!(tc4.braiding(&[1, 3], &[2, 2]).unwrap().is_zero());
    assert!(ds.is_modular());
    assert!(!AnyonTheory::cyclic(2, Rational01::ZERO).is_modular());
    assert!(tqd_theory(&six_semion()).unwrap().is_modular());
}

#[test]
fn lagrangian_examples() {
    let ds = AnyonTheory::double_semion();
    assert_eq!(ds.lagrangian_subgroups(), vec![vec![vec![0, 0], vec![1, 1]]]);
    let tc2 = AnyonTheory::toric_code(2);
    let l = tc2.lagrangian_subgroups();
    assert_eq!(l, vec![vec![vec![0, 0], vec![0, 1]], vec![vec![0, 0], vec![1, 0]]]);
    assert!(AnyonTheory::semion().lagrangian_subgroups().is_empty());
    // Z4 toric code: <e>, <m>, <e^2, m^2>.
    let l4 = AnyonTheory::toric_code(4).lagrangian_subgroups();
    assert_eq!(l4.len(), 3);
    assert!(l4.iter().all(|s| s.len() * s.len() == 16));
}

#[test]
fn condensation_examples() {
    let tc4 = AnyonTheory::toric_code(4);
    let c = tc4.condense(&[vec![2, 2]]).unwrap();
    assert!(c.theory().isomorphism(&AnyonTheory::double_semion()).is_some());
    let em = c.class_of(&[1, 1]).unwrap().unwrap();
    let em3 = c.class_of(&[1, 3]).unwrap().unwrap();
    let e2 = c.class_of(&[2, 0]).unwrap().unwrap();
    assert_eq!(c.theory().q(&em).unwrap(), r(1, 4));
    assert_eq!(c.theory().q(&em3).unwrap(), r(3, 4));
    assert_eq!(c.theory().add(&em, &em3), e2);
    assert_eq!(c.class_of(&[1, 0]).unwrap(), None);
    // Nothing condensed.
    let same = tc4.condense(&[]).unwrap();
    assert!(same.theory().isomorphism(&tc4).is_some());
    // Lagrangian condensation leaves nothing.
    let ds = AnyonTheory::double_semion();
    assert_eq!(ds.condense(&[vec![1, 1]]).unwrap().theory().size(), 1);
    assert!(matches!(ds.condense(&[vec![1, 0]]), Err(AnyonError::NotBoson { .. })));
    assert!(matches!(tc4.condense(&[vec![1, 0], vec![0, 1]]), Err(AnyonError::NotBoson { .. }) | Err(AnyonError::NotTransparent { .. })));
}

#[test]
fn stacking_examples() {
    let ds = AnyonTheory::double_semion();
    assert!(ds.stack(&AnyonTheory::trivial()).isomorphism(&ds).is_some());
    let tc2 = AnyonTheory::toric_code(2);
    let two = tc2.stack(&tc2);
    assert_eq!(two.size(), 16);
    assert_eq!(two.spin_census()[&Rational01::ZERO], 10);
}

#[test]
fn tqd_theory_examples() {
    assert!(tqd_theory(&ds_params()).unwrap().isomorphism(&AnyonTheory::double_semion()).is_some());
    let tc = tqd_theory(&TqdParams::new(vec![2], vec![0], vec![]).unwrap()).unwrap();
    assert!(tc.isomorphism(&AnyonTheory::toric_code(2)).is_some());
    assert!(tc.isomorphism(&AnyonTheory::double_semion()).is_none());
    let z9 = tqd_theory(&TqdParams::new(vec![3], vec![1], vec![]).unwrap()).unwrap();
    assert_eq!(z9.orders(), &[9]);
    let pres = tqd_presentation(&TqdParams::new(vec![3], vec![1], vec![]).unwrap()).unwrap();
    let phi = pres.coordinates(&[0, 1]);
    assert_eq!(pres.theory().q(&phi).unwrap(), r(1, 9));
    let z4 = tqd_theory(&TqdParams::with_pairs(vec![2, 2], vec![0, 0], &[(0, 1, 1)]).unwrap()).unwrap();
    assert!(z4.isomorphism(&AnyonTheory::toric_code(4)).is_some());
    let census = tqd_theory(&six_semion()).unwrap().spin_census();
    assert_eq!(census[&r(1, 4)], 6);
    assert_eq!(census[&r(3, 4)], 6);
    assert_eq!(census[&Rational01::ZERO], 4);
}

#[test]
fn fusion_group_examples() {
    assert_eq!(fusion_group(&ds_params()), vec![2, 2]);
    let p = TqdParams::with_pairs(vec![2, 2], vec![0, 0], &[(0, 1, 1)]).unwrap();
    assert_eq!(fusion_group(&p), vec![4, 4]);
    let zero = TqdParams::new(vec![2, 3], vec![0, 0], vec![]).unwrap();
    assert_eq!(fusion_group(&zero), vec![6, 6]);
    for p in matrix() {
        let snf = fusion_group(&p);
        assert_eq!(snf, fusion_group_from_cocycle(&p), "{p:?}");
        let mut orders = tqd_theory(&p).unwrap().orders().to_vec();
        orders.sort_unstable();
        assert_eq!(snf, orders);
    }
}

#[test]
fn cocycle_examples_and_condition() {
    assert_eq!(cocycle_value(&ds_params(), &[1], &[1], &[1]).unwrap(), r(1, 2));
    assert_eq!(cocycle_value(&ds_params(), &[0], &[1], &[1]).unwrap(), Rational01::ZERO);
    let p = TqdParams::with_pairs(vec![2, 2], vec![0, 0], &[(0, 1, 1)]).unwrap();
    assert_eq!(cocycle_value(&p, &[1, 0], &[0, 1], &[0, 1]).unwrap(), r(1, 2));
    assert!(cocycle_value(&p, &[2, 0], &[0, 1], &[0, 1]).is_err());
    for p in matrix().into_iter().filter(|p| p.group_size() <= 16) {
        let elems: Vec<Vec<i64>> = AnyonTheory::new(
            p.orders().iter().map(|&n| n as u64).collect(),
            vec![Rational01::ZERO; p.layers()],
            vec![vec![Rational01::ZERO; p.layers()]; p.layers()],
        )
        .unwrap()
        .elements();
        let add = |a: &[i64], b: &[i64]| -> Vec<i64> {
            a.iter().zip(b).enumerate().map(|(i, (x, y))| (x + y) % p.order(i) as i64).collect()
        };
        let w = |a: &[i64], b: &[i64], c: &[i64]| cocycle_value(&p, a, b, c).unwrap();
        for g in &elems {
            for h in &elems {
                for k in &elems {
                    for l in &elems {
                        let lhs = w(h, k, l) + w(g, &add(h, k), l) + w(g, h, k);
                        let rhs = w(&add(g, h), k, l) + w(g, h, &add(k, l));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

/// Oracle: condensed theory by explicit coset enumeration.
fn coset_census(t: &AnyonTheory, bosons: &[Element]) -> BTreeMap<Rational01, usize> {
    let deconf: Vec<Element> = t
        .elements()
        .into_iter()
        .filter(|a| bosons.iter().all(|b| t.braiding(a, b).unwrap().is_zero()))
        .collect();
    let mut span: BTreeSet<Element> = [t.identity()].into_iter().collect();
    for b in bosons {
        let ord = t.element_order(b) as i64;
        span = span.iter().flat_map(|s| (0..ord).map(move |k| (s.clone(), k))).map(|(s, k)| t.add(&s, &t.scale(b, k))).collect();
    }
    let mut seen = BTreeSet::new();
    let mut census = BTreeMap::new();
    for a in deconf {
        if seen.contains(&a) {
            continue;
        }
        for s in &span {
            seen.insert(t.add(&a, s));
        }
        *census.entry(t.q(&a).unwrap()).or_insert(0) += 1;
    }
    census
}

#[test]
fn stack_condensation_matches_tqd_theory() {
    for p in matrix() {
        let sc = stack_condense_to_tqd(&p).unwrap();
        assert!(sc.isomorphic(), "{p:?}");
        let bosons = sc.condensation.bosons().to_vec();
        if sc.parent.size() <= 4096 {
            assert_eq!(coset_census(&sc.parent, &bosons), sc.condensation.theory().spin_census());
        }
        // theta([a]) = theta(a) on representatives.
        for (i, f) in sc.flux_classes.iter().enumerate() {
            let expect = r(p.n(i) as i64, (p.order(i) * p.order(i)) as i64);
            assert_eq!(sc.condensation.theory().q(f).unwrap(), expect);
        }
        assert_eq!(sc.condensation.theory().size(), p.group_size() * p.group_size());
    }
    let ds = stack_condense_to_tqd(&ds_params()).unwrap();
    let t = ds.condensation.theory();
    assert_eq!(t.scale(&ds.flux_classes[0], 2), t.identity());
}

#[test]
fn stack_of_semions_is_double_semion() {
    let s = AnyonTheory::semion().stack(&AnyonTheory::anti_semion());
    assert!(s.isomorphism(&tqd_theory(&ds_params()).unwrap()).is_some());
    let t = AnyonTheory::double_semion();
    assert_eq!(t.isomorphism(&t), Some(vec![vec![1, 0], vec![0, 1]]));
}

proptest! {
    #[test]
    fn lagrangian_squares_to_total(n in 2u64..5, twist in 0i64..4) {
        let t = AnyonTheory::toric_code(n).stack(&AnyonTheory::cyclic(2, r(twist, 4)).stack(&AnyonTheory::cyclic(2, r(-twist, 4))));
        for l in t.lagrangian_subgroups() {
            prop_assert_eq!((l.len() * l.len()) as u64, t.size());
        }
    }

    #[test]
    fn condensing_preserves_spins(n in 2u64..7) {
        let t = AnyonTheory::toric_code(n * n);
        let c = t.condense(&[vec![0, n as i64]]).unwrap();
        prop_assert!(c.theory().isomorphism(&AnyonTheory::toric_code(n)).is_some());
        for a in t.elements() {
            if let Some(cls) = c.class_of(&a).unwrap() {
                prop_assert_eq!(c.theory().q(&cls).unwrap(), t.q(&a).unwrap());
            }
        }
    }
}
