use super::*;
use crate::pauli::CliffordGate;
use proptest::prelude::*;
use std::collections::HashSet;

fn sys(dims: &[u32]) -> Arc<QuditSystem> {
    QuditSystem::new(dims.to_vec()).unwrap()
}

fn op(s: &Arc<QuditSystem>, phase: i64, x: &[(usize, i64)], z: &[(usize, i64)]) -> PauliOperator {
    PauliOperator::from_exponents(s, phase, x, z).unwrap()
}

/// Brute-force closure of the generated group, phases included.
fn closure(g: &StabilizerGroup) -> HashSet<PauliOperator> {
    let mut seen: HashSet<PauliOperator> = HashSet::from([PauliOperator::identity(g.system())]);
    let mut frontier: Vec<PauliOperator> = seen.iter().cloned().collect();
    while let Some(p) = frontier.pop() {
        for h in g.generators() {
            let q = &p * h;
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen
}

#[test]
fn commuting_examples() {
    let q = sys(&[2]);
    let g = StabilizerGroup::candidate(&q, vec![op(&q, 0, &[(0, 1)], &[]), op(&q, 0, &[], &[(0, 1)])]).unwrap();
    assert_eq!(g.assert_commuting(), vec![(0, 1)]);
    assert!(g.group_order().is_err());
    assert!(StabilizerGroup::new(&q, g.generators().to_vec()).is_err());
}

#[test]
fn order_examples() {
    let q = sys(&[2]);
    let g = StabilizerGroup::new(&q, vec![op(&q, 0, &[], &[(0, 1)])]).unwrap();
    assert_eq!(g.group_order().unwrap(), BigInt::from(2));
    assert_eq!(g.logical_dimension().unwrap(), BigInt::from(1));
    let s4 = sys(&[4]);
    let g = StabilizerGroup::new(&s4, vec![op(&s4, 0, &[(0, 2)], &[]), op(&s4, 0, &[], &[(0, 2)])]).unwrap();
    assert_eq!(g.group_order().unwrap(), BigInt::from(4));
    assert_eq!(g.group_order_modular(), BigInt::from(4));
    assert_eq!(g.logical_dimension().unwrap(), BigInt::from(1));
}

#[test]
fn consistency_examples() {
    let s4 = sys(&[4]);
    let minus = StabilizerGroup::new(&s4, vec![PauliOperator::scalar(&s4, 4)]).unwrap();
    assert!(matches!(minus.scalar_consistency().unwrap(), Consistency::Inconsistent { .. }));
    assert!(matches!(minus.logical_dimension(), Err(StabilizerError::Inconsistent(_))));
    let iz2 = StabilizerGroup::new(&s4, vec![op(&s4, 2, &[], &[(0, 2)])]).unwrap();
    match iz2.scalar_consistency().unwrap() {
        Consistency::Inconsistent { phase, .. } => assert_eq!(phase, Rational01::new(1, 2)),
        c => panic!("expected inconsistency, got {c:?}"),
    }
    let ok = StabilizerGroup::new(&s4, vec![op(&s4, 0, &[], &[(0, 2)])]).unwrap();
    assert_eq!(ok.scalar_consistency().unwrap(), Consistency::Consistent);
}

#[test]
fn membership_examples() {
    let q = sys(&[2]);
    let g = StabilizerGroup::new(&q, vec![op(&q, 0, &[], &[(0, 1)])]).unwrap();
    let id = g.member_with_phase(&PauliOperator::identity(&q));
    assert!(id.is_member());
    assert!(id.coefficients.iter().all(|&c| c == 0));
    assert_eq!(g.member_with_phase(&op(&q, 0, &[(0, 1)], &[])).verdict, Verdict::NotMember);
    let minus_z = g.member_with_phase(&op(&q, 2, &[], &[(0, 1)]));
    assert_eq!(minus_z.verdict, Verdict::MemberUpToPhase);
    assert_eq!(minus_z.residual_phase, Rational01::new(1, 2));
}

#[test]
fn centralizer_and_measure_trivial_cases() {
    let s = sys(&[2, 2]);
    let g = StabilizerGroup::new(&s, vec![op(&s, 0, &[], &[(0, 1)]), op(&s, 0, &[], &[(1, 1)])]).unwrap();
    assert!(g.centralizer_in_group(&[]).unwrap().same_group(&g));
    assert!(g.measure(g.generators()).unwrap().same_group(&g));
    // Measuring X0 X1 keeps only Z0 Z1.
    let xx = op(&s, 0, &[(0, 1), (1, 1)], &[]);
    let c = g.centralizer_in_group(std::slice::from_ref(&xx)).unwrap();
    let zz = StabilizerGroup::new(&s, vec![op(&s, 0, &[], &[(0, 1), (1, 1)])]).unwrap();
    assert!(c.same_group(&zz));
    let m = g.measure(std::slice::from_ref(&xx)).unwrap();
    assert_eq!(m.logical_dimension().unwrap(), BigInt::from(1));
    let bad = [op(&s, 0, &[(0, 1)], &[]), op(&s, 0, &[], &[(0, 1)])];
    assert!(matches!(g.measure(&bad), Err(StabilizerError::NonCommuting(_))));
}

#[test]
fn json_round_trip() {
    let s = sys(&[4, 2]);
    let g = StabilizerGroup::new(&s, vec![op(&s, 0, &[(0, 2)], &[(1, 1)])]).unwrap();
    let j = serde_json::to_string(&g.to_json()).unwrap();
    assert_eq!(j, r#"{"dims":[4,2],"generators":[{"phase":0,"x":{"0":2},"z":{"1":1}}]}"#);
    let back = StabilizerGroup::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert!(back.same_group(&g));
}

fn mixed() -> Arc<QuditSystem> {
    sys(&[4, 4, 2, 2, 3])
}

/// Random commuting group: diagonal operators pushed through a random Clifford circuit.
fn arb_group() -> impl Strategy<Value = StabilizerGroup> {
    let gate = prop_oneof![
        (0usize..2).prop_map(|c| CliffordGate::QuditCx { control: c, target: 1 - c }),
        (2usize..4).prop_map(|c| CliffordGate::QubitCx { control: c, target: 5 - c }),
        (2usize..4).prop_map(|s| CliffordGate::QubitS { site: s }),
        Just(CliffordGate::QubitCz { a: 2, b: 3 }),
    ];
    (
        proptest::collection::vec(proptest::collection::vec(0i64..12, 5), 1..4),
        proptest::collection::vec(gate, 0..6),
        proptest::collection::vec(0i64..5, 5),
    )
        .prop_map(|(zs, circuit, xs)| {
            let s = mixed();
            let mut gens: Vec<PauliOperator> = zs
                .iter()
                .map(|z| {
                    let zz: Vec<(usize, i64)> = z.iter().enumerate().map(|(i, &e)| (i, e)).collect();
                    op(&s, 0, &[], &zz).conjugate(&circuit).unwrap()
                })
                .collect();
            // A Hadamard-free way to get X content: swap roles on the ternary site.
            let x3 = op(&s, 0, &[(4, xs[4])], &[]);
            if gens.iter().all(|g| g.commutes_with(&x3)) {
                gens.push(x3);
            }
            StabilizerGroup::new(&s, gens).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_matches_enumeration(g in arb_group()) {
        let all = closure(&g);
        let classes: HashSet<Vec<i64>> = all.iter().map(PauliOperator::symplectic).collect();
        prop_assert!(classes.len() <= 4096);
        let order = g.group_order().unwrap();
        prop_assert_eq!(order.clone(), BigInt::from(classes.len()));
        prop_assert_eq!(g.group_order_modular(), order);
        let consistent = all.iter().all(|p| !p.is_scalar() || p.phase() == 0);
        let verdict = g.scalar_consistency().unwrap();
        prop_assert_eq!(consistent, verdict == Consistency::Consistent);
        for h in g.generators() {
            prop_assert!(g.member_with_phase(h).is_member());
        }
    }

    #[test]
    fn membership_matches_enumeration(g in arb_group(), x in proptest::collection::vec(0i64..4, 5), z in proptest::collection::vec(0i64..4, 5), ph in 0i64..24) {
        let s = g.system().clone();
        let xs: Vec<(usize, i64)> = x.iter().enumerate().map(|(i, &e)| (i, e)).collect();
        let zs: Vec<(usize, i64)> = z.iter().enumerate().map(|(i, &e)| (i, e)).collect();
        let q = op(&s, ph, &xs, &zs);
        let all = closure(&g);
        let r = g.member_with_phase(&q);
        let exact = all.contains(&q);
        let up_to_phase = all.iter().any(|p| p.symplectic() == q.symplectic());
        match r.verdict {
            Verdict::Member => prop_assert!(exact),
            Verdict::MemberUpToPhase => prop_assert!(up_to_phase),
            Verdict::NotMember => prop_assert!(!up_to_phase),
        }
        if g.scalar_consistency().unwrap() == Consistency::Consistent {
            prop_assert_eq!(r.verdict == Verdict::Member, exact);
        }
    }

    #[test]
    fn centralizer_matches_enumeration(g in arb_group(), x in proptest::collection::vec(0i64..4, 5), z in proptest::collection::vec(0i64..4, 5)) {
        let s = g.system().clone();
        let xs: Vec<(usize, i64)> = x.iter().enumerate().map(|(i, &e)| (i, e)).collect();
        let zs: Vec<(usize, i64)> = z.iter().enumerate().map(|(i, &e)| (i, e)).collect();
        let probe = op(&s, 0, &xs, &zs);
        let c = g.centralizer_in_group(std::slice::from_ref(&probe)).unwrap();
        let expect: HashSet<PauliOperator> = closure(&g).into_iter().filter(|p| p.commutes_with(&probe)).collect();
        let got = closure(&c);
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn group_equality_is_symmetric(g in arb_group(), h in arb_group()) {
        prop_assert!(g.same_group(&g));
        prop_assert_eq!(g.same_group(&h), h.same_group(&g));
        let gh = closure(&g) == closure(&h);
        prop_assert_eq!(g.same_group(&h), gh);
    }
}
