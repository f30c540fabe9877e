use proptest::prelude::*;

use super::*;
use crate::anyon::tqd_theory;

fn r(n: i64, d: i64) -> Rational01 {
    Rational01::new(n, d)
}

fn ds() -> TqdParams {
    TqdParams::new(vec![2], vec![1], vec![]).unwrap()
}

fn six() -> TqdParams {
    TqdParams::with_pairs(vec![2, 2], vec![1, 1], &[(0, 1, 1)]).unwrap()
}

fn type_two() -> TqdParams {
    TqdParams::with_pairs(vec![2, 2], vec![0, 0], &[(0, 1, 1)]).unwrap()
}

fn matrix() -> Vec<TqdParams> {
    vec![
        ds(),
        six(),
        type_two(),
        TqdParams::new(vec![3], vec![1], vec![]).unwrap(),
        TqdParams::with_pairs(vec![2, 4], vec![1, 3], &[(0, 1, 1)]).unwrap(),
        TqdParams::with_pairs(vec![2, 2, 4], vec![1, 0, 2], &[(0, 1, 1), (1, 2, 1)]).unwrap(),
        TqdParams::new(vec![2, 3], vec![1, 2], vec![]).unwrap(),
    ]
}

fn k(rows: &[&[i64]]) -> KMatrix {
    KMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

#[test]
fn construction_examples() {
    assert_eq!(KMatrix::tqd(&ds()), k(&[&[0, 2], &[2, -2]]));
    assert_eq!(KMatrix::tqd(&TqdParams::new(vec![5], vec![0], vec![]).unwrap()), KMatrix::toric_code(5));
    assert_eq!(
        KMatrix::tqd(&six()),
        k(&[&[0, 0, 2, 0], &[0, 0, 0, 2], &[2, 0, -2, -1], &[0, 2, -1, -2]])
    );
    assert!(KMatrix::from_rows(&[vec![0, 1], vec![2, 0]]).is_err());
}

#[test]
fn inverse_examples() {
    let inv = KMatrix::toric_code(3).inverse().unwrap();
    let third = BigRational::new(1.into(), 3.into());
    assert_eq!(inv.get(0, 1), &third);
    assert!(inv.get(0, 0).is_zero());
    let id = k(&[&[1, 0], &[0, 1]]);
    assert_eq!(id.inverse().unwrap(), id.matrix().to_rational());
    assert_eq!(k(&[&[1, 1], &[1, 1]]).inverse(), Err(KMatrixError::Singular));
    // Block formula [[N^-1 S N^-1, N^-1], [N^-1, 0]].
    for p in matrix() {
        let inv = KMatrix::tqd(&p).inverse().unwrap();
        let m = p.layers();
        for i in 0..m {
            for j in 0..m {
                let ni = p.order(i) as i64;
                let nj = p.order(j) as i64;
                let s = if i == j { 2 * p.n(i) as i64 } else { p.nij(i, j) as i64 };
                assert_eq!(inv.get(i, j), &BigRational::new(s.into(), (ni * nj).into()));
                let d = if i == j { BigRational::new(1.into(), ni.into()) } else { BigRational::zero() };
                assert_eq!(inv.get(i, m + j), &d);
                assert_eq!(inv.get(m + i, j), &d);
                assert!(inv.get(m + i, m + j).is_zero());
            }
        }
    }
}

#[test]
fn group_examples() {
    assert_eq!(KMatrix::tqd(&ds()).anyon_group().unwrap().invariant_factors, vec![2, 2]);
    let z9 = KMatrix::tqd(&TqdParams::new(vec![3], vec![1], vec![]).unwrap());
    assert_eq!(z9.anyon_group().unwrap().invariant_factors, vec![9]);
    assert_eq!(KMatrix::toric_code(4).anyon_group().unwrap().invariant_factors, vec![4, 4]);
    for p in matrix() {
        let kk = KMatrix::tqd(&p);
        let g = kk.anyon_group().unwrap();
        assert_eq!(BigInt::from(g.representatives.len()), kk.determinant().abs());
    }
}

#[test]
fn statistics_examples() {
    let kds = KMatrix::tqd(&ds());
    assert_eq!(kds.q_of(&[1, 0]).unwrap(), r(1, 4));
    assert_eq!(kds.q_of(&[1, 1]).unwrap(), r(3, 4));
    assert_eq!(kds.q_of(&[0, 1]).unwrap(), Rational01::ZERO);
    let tc = KMatrix::toric_code(3);
    assert_eq!(tc.q_of(&[0, 1]).unwrap(), Rational01::ZERO);
    assert_eq!(tc.b_of(&[0, 1], &[1, 0]).unwrap(), r(1, 3));
    let k2 = KMatrix::tqd(&type_two());
    assert_eq!(k2.b_of(&[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap(), r(1, 4));
    // phi_1^2 ~ c_2 and phi_2^2 ~ c_1 under column shifts.
    let z9 = KMatrix::tqd(&TqdParams::new(vec![3], vec![1], vec![]).unwrap());
    assert_eq!(z9.q_of(&[1, 0]).unwrap(), r(1, 9));
}

#[test]
fn column_shift_invariance() {
    for p in matrix() {
        let kk = KMatrix::tqd(&p);
        let g = kk.anyon_group().unwrap();
        if g.representatives.len() > 256 {
            continue;
        }
        let cols: Vec<Vec<i64>> = (0..kk.dim()).map(|c| (0..kk.dim()).map(|r| kk.matrix().get_i64(r, c)).collect()).collect();
        for l in &g.representatives {
            for c in &cols {
                let shifted: Vec<i64> = l.iter().zip(c).map(|(a, b)| a + b).collect();
                assert_eq!(kk.q_of(l).unwrap(), kk.q_of(&shifted).unwrap());
                for l2 in g.representatives.iter().take(8) {
                    assert_eq!(kk.b_of(l, l2).unwrap(), kk.b_of(&shifted, l2).unwrap());
                }
            }
        }
    }
}

#[test]
fn explicit_basis_change() {
    let w = IntMatrix::from_rows(&[[1, 0, 0, 0], [0, 1, 0, 0], [0, 2, 0, -1], [2, 0, 1, 0]]).unwrap();
    let kk = KMatrix::tqd(&type_two());
    let out = kk.transform(&w.transpose()).unwrap();
    assert_eq!(out, k(&[&[0, 4, 0, 0], &[4, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]));
    assert_eq!(kk.transform(&IntMatrix::identity(4)).unwrap(), kk);
    assert_eq!(kk.transform(&IntMatrix::diagonal(&[2, 1, 1, 1])), Err(KMatrixError::NotUnimodular));
    assert!(kk.theory().unwrap().isomorphism(&AnyonTheory::toric_code(4)).is_some());
}

#[test]
fn census_examples() {
    let c = KMatrix::tqd(&six()).census().unwrap();
    assert_eq!((c.counts[&r(1, 4)], c.counts[&r(3, 4)], c.counts[&Rational01::ZERO]), (6, 6, 4));
    assert_eq!(c.signature, 0);
    let c = KMatrix::tqd(&ds()).census().unwrap();
    assert_eq!((c.counts[&Rational01::ZERO], c.counts[&r(1, 4)], c.counts[&r(3, 4)]), (2, 1, 1));
    let c = KMatrix::toric_code(2).census().unwrap();
    assert_eq!((c.counts[&Rational01::ZERO], c.counts[&r(1, 2)]), (3, 1));
    for p in matrix() {
        assert_eq!(KMatrix::tqd(&p).signature().unwrap(), 0);
    }
}

#[test]
fn k_theory_matches_tqd_theory() {
    for p in matrix() {
        let a = KMatrix::tqd(&p).theory().unwrap();
        assert!(a.validate().is_empty());
        assert!(a.isomorphism(&tqd_theory(&p).unwrap()).is_some(), "{p:?}");
    }
}

#[test]
fn condensation_identities() {
    for p in matrix() {
        let c = condensation_matrices(&p).unwrap();
        assert!(c.all_hold(), "{p:?}: {c:?}");
    }
}

#[test]
fn f2r_family() {
    let three_fermion = f2r_theory(1);
    let census = three_fermion.spin_census();
    assert_eq!((census[&Rational01::ZERO], census[&r(1, 2)]), (1, 3));
    let six_semion = f2r_theory(2);
    assert_eq!(six_semion.spin_census(), KMatrix::tqd(&six()).census().unwrap().counts);
    assert!(six_semion.isomorphism(&tqd_theory(&six()).unwrap()).is_some());
}

fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..8).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, c) in ops {
            if i == j {
                continue;
            }
            let e = {
                let mut e = IntMatrix::identity(n);
                e.set(i, j, c.into());
                e
            };
            m = e.checked_mul(&m).unwrap();
        }
        m
    })
}

fn params() -> impl Strategy<Value = TqdParams> {
    let orders = prop::sample::select(vec![vec![2], vec![3], vec![4], vec![2, 2], vec![2, 4], vec![3, 3], vec![2, 2, 2], vec![2, 3]]);
    (orders, prop::collection::vec(0i64..4, 3), prop::collection::vec(0i64..4, 3)).prop_map(|(o, n, pairs)| {
        let m = o.len();
        let n: Vec<i64> = (0..m).map(|i| n[i] % o[i] as i64).collect();
        let mut pr = Vec::new();
        let mut k = 0;
        for i in 0..m {
            for j in i + 1..m {
                let g = num_integer::gcd(o[i], o[j]) as i64;
                pr.push((i, j, pairs[k] % g));
                k += 1;
            }
        }
        TqdParams::with_pairs(o, n, &pr).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transforms_preserve_theory(p in params(), w in unimodular(4)) {
        let kk = KMatrix::tqd(&p);
        prop_assume!(kk.dim() == 4);
        let t = kk.transform(&w).unwrap();
        prop_assert_eq!(t.anyon_group().unwrap().invariant_factors, kk.anyon_group().unwrap().invariant_factors);
        prop_assert_eq!(t.census().unwrap().counts, kk.census().unwrap().counts);
    }

    #[test]
    fn random_condensation_identities(p in params()) {
        prop_assert!(condensation_matrices(&p).unwrap().all_hold());
        prop_assert!(KMatrix::tqd(&p).theory().unwrap().isomorphism(&tqd_theory(&p).unwrap()).is_some());
    }
}
