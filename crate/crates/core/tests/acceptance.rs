//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tqd_core::anyon::{
    fusion_group, fusion_group_from_cocycle, stack_condense_to_tqd, theories_isomorphic, tqd_theory, AnyonTheory,
};
use tqd_core::circuitmap::{
    appendix_check, dense_ground_space, table1_identity, uab_report, ucx_report, BranchedTriangularLattice,
};
use tqd_core::exactmath::{IntMatrix, Rational01};
use tqd_core::extraction::{
    crossing_braiding, default_junction, extract_theory, spt_cocycle, t_junction_theta, JunctionSpec,
};
use tqd_core::kmatrix::{condensation_matrices, KMatrix};
use tqd_core::lattice::{Dir, LatticeModel, TcLabel, TqdParams};
use tqd_core::pauli::{PauliOperator, QuditSystem};
use tqd_core::stabilizer::{Consistency, StabilizerGroup};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn r(n: i64, d: i64) -> Rational01 {
    Rational01::new(n, d)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn params(orders: &[u32], n: &[i64], n12: Option<i64>) -> TqdParams {
    let pairs: Vec<_> = n12.map(|v| (0, 1, v)).into_iter().collect();
    TqdParams::with_pairs(orders.to_vec(), n.to_vec(), &pairs).expect("valid parameters")
}

fn group_checks(name: &str, g: &StabilizerGroup, dim: u64) -> Outcome {
    let bad = g.assert_commuting();
    ensure(bad.is_empty(), || format!("{name}: noncommuting pairs {bad:?}"))?;
    let d = g.logical_dimension().map_err(err)?;
    ensure(d == BigInt::from(dim), || format!("{name}: logical dimension {d}, expected {dim}"))?;
    let c = g.scalar_consistency().map_err(err)?;
    ensure(c == Consistency::Consistent, || format!("{name}: {c:?}"))
}

fn double_semion_model() -> Outcome {
    for l in [3, 4] {
        let ds = LatticeModel::ds(l, l).map_err(err)?;
        group_checks(&format!("DS {l}x{l}"), ds.group(), 4)?;
    }
    Ok(())
}

fn condensation_by_measurement() -> Outcome {
    let tc = LatticeModel::zn_tc(4, 3, 3).map_err(err)?;
    let ds = LatticeModel::ds(3, 3).map_err(err)?;
    let measured = tc.group().measure(&ds.condensing_strings()).map_err(err)?;
    for (a, b, what) in [(&measured, ds.group(), "S_DS in measured"), (ds.group(), &measured, "measured in S_DS")] {
        for (i, g) in b.generators().iter().enumerate() {
            let m = a.member_with_phase(g);
            ensure(m.is_member(), || format!("{what}: generator {i} gives {:?}", m.verdict))?;
        }
    }
    ensure(measured.same_group(ds.group()), || "groups differ".into())
}

fn anyon_statistics() -> Outcome {
    let ds = LatticeModel::ds(3, 3).map_err(err)?;
    let ds5 = LatticeModel::ds(5, 5).map_err(err)?;
    let label = |m: &LatticeModel, n: &str| m.named_label(n).map_err(err);
    let mut placements = 0;
    for (model, junctions) in [
        (&ds, (0..4).map(|rot| default_junction(&ds, rot)).collect::<Result<Vec<_>, _>>().map_err(err)?),
        (
            &ds5,
            vec![
                JunctionSpec::straight((2, 2), Dir::E, 2),
                JunctionSpec::straight((0, 3), Dir::N, 2),
                JunctionSpec::straight((4, 1), Dir::S, 1),
            ],
        ),
    ] {
        for j in &junctions {
            for (name, want) in [("s", r(1, 4)), ("sbar", r(3, 4)), ("ssbar", Rational01::ZERO)] {
                let got = t_junction_theta(model, &label(model, name)?, j).map_err(err)?;
                ensure(got == want, || format!("theta({name}) = {got} at {j:?}"))?;
            }
            placements += 1;
        }
    }
    ensure(placements >= 3, || "too few junction placements".into())?;
    let (s, sb) = (label(&ds, "s")?, label(&ds, "sbar")?);
    let bss = crossing_braiding(&ds, &s, &s).map_err(err)?;
    let bssb = crossing_braiding(&ds, &s, &sb).map_err(err)?;
    ensure(bss == r(1, 2), || format!("B(s,s) = {bss}"))?;
    ensure(bssb.is_zero(), || format!("B(s,sbar) = {bssb}"))
}

fn z4_toric_code_statistics() -> Outcome {
    let tc = LatticeModel::zn_tc(4, 3, 3).map_err(err)?;
    let j = default_junction(&tc, 0).map_err(err)?;
    for p in 0..4 {
        for q in 0..4 {
            let got = t_junction_theta(&tc, &TcLabel::em(p, q), &j).map_err(err)?;
            ensure(got == r(p * q, 4), || format!("theta(e^{p} m^{q}) = {got}"))?;
        }
    }
    Ok(())
}

fn tqd_matrix() -> Outcome {
    let cases = [
        params(&[2], &[1], None),
        params(&[2], &[0], None),
        params(&[3], &[1], None),
        params(&[2, 2], &[0, 0], Some(1)),
        params(&[2, 2], &[1, 1], Some(1)),
    ];
    for p in &cases {
        let model = LatticeModel::tqd(p, 3, 3).map_err(err)?;
        let dim: u64 = p.orders().iter().map(|&n| (n as u64).pow(2)).product();
        group_checks(&format!("{p:?}"), model.group(), dim)?;
        let theories: [(&str, AnyonTheory); 4] = [
            ("lattice", extract_theory(&model, &model.generating_labels()).map_err(err)?.theory),
            ("abstract", tqd_theory(p).map_err(err)?),
            ("stack", stack_condense_to_tqd(p).map_err(err)?.condensation.theory().clone()),
            ("K", KMatrix::tqd(p).theory().map_err(err)?),
        ];
        for (i, (a, ta)) in theories.iter().enumerate() {
            for (b, tb) in &theories[i + 1..] {
                ensure(theories_isomorphic(ta, tb).is_some(), || format!("{p:?}: {a} vs {b}"))?;
            }
        }
    }
    Ok(())
}

fn six_semion_census() -> Outcome {
    let p = params(&[2, 2], &[1, 1], Some(1));
    let want = [(Rational01::ZERO, 4), (r(1, 4), 6), (r(3, 4), 6)];
    let k = KMatrix::tqd(&p).census().map_err(err)?.counts;
    let model = LatticeModel::tqd(&p, 3, 3).map_err(err)?;
    let lattice = extract_theory(&model, &model.generating_labels()).map_err(err)?.theory.spin_census();
    for (route, counts) in [("K-matrix", k), ("lattice", lattice)] {
        let got: Vec<_> = counts.into_iter().collect();
        ensure(got == want, || format!("{route} census {got:?}"))?;
    }
    Ok(())
}

fn random_params(rng: &mut ChaCha8Rng) -> TqdParams {
    const ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];
    let m = rng.gen_range(1..=3);
    let mut orders: Vec<u32> = (0..m).map(|_| ORDERS[rng.gen_range(0..ORDERS.len())]).collect();
    orders.sort_unstable();
    let n: Vec<i64> = orders.iter().map(|&o| rng.gen_range(0..o as i64)).collect();
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            pairs.push((i, j, rng.gen_range(0..orders[i].gcd(&orders[j]) as i64)));
        }
    }
    TqdParams::with_pairs(orders, n, &pairs).expect("valid by construction")
}

fn inverse_block_formula(p: &TqdParams) -> Outcome {
    let inv = KMatrix::tqd(p).inverse().map_err(err)?;
    let m = p.layers();
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    for i in 0..m {
        for j in 0..m {
            let (ni, nj) = (p.order(i) as i64, p.order(j) as i64);
            let s = if i == j { 2 * p.n(i) as i64 } else { p.nij(i, j) as i64 };
            let d = if i == j { q(1, ni) } else { BigRational::zero() };
            let ok = inv.get(i, j) == &q(s, ni * nj)
                && inv.get(i, m + j) == &d
                && inv.get(m + i, j) == &d
                && inv.get(m + i, m + j).is_zero();
            ensure(ok, || format!("{p:?}: inverse block ({i}, {j})"))?;
        }
    }
    Ok(())
}

fn kmatrix_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let fixed = [params(&[2, 2], &[0, 0], Some(1)), params(&[2, 2], &[1, 1], Some(1)), params(&[2], &[1], None)];
    let fuzzed: Vec<TqdParams> = (0..50).map(|_| random_params(&mut rng)).collect();
    for p in fixed.iter().chain(&fuzzed) {
        inverse_block_formula(p)?;
        let c = condensation_matrices(p).map_err(err)?;
        ensure(c.all_hold(), || format!("{p:?}: {c:?}"))?;
    }
    let w = IntMatrix::from_rows(&[[1, 0, 0, 0], [0, 1, 0, 0], [0, 2, 0, -1], [2, 0, 1, 0]]).map_err(err)?;
    let out = KMatrix::tqd(&fixed[0]).transform(&w.transpose()).map_err(err)?;
    let want = KMatrix::from_rows(&[vec![0, 4, 0, 0], vec![4, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]])
        .map_err(err)?;
    ensure(out == want, || format!("basis change gives {:?}", out.matrix()))
}

fn fusion_groups() -> Outcome {
    let expected: [(TqdParams, Vec<u64>); 8] = [
        (params(&[2], &[1], None), vec![2, 2]),
        (params(&[3], &[1], None), vec![9]),
        (params(&[2, 2], &[0, 0], Some(1)), vec![4, 4]),
        (params(&[2], &[0], None), vec![2, 2]),
        (params(&[3], &[0], None), vec![3, 3]),
        (params(&[2, 2], &[0, 0], None), vec![2, 2, 2, 2]),
        (params(&[2, 4], &[0, 0], None), vec![2, 2, 4, 4]),
        (params(&[2, 3], &[0, 0], None), vec![6, 6]),
    ];
    for (p, want) in &expected {
        let got = fusion_group(p);
        ensure(&got == want, || format!("{p:?}: {got:?}, expected {want:?}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let extra = (0..40).map(|_| random_params(&mut rng));
    let mut compared = 0;
    for p in expected.into_iter().map(|(p, _)| p).chain(extra) {
        let snf = fusion_group(&p);
        if snf.iter().product::<u64>() > 256 {
            continue;
        }
        let table = fusion_group_from_cocycle(&p);
        ensure(snf == table, || format!("{p:?}: SNF {snf:?} vs cocycle {table:?}"))?;
        compared += 1;
    }
    ensure(compared >= 8, || format!("only {compared} groups compared"))
}

fn spt_phase() -> Outcome {
    for l in [3, 4] {
        let spt = LatticeModel::spt(l, l).map_err(err)?;
        let d = spt.group().logical_dimension().map_err(err)?;
        ensure(d == BigInt::from(1), || format!("SPT {l}x{l}: dimension {d}"))?;
        let sym = spt.vertex_symmetry().ok_or("no vertex symmetry")?;
        let bad = spt.group().generators().iter().position(|g| !g.commutes_with(&sym));
        ensure(bad.is_none(), || format!("SPT {l}x{l}: symmetry fails to commute with generator {bad:?}"))?;
    }
    let table = spt_cocycle(&LatticeModel::spt(9, 6).map_err(err)?, 4).map_err(err)?;
    for g in 0..2 {
        for h in 0..2 {
            for k in 0..2 {
                let want = if g + h + k == 3 { r(1, 2) } else { Rational01::ZERO };
                let got = table.get(g, h, k);
                ensure(got == want, || format!("omega({g},{h},{k}) = {got}"))?;
            }
        }
    }
    let v = table.coboundary_violations();
    ensure(v == 0, || format!("{v} coboundary violations"))
}

fn string_net_circuits() -> Outcome {
    let lat = BranchedTriangularLattice::new(3, 3).map_err(err)?;
    let bad = lat.psi_identity_failures().map_err(err)?;
    ensure(bad.is_empty(), || format!("{} configurations violate the loop identity", bad.len()))?;
    ensure(table1_identity().passed(), || "CZ/S table rows differ".into())?;
    let ucx = ucx_report(3, 3).map_err(err)?;
    ensure(ucx.passed(), || format!("{ucx:?}"))?;
    let uab = uab_report(3, 3).map_err(err)?;
    ensure(uab.passed(), || format!("{uab:?}"))?;
    let summary = appendix_check(3).map_err(err)?;
    ensure(summary.passed(), || format!("{summary:?}"))
}

fn dense_oracle() -> Outcome {
    let q = QuditSystem::uniform(1, 4).map_err(err)?;
    let single = StabilizerGroup::new(
        &q,
        vec![PauliOperator::x(&q, 0, 2).map_err(err)?, PauliOperator::z(&q, 0, 2).map_err(err)?],
    )
    .map_err(err)?;
    let ds = LatticeModel::ds(2, 2).map_err(err)?;
    let tc = LatticeModel::zn_tc(2, 2, 2).map_err(err)?;
    for (name, g) in [("DS 2x2", ds.group()), ("Z2 TC 2x2", tc.group()), ("<X^2, Z^2>", &single)] {
        let dense = dense_ground_space(g, 11).map_err(err)?.dimension;
        let exact = g.logical_dimension().map_err(err)?;
        ensure(BigInt::from(dense) == exact, || format!("{name}: dense {dense}, exact {exact}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("double semion model: commuting, dimension 4, scalar consistency", double_semion_model),
        ("condensation by measurement reproduces the DS group", condensation_by_measurement),
        ("double semion spins and braiding across junction placements", anyon_statistics),
        ("Z4 toric code spins for all 16 anyons", z4_toric_code_statistics),
        ("TQD parameter matrix: four-way theory agreement", tqd_matrix),
        ("six-semion census from K-matrix and lattice", six_semion_census),
        ("K-matrix identities with fuzzed parameters", kmatrix_identities),
        ("fusion groups by SNF and cocycle routes", fusion_groups),
        ("SPT dimension, symmetry and boundary cocycle", spt_phase),
        ("string-net circuit identities", string_net_circuits),
        ("dense ground-space oracle", dense_oracle),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failures += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
