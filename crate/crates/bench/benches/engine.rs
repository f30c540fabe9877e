use criterion::{black_box, criterion_group, criterion_main, Criterion};
use tqd_core::exactmath::{smith_normal_form, IntMatrix};
use tqd_core::extraction::extraction_report;
use tqd_core::kmatrix::KMatrix;
use tqd_core::lattice::{LatticeModel, TqdParams};

fn snf(c: &mut Criterion) {
    let p = TqdParams::with_pairs(vec![2, 4, 4], vec![1, 3, 2], &[(0, 1, 1), (1, 2, 3)]).unwrap();
    let k: IntMatrix = KMatrix::tqd(&p).matrix().clone();
    c.bench_function("snf/tqd_k_6x6", |b| b.iter(|| smith_normal_form(black_box(&k))));
}

fn group_order(c: &mut Criterion) {
    for l in [3, 4, 6] {
        let ds = LatticeModel::ds(l, l).unwrap();
        c.bench_function(&format!("group_order/ds_{l}x{l}"), |b| {
            b.iter(|| black_box(ds.group()).group_order().unwrap())
        });
    }
}

fn extraction(c: &mut Criterion) {
    let ds = LatticeModel::ds(3, 3).unwrap();
    c.bench_function("extraction/ds_3x3", |b| b.iter(|| extraction_report(black_box(&ds)).unwrap()));
}

criterion_group!(benches, snf, group_order, extraction);
criterion_main!(benches);
