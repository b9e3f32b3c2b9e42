use criterion::{black_box, criterion_group, criterion_main, Criterion};

use bfv_core::bfv::{build_charge_deg1, cocycle_lift, extend_charge, master_residual};
use bfv_core::document::preset;
use bfv_core::homotopy::{h0_probe, BracketTower};

fn charges(c: &mut Criterion) {
    let so3 = preset("so3-classical").unwrap();
    c.bench_function("so3 charge + master residual", |b| {
        b.iter(|| master_residual(&build_charge_deg1(black_box(&so3)).unwrap()))
    });
    let aff1 = preset("aff1-bialgebra").unwrap();
    let q = build_charge_deg1(&aff1).unwrap();
    let pi = cocycle_lift(&aff1, &q, 2).unwrap();
    c.bench_function("aff1 extension kmax 2, ansatz 4", |b| {
        b.iter(|| extend_charge(&aff1, &q, black_box(&pi), 2, 4).unwrap())
    });
}

fn probes(c: &mut Criterion) {
    let so3 = preset("so3-classical").unwrap();
    let q = build_charge_deg1(&so3).unwrap();
    let pi = cocycle_lift(&so3, &q, 2).unwrap();
    let tower = BracketTower::new(extend_charge(&so3, &q, &pi, 2, 2).unwrap());
    let mut group = c.benchmark_group("probe");
    group.sample_size(10);
    group.bench_function("so3 h0 degree 2", |b| b.iter(|| h0_probe(black_box(&tower), 2).unwrap()));
    group.finish();
}

criterion_group!(benches, charges, probes);
criterion_main!(benches);
