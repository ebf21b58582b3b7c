use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hexfa::langtools::{
    accepted_set, exact_equivalent_for_size, random_pool, RandomSpec, SizeBound,
};
use hexfa::transforms::{hbfa_to_hrfa, mirror_line_order};
use hexfa::{apply_op, AutomatonKind, DirectionMode, HexPicture, HexSize, Symbol, SymmetryOp};

fn ab() -> Vec<Symbol> {
    vec![Symbol::new("a").unwrap(), Symbol::new("b").unwrap()]
}

fn striped(size: HexSize) -> HexPicture {
    let ab = ab();
    let cells = (0..size.cell_count())
        .map(|i| ab[i % 3 % 2].clone())
        .collect();
    HexPicture::from_cells(size, cells).unwrap()
}

fn runs(c: &mut Criterion) {
    let kind = AutomatonKind::Boustrophedon;
    let a = random_pool(1, 1, &RandomSpec::new(kind, 3, ab())).remove(0);
    let mut group = c.benchmark_group("run");
    for side in [3, 6, 12] {
        let p = striped(HexSize::new(side, side, side).unwrap());
        group.bench_with_input(BenchmarkId::new("canonical", side), &p, |b, p| {
            b.iter(|| a.run_canonical(black_box(p)).unwrap())
        });
        let mode = DirectionMode::new(kind, SymmetryOp::reflection(3));
        group.bench_with_input(BenchmarkId::new("r3", side), &p, |b, p| {
            b.iter(|| a.run(black_box(p), mode).unwrap())
        });
    }
    group.finish();

    let p = striped(HexSize::new(8, 8, 8).unwrap());
    c.bench_function("apply_op/R1/8", |b| {
        b.iter(|| apply_op(SymmetryOp::rotation(1), black_box(&p)))
    });
}

fn oracles(c: &mut Criterion) {
    let kind = AutomatonKind::Boustrophedon;
    let pool = random_pool(2, 2, &RandomSpec::new(kind, 3, ab()));
    let canon = DirectionMode::canonical(kind);
    c.bench_function("accepted_set/up_to_2", |b| {
        b.iter(|| accepted_set(&pool[0], canon, &ab(), &SizeBound::up_to(2)).unwrap())
    });
    let size = HexSize::new(3, 3, 3).unwrap();
    c.bench_function("exact_equivalent/3-3-3", |b| {
        b.iter(|| exact_equivalent_for_size(&pool[0], canon, &pool[1], canon, size).unwrap())
    });
}

fn constructions(c: &mut Criterion) {
    let pool = random_pool(
        3,
        1,
        &RandomSpec::new(AutomatonKind::Boustrophedon, 3, ab()),
    );
    c.bench_function("hbfa_to_hrfa", |b| {
        b.iter(|| hbfa_to_hrfa(black_box(&pool[0])).unwrap())
    });
    let returning = random_pool(4, 1, &RandomSpec::new(AutomatonKind::Returning, 3, ab()));
    c.bench_function("mirror_line_order", |b| {
        b.iter(|| mirror_line_order(black_box(&returning[0])).unwrap())
    });
}

criterion_group!(benches, runs, oracles, constructions);
criterion_main!(benches);
