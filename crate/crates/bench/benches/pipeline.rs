use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hzknot::homfly::homfly;
use hzknot::hz::hz_transform;
use hzknot::{decompose, verify_family, FamilyIndex};
use hzknot_bench::braids;

fn homfly_and_hz(c: &mut Criterion) {
    let mut group = c.benchmark_group("homfly+hz");
    for (name, b) in braids().unwrap() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &b, |bench, b| {
            bench.iter(|| hz_transform(&homfly(b).unwrap()).unwrap())
        });
    }
    group.finish();
}

fn decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    for (name, b) in braids().unwrap() {
        let z = hz_transform(&homfly(&b).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &z, |bench, z| {
            bench.iter(|| decompose(z).unwrap())
        });
    }
    group.finish();
}

fn families(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_family");
    group.sample_size(10);
    for idx in [
        FamilyIndex::new(3, 1, -1, 1),
        FamilyIndex::new(4, 1, -1, 1),
        FamilyIndex::new(5, 1, -1, 1),
    ] {
        group.bench_with_input(BenchmarkId::from_parameter(idx), &idx, |bench, &idx| {
            bench.iter(|| verify_family(idx).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, homfly_and_hz, decomposition, families);
criterion_main!(benches);
