use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use meshcy::hilbert::algebra_series;
use meshcy_bench::{all_paths, fixtures};

fn completion(c: &mut Criterion) {
    let mut group = c.benchmark_group("complete");
    for (name, alg) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &alg, |b, alg| {
            b.iter(|| alg.system(black_box(10)).unwrap())
        });
    }
    group.finish();
}

fn normal_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("normal_form");
    for (name, alg) in fixtures() {
        let rs = alg.system(10).unwrap();
        let x = all_paths(&alg, 8);
        group.bench_function(name, |b| b.iter(|| rs.normal_form(black_box(&x))));
    }
    group.finish();
}

fn hilbert(c: &mut Criterion) {
    let mut group = c.benchmark_group("hilbert_series");
    for (name, alg) in fixtures() {
        let rs = alg.system(12).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| algebra_series(&rs, black_box(12)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, completion, normal_forms, hilbert);
criterion_main!(benches);
