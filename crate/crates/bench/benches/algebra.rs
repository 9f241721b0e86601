use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cobordia::evaluation::array_compose;
use cobordia::laws::{run_suite, SuiteId};
use cobordia::{
    compose, dual_morphism, enumerate_pairings, epsilon, eta, evaluate, identity, tensor_morphisms,
    ObjWord, TensorArray,
};

fn alternating(n: usize) -> ObjWord {
    "+-".repeat(n)
        .chars()
        .take(n)
        .collect::<String>()
        .parse()
        .unwrap()
}

fn snake_halves(w: &ObjWord) -> (cobordia::DiagMorphism, cobordia::DiagMorphism) {
    let lower = tensor_morphisms(&identity(w), &eta(w)).unwrap();
    let upper = tensor_morphisms(&epsilon(w), &identity(w)).unwrap();
    (lower, upper)
}

fn composition(c: &mut Criterion) {
    let mut group = c.benchmark_group("compose-snake");
    for n in [1, 4, 16, 64] {
        let (lower, upper) = snake_halves(&alternating(n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| compose(black_box(&upper), black_box(&lower)).unwrap())
        });
    }
    group.finish();

    let f = tensor_morphisms(&eta(&alternating(8)), &identity(&alternating(8))).unwrap();
    c.bench_function("dual-morphism/24-points", |b| {
        b.iter(|| dual_morphism(black_box(&f)).unwrap())
    });
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for n in [2, 4, 6] {
        let w = alternating(n);
        group.bench_with_input(BenchmarkId::from_parameter(2 * n), &w, |b, w| {
            b.iter(|| enumerate_pairings(black_box(w), black_box(w)).unwrap())
        });
    }
    group.finish();
}

fn evaluation(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate-snake-halves");
    for d in [2, 3] {
        let (lower, upper) = snake_halves(&alternating(2));
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| {
                let lo: TensorArray<i64> = evaluate(&lower, d).unwrap();
                let up = evaluate(&upper, d).unwrap();
                array_compose(&up, &lo).unwrap()
            })
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("laws");
    group.sample_size(10);
    for id in [SuiteId::Snake, SuiteId::Category] {
        group.bench_function(id.name(), |b| {
            b.iter(|| run_suite(id, id.default_max_len(), 1, 0).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, composition, enumeration, evaluation, suites);
criterion_main!(benches);
