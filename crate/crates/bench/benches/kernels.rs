use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pcross_core::algebra::jacobson_radical;
use pcross_core::lab::{random_action, Bounds};
use pcross_core::{build_crossed, fixtures, FieldSpec, Matrix, TwistedPartialAction};
use std::hint::black_box;

/// A dense `n x n` matrix with small deterministic entries and rank deficit.
fn dense(field: FieldSpec, n: usize) -> Matrix {
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let x = if i + 1 == n { 0 } else { ((i * 31 + j * 17 + i * j) % 11) as i64 - 5 };
            data.push(field.int(x));
        }
    }
    Matrix::new(field, n, n, data).unwrap()
}

fn rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for field in [FieldSpec::Rationals, FieldSpec::Prime(101)] {
        for n in [8, 16, 32] {
            let m = dense(field, n);
            group.bench_with_input(BenchmarkId::new(field.to_string(), n), &m, |b, m| {
                b.iter(|| black_box(m.rref().unwrap()))
            });
        }
    }
    group.finish();
}

fn instances() -> Vec<(String, TwistedPartialAction)> {
    let bounds = Bounds { max_dim: 6, max_order: 8, twist: true };
    let mut out = vec![
        ("c3-restriction".to_string(), fixtures::c3_restriction()),
        ("dual-sign-c2".to_string(), fixtures::dual_sign_c2()),
    ];
    for seed in [1, 2, 3] {
        out.push((format!("random-{seed}"), random_action(seed, &bounds, FieldSpec::Rationals).unwrap()));
    }
    out.push(("random-3-gf2".into(), random_action(3, &bounds, FieldSpec::Prime(2)).unwrap()));
    out
}

fn crossed(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_crossed");
    for (name, a) in instances() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &a, |b, a| {
            b.iter(|| black_box(build_crossed(a).unwrap()))
        });
    }
    group.finish();
}

fn radical(c: &mut Criterion) {
    let mut group = c.benchmark_group("radical");
    for (name, a) in instances() {
        let cp = build_crossed(&a).unwrap();
        let id = format!("{name} (dim {})", cp.dim());
        group.bench_with_input(BenchmarkId::from_parameter(id), cp.algebra(), |b, alg| {
            b.iter(|| black_box(jacobson_radical(alg).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(kernels, rref, crossed, radical);
criterion_main!(kernels);
