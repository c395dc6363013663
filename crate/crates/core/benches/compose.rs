use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polyinv::{build_sequence, invert, InvertOptions, Polynomial, PolynomialMap, Rational, SequenceOptions};

fn x(n: usize, i: usize) -> Polynomial {
    Polynomial::var(n, i)
}

fn c(n: usize, num: i64, den: i64) -> Polynomial {
    Polynomial::constant(n, Rational::new(num.into(), den.into()))
}

/// Six-variable cubic map with inverse of degree 45 (parameters fixed).
fn six_variable_map() -> PolynomialMap {
    let n = 6;
    let s = (&x(n, 0) + &x(n, 1)).pow(3);
    let h = vec![
        &(&(&c(n, 15, 2) * &s) + &(&c(n, 2, 1) * &(&(&x(n, 1) * &x(n, 3)) * &x(n, 5))))
            + &(&c(n, 3, 1) * &(&(&x(n, 3) * &x(n, 4)) * &x(n, 5))),
        &c(n, -15, 2) * &s,
        &(&(&(&x(n, 0).pow(3) + &(&c(n, -2, 1) * &(&x(n, 0) + &x(n, 4)).pow(3))) + &(&c(n, 3, 1) * &s))
            + &(&x(n, 0) + &x(n, 3)).pow(3))
            + &(&c(n, 7, 1) * &x(n, 5).pow(3)),
        &(&c(n, -3, 1) * &(&x(n, 1) * &x(n, 5).pow(2))) + &(&c(n, -9, 2) * &(&x(n, 4) * &x(n, 5).pow(2))),
        &c(n, 5, 1) * &s,
        Polynomial::zero(n),
    ];
    PolynomialMap::identity_plus(&PolynomialMap::new(h).unwrap())
}

fn planar_map() -> PolynomialMap {
    let inner = &x(2, 1) + &x(2, 0).pow(3);
    PolynomialMap::new(vec![&x(2, 0) + &inner.pow(2), inner]).unwrap()
}

fn dense(n: usize, degree: u32) -> Polynomial {
    let linear = (0..n).fold(Polynomial::one(n), |acc, i| {
        &acc + &x(n, i).scale(&Rational::new((i as i64 + 2).into(), 3.into()))
    });
    linear.pow(degree)
}

fn workloads(c: &mut Criterion, label: &str, run: &dyn Fn(&mut (dyn FnMut() + Send))) {
    let mut group = c.benchmark_group(label);
    group.sample_size(10);

    let p = dense(4, 8);
    let q = dense(4, 7);
    group.bench_function(BenchmarkId::new("mul", "dense4_deg8x7"), |b| {
        b.iter(|| run(&mut || drop(black_box(&p * &q))))
    });

    let f = six_variable_map();
    group.bench_function(BenchmarkId::new("compose", "six_var_self"), |b| {
        b.iter(|| run(&mut || drop(black_box(f.compose(&f).unwrap()))))
    });

    let opts = SequenceOptions {
        truncation: Some(24),
        cap: 36,
        max_terms: None,
    };
    group.bench_function(BenchmarkId::new("sequence", "six_var_coord1_trunc24"), |b| {
        b.iter(|| run(&mut || drop(black_box(build_sequence(&f, 0, &opts).unwrap()))))
    });

    let planar = planar_map();
    group.bench_function(BenchmarkId::new("invert", "planar"), |b| {
        b.iter(|| run(&mut || drop(black_box(invert(&planar, &InvertOptions::default()).unwrap()))))
    });
    group.finish();
}

#[cfg(feature = "parallel")]
fn benches(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    workloads(c, "rayon_1_thread", &|work| single.install(work));
    workloads(c, "rayon_default", &|work| work());
}

#[cfg(not(feature = "parallel"))]
fn benches(c: &mut Criterion) {
    workloads(c, "sequential", &|work| work());
}

criterion_group!(compose_benches, benches);
criterion_main!(compose_benches);
