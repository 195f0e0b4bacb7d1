use criterion::{criterion_group, criterion_main, Criterion};
use dunkl::inequalities::{verify_corpus, EvalContext, InequalitySpec, Theorem};
use dunkl::measure::{generate_corpus, CorpusConstraints, FunctionFamily, Setting, TestFunction};
use dunkl::operators::{dunkl_apply_poly, Polynomial};
use dunkl::rootsys::{build_root_system, Family};
use dunkl::spectral::{dunkl_transform, SpectralConfig};
use dunkl::waveeq::propagator;
use std::hint::black_box;

fn transforms(c: &mut Criterion) {
    let cfg = SpectralConfig::default();
    let f = TestFunction::hermite_gaussian(&[0.3, 1.0, -0.4, 0.2], 1.3);
    let rank1 = Setting::Rank1 { k: 0.5 };
    c.bench_function("dunkl_transform rank1 k=0.5", |b| b.iter(|| dunkl_transform(black_box(&f), &rank1, &cfg).unwrap()));
    let even = TestFunction::hermite_gaussian(&[0.3, 0.0, -0.4, 0.0, 0.2], 1.3);
    let radial = Setting::radial(3, 0.75);
    c.bench_function("dunkl_transform radial N=3", |b| b.iter(|| dunkl_transform(black_box(&even), &radial, &cfg).unwrap()));
}

fn operators(c: &mut Criterion) {
    let rs = build_root_system(Family::SymmetricGroupA, 3, &[0.7]).unwrap();
    let terms = vec![(vec![3, 2, 1], 1.0), (vec![0, 4, 2], -0.5), (vec![1, 1, 1], 2.0), (vec![6, 0, 0], 0.25)];
    let p = Polynomial::from_terms(3, terms);
    c.bench_function("dunkl_apply_poly A2 degree 6", |b| b.iter(|| dunkl_apply_poly(&rs, 0, black_box(&p))));
}

fn inequalities(c: &mut Criterion) {
    let spec = InequalitySpec::new(Theorem::FractionalHardy, &[("N", 3.0), ("gamma", 0.0), ("s", 1.0)]).unwrap();
    let ctx = EvalContext::for_spec(&spec).unwrap();
    let corpus = generate_corpus(
        7,
        20,
        &[FunctionFamily::Gaussian, FunctionFamily::HermiteGaussian, FunctionFamily::RadialBump, FunctionFamily::SeededSuperposition],
        CorpusConstraints { vanish_at_origin: false, radial: true },
    )
    .unwrap();
    c.bench_function("verify_corpus fractional Hardy x20", |b| b.iter(|| verify_corpus(&spec, black_box(&corpus), &ctx).unwrap()));
}

fn wave(c: &mut Criterion) {
    let u0 = num_complex::Complex64::new(1.0, 0.0);
    c.bench_function("mode propagator", |b| {
        b.iter(|| propagator(1.0, 1.0, black_box(0.7), black_box(2.5)).apply(u0, u0))
    });
}

criterion_group!(benches, transforms, operators, inequalities, wave);
criterion_main!(benches);
