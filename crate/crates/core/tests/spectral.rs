use dunkl::measure::{generate_corpus, lp_norm_of, CorpusConstraints, FunctionFamily, Infra, Op, Setting, TestFunction};
use dunkl::spectral::*;
use num_complex::Complex64;
use std::f64::consts::PI;

fn cfg() -> SpectralConfig {
    SpectralConfig::default()
}

/// Independent oracle: (2π)^{-1/2} ∫ f(x) e^{−iξx} dx by the trapezoid rule on a fine uniform grid.
fn fourier_trapezoid(f: &dyn Fn(f64) -> f64, xi: f64, half_width: f64) -> Complex64 {
    let n = 8000;
    let h = 2.0 * half_width / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=n {
        let x = -half_width + i as f64 * h;
        acc += f(x) * Complex64::new(0.0, -xi * x).exp();
    }
    acc * h / (2.0 * PI).sqrt()
}

#[test]
fn gaussian_is_fixed_at_k0() {
    let f = dunkl_transform_rank1(&TestFunction::gaussian(1.0), 0.0, &cfg()).unwrap();
    for (x, v) in f.xi.iter().zip(&f.plus) {
        assert!((v - Complex64::new((-x * x / 2.0).exp(), 0.0)).norm() < 1e-7, "{x}");
    }
}

#[test]
fn k0_matches_direct_fourier_quadrature() {
    let f = TestFunction::hermite_gaussian(&[0.3, 1.0, -0.4, 0.2], 1.3);
    let field = dunkl_transform_rank1(&f, 0.0, &cfg()).unwrap();
    let prof = f.profile(Op::Value, &Setting::Rank1 { k: 0.0 }).unwrap();
    let fx = |x: f64| prof.eval(x);
    let (xs, vs) = field.full_grid();
    for (i, (&x, v)) in xs.iter().zip(&vs).enumerate() {
        if i % 37 != 0 {
            continue;
        }
        let o = fourier_trapezoid(&fx, x, 20.0);
        assert!((v - o).norm() < 1e-7, "ξ = {x}: {v} vs {o}");
    }
}

#[test]
fn plancherel_and_hermitian_symmetry() {
    let corpus = generate_corpus(
        11,
        10,
        &[
            FunctionFamily::Gaussian,
            FunctionFamily::DilatedGaussian,
            FunctionFamily::HermiteGaussian,
            FunctionFamily::RadialBump,
            FunctionFamily::SeededSuperposition,
        ],
        CorpusConstraints::default(),
    )
    .unwrap();
    for &k in &[0.0, 0.3, 0.5, 1.0, 2.5] {
        let s = Setting::Rank1 { k };
        for f in &corpus {
            let t = std::time::Instant::now();
            let field = dunkl_transform(f, &s, &cfg()).unwrap();
            let n = lp_norm_of(f, Op::Value, 2.0, 0.0, &Infra::new(s)).unwrap();
            let rel = (field.l2_norm() - n).abs() / n;
            println!("k={k} {} rel={rel:.2e} nodes={} t={:?}", f.id, field.xi.len(), t.elapsed());
            assert!(rel < 1e-6, "k={k} {}: {rel}", f.id);
            for (p, m) in field.plus.iter().zip(&field.minus) {
                assert!((p - m.conj()).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn round_trip_recovers_samples() {
    for &k in &[0.0, 0.5, 1.7] {
        let setting = Setting::Rank1 { k };
        for f in [TestFunction::hermite_gaussian(&[0.2, 1.0, 0.0, -0.3], 0.8), TestFunction::radial_bump(1.5)] {
            let field = dunkl_transform(&f, &setting, &cfg()).unwrap();
            let back = field.inverse_on_grid();
            let truth = sample_on_grid(&f, &field).unwrap();
            let d = back.relative_l2_distance(&truth);
            // the bump's spectrum decays only like exp(−c√ξ), so its truncation error is larger
            let tol = if f.has_compact_support() { 1e-6 } else { 1e-8 };
            assert!(d < tol, "k={k} {}: {d}", f.id);
        }
    }
}

#[test]
fn radial_n1_agrees_with_even_rank1() {
    let f = TestFunction::hermite_gaussian(&[1.0, 0.0, 0.5], 1.2);
    for &k in &[0.0, 0.8] {
        let a = dunkl_transform_rank1(&f, k, &cfg()).unwrap();
        let b = radial_transform(&f, 1, k, &cfg()).unwrap();
        for (x, y) in a.plus.iter().zip(&b.plus) {
            assert!((x - y).norm() < 1e-12);
        }
    }
}

/// Independent oracle for N = 3: F(ρ) = (2/π)^{1/2} ρ^{−1} ∫_0^∞ f(r) r sin(ρr) dr.
#[test]
fn three_dimensional_radial_matches_sine_transform() {
    let f = TestFunction::hermite_gaussian(&[0.5, 0.0, 1.0, 0.0, -0.2], 1.1);
    let field = radial_transform(&f, 3, 0.0, &cfg()).unwrap();
    let prof = f.profile(Op::Value, &Setting::radial(3, 0.0)).unwrap();
    let n = 20000;
    let hi = 20.0;
    let h = hi / n as f64;
    for (j, (&rho, v)) in field.xi.iter().zip(&field.plus).enumerate() {
        if j % 41 != 0 {
            continue;
        }
        let mut acc = 0.0;
        for i in 1..=n {
            let r = i as f64 * h;
            let wt = if i == n { 0.5 } else { 1.0 };
            acc += wt * prof.eval(r) * r * (rho * r).sin();
        }
        let o = (2.0 / PI).sqrt() * acc * h / rho;
        assert!((v.re - o).abs() < 1e-8 && v.im.abs() < 1e-14, "ρ = {rho}: {v} vs {o}");
    }
}

#[test]
fn radial_gaussian_is_fixed_with_gamma() {
    for (dim, gamma) in [(2, 0.0), (3, 0.75), (5, 0.0), (4, 2.0)] {
        let rep = calibration_report(&Setting::radial(dim, gamma), &cfg()).unwrap();
        assert!(rep.max_abs_deviation < 1e-9, "N={dim} γ={gamma}: {rep:?}");
        assert!((rep.plancherel_ratio - 1.0).abs() < 1e-9);
    }
}

#[test]
fn fractional_laplacian_at_s2_is_minus_laplacian() {
    let f = TestFunction::hermite_gaussian(&[1.0, 0.4, -0.3, 0.2], 0.9);
    for &k in &[0.0, 0.5, 2.0] {
        let setting = Setting::Rank1 { k };
        let g = fractional_laplacian_samples(&f, 2.0, &setting, &cfg()).unwrap();
        let lap = f.profile(Op::Laplacian(1), &setting).unwrap();
        let mut truth = g.clone();
        for i in 0..g.r.len() {
            truth.plus[i] = Complex64::new(-lap.eval(g.r[i]), 0.0);
            truth.minus[i] = Complex64::new(-lap.eval(-g.r[i]), 0.0);
        }
        let d = g.relative_l2_distance(&truth);
        assert!(d < 1e-7, "k={k}: {d}");
    }
}

#[test]
fn fractional_powers_compose() {
    let f = TestFunction::hermite_gaussian(&[1.0, 0.0, 0.7], 1.0);
    let field = dunkl_transform_rank1(&f, 0.6, &cfg()).unwrap();
    let a = fractional_laplacian(&fractional_laplacian(&field, 0.7).unwrap(), 0.9).unwrap();
    let b = fractional_laplacian(&field, 1.6).unwrap();
    for (x, y) in a.plus.iter().zip(&b.plus) {
        assert!((x - y).norm() <= 1e-12 * (1.0 + y.norm()));
    }
    assert!(fractional_laplacian(&field, -0.5).is_err());
}

#[test]
fn sobolev_one_matches_gradient_identity() {
    let corpus = generate_corpus(5, 6, &[FunctionFamily::HermiteGaussian, FunctionFamily::SeededSuperposition], CorpusConstraints::default()).unwrap();
    for &k in &[0.0, 0.5, 1.5] {
        let setting = Setting::Rank1 { k };
        let infra = Infra::new(setting);
        for f in &corpus {
            let s1 = sobolev_norm(f, 1.0, &setting, &cfg()).unwrap();
            let a = lp_norm_of(f, Op::Value, 2.0, 0.0, &infra).unwrap();
            let b = lp_norm_of(f, Op::Gradient, 2.0, 0.0, &infra).unwrap();
            let o = (a * a + b * b).sqrt();
            assert!((s1 - o).abs() / o < 1e-5, "k={k} {}: {s1} vs {o}", f.id);
        }
    }
}

#[test]
fn spectral_norm_routes_agree() {
    let f = TestFunction::hermite_gaussian(&[0.4, 1.0, 0.3], 1.3);
    let setting = Setting::Rank1 { k: 0.7 };
    let infra = Infra::new(setting);
    let (g, route) = fractional_norm(&f, 1.0, 2.0, &infra, &cfg()).unwrap();
    assert_eq!(route, NormRoute::Gradient);
    let sp = spectral_norm(&f, 1.0, &setting, &cfg()).unwrap();
    assert!((g - sp).abs() / g < 1e-8);
    let (l, route) = fractional_norm(&f, 2.0, 2.0, &infra, &cfg()).unwrap();
    assert_eq!(route, NormRoute::IteratedLaplacian);
    let sp2 = spectral_norm(&f, 2.0, &setting, &cfg()).unwrap();
    assert!((l - sp2).abs() / l < 1e-8);
    // p ≠ 2 at s = 2 through the inverse transform
    let (l3, _) = fractional_norm(&f, 2.0, 3.0, &infra, &cfg()).unwrap();
    let via = fractional_laplacian_samples(&f, 2.0, &setting, &cfg()).unwrap().lp_norm(3.0);
    assert!((l3 - via).abs() / l3 < 1e-6, "{l3} vs {via}");
}

#[test]
fn dyadic_pieces_sum_to_identity() {
    let part = DyadicPartition::default();
    for i in 0..200 {
        let t = 2f64.powf(-5.5 + 11.0 * i as f64 / 199.0);
        assert!((part.coverage(t) - 1.0).abs() < 1e-14, "{t}");
    }
    assert_eq!(DyadicPartition::psi(0.4), 0.0);
    assert_eq!(DyadicPartition::psi(2.1), 0.0);
    assert!(DyadicPartition::new(2, 1).is_err());

    let f = band_limited(2, 1.0, &Setting::Rank1 { k: 0.4 }).unwrap();
    let field = dunkl_transform_rank1(&f, 0.4, &cfg()).unwrap();
    let mut total = field.zeroed();
    for j in part.indices() {
        let pj = littlewood_paley_project(&field, j, &part).unwrap();
        for i in 0..total.xi.len() {
            total.plus[i] += pj.plus[i];
            total.minus[i] += pj.minus[i];
        }
    }
    for i in 0..field.xi.len() {
        let expected = field.plus[i] * part.coverage(field.xi[i]);
        assert!((total.plus[i] - expected).norm() < 1e-12 * field.max_abs());
    }
    assert!(littlewood_paley_project(&field, 7, &part).is_err());
}

#[test]
fn square_function_routes_agree() {
    let f = TestFunction::hermite_gaussian(&[1.0, 0.5, 0.2], 1.0);
    let r = square_function_ratio(&f, 1.0, &Setting::Rank1 { k: 0.5 }, &DyadicPartition::default(), &cfg()).unwrap();
    // the coarsest pieces spread past the inversion window, so the physical route loses a little mass
    assert!((r.physical - r.spectral).abs() / r.spectral < 1e-4, "{r:?}");
    assert!(r.physical <= r.spectral);
    assert!(r.ratio() > 0.3 && r.ratio() < 1.5, "{r:?}");
}

#[test]
fn riesz_rejects_mass_at_zero_and_inverts_band_limited() {
    let setting = Setting::Rank1 { k: 0.5 };
    let g = dunkl_transform(&TestFunction::gaussian(1.0), &setting, &cfg()).unwrap();
    assert!(matches!(riesz_potential(&g, 0.5), Err(dunkl::DunklError::LowFrequencyMass { .. })));
    assert!(riesz_potential(&g, 2.0).is_err());

    let f = band_limited(3, 1.0, &setting).unwrap();
    let field = dunkl_transform_reaching(&f, &setting, &cfg(), 0.0, INVERSE_REACH).unwrap();
    for &s in &[0.5, 1.0] {
        let lifted = fractional_laplacian(&field, s).unwrap();
        let back = riesz_potential(&lifted, s).unwrap().inverse_on_grid();
        let truth = sample_on_grid(&f, &field).unwrap();
        let d = back.relative_l2_distance(&truth);
        assert!(d < 1e-6, "s={s}: {d}");
    }
}

/// ‖I_s f‖_q / ‖f‖_2 with 1/2 − 1/q = s/(N+2γ) stays bounded under dilation.
#[test]
fn riesz_potential_hls_spot_check() {
    let setting = Setting::Rank1 { k: 1.0 };
    let s = 0.5;
    let q = 1.0 / (0.5 - s / setting.homogeneous_dim());
    let mut ratios = Vec::new();
    for &lam in &[0.5, 1.0, 2.0] {
        let f = band_limited(2, lam, &setting).unwrap();
        let field = dunkl_transform_reaching(&f, &setting, &cfg(), 0.0, INVERSE_REACH).unwrap();
        let rule = field.extended_unit_rule(INVERSE_REACH, &cfg()).unwrap();
        let i = riesz_potential(&field, s).unwrap().inverse_on_unit_rule(&rule);
        let n2 = lp_norm_of(&f, Op::Value, 2.0, 0.0, &Infra::new(setting)).unwrap();
        ratios.push(i.lp_norm(q) / n2);
    }
    for r in &ratios {
        assert!(r.is_finite() && *r > 0.0);
        assert!((r / ratios[0] - 1.0).abs() < 1e-3, "{ratios:?}");
    }
}
