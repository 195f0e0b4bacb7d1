use dunkl::inequalities::*;
use dunkl::measure::{generate_corpus, lp_norm_of, CorpusConstraints, FunctionFamily, Op, Setting, TestFunction};
use dunkl::DunklError;

const RADIAL_FAMILIES: [FunctionFamily; 6] = [
    FunctionFamily::Gaussian,
    FunctionFamily::DilatedGaussian,
    FunctionFamily::HermiteGaussian,
    FunctionFamily::RadialBump,
    FunctionFamily::AnnularBump,
    FunctionFamily::SeededSuperposition,
];

fn spec(t: Theorem, p: &[(&str, f64)]) -> InequalitySpec {
    InequalitySpec::new(t, p).unwrap()
}

fn radial_corpus(seed: u64, count: usize, vanish: bool) -> Vec<TestFunction> {
    generate_corpus(seed, count, &RADIAL_FAMILIES, CorpusConstraints { vanish_at_origin: vanish, radial: true }).unwrap()
}

#[test]
fn intro_point_splits_the_two_theorems() {
    for (dim, p, delta) in [(3.0, 2.0, 0.5), (3.0, 1.5, 0.25), (4.0, 2.0, 0.7)] {
        let classical = admissible(&ckn_example_classical(dim, p, delta).unwrap()).unwrap();
        assert!(!classical.admissible);
        assert_eq!(classical.failed_ids(), vec!["clas_CKN0"]);
        assert_eq!(classical.residual("clas_CKN0"), Some(0.0));
        assert!(admissible(&ckn_example(dim, p, delta).unwrap()).unwrap().admissible);
    }
}

#[test]
fn fractional_hardy_corpus_stays_below_two() {
    let s = spec(Theorem::FractionalHardy, &[("N", 3.0), ("gamma", 0.0), ("s", 1.0)]);
    let ctx = EvalContext::for_spec(&s).unwrap();
    let rep = verify_corpus(&s, &radial_corpus(7, 20, false), &ctx).unwrap();
    assert_eq!(rep.ceiling, Some(2.0));
    assert_eq!(rep.records.len(), 20, "{:?}", rep.skipped);
    assert!(rep.violations.is_empty());
    assert!(rep.max_ratio <= 2.0 * (1.0 + 1e-3) && rep.max_ratio > 0.5, "{}", rep.max_ratio);
}

#[test]
fn fractional_hardy_non_integer_s_uses_plancherel() {
    // s = 1/2 in N = 3: ceiling 1/C(1/2) with C(1/2) = √2 Γ(1)/Γ(1/2)
    let s = spec(Theorem::FractionalHardy, &[("N", 3.0), ("gamma", 0.0), ("s", 0.5)]);
    let ctx = EvalContext::for_spec(&s).unwrap();
    let c = std::f64::consts::SQRT_2 / std::f64::consts::PI.sqrt();
    assert!((known_ceiling(&s).unwrap().unwrap() - 1.0 / c).abs() < 1e-13);
    let rep = verify_corpus(&s, &radial_corpus(3, 6, false), &ctx).unwrap();
    assert!(rep.violations.is_empty(), "{}", rep.max_ratio);
    assert!(rep.records.iter().all(|r| !r.notes.is_empty()));
}

#[test]
fn rellich_corpus_respects_sharp_constant() {
    let s = spec(Theorem::ClassicalRellich, &[("N", 5.0), ("gamma", 0.0)]);
    let ctx = EvalContext::for_spec(&s).unwrap();
    let rep = verify_corpus(&s, &radial_corpus(5, 12, false), &ctx).unwrap();
    assert_eq!(rep.records.len(), 12, "{:?}", rep.skipped);
    for r in &rep.records {
        assert!(r.ratio * r.ratio <= 16.0 / 25.0 + 1e-3, "{}: {}", r.function_id, r.ratio);
    }
}

#[test]
fn rellich_in_three_dimensions_needs_vanishing_at_origin() {
    let s = spec(Theorem::ClassicalRellich, &[("N", 3.0), ("gamma", 0.0)]);
    let ctx = EvalContext::for_spec(&s).unwrap();
    assert!(matches!(evaluate_sides(&s, &TestFunction::gaussian(1.0), &ctx), Err(DunklError::NonIntegrable(_))));
    let strict = ctx.with_options(EvalOptions { class_policy: ClassPolicy::Strict, ..Default::default() });
    assert!(matches!(
        evaluate_sides(&s, &TestFunction::power_gaussian(2.0, 1.0), &strict),
        Err(DunklError::ClassMismatch(_))
    ));
    let r = evaluate_sides(&s, &TestFunction::annular_bump(0.5, 2.0), &strict).unwrap();
    assert!(r.ratio <= 4.0 / 3.0 * (1.0 + 1e-4), "{}", r.ratio);
}

#[test]
fn weighted_rellich_reduces_to_classical() {
    let w = spec(Theorem::WeightedRellich, &[("N", 5.0), ("gamma", 0.0), ("a", 0.0), ("b", 2.0), ("p", 2.0)]);
    let c = spec(Theorem::ClassicalRellich, &[("N", 5.0), ("gamma", 0.0)]);
    let ctx = EvalContext::for_spec(&c).unwrap();
    for f in radial_corpus(9, 4, false) {
        let a = evaluate_sides(&w, &f, &ctx).unwrap().ratio;
        let b = evaluate_sides(&c, &f, &ctx).unwrap().ratio;
        assert_eq!(a, b);
    }
}

#[test]
fn uncertainty_gaussian_attains_the_heisenberg_bound() {
    // ‖f‖₂² ≤ (2/(N+2γ)) ‖∇_k f‖₂ ‖|x| f‖₂ with equality for Gaussians
    let cases = [(1.0, 0.0), (1.0, 0.7), (3.0, 0.0), (4.0, 1.5)];
    for (dim, gamma) in cases {
        let s = spec(Theorem::Uncertainty, &[("N", dim), ("gamma", gamma), ("p", 2.0), ("q", 2.0)]);
        let ctx = EvalContext::for_spec(&s).unwrap().with_options(EvalOptions { require_admissible: false, ..Default::default() });
        for sigma in [0.5, 1.0, 3.0] {
            let r = evaluate_sides(&s, &TestFunction::gaussian(sigma), &ctx).unwrap();
            let n = dim + 2.0 * gamma;
            assert!((r.ratio - 2.0 / n).abs() < 1e-10, "N={dim} γ={gamma}: {}", r.ratio);
        }
    }
    let s = spec(Theorem::Uncertainty, &[("N", 1.0), ("gamma", 0.0), ("p", 2.0), ("q", 2.0)]);
    let ctx = EvalContext::for_spec(&s).unwrap();
    assert!(matches!(evaluate_sides(&s, &TestFunction::gaussian(1.0), &ctx), Err(DunklError::Inadmissible(_))));
}

#[test]
fn hardy_lp_in_three_dimensions() {
    // classical constant p/(N−p)
    for p in [1.5, 2.0, 2.5] {
        let s = spec(Theorem::Hardy_Lp, &[("N", 3.0), ("gamma", 0.0), ("p", p)]);
        let ctx = EvalContext::for_spec(&s).unwrap();
        let rep = verify_corpus(&s, &radial_corpus(13, 6, false), &ctx).unwrap();
        assert!(rep.max_ratio <= p / (3.0 - p) * (1.0 + 1e-6), "p={p}: {}", rep.max_ratio);
    }
}

fn balanced_specs() -> Vec<InequalitySpec> {
    vec![
        spec(Theorem::GN_I, &[("N", 3.0), ("gamma", 0.0), ("p", 2.0), ("q", 4.0), ("r", 2.0), ("theta", gn_theta_at_p2(3.0, 4.0))]),
        ckn_example(3.0, 2.0, 0.5).unwrap(),
        spec(Theorem::CKN_II, &[("N", 3.0), ("gamma", 0.0), ("q", 2.0), ("r", 3.0), ("a", 0.0), ("b", 0.0), ("c", 0.0), ("delta", 0.5)]),
        spec(Theorem::CKN_fractional, &[("N", 3.0), ("gamma", 0.0), ("q", 2.0), ("r", 2.0), ("a", 0.5), ("b", 0.0), ("c", -0.25), ("delta", 0.5)]),
        spec(Theorem::WeightedRellich, &[("N", 5.0), ("gamma", 0.0), ("a", 0.0), ("b", 2.0), ("p", 2.0)]),
    ]
}

#[test]
fn balanced_ratios_are_dilation_invariant() {
    for s in balanced_specs() {
        assert!(admissible(&s).unwrap().admissible, "{}", s.theorem);
        let ctx = EvalContext::for_spec(&s).unwrap();
        for f in radial_corpus(21, 3, true) {
            let dev = dilation_deviation(&s, &f, &[0.5, 3.0], &ctx).unwrap();
            assert!(dev < 1e-5, "{} on {}: {dev}", s.theorem, f.id);
        }
    }
}

#[test]
fn unbalanced_ratio_moves_under_dilation() {
    let s = spec(Theorem::GN_I, &[("N", 3.0), ("gamma", 0.0), ("p", 2.0), ("q", 4.0), ("r", 2.0), ("theta", 0.5)]);
    assert!(!admissible(&s).unwrap().admissible);
    let ctx = EvalContext::for_spec(&s).unwrap().with_options(EvalOptions { require_admissible: false, ..Default::default() });
    let dev = dilation_deviation(&s, &TestFunction::gaussian(1.0), &[0.5, 3.0], &ctx).unwrap();
    assert!(dev > 0.1, "{dev}");
}

#[test]
fn ckn_fractional_corpus_below_ceiling() {
    let s = &balanced_specs()[3];
    let ctx = EvalContext::for_spec(s).unwrap();
    let rep = verify_corpus(s, &radial_corpus(4, 5, false), &ctx).unwrap();
    assert!(rep.violations.is_empty(), "{} vs {:?}", rep.max_ratio, rep.ceiling);
}

#[test]
fn sobolev_attains_aubin_talenti_constant() {
    // S = (πN(N−2))^{−1/2} (Γ(N)/Γ(N/2))^{1/N}, attained by (1+|x|²)^{−(N−2)/2}
    let s = spec(Theorem::Sobolev, &[("N", 3.0), ("gamma", 0.0), ("p", 2.0), ("q", 6.0)]);
    let ctx = EvalContext::for_spec(&s).unwrap();
    let g = dunkl::special::gamma;
    let talenti = (3.0 * std::f64::consts::PI).powf(-0.5) * (g(3.0) / g(1.5)).powf(1.0 / 3.0);
    let ext = evaluate_sides(&s, &TestFunction::inverse_power(0.5, 1.0), &ctx).unwrap().ratio;
    assert!((ext / talenti - 1.0).abs() < 1e-8, "{ext} vs {talenti}");
    let rep = verify_corpus(&s, &radial_corpus(8, 6, false), &ctx).unwrap();
    assert!(rep.max_ratio <= talenti * (1.0 + 1e-8));
}

#[test]
fn records_render_as_csv() {
    let s = spec(Theorem::FractionalHardy, &[("N", 3.0), ("gamma", 0.0), ("s", 1.0)]);
    let ctx = EvalContext::for_spec(&s).unwrap();
    let rep = verify_corpus(&s, &radial_corpus(1, 3, false), &ctx).unwrap();
    let csv = rep.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], VerificationRecord::CSV_HEADER);
    assert_eq!(lines.len(), 4);
    assert_eq!(csv, verify_corpus(&s, &radial_corpus(1, 3, false), &ctx).unwrap().to_csv());
}

#[test]
fn setting_mismatch_and_missing_parameters() {
    let s = spec(Theorem::FractionalHardy, &[("N", 3.0), ("gamma", 0.0), ("s", 1.0)]);
    let ctx = EvalContext::new(Setting::radial(4, 0.0));
    assert!(matches!(evaluate_sides(&s, &TestFunction::gaussian(1.0), &ctx), Err(DunklError::InvalidInput(_))));
    assert!(matches!(
        InequalitySpec::new(Theorem::FractionalHardy, &[("N", 3.0), ("gamma", 0.0)]),
        Err(DunklError::MissingParameter(_))
    ));
    assert!(matches!(
        InequalitySpec::new(Theorem::FractionalHardy, &[("N", 3.0), ("gamma", 0.0), ("s", 1.0), ("q", 2.0)]),
        Err(DunklError::ExtraParameter(_))
    ));
}

#[test]
fn trudinger_integral_matches_norm_series() {
    // ∫ (e^{a h²} − 1) dμ = Σ_{j≥1} a^j/j! ‖h‖_{2j}^{2j}, a different route through the quadrature
    let s = spec(Theorem::Trudinger, &[("N", 1.0), ("gamma", 0.5), ("p", 2.0), ("a", 0.3)]);
    let ctx = EvalContext::for_spec(&s).unwrap();
    for f in [TestFunction::gaussian(1.0), TestFunction::hermite_gaussian(&[1.0, 0.0, 0.5], 0.8)] {
        let h = trudinger_normalize(&f, 2.0, &ctx).unwrap();
        let a = 0.3;
        let lhs = trudinger_lhs(&h, a, 2.0, &ctx.infra, SERIES_CAP).unwrap();
        let mut series = 0.0;
        let mut fact = 1.0;
        for j in 1..40 {
            fact *= j as f64;
            series += a.powi(j) / fact * lp_norm_of(&h, Op::Value, 2.0 * j as f64, 0.0, &ctx.infra).unwrap().powi(2 * j);
        }
        assert!((lhs - series).abs() < 1e-10 * series, "{lhs} vs {series}");
        let rec = evaluate_sides(&s, &f, &ctx).unwrap();
        assert!((rec.lhs - lhs).abs() <= 1e-14 * lhs);
    }
}

#[test]
fn trudinger_ratio_grows_with_a_and_threshold_brackets() {
    let ctx = EvalContext::new(Setting::Rank1 { k: 0.5 });
    let corpus = radial_corpus(2, 4, false);
    let normalized: Vec<TestFunction> = corpus.iter().map(|f| trudinger_normalize(f, 2.0, &ctx).unwrap()).collect();
    let r1 = trudinger_sup_ratio(&normalized, 0.2, 2.0, &ctx.infra).unwrap();
    let r2 = trudinger_sup_ratio(&normalized, 0.8, 2.0, &ctx.infra).unwrap();
    assert!(r2 > r1 && r1 > 0.0);
    let bound = 0.5 * (r1 + r2);
    let a = trudinger_threshold(&corpus, 2.0, bound, 10.0, &ctx).unwrap().unwrap();
    assert!(a > 0.2 && a < 0.8, "{a}");
    let at = trudinger_sup_ratio(&normalized, a, 2.0, &ctx.infra).unwrap();
    assert!(at <= bound && (at / bound - 1.0).abs() < 1e-4, "{at} vs {bound}");
}
