use dunkl::extremal::*;
use dunkl::inequalities::{evaluate_sides, EvalContext, InequalitySpec, Theorem};
use dunkl::special::gamma;
use proptest::prelude::*;

fn hardy_spec(dim: f64, s: f64) -> InequalitySpec {
    InequalitySpec::new(Theorem::FractionalHardy, &[("N", dim), ("gamma", 0.0), ("s", s)]).unwrap()
}

#[test]
fn closed_form_constants() {
    assert_eq!(sharp_constant_fractional_hardy(3.0, 0.0, 0.0).unwrap(), 1.0);
    assert!((sharp_constant_fractional_hardy(3.0, 0.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
    // s = 1 reduces to the classical Hardy constant (n−2)/2
    for n in [3.0, 4.5, 7.0] {
        assert!((sharp_constant_fractional_hardy(n, 0.0, 1.0).unwrap() - (n - 2.0) / 2.0).abs() < 1e-13);
    }
    assert_eq!(rellich_sharp_constant(5.0, 0.0).unwrap(), 25.0 / 16.0);
    assert_eq!(rellich_sharp_constant(2.0, 1.0).unwrap(), 0.0);
    assert!(rellich_sharp_constant(1.0, 0.5).is_err());
    assert!(sharp_constant_fractional_hardy(3.0, 0.0, 1.5).is_err());
    assert!(sharp_constant_fractional_hardy(3.0, 0.0, -0.1).is_err());
}

proptest! {
    #[test]
    fn rellich_is_square_of_hardy_at_two(dim in 1usize..9, gamma_k in 0.0f64..3.0) {
        let n = dim as f64 + 2.0 * gamma_k;
        prop_assume!(n > 4.0 + 1e-9);
        let c2 = sharp_constant_fractional_hardy(dim as f64, gamma_k, 2.0).unwrap();
        let r = rellich_sharp_constant(dim as f64, gamma_k).unwrap();
        prop_assert!((c2 * c2 - r).abs() <= 1e-12 * r.max(1.0));
    }

    #[test]
    fn hardy_constant_matches_gamma_ratio(n in 1.0f64..12.0, t in 0.0f64..1.0) {
        let s = t * n / 2.0 * 0.999;
        let direct = 2f64.powf(s) * gamma((n / 2.0 + s) / 2.0) / gamma((n / 2.0 - s) / 2.0);
        let c = sharp_constant_fractional_hardy(n, 0.0, s).unwrap();
        prop_assert!((c - direct).abs() <= 1e-11 * direct);
    }
}

#[test]
fn fractional_hardy_probe_approaches_two() {
    let spec = hardy_spec(3.0, 1.0);
    let ctx = EvalContext::for_spec(&spec).unwrap();
    let fam = TrialFamily::inverse_power((0.26, 3.0));
    let res = rayleigh_maximize(&spec, &fam, &ProbeOptions { restarts: 2, ..Default::default() }, &ctx).unwrap();
    eprintln!("{:?} {} {:?}", res.best_params, res.best_ratio, res.gap);
    assert!(res.best_ratio >= 1.9, "{}", res.best_ratio);
    assert!(res.best_ratio <= 2.0 * (1.0 + 1e-3));
    // the supremum is approached as β ↓ 1/4, outside every admissible box
    assert!(res.all_on_boundary);
    let f = fam.build(&[res.best_params["beta"]]).unwrap();
    assert_eq!(evaluate_sides(&spec, &f, &ctx).unwrap().ratio, res.best_ratio);
    for w in res.trace.windows(2) {
        assert!(w[1].best >= w[0].best);
    }
}

#[test]
fn rellich_probe_within_twenty_percent() {
    let spec = InequalitySpec::new(Theorem::ClassicalRellich, &[("N", 5.0), ("gamma", 0.0)]).unwrap();
    let ctx = EvalContext::for_spec(&spec).unwrap();
    let fam = TrialFamily::power_gaussian((-0.499, 2.0), (0.5, 2.0));
    let res = rayleigh_maximize(&spec, &fam, &ProbeOptions { restarts: 2, ..Default::default() }, &ctx).unwrap();
    eprintln!("{:?} {}", res.best_params, res.best_ratio);
    let sq = res.best_ratio * res.best_ratio;
    assert!(sq >= 0.8 * 16.0 / 25.0 && sq <= 16.0 / 25.0 + 1e-3, "{sq}");
}

#[test]
fn degenerate_box_is_one_evaluation() {
    let spec = hardy_spec(3.0, 1.0);
    let ctx = EvalContext::for_spec(&spec).unwrap();
    let fam = TrialFamily::inverse_power((1.0, 1.0));
    let res = rayleigh_maximize(&spec, &fam, &ProbeOptions::default(), &ctx).unwrap();
    assert!(res.converged);
    assert!(!res.all_on_boundary);
    assert!(res.restarts.iter().all(|r| r.best_params["beta"] == 1.0));
    let direct = evaluate_sides(&spec, &TestFunction::inverse_power(1.0, 1.0), &ctx).unwrap().ratio;
    assert_eq!(res.best_ratio, direct);
}

#[test]
fn probes_are_deterministic() {
    let spec = hardy_spec(3.0, 1.0);
    let ctx = EvalContext::for_spec(&spec).unwrap();
    let fam = TrialFamily::power_gaussian((0.0, 2.0), (0.5, 2.0));
    let opt = ProbeOptions { restarts: 2, max_iters: 30, seed: 11, ..Default::default() };
    let a = rayleigh_maximize(&spec, &fam, &opt, &ctx).unwrap();
    let b = rayleigh_maximize(&spec, &fam, &opt, &ctx).unwrap();
    assert_eq!(a, b);
    assert!(a.best_ratio <= 2.0 * (1.0 + 1e-3));
}

#[test]
fn bad_boxes_are_rejected() {
    let spec = hardy_spec(3.0, 1.0);
    let ctx = EvalContext::for_spec(&spec).unwrap();
    let mut fam = TrialFamily::inverse_power((2.0, 1.0));
    assert!(rayleigh_maximize(&spec, &fam, &ProbeOptions::default(), &ctx).is_err());
    fam.bounds[0].name = "alpha".into();
    assert!(rayleigh_maximize(&spec, &fam, &ProbeOptions::default(), &ctx).is_err());
}

use dunkl::measure::TestFunction;
