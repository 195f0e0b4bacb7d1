//! The exponential integral of the Trudinger inequality.

use super::eval::EvalContext;
use crate::error::{DunklError, Result};
use crate::measure::{integrate_radial, lp_norm_of, Infra, Op, TestFunction};
use crate::spectral::fractional_norm;

pub const SERIES_CAP: usize = 500;

/// Number of subtracted terms: #{j ∈ ℕ : 0 ≤ j < p − 1}.
pub fn subtracted_terms(p: f64) -> usize {
    (p - 1.0).ceil().max(0.0) as usize
}

/// e^x − Σ_{j<j0} x^j/j! for x ≥ 0, summed from the tail when the subtraction would cancel.
pub fn exp_remainder(x: f64, j0: usize, cap: usize) -> Result<f64> {
    if x == 0.0 {
        return Ok(if j0 == 0 { 1.0 } else { 0.0 });
    }
    if x > j0 as f64 + 1.0 {
        let mut partial = 0.0;
        let mut t = 1.0;
        for j in 0..j0 {
            partial += t;
            t *= x / (j + 1) as f64;
        }
        return Ok(x.exp() - partial);
    }
    // leading term x^{j0}/j0!
    let mut term = 1.0;
    for j in 0..j0 {
        term *= x / (j + 1) as f64;
    }
    let mut sum = 0.0;
    for n in 0..cap {
        sum += term;
        term *= x / (j0 + n + 1) as f64;
        if term <= 1e-17 * sum {
            return Ok(sum);
        }
    }
    Err(DunklError::SeriesCap { cap, tail: term / sum })
}

/// ∫ (exp(a|f|^{p'}) − Σ_{0≤j<p−1} (a|f|^{p'})^j/j!) dμ_k. The caller normalizes f.
pub fn trudinger_lhs(f: &TestFunction, a: f64, p: f64, infra: &Infra, cap: usize) -> Result<f64> {
    if !(a > 0.0) {
        return Err(DunklError::OutOfRange(format!("a = {a} must be positive")));
    }
    if !(p > 1.0 && p.is_finite()) {
        return Err(DunklError::OutOfRange(format!("p = {p} must lie in (1, ∞)")));
    }
    let pp = p / (p - 1.0);
    let j0 = subtracted_terms(p);
    let prof = f.profile(Op::Value, &infra.setting)?;
    let rho = prof.origin_power();
    let origin = if rho.is_finite() { rho * pp * j0 as f64 } else { 0.0 };
    let tail = f.tail_power(Op::Value).map(|t| t * pp * j0 as f64);
    let failure = std::cell::RefCell::new(None);
    let v = integrate_radial(f, infra, origin, tail, |t| {
        let x = a * prof.eval(t).abs().powf(pp);
        match exp_remainder(x, j0, cap) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    });
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    v
}

/// f / ‖(−Δ_k)^{(N+2γ)/(2p)} f‖_p, the normalization the inequality assumes.
pub fn trudinger_normalize(f: &TestFunction, p: f64, ctx: &EvalContext) -> Result<TestFunction> {
    let s = ctx.infra.setting.homogeneous_dim() / p;
    let (scale, _) = fractional_norm(f, s, p, &ctx.infra, &ctx.spectral)?;
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(DunklError::Degenerate(format!("{}: normalizing norm is {scale}", f.id)));
    }
    let mut g = f.scaled(1.0 / scale);
    g.id = f.id.clone();
    Ok(g)
}

/// max over the normalized corpus of LHS/‖f‖_p^p at the given a.
pub fn trudinger_sup_ratio(normalized: &[TestFunction], a: f64, p: f64, infra: &Infra) -> Result<f64> {
    let mut best = 0.0f64;
    for g in normalized {
        let lhs = trudinger_lhs(g, a, p, infra, SERIES_CAP)?;
        let np = lp_norm_of(g, Op::Value, p, 0.0, infra)?.powf(p);
        best = best.max(lhs / np);
    }
    Ok(best)
}

/// Largest a ∈ (0, a_max] (to relative precision 1e-6) keeping the corpus ratio ≤ bound, or
/// `None` if even a → 0 exceeds it. The ratio is increasing in a.
pub fn trudinger_threshold(corpus: &[TestFunction], p: f64, bound: f64, a_max: f64, ctx: &EvalContext) -> Result<Option<f64>> {
    if corpus.is_empty() {
        return Err(DunklError::Empty("corpus is empty".into()));
    }
    let normalized: Vec<TestFunction> = corpus.iter().map(|f| trudinger_normalize(f, p, ctx)).collect::<Result<_>>()?;
    let ok = |a: f64| -> Result<bool> {
        match trudinger_sup_ratio(&normalized, a, p, &ctx.infra) {
            Ok(r) => Ok(r <= bound),
            Err(DunklError::SeriesCap { .. }) | Err(DunklError::Evaluation(_)) => Ok(false),
            Err(e) => Err(e),
        }
    };
    if ok(a_max)? {
        return Ok(Some(a_max));
    }
    let (mut lo, mut hi) = (0.0, a_max);
    if !ok(a_max * 1e-9)? {
        return Ok(None);
    }
    while hi - lo > 1e-6 * hi {
        let mid = 0.5 * (lo + hi);
        if ok(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(lo))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remainder_matches_both_branches() {
        for j0 in 0..5 {
            for &x in &[1e-3f64, 0.3, 1.0, 2.5, 4.9, 5.1, 9.0] {
                let direct: f64 = x.exp() - (0..j0).map(|j| x.powi(j as i32) / (1..=j).product::<usize>() as f64).sum::<f64>();
                let v = exp_remainder(x, j0, SERIES_CAP).unwrap();
                assert!((v - direct).abs() <= 1e-12 * direct.abs().max(1e-300) + 1e-15, "j0={j0} x={x}: {v} vs {direct}");
            }
        }
        // tiny x keeps full relative precision: e^x − 1 − x ≈ x²/2
        let v = exp_remainder(1e-6, 2, SERIES_CAP).unwrap();
        assert!((v / (0.5e-12) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn subtracted_term_count() {
        assert_eq!(subtracted_terms(2.0), 1);
        assert_eq!(subtracted_terms(1.5), 1);
        assert_eq!(subtracted_terms(3.0), 2);
        assert_eq!(subtracted_terms(3.2), 3);
    }

    #[test]
    fn cap_is_reported() {
        assert!(matches!(exp_remainder(3.0, 3, 2), Err(DunklError::SeriesCap { .. })));
    }
}
