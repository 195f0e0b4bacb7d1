//! Integration against dμ_k = w_k(x) dx, weighted Lᵖ norms, and test-function corpora.

mod corpus;
mod quadrature;
mod testfn;

pub use corpus::{generate_corpus, CorpusConstraints};
pub use quadrature::{
    angular_rule, build_quadrature, macdonald_mehta, macdonald_mehta_closed_form, rank1_mehta, sphere_constant,
    HalfLineRule, QuadratureSpec, RadialDomain, Scheme, Setting, WeightedQuadrature, PANEL_ORDER,
};
pub use testfn::{FunctionFamily, Op, Profile, Shape, Term, TestFunction};

use crate::error::{DunklError, Result};
use serde::{Deserialize, Serialize};

/// Per-function integration parameters: the setting, nodes per radius, and the truncation
/// radius in units of the function's decay scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Infra {
    pub setting: Setting,
    pub resolution: usize,
    pub r_factor: f64,
}

impl Default for Infra {
    fn default() -> Self {
        Infra { setting: Setting::Rank1 { k: 0.0 }, resolution: 256, r_factor: 12.0 }
    }
}

impl Infra {
    pub fn new(setting: Setting) -> Self {
        Infra { setting, ..Default::default() }
    }

    pub fn with_resolution(mut self, resolution: usize) -> Self {
        self.resolution = resolution;
        self
    }
}

/// ∫ h(t) dμ_k for h built from a test function's profile. `origin_power` and `tail_power` describe h.
pub fn integrate_radial(
    f: &TestFunction,
    infra: &Infra,
    origin_power: f64,
    tail_power: Option<f64>,
    h: impl Fn(f64) -> f64,
) -> Result<f64> {
    let mut dom = f.radial_domain(infra.r_factor);
    dom.tail_power = dom.tail_power.and(tail_power);
    let e0 = infra.setting.radial_exponent();
    if dom.lo == 0.0 && origin_power.is_finite() && e0 + origin_power <= -1.0 {
        return Err(DunklError::NonIntegrable(format!(
            "{}: integrand ~ r^{} against r^{e0} dr; the function must vanish at the origin",
            f.id, origin_power
        )));
    }
    let rule = HalfLineRule::new(dom, e0, origin_power, infra.resolution)?;
    let v = infra.setting.integrate(&rule, h);
    if !v.is_finite() {
        return Err(DunklError::Evaluation(format!("integral of {} is not finite", f.id)));
    }
    Ok(v)
}

/// (∫ |x|^{ap} |D f|^p dμ_k)^{1/p} for the derived quantity D given by `op` (|∇_k f| for the gradient).
pub fn lp_norm_of(f: &TestFunction, op: Op, p: f64, a: f64, infra: &Infra) -> Result<f64> {
    if !(p > 0.0) {
        return Err(DunklError::InvalidInput(format!("exponent p = {p} must be positive")));
    }
    let prof = f.profile(op, &infra.setting)?;
    let rho = prof.origin_power();
    let origin = if rho.is_finite() { a * p + p * rho } else { 0.0 };
    let tail = f.tail_power(op).map(|t| a * p + p * t);
    let v = integrate_radial(f, infra, origin, tail, |t| {
        let v = prof.eval(t).abs();
        if v == 0.0 {
            0.0
        } else {
            t.abs().powf(a * p) * v.powf(p)
        }
    })?;
    Ok(v.powf(1.0 / p))
}

/// (∫ |x|^{ap}|f|^p dμ_k)^{1/p}; 0 < p < 1 gives the quasi-norm by the same formula.
pub fn weighted_lp_norm(f: &TestFunction, p: f64, a: f64, quad: &WeightedQuadrature) -> Result<f64> {
    lp_norm_of(f, Op::Value, p, a, &quad.infra())
}

/// CSV row {function_id, p, a, value}.
pub fn norm_csv_row(f: &TestFunction, p: f64, a: f64, value: f64) -> String {
    format!("{},{:.16e},{:.16e},{:.16e}", f.id, p, a, value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, Family};
    use crate::special::gamma;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_l2_norm_rank_one() {
        let rs = build_root_system(Family::Rank1Z2, 1, &[0.0]).unwrap();
        let q = build_quadrature(&rs, QuadratureSpec { scheme: Scheme::TensorGaussLike, r_max: 12.0, resolution: 256 }).unwrap();
        let v = weighted_lp_norm(&TestFunction::gaussian(1.0), 2.0, 0.0, &q).unwrap();
        assert_relative_eq!(v, PI.powf(0.25), max_relative = 1e-13);
        assert_eq!(weighted_lp_norm(&TestFunction::gaussian(1.0).scaled(0.0), 2.0, 1.0, &q).unwrap(), 0.0);
    }

    #[test]
    fn weighted_moment_closed_form() {
        // ∫ |x|^{ap} e^{−p r²/2} dμ_k in the radial setting = d · 2^{(E−1)/2} Γ((E+1)/2) p^{−(E+1)/2}
        let s = Setting::radial_flat(3);
        let infra = Infra::new(s);
        let (p, a) = (3.0, -0.8);
        let v = lp_norm_of(&TestFunction::gaussian(1.0), Op::Value, p, a, &infra).unwrap();
        let e = 2.0 + a * p;
        let exact = 4.0 * PI * 2f64.powf((e - 1.0) / 2.0) * gamma((e + 1.0) / 2.0) * p.powf(-(e + 1.0) / 2.0);
        assert_relative_eq!(v, exact.powf(1.0 / p), max_relative = 1e-12);
    }

    #[test]
    fn rejects_non_integrable_origin() {
        let infra = Infra::new(Setting::radial_flat(3));
        let g = TestFunction::gaussian(1.0);
        assert!(matches!(lp_norm_of(&g, Op::Value, 2.0, -1.6, &infra), Err(DunklError::NonIntegrable(_))));
        let ann = TestFunction::annular_bump(0.5, 2.0);
        assert!(lp_norm_of(&ann, Op::Value, 2.0, -5.0, &infra).unwrap() > 0.0);
    }

    #[test]
    fn dilation_law() {
        let infra = Infra::new(Setting::Rank1 { k: 0.8 });
        let n = 1.0 + 1.6;
        for f in [TestFunction::hermite_gaussian(&[1.0, 0.5, -0.3], 1.0), TestFunction::radial_bump(1.3), TestFunction::inverse_power(2.0, 1.0)] {
            let base = lp_norm_of(&f, Op::Value, 2.5, 0.0, &infra).unwrap();
            for l in [1.0 / 3.0, 2.0, 7.0] {
                let v = lp_norm_of(&f.dilate(l), Op::Value, 2.5, 0.0, &infra).unwrap();
                assert_relative_eq!(v, l.powf(-n / 2.5) * base, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn inverse_power_tail_is_integrated() {
        // ∫_{ℝ³} (1+r²)^{−4} dx = 2π B(3/2, 5/2)
        let infra = Infra::new(Setting::radial_flat(3));
        let v = lp_norm_of(&TestFunction::inverse_power(2.0, 1.0), Op::Value, 2.0, 0.0, &infra).unwrap();
        let exact = 2.0 * PI * gamma(1.5) * gamma(2.5) / gamma(4.0);
        assert_relative_eq!(v * v, exact, max_relative = 1e-12);
    }
}
