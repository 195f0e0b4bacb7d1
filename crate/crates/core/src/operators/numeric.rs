//! Dunkl operators on callable functions by finite differences.

use crate::error::{DunklError, Result};
use crate::measure::WeightedQuadrature;
use crate::rootsys::RootSystem;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    CompactSupport,
    SchwartzLike,
}

/// A real function on ℝ^N given by a closure.
#[derive(Clone)]
pub struct CallableField {
    evaluator: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    pub hint: Smoothness,
    pub decay_scale: f64,
}

impl fmt::Debug for CallableField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CallableField").field("hint", &self.hint).field("decay_scale", &self.decay_scale).finish()
    }
}

impl CallableField {
    pub fn new(hint: Smoothness, decay_scale: f64, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        assert!(decay_scale > 0.0);
        CallableField { evaluator: Arc::new(f), hint, decay_scale }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.evaluator)(x)
    }

    fn checked(&self, x: &[f64]) -> Result<f64> {
        let v = self.eval(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(DunklError::Evaluation(format!("{x:?}")))
        }
    }
}

/// Default step 1e-5·(1+|x|).
pub fn default_step(x: &[f64]) -> f64 {
    1e-5 * (1.0 + norm(x))
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn along(y: &[f64], dir: &[f64], u: f64) -> Vec<f64> {
    y.iter().zip(dir).map(|(a, d)| a + u * d).collect()
}

/// Unit root α̂, the coordinate s = ⟨α̂, x⟩, and the projection y = x − sα̂ onto the hyperplane.
fn split(alpha: &[f64], x: &[f64]) -> (Vec<f64>, f64, Vec<f64>) {
    let na = norm(alpha);
    let unit: Vec<f64> = alpha.iter().map(|a| a / na).collect();
    let s = dot(&unit, x);
    let y = along(x, &unit, -s);
    (unit, s, y)
}

/// ∇_k f(x) with central differences of step h for the partials.
pub fn dunkl_gradient_num(rs: &RootSystem, f: &CallableField, x: &[f64], h: f64) -> Result<Vec<f64>> {
    if !(h > 0.0) {
        return Err(DunklError::InvalidInput("step must be positive".into()));
    }
    if x.len() != rs.dim() {
        return Err(DunklError::InvalidInput(format!("point has {} coordinates, expected {}", x.len(), rs.dim())));
    }
    let n = rs.dim();
    let mut grad = vec![0.0; n];
    for (i, g) in grad.iter_mut().enumerate() {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[i] += h;
        xm[i] -= h;
        *g = (f.checked(&xp)? - f.checked(&xm)?) / (2.0 * h);
    }
    for (alpha, &k) in rs.positive_roots().iter().zip(rs.multiplicities()) {
        if k == 0.0 {
            continue;
        }
        let (unit, s, y) = split(alpha, x);
        // (f(x) − f(σ_α x)) / ⟨α, x⟩ = (ψ(s) − ψ(−s)) / (|α| s) with ψ(u) = f(y + u α̂)
        let quotient = if s.abs() < h {
            (f.checked(&along(&y, &unit, h))? - f.checked(&along(&y, &unit, -h))?) / h
        } else {
            (f.checked(&along(&y, &unit, s))? - f.checked(&along(&y, &unit, -s))?) / s
        } / norm(alpha);
        for (g, a) in grad.iter_mut().zip(alpha) {
            *g += k * a * quotient;
        }
    }
    Ok(grad)
}

/// Δ_k f(x) = Δf + Σ k_α [2ψ'(s)/s − (ψ(s) − ψ(−s))/s²], with second differences of step h.
///
/// Within |s| < h of a hyperplane the bracket is interpolated linearly between s = ±h.
pub fn dunkl_laplacian_num(rs: &RootSystem, f: &CallableField, x: &[f64], h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(DunklError::InvalidInput("step must be positive".into()));
    }
    if x.len() != rs.dim() {
        return Err(DunklError::InvalidInput(format!("point has {} coordinates, expected {}", x.len(), rs.dim())));
    }
    let f0 = f.checked(x)?;
    let mut lap = 0.0;
    for i in 0..rs.dim() {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[i] += h;
        xm[i] -= h;
        lap += (f.checked(&xp)? - 2.0 * f0 + f.checked(&xm)?) / (h * h);
    }
    for (alpha, &k) in rs.positive_roots().iter().zip(rs.multiplicities()) {
        if k == 0.0 {
            continue;
        }
        let (unit, s, y) = split(alpha, x);
        let psi = |u: f64| f.checked(&along(&y, &unit, u));
        let bracket = |u: f64| -> Result<f64> {
            let dpsi = (psi(u + h)? - psi(u - h)?) / (2.0 * h);
            Ok(2.0 * dpsi / u - (psi(u)? - psi(-u)?) / (u * u))
        };
        let term = if s.abs() < 2.0 * h {
            let (bp, bm) = (bracket(2.0 * h)?, bracket(-2.0 * h)?);
            0.5 * (bp + bm) + s * (bp - bm) / (4.0 * h)
        } else {
            bracket(s)?
        };
        lap += k * term;
    }
    Ok(lap)
}

/// Result of an integration-by-parts check.
#[derive(Debug, Clone, PartialEq)]
pub struct IbpReport {
    /// |∫ T_i f · g dμ_k + ∫ f · T_i g dμ_k|.
    pub residual: f64,
    /// ∫ |T_i f · g| dμ_k + ∫ |f · T_i g| dμ_k, for scaling the residual.
    pub scale: f64,
    pub warnings: Vec<String>,
}

/// Skew-adjointness of T_i against μ_k, checked by quadrature. `i` is zero-based.
pub fn integration_by_parts_residual(
    rs: &RootSystem,
    f: &CallableField,
    g: &CallableField,
    quad: &WeightedQuadrature,
    i: usize,
) -> Result<IbpReport> {
    if i >= rs.dim() {
        return Err(DunklError::InvalidInput(format!("coordinate index {i} out of range")));
    }
    if quad.radial_only || quad.dim != rs.dim() {
        return Err(DunklError::UnsupportedFamily(
            "integration by parts needs a full quadrature in the same dimension".into(),
        ));
    }
    let mut total = 0.0;
    let mut scale = 0.0;
    let mut boundary = 0.0f64;
    let r_edge = 0.95 * quad.spec.r_max;
    for (x, &w) in quad.nodes.iter().zip(&quad.weights) {
        let tf = dunkl_gradient_num(rs, f, x, default_step(x))?[i];
        let tg = dunkl_gradient_num(rs, g, x, default_step(x))?[i];
        let (fv, gv) = (f.checked(x)?, g.checked(x)?);
        let a = tf * gv;
        let b = fv * tg;
        total += w * (a + b);
        scale += w * (a.abs() + b.abs());
        if norm(x) > r_edge {
            boundary = boundary.max((fv * gv).abs() * quad.spec.r_max.powi(quad.dim as i32 - 1));
        }
    }
    let mut warnings = quad.warnings.clone();
    if boundary > 1e-8 * scale {
        warnings.push(format!(
            "integrand does not decay inside R_max = {}: boundary mass {boundary:.3e}",
            quad.spec.r_max
        ));
    }
    Ok(IbpReport { residual: total.abs(), scale, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{build_quadrature, QuadratureSpec, Scheme};
    use crate::operators::poly::{dunkl_apply_poly, dunkl_laplacian_poly, Polynomial};
    use crate::rootsys::{build_root_system, Family};

    fn gaussian() -> CallableField {
        CallableField::new(Smoothness::SchwartzLike, 1.0, |x: &[f64]| {
            (-0.5 * x.iter().map(|v| v * v).sum::<f64>()).exp()
        })
    }

    #[test]
    fn radial_gaussian_gradient_has_no_difference_part() {
        let rs = build_root_system(Family::SymmetricGroupA, 3, &[0.7]).unwrap();
        let x = [0.3, -0.8, 1.1];
        let g = dunkl_gradient_num(&rs, &gaussian(), &x, default_step(&x)).unwrap();
        let e = (-0.5 * x.iter().map(|v| v * v).sum::<f64>()).exp();
        for i in 0..3 {
            assert!((g[i] + x[i] * e).abs() < 1e-9);
        }
    }

    #[test]
    fn matches_polynomial_path_including_near_hyperplane() {
        let rs = build_root_system(Family::DihedralI2m { m: 3 }, 2, &[0.6]).unwrap();
        let p = Polynomial::from_terms(2, [(vec![3, 1], 1.0), (vec![0, 2], -0.5), (vec![1, 0], 2.0)]);
        let pc = p.clone();
        let f = CallableField::new(Smoothness::Smooth, 1.0, move |x: &[f64]| pc.eval(x));
        // second point sits 1e-9 off the mirror of the root at angle 2π/3
        let (c, s) = (0.9 * (std::f64::consts::PI / 6.0).cos(), 0.9 * (std::f64::consts::PI / 6.0).sin());
        let near = [c - 0.5e-9, s + 0.5e-9 * 3f64.sqrt()];
        for x in [[0.4, -0.7], near] {
            let g = dunkl_gradient_num(&rs, &f, &x, default_step(&x)).unwrap();
            for (i, gi) in g.iter().enumerate() {
                let exact = dunkl_apply_poly(&rs, i, &p).eval(&x);
                assert!((gi - exact).abs() < 1e-7, "{gi} vs {exact}");
            }
            let lap = dunkl_laplacian_num(&rs, &f, &x, 1e-3).unwrap();
            let exact = dunkl_laplacian_poly(&rs, &p).eval(&x);
            assert!((lap - exact).abs() < 1e-4 * (1.0 + exact.abs()), "{lap} vs {exact}");
        }
    }

    #[test]
    fn gradient_error_is_second_order() {
        let rs = build_root_system(Family::Rank1Z2, 1, &[0.8]).unwrap();
        let f = CallableField::new(Smoothness::Smooth, 1.0, |x: &[f64]| (1.3 * x[0]).sin() + x[0].powi(2));
        let x = [0.7];
        // T f = f' + k (f(x) − f(−x))/x with α = √2: the difference part is exact here
        let exact = 1.3 * (1.3f64 * 0.7).cos() + 1.4 + 0.8 * 2.0 * (1.3f64 * 0.7).sin() / 0.7;
        let e1 = (dunkl_gradient_num(&rs, &f, &x, 1e-2).unwrap()[0] - exact).abs();
        let e2 = (dunkl_gradient_num(&rs, &f, &x, 5e-3).unwrap()[0] - exact).abs();
        assert!(e1 / e2 > 3.5 && e1 / e2 < 4.5, "ratio {}", e1 / e2);
    }

    #[test]
    fn integration_by_parts_rank_one() {
        let rs = build_root_system(Family::Rank1Z2, 1, &[0.5]).unwrap();
        let q = build_quadrature(&rs, QuadratureSpec { scheme: Scheme::TensorGaussLike, r_max: 12.0, resolution: 256 }).unwrap();
        let odd = CallableField::new(Smoothness::SchwartzLike, 1.0, |x: &[f64]| x[0] * (-0.5 * x[0] * x[0]).exp());
        let r = integration_by_parts_residual(&rs, &gaussian(), &gaussian(), &q, 0).unwrap();
        assert!(r.residual < 1e-6 && r.warnings.is_empty());
        let r = integration_by_parts_residual(&rs, &odd, &gaussian(), &q, 0).unwrap();
        assert!(r.residual < 1e-6, "{}", r.residual);
    }

    #[test]
    fn slow_decay_triggers_boundary_warning() {
        let rs = build_root_system(Family::Rank1Z2, 1, &[0.0]).unwrap();
        let q = build_quadrature(&rs, QuadratureSpec { scheme: Scheme::TensorGaussLike, r_max: 4.0, resolution: 64 }).unwrap();
        let wide = CallableField::new(Smoothness::SchwartzLike, 3.0, |x: &[f64]| (-x[0] * x[0] / 18.0).exp());
        let r = integration_by_parts_residual(&rs, &wide, &wide, &q, 0).unwrap();
        assert!(!r.warnings.is_empty());
    }
}
