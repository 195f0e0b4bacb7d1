//! Test functions: radial (or, in rank one, even/odd) profiles with exact derivatives.
//!
//! Gaussian-type members are finite sums c·|t|^e·sgn(t)^o·e^{−λt²/2}, on which the Dunkl
//! gradient and Laplacian act in closed form. Bumps and inverse powers are differentiated
//! through jets.

use super::quadrature::{RadialDomain, Setting};
use crate::error::{DunklError, Result};
use crate::jet::Jet;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// One term c·|t|^power·sgn(t)^odd of a Gaussian series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coef: f64,
    pub power: f64,
    #[serde(default)]
    pub odd: bool,
}

impl Term {
    pub fn even(coef: f64, power: f64) -> Self {
        Term { coef, power, odd: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Shape {
    /// e^{−λt²/2} Σ terms.
    Series { lambda: f64, terms: Vec<Term> },
    /// exp(1 − R²/(R² − r²)) on r < R.
    RadialBump { radius: f64 },
    /// exp(1 − w²/((r − r₁)(r₂ − r))) on r₁ < r < r₂, w = (r₂ − r₁)/2.
    AnnularBump { inner: f64, outer: f64 },
    /// (1 + (r/scale)²)^{−β}.
    InversePower { beta: f64, scale: f64 },
    Sum { parts: Vec<(f64, Shape)> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FunctionFamily {
    Gaussian,
    DilatedGaussian,
    HermiteGaussian,
    RadialBump,
    AnnularBump,
    SeededSuperposition,
    /// |x|^β e^{−|x|²/(2σ²)}, used by extremal searches.
    PowerGaussian,
    /// (1 + |x|²/σ²)^{−β}, used by extremal searches.
    InversePower,
}

impl fmt::Display for FunctionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FunctionFamily::Gaussian => "gaussian",
            FunctionFamily::DilatedGaussian => "dilated-gaussian",
            FunctionFamily::HermiteGaussian => "hermite-gaussian",
            FunctionFamily::RadialBump => "radial-bump",
            FunctionFamily::AnnularBump => "annular-bump",
            FunctionFamily::SeededSuperposition => "superposition",
            FunctionFamily::PowerGaussian => "power-gaussian",
            FunctionFamily::InversePower => "inverse-power",
        };
        f.write_str(s)
    }
}

/// Which derived quantity of a test function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Value,
    /// T f in rank one (signed), ∂_r f for radial functions.
    Gradient,
    /// Δ_k^j.
    Laplacian(u32),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub id: String,
    pub family: FunctionFamily,
    pub params: BTreeMap<String, f64>,
    pub shape: Shape,
}

impl TestFunction {
    pub fn new(id: impl Into<String>, family: FunctionFamily, params: &[(&str, f64)], shape: Shape) -> Self {
        TestFunction {
            id: id.into(),
            family,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            shape,
        }
    }

    /// e^{−|x|²/(2σ²)}.
    pub fn gaussian(sigma: f64) -> Self {
        Self::new(
            format!("gaussian-s{sigma}"),
            FunctionFamily::Gaussian,
            &[("sigma", sigma)],
            Shape::Series { lambda: 1.0 / (sigma * sigma), terms: vec![Term::even(1.0, 0.0)] },
        )
    }

    /// Polynomial p(t/σ) times e^{−t²/(2σ²)}; `coefs[m]` multiplies (t/σ)^m, odd m give odd terms.
    pub fn hermite_gaussian(coefs: &[f64], sigma: f64) -> Self {
        let terms = coefs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(m, &c)| Term { coef: c / sigma.powi(m as i32), power: m as f64, odd: m % 2 == 1 })
            .collect();
        let mut params = vec![("sigma", sigma)];
        let names: Vec<String> = (0..coefs.len()).map(|m| format!("c{m}")).collect();
        for (n, c) in names.iter().zip(coefs) {
            params.push((n.as_str(), *c));
        }
        Self::new(
            format!("hermite-gaussian-d{}-s{sigma}", coefs.len().saturating_sub(1)),
            FunctionFamily::HermiteGaussian,
            &params,
            Shape::Series { lambda: 1.0 / (sigma * sigma), terms },
        )
    }

    /// |x|^β e^{−|x|²/(2σ²)}.
    pub fn power_gaussian(beta: f64, sigma: f64) -> Self {
        Self::new(
            format!("power-gaussian-b{beta}-s{sigma}"),
            FunctionFamily::PowerGaussian,
            &[("beta", beta), ("sigma", sigma)],
            Shape::Series { lambda: 1.0 / (sigma * sigma), terms: vec![Term::even(1.0, beta)] },
        )
    }

    pub fn radial_bump(radius: f64) -> Self {
        Self::new(format!("radial-bump-r{radius}"), FunctionFamily::RadialBump, &[("radius", radius)], Shape::RadialBump { radius })
    }

    pub fn annular_bump(inner: f64, outer: f64) -> Self {
        assert!(0.0 < inner && inner < outer);
        Self::new(
            format!("annular-bump-{inner}-{outer}"),
            FunctionFamily::AnnularBump,
            &[("inner", inner), ("outer", outer)],
            Shape::AnnularBump { inner, outer },
        )
    }

    pub fn inverse_power(beta: f64, scale: f64) -> Self {
        Self::new(
            format!("inverse-power-b{beta}-s{scale}"),
            FunctionFamily::InversePower,
            &[("beta", beta), ("scale", scale)],
            Shape::InversePower { beta, scale },
        )
    }

    /// f(λ·).
    pub fn dilate(&self, lambda: f64) -> Self {
        assert!(lambda > 0.0);
        let mut out = self.clone();
        out.shape = dilate_shape(&self.shape, lambda);
        out.id = format!("{}@x{lambda}", self.id);
        out
    }

    /// c·f.
    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.shape = match &self.shape {
            Shape::Series { lambda, terms } => Shape::Series {
                lambda: *lambda,
                terms: terms.iter().map(|t| Term { coef: c * t.coef, ..*t }).collect(),
            },
            Shape::Sum { parts } => Shape::Sum { parts: parts.iter().map(|(w, s)| (c * w, s.clone())).collect() },
            s => Shape::Sum { parts: vec![(c, s.clone())] },
        };
        out.id = format!("{}*{c}", self.id);
        out
    }

    pub fn is_radial(&self) -> bool {
        shape_is_radial(&self.shape)
    }

    /// f(0) = 0 (the profile vanishes to positive order at the origin).
    pub fn vanishes_at_origin(&self) -> bool {
        origin_power(&self.shape, Op::Value) > 0.0
    }

    /// Support bounded away from the origin, so f ∈ C_c^∞(ℝ^N∖{0}).
    pub fn supported_away_from_origin(&self) -> bool {
        origin_power(&self.shape, Op::Value).is_infinite()
    }

    pub fn has_compact_support(&self) -> bool {
        shape_compact(&self.shape)
    }

    /// Smooth at the origin (no fractional powers |x|^β with β ∉ 2ℕ among radial terms).
    pub fn is_smooth(&self) -> bool {
        shape_smooth(&self.shape)
    }

    /// Leading power r^ρ of f, ∇f or Δ^j f at the origin (∞ when it vanishes near 0).
    pub fn origin_power(&self, op: Op) -> f64 {
        origin_power(&self.shape, op)
    }

    /// Power law at infinity of the derived quantity, `None` for faster-than-polynomial decay.
    pub fn tail_power(&self, op: Op) -> Option<f64> {
        tail_power(&self.shape, op)
    }

    pub fn decay_scale(&self) -> f64 {
        decay_scale(&self.shape)
    }

    /// Radial integration domain: the support, or [0, r_factor·scale] plus a mapped tail.
    pub fn radial_domain(&self, r_factor: f64) -> RadialDomain {
        radial_domain(&self.shape, r_factor)
    }

    /// Frequency beyond which the transform is negligible; scales inversely with the function.
    pub fn spectral_extent(&self, r_factor: f64) -> f64 {
        spectral_extent(&self.shape, r_factor)
    }

    /// Evaluator for f or a derived quantity in the given setting. The argument is t ∈ ℝ in rank
    /// one and r ≥ 0 in the radial setting.
    pub fn profile(&self, op: Op, setting: &Setting) -> Result<Profile> {
        if let Setting::Radial { .. } = setting {
            if !self.is_radial() {
                return Err(DunklError::InvalidInput(format!(
                    "{} has odd terms; only radial functions are supported for N ≥ 2",
                    self.id
                )));
            }
        }
        let d = setting.radial_exponent();
        let rank1 = matches!(setting, Setting::Rank1 { .. });
        let mut pieces = Vec::new();
        collect_pieces(&self.shape, 1.0, op, d, rank1, &mut pieces);
        Ok(Profile { pieces, rank1 })
    }

    /// Δ_k^j f as a new test function; only Gaussian series are closed under Δ_k.
    pub fn laplacian_power(&self, j: u32, setting: &Setting) -> Result<TestFunction> {
        let Shape::Series { lambda, terms } = &self.shape else {
            return Err(DunklError::InvalidInput(format!("{}: Δ_k^j is symbolic only for Gaussian series", self.id)));
        };
        if matches!(setting, Setting::Radial { .. }) && !self.is_radial() {
            return Err(DunklError::InvalidInput(format!("{} is not radial", self.id)));
        }
        let rank1 = matches!(setting, Setting::Rank1 { .. });
        let mut t = terms.clone();
        for _ in 0..j {
            t = series_laplacian(*lambda, &t, setting.radial_exponent(), rank1);
        }
        let mut out = self.clone();
        out.shape = Shape::Series { lambda: *lambda, terms: t };
        out.id = format!("lap{j}({})", self.id);
        Ok(out)
    }

    /// f(x) for x ∈ ℝ^N (radial in N ≥ 2).
    pub fn eval_point(&self, x: &[f64]) -> f64 {
        let t = if x.len() == 1 { x[0] } else { x.iter().map(|v| v * v).sum::<f64>().sqrt() };
        let mut pieces = Vec::new();
        collect_pieces(&self.shape, 1.0, Op::Value, 0.0, x.len() == 1, &mut pieces);
        Profile { pieces, rank1: x.len() == 1 }.eval(t)
    }
}

fn dilate_shape(s: &Shape, l: f64) -> Shape {
    match s {
        Shape::Series { lambda, terms } => Shape::Series {
            lambda: lambda * l * l,
            terms: terms.iter().map(|t| Term { coef: t.coef * l.powf(t.power), ..*t }).collect(),
        },
        Shape::RadialBump { radius } => Shape::RadialBump { radius: radius / l },
        Shape::AnnularBump { inner, outer } => Shape::AnnularBump { inner: inner / l, outer: outer / l },
        Shape::InversePower { beta, scale } => Shape::InversePower { beta: *beta, scale: scale / l },
        Shape::Sum { parts } => Shape::Sum { parts: parts.iter().map(|(w, p)| (*w, dilate_shape(p, l))).collect() },
    }
}

fn shape_is_radial(s: &Shape) -> bool {
    match s {
        Shape::Series { terms, .. } => terms.iter().all(|t| !t.odd),
        Shape::Sum { parts } => parts.iter().all(|(_, p)| shape_is_radial(p)),
        _ => true,
    }
}

fn shape_compact(s: &Shape) -> bool {
    match s {
        Shape::RadialBump { .. } | Shape::AnnularBump { .. } => true,
        Shape::Sum { parts } => parts.iter().all(|(_, p)| shape_compact(p)),
        _ => false,
    }
}

fn shape_smooth(s: &Shape) -> bool {
    match s {
        Shape::Series { terms, .. } => terms.iter().all(|t| {
            t.power >= 0.0 && t.power.fract() == 0.0 && (t.power as i64 % 2 == 1) == t.odd
        }),
        Shape::Sum { parts } => parts.iter().all(|(_, p)| shape_smooth(p)),
        _ => true,
    }
}

fn origin_power(s: &Shape, op: Op) -> f64 {
    match s {
        Shape::Series { .. } => {
            // exact: derived series' lowest power (the setting only changes coefficients,
            // except for cancellations which we ignore)
            let mut pieces = Vec::new();
            collect_pieces(s, 1.0, op, 1.0, true, &mut pieces);
            pieces.iter().map(|(_, p)| p.origin_power()).fold(f64::INFINITY, f64::min)
        }
        Shape::AnnularBump { .. } => f64::INFINITY,
        Shape::RadialBump { .. } | Shape::InversePower { .. } => match op {
            Op::Gradient => 1.0,
            _ => 0.0,
        },
        Shape::Sum { parts } => parts.iter().map(|(_, p)| origin_power(p, op)).fold(f64::INFINITY, f64::min),
    }
}

fn tail_power(s: &Shape, op: Op) -> Option<f64> {
    match s {
        Shape::InversePower { beta, .. } => Some(
            -2.0 * beta
                - match op {
                    Op::Value => 0.0,
                    Op::Gradient => 1.0,
                    Op::Laplacian(j) => 2.0 * j as f64,
                },
        ),
        Shape::Sum { parts } => parts.iter().filter_map(|(_, p)| tail_power(p, op)).reduce(f64::max),
        _ => None,
    }
}

fn decay_scale(s: &Shape) -> f64 {
    match s {
        Shape::Series { lambda, .. } => 1.0 / lambda.sqrt(),
        Shape::RadialBump { radius } => *radius,
        Shape::AnnularBump { outer, .. } => *outer,
        Shape::InversePower { scale, .. } => *scale,
        Shape::Sum { parts } => parts.iter().map(|(_, p)| decay_scale(p)).fold(0.0, f64::max),
    }
}

/// Beyond ~200 inverse widths the transform of a C_c^∞ bump is below 1e-8 of its peak.
const BUMP_SPECTRAL_WIDTHS: f64 = 200.0;

fn spectral_extent(s: &Shape, r_factor: f64) -> f64 {
    match s {
        Shape::Series { lambda, terms } => {
            let emax = terms.iter().map(|t| t.power).fold(0.0, f64::max);
            let extra = if emax > r_factor { (2.0 * emax).sqrt() } else { 0.0 };
            (r_factor + extra) * lambda.sqrt()
        }
        Shape::RadialBump { radius } => BUMP_SPECTRAL_WIDTHS / radius,
        Shape::AnnularBump { inner, outer } => 2.0 * BUMP_SPECTRAL_WIDTHS / (outer - inner),
        Shape::InversePower { scale, .. } => 40.0 / scale,
        Shape::Sum { parts } => parts.iter().map(|(_, p)| spectral_extent(p, r_factor)).fold(0.0, f64::max),
    }
}

fn radial_domain(s: &Shape, r_factor: f64) -> RadialDomain {
    match s {
        Shape::Series { lambda, terms } => {
            let emax = terms.iter().map(|t| t.power).fold(0.0, f64::max);
            let extra = if emax > r_factor { (2.0 * emax).sqrt() } else { 0.0 };
            RadialDomain { lo: 0.0, hi: (r_factor + extra) / lambda.sqrt(), tail_power: None }
        }
        Shape::RadialBump { radius } => RadialDomain { lo: 0.0, hi: *radius, tail_power: None },
        Shape::AnnularBump { inner, outer } => RadialDomain { lo: *inner, hi: *outer, tail_power: None },
        Shape::InversePower { beta, scale } => {
            RadialDomain { lo: 0.0, hi: r_factor * scale, tail_power: Some(-2.0 * beta) }
        }
        Shape::Sum { parts } => {
            let doms: Vec<RadialDomain> = parts.iter().map(|(_, p)| radial_domain(p, r_factor)).collect();
            let tail = doms.iter().filter_map(|d| d.tail_power).reduce(f64::max);
            let with_tail = doms.iter().filter(|d| d.tail_power.is_some()).map(|d| d.hi).fold(0.0, f64::max);
            let hi = doms.iter().map(|d| d.hi).fold(0.0, f64::max);
            RadialDomain {
                lo: doms.iter().map(|d| d.lo).fold(f64::INFINITY, f64::min),
                // the mapped tail must start beyond every compactly supported or Gaussian piece
                hi: if tail.is_some() { hi.max(with_tail) } else { hi },
                tail_power: tail,
            }
        }
    }
}

/// A derived quantity as a sum of weighted pieces.
#[derive(Debug, Clone)]
pub struct Profile {
    pieces: Vec<(f64, Piece)>,
    rank1: bool,
}

#[derive(Debug, Clone)]
enum Piece {
    Series { lambda: f64, terms: Vec<Term> },
    Smooth { shape: Shape, op: Op, d: f64 },
}

impl Piece {
    fn origin_power(&self) -> f64 {
        match self {
            Piece::Series { terms, .. } => terms.iter().map(|t| t.power).fold(f64::INFINITY, f64::min),
            Piece::Smooth { shape, op, .. } => origin_power(shape, *op),
        }
    }
}

impl Profile {
    pub fn eval(&self, t: f64) -> f64 {
        self.pieces.iter().map(|(w, p)| w * eval_piece(p, t, self.rank1)).sum()
    }

    pub fn origin_power(&self) -> f64 {
        self.pieces.iter().map(|(_, p)| p.origin_power()).fold(f64::INFINITY, f64::min)
    }
}

fn eval_piece(p: &Piece, t: f64, rank1: bool) -> f64 {
    match p {
        Piece::Series { lambda, terms } => {
            let a = t.abs();
            let g = (-0.5 * lambda * t * t).exp();
            if g == 0.0 {
                return 0.0;
            }
            let s: f64 = terms
                .iter()
                .map(|term| {
                    let v = term.coef * if term.power == 0.0 { 1.0 } else { a.powf(term.power) };
                    if term.odd && t < 0.0 {
                        -v
                    } else {
                        v
                    }
                })
                .sum();
            s * g
        }
        Piece::Smooth { shape, op, d } => {
            let r = t.abs();
            let v = eval_smooth(shape, *op, *d, r);
            if rank1 && *op == Op::Gradient && t < 0.0 {
                -v
            } else {
                v
            }
        }
    }
}

/// Jet of a non-series profile at r, of the given order.
fn shape_jet(shape: &Shape, r: f64, order: usize) -> Jet {
    let x = Jet::variable(r, order);
    match *shape {
        Shape::RadialBump { radius } => {
            if r >= radius {
                return Jet::constant(0.0, order);
            }
            let u = &(&x * &x).scale(-1.0 / (radius * radius)) + 1.0;
            (&u.recip().scale(-1.0) + 1.0).exp()
        }
        Shape::AnnularBump { inner, outer } => {
            if r <= inner || r >= outer {
                return Jet::constant(0.0, order);
            }
            let w = 0.5 * (outer - inner);
            let q = &(&x + (-inner)) * &(&x.scale(-1.0) + outer);
            (&q.recip().scale(-w * w) + 1.0).exp()
        }
        Shape::InversePower { beta, scale } => {
            let u = &(&x * &x).scale(1.0 / (scale * scale)) + 1.0;
            u.powf(-beta)
        }
        _ => unreachable!("series shapes are handled symbolically"),
    }
}

fn eval_smooth(shape: &Shape, op: Op, d: f64, r: f64) -> f64 {
    match op {
        Op::Value => shape_jet(shape, r, 0).value(),
        Op::Gradient => shape_jet(shape, r, 1).derivative(1),
        Op::Laplacian(j) => {
            // even smooth profiles: evaluate slightly off the origin where 1/r is harmless
            let r = r.max(1e-6 * decay_scale(shape));
            let mut jet = shape_jet(shape, r, 2 * j as usize);
            for _ in 0..j {
                let m = jet.order();
                let d1 = jet.differentiate();
                let d2 = d1.differentiate();
                let inv = Jet::variable(r, m - 2).recip();
                jet = &d2 + &(&d1.truncate(m - 2) * &inv).scale(d);
            }
            jet.value()
        }
    }
}

fn collect_pieces(s: &Shape, w: f64, op: Op, d: f64, rank1: bool, out: &mut Vec<(f64, Piece)>) {
    match s {
        Shape::Series { lambda, terms } => {
            let terms = match op {
                Op::Value => terms.clone(),
                Op::Gradient => series_gradient(*lambda, terms, d, rank1),
                Op::Laplacian(j) => {
                    let mut t = terms.clone();
                    for _ in 0..j {
                        t = series_laplacian(*lambda, &t, d, rank1);
                    }
                    t
                }
            };
            out.push((w, Piece::Series { lambda: *lambda, terms }));
        }
        Shape::Sum { parts } => {
            for (c, p) in parts {
                collect_pieces(p, w * c, op, d, rank1, out);
            }
        }
        other => out.push((w, Piece::Smooth { shape: other.clone(), op, d })),
    }
}

/// Merges equal powers and drops cancelled terms.
fn simplify(mut terms: Vec<Term>) -> Vec<Term> {
    terms.sort_by(|a, b| a.power.total_cmp(&b.power).then(a.odd.cmp(&b.odd)));
    let mut out: Vec<Term> = Vec::new();
    for t in terms {
        if let Some(last) = out.last_mut() {
            if last.odd == t.odd && (last.power - t.power).abs() < 1e-12 {
                last.coef += t.coef;
                continue;
            }
        }
        out.push(t);
    }
    let scale = out.iter().map(|t| t.coef.abs()).fold(0.0, f64::max);
    out.retain(|t| t.coef.abs() > 1e-14 * scale);
    out
}

/// T in rank one (d = 2k), ∂_r for radial functions.
fn series_gradient(lambda: f64, terms: &[Term], d: f64, rank1: bool) -> Vec<Term> {
    let mut out = Vec::new();
    for t in terms {
        let flip = if rank1 { !t.odd } else { false };
        out.push(Term { coef: t.coef * t.power, power: t.power - 1.0, odd: flip });
        out.push(Term { coef: -lambda * t.coef, power: t.power + 1.0, odd: flip });
        if rank1 && t.odd {
            // k (f(t) − f(−t))/t with 2k = d
            out.push(Term { coef: d * t.coef, power: t.power - 1.0, odd: false });
        }
    }
    simplify(out)
}

/// Δ_k on a Gaussian series. Rank one: T∘T; radial: f'' + d f'/r applied termwise.
fn series_laplacian(lambda: f64, terms: &[Term], d: f64, rank1: bool) -> Vec<Term> {
    if rank1 {
        return series_gradient(lambda, &series_gradient(lambda, terms, d, true), d, true);
    }
    let mut out = Vec::new();
    for t in terms {
        let e = t.power;
        out.push(Term::even(t.coef * e * (e - 1.0 + d), e - 2.0));
        out.push(Term::even(-lambda * t.coef * (2.0 * e + 1.0 + d), e));
        out.push(Term::even(lambda * lambda * t.coef, e + 2.0));
    }
    simplify(out)
}
