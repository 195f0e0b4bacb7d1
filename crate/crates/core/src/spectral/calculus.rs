//! Spectral multipliers: fractional powers of −Δ_k, Sobolev norms, Littlewood–Paley pieces and
//! the Riesz potential.

use super::transform::{dunkl_transform_reaching, dunkl_transform_with, PhysicalSamples, SpectralConfig, SpectralField};
use crate::error::{DunklError, Result};
use crate::measure::{lp_norm_of, Infra, Op, Setting, TestFunction};
use serde::{Deserialize, Serialize};

/// Physical reach (in truncation radii) used when a spectral result is brought back to ℝ^N.
pub const INVERSE_REACH: f64 = 4.0;

/// (−Δ_k)^{s/2}: multiplier |ξ|^s.
pub fn fractional_laplacian(field: &SpectralField, s: f64) -> Result<SpectralField> {
    if !(s >= 0.0) {
        return Err(DunklError::OutOfRange(format!("s = {s} must be nonnegative")));
    }
    if s == 0.0 {
        return Ok(field.clone());
    }
    Ok(field.map(|x| x.powf(s)))
}

/// (−Δ_k)^{s/2} f sampled on an extended physical grid.
pub fn fractional_laplacian_samples(
    f: &TestFunction,
    s: f64,
    setting: &Setting,
    cfg: &SpectralConfig,
) -> Result<PhysicalSamples> {
    let field = dunkl_transform_reaching(f, setting, cfg, s, INVERSE_REACH)?;
    let g = fractional_laplacian(&field, s)?;
    let rule = g.extended_unit_rule(INVERSE_REACH, cfg)?;
    Ok(g.inverse_on_unit_rule(&rule))
}

/// (∫ |D_k f(ξ)|² (1+|ξ|²)^s dμ_k(ξ))^{1/2}.
pub fn sobolev_norm(f: &TestFunction, s: f64, setting: &Setting, cfg: &SpectralConfig) -> Result<f64> {
    let field = dunkl_transform_with(f, setting, cfg, 0.0)?;
    Ok(field.weighted_l2(|x| (1.0 + x * x).powf(s / 2.0)))
}

/// ‖(−Δ_k)^{s/2} f‖₂ = (∫ |ξ|^{2s} |D_k f|² dμ_k)^{1/2}.
pub fn spectral_norm(f: &TestFunction, s: f64, setting: &Setting, cfg: &SpectralConfig) -> Result<f64> {
    let field = dunkl_transform_with(f, setting, cfg, 2.0 * s)?;
    Ok(field.weighted_l2(|x| x.powf(s)))
}

/// How a fractional norm was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormRoute {
    /// Plain Lᵖ norm (s = 0).
    Identity,
    /// ‖∇_k f‖₂ (s = 1, p = 2).
    Gradient,
    /// ‖Δ_k^j f‖_p by exact differentiation (s = 2j).
    IteratedLaplacian,
    /// Plancherel with the multiplier |ξ|^s (p = 2).
    Spectral,
    /// Multiplier, inverse transform, then the Lᵖ norm on an extended grid.
    SpectralInverse,
}

/// ‖(−Δ_k)^{s/2} f‖_p, routed through exact derivatives when s is an integer of the right kind.
pub fn fractional_norm(
    f: &TestFunction,
    s: f64,
    p: f64,
    infra: &Infra,
    cfg: &SpectralConfig,
) -> Result<(f64, NormRoute)> {
    if !(s >= 0.0) {
        return Err(DunklError::OutOfRange(format!("s = {s} must be nonnegative")));
    }
    if s == 0.0 {
        return Ok((lp_norm_of(f, Op::Value, p, 0.0, infra)?, NormRoute::Identity));
    }
    if s == 1.0 && p == 2.0 {
        return Ok((lp_norm_of(f, Op::Gradient, p, 0.0, infra)?, NormRoute::Gradient));
    }
    if s.fract() == 0.0 && (s as u32) % 2 == 0 {
        return Ok((lp_norm_of(f, Op::Laplacian(s as u32 / 2), p, 0.0, infra)?, NormRoute::IteratedLaplacian));
    }
    if p == 2.0 {
        return Ok((spectral_norm(f, s, &infra.setting, cfg)?, NormRoute::Spectral));
    }
    let g = fractional_laplacian_samples(f, s, &infra.setting, cfg)?;
    Ok((g.lp_norm(p), NormRoute::SpectralInverse))
}

/// Smooth step: 0 for u ≤ 0, 1 for u ≥ 1.
fn smooth_step(u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / u).exp();
    let b = (-1.0 / (1.0 - u)).exp();
    a / (a + b)
}

/// ψ(ξ) = χ(log₂ξ + 1) − χ(log₂ξ): smooth, supported in [1/2, 2], and Σ_j ψ(2^{−j}ξ) telescopes to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicPartition {
    pub j_min: i32,
    pub j_max: i32,
}

impl Default for DyadicPartition {
    fn default() -> Self {
        DyadicPartition { j_min: -6, j_max: 6 }
    }
}

impl DyadicPartition {
    pub fn new(j_min: i32, j_max: i32) -> Result<Self> {
        if j_min > j_max {
            return Err(DunklError::InvalidInput(format!("empty dyadic range [{j_min}, {j_max}]")));
        }
        Ok(DyadicPartition { j_min, j_max })
    }

    pub fn psi(t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let l = t.log2();
        smooth_step(l + 1.0) - smooth_step(l)
    }

    /// ψ_j(ξ) = ψ(2^{−j}|ξ|).
    pub fn psi_j(&self, j: i32, xi: f64) -> f64 {
        Self::psi(xi.abs() * 2f64.powi(-j))
    }

    /// Σ_j ψ_j(ξ) over the range; 1 on [2^{j_min}, 2^{j_max}].
    pub fn coverage(&self, xi: f64) -> f64 {
        (self.j_min..=self.j_max).map(|j| self.psi_j(j, xi)).sum()
    }

    pub fn indices(&self) -> impl Iterator<Item = i32> {
        self.j_min..=self.j_max
    }
}

/// P_j f: multiplier ψ_j.
pub fn littlewood_paley_project(field: &SpectralField, j: i32, partition: &DyadicPartition) -> Result<SpectralField> {
    if j < partition.j_min || j > partition.j_max {
        return Err(DunklError::OutOfRange(format!(
            "j = {j} outside [{}, {}]",
            partition.j_min, partition.j_max
        )));
    }
    Ok(field.map(|x| partition.psi_j(j, x)))
}

/// ‖(Σ_j |2^{js} P_j f|²)^{1/2}‖₂ against ‖(−Δ_k)^{s/2} f‖₂, by two independent routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquareFunctionRatio {
    pub s: f64,
    /// Square function assembled pointwise from inverse transforms of each P_j f.
    pub physical: f64,
    /// Σ_j 2^{2js} ‖ψ_j D_k f‖² by Plancherel.
    pub spectral: f64,
    pub fractional_norm: f64,
}

impl SquareFunctionRatio {
    pub fn ratio(&self) -> f64 {
        self.physical / self.fractional_norm
    }
}

pub fn square_function_ratio(
    f: &TestFunction,
    s: f64,
    setting: &Setting,
    partition: &DyadicPartition,
    cfg: &SpectralConfig,
) -> Result<SquareFunctionRatio> {
    let field = dunkl_transform_reaching(f, setting, cfg, 0.0, INVERSE_REACH)?;
    let rule = field.extended_unit_rule(INVERSE_REACH, cfg)?;
    let mut acc: Option<(PhysicalSamples, Vec<f64>, Vec<f64>)> = None;
    let mut spectral_sq = 0.0;
    for j in partition.indices() {
        let pj = littlewood_paley_project(&field, j, partition)?;
        let c = 2f64.powf(j as f64 * s);
        spectral_sq += (c * pj.l2_norm()).powi(2);
        let samples = pj.inverse_on_unit_rule(&rule);
        let (sp, sm) = match &mut acc {
            None => {
                let n = samples.r.len();
                acc = Some((samples.clone(), vec![0.0; n], vec![0.0; n]));
                let a = acc.as_mut().unwrap();
                (&mut a.1, &mut a.2)
            }
            Some(a) => (&mut a.1, &mut a.2),
        };
        for i in 0..samples.r.len() {
            sp[i] += (c * samples.plus[i].norm()).powi(2);
            sm[i] += (c * samples.minus[i].norm()).powi(2);
        }
    }
    let (mut sq, sp, sm) = acc.expect("nonempty range");
    for i in 0..sq.r.len() {
        sq.plus[i] = sp[i].sqrt().into();
        sq.minus[i] = sm[i].sqrt().into();
    }
    let fractional_norm = spectral_norm(f, s, setting, cfg)?;
    Ok(SquareFunctionRatio { s, physical: sq.lp_norm(2.0), spectral: spectral_sq.sqrt(), fractional_norm })
}

/// Relative size of D_k f at the lowest frequency node allowed before I_s is applied.
pub const RIESZ_LOW_FREQUENCY_THRESHOLD: f64 = 1e-10;

/// I_s: multiplier |ξ|^{−s}, for 0 < s < N + 2γ. The field must vanish (relative to its maximum)
/// at the first positive node, the lower edge of the frequencies the grid represents.
pub fn riesz_potential(field: &SpectralField, s: f64) -> Result<SpectralField> {
    let n = field.setting.homogeneous_dim();
    if !(s > 0.0 && s < n) {
        return Err(DunklError::OutOfRange(format!("Riesz order s = {s} must lie in (0, {n})")));
    }
    let peak = field.max_abs();
    if peak > 0.0 {
        let low = field.plus[0].norm().max(field.minus[0].norm()) / peak;
        if low > RIESZ_LOW_FREQUENCY_THRESHOLD {
            return Err(DunklError::LowFrequencyMass { mass: low, threshold: RIESZ_LOW_FREQUENCY_THRESHOLD });
        }
    }
    Ok(field.map(|x| x.powf(-s)))
}
