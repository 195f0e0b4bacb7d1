//! Forward and inverse Dunkl transforms by dense kernel quadrature.
//!
//! Rank one: E_k(−iξ, x) = j_{k−1/2}(ξx) − i ξx/(2k+1)·j_{k+1/2}(ξx). Radial functions in ℝ^N:
//! the transform reduces to a Hankel transform of order N/2 + γ − 1. Grids are built on a unit
//! scale and dilated by the function's decay scale σ, so u_i v_j (and the kernel) are independent of σ.

use super::kernel::{kernel, Kernel};
use crate::error::{DunklError, Result};
use crate::measure::{HalfLineRule, Op, RadialDomain, Setting, TestFunction};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralConfig {
    /// Minimum physical nodes per half-axis.
    pub phys_resolution: usize,
    /// Minimum spectral nodes per half-axis.
    pub spec_resolution: usize,
    /// Physical truncation in units of the decay scale.
    pub r_factor: f64,
    /// Cap on nodes per axis after oscillation-driven refinement.
    pub max_nodes: usize,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig { phys_resolution: 512, spec_resolution: 512, r_factor: 12.0, max_nodes: 4096 }
    }
}

/// Oscillation periods of the kernel allowed per 16-node panel.
const PERIODS_PER_PANEL: f64 = 1.5;

fn nodes_for(band: f64, min: usize, cap: usize) -> (usize, bool) {
    let panels = (band / (PERIODS_PER_PANEL * 2.0 * PI) * 2.0).ceil() as usize;
    let n = (16 * panels).max(min);
    (n.min(cap), n > cap)
}

/// c in F(ξ) = c Σ ω_i f_i K_ij: 2·2^k/M_k in rank one (both half-axes), d_k/M_k radially.
fn kernel_constant(setting: &Setting) -> f64 {
    match *setting {
        Setting::Rank1 { k } => 2.0 * 2f64.powf(k) / setting.mehta(),
        Setting::Radial { sphere, .. } => sphere / setting.mehta(),
    }
}

fn measure_factor(setting: &Setting) -> f64 {
    match *setting {
        Setting::Rank1 { k } => 2f64.powf(k),
        Setting::Radial { sphere, .. } => sphere,
    }
}

fn rank1_k(setting: &Setting) -> Option<f64> {
    match *setting {
        Setting::Rank1 { k } => Some(k),
        _ => None,
    }
}

/// Samples of a function on a physical half-grid: values at +r_i and (rank one) −r_i.
#[derive(Debug, Clone)]
pub struct PhysicalSamples {
    pub setting: Setting,
    pub r: Vec<f64>,
    /// Rule weights against r^{N+2γ−1} dr.
    pub w: Vec<f64>,
    pub plus: Vec<Complex64>,
    pub minus: Vec<Complex64>,
}

impl PhysicalSamples {
    /// (∫ |x|^{ap} |g|^p dμ_k)^{1/p}.
    pub fn weighted_lp_norm(&self, p: f64, a: f64) -> f64 {
        let both = matches!(self.setting, Setting::Rank1 { .. });
        let s: f64 = (0..self.r.len())
            .map(|i| {
                let rw = self.r[i].powf(a * p) * self.w[i];
                let v = self.plus[i].norm().powf(p) + if both { self.minus[i].norm().powf(p) } else { 0.0 };
                rw * v
            })
            .sum();
        (measure_factor(&self.setting) * s).powf(1.0 / p)
    }

    pub fn lp_norm(&self, p: f64) -> f64 {
        self.weighted_lp_norm(p, 0.0)
    }

    /// Relative L² distance to `other` sampled on the same grid.
    pub fn relative_l2_distance(&self, other: &PhysicalSamples) -> f64 {
        let both = matches!(self.setting, Setting::Rank1 { .. });
        let (mut num, mut den) = (0.0, 0.0);
        for i in 0..self.r.len() {
            num += self.w[i] * (self.plus[i] - other.plus[i]).norm_sqr();
            den += self.w[i] * other.plus[i].norm_sqr();
            if both {
                num += self.w[i] * (self.minus[i] - other.minus[i]).norm_sqr();
                den += self.w[i] * other.minus[i].norm_sqr();
            }
        }
        if den == 0.0 {
            num.sqrt()
        } else {
            (num / den).sqrt()
        }
    }
}

/// Samples D_k(f) on a half-grid ξ_j > 0 together with the grid's quadrature weights.
#[derive(Debug, Clone)]
pub struct SpectralField {
    pub setting: Setting,
    pub xi: Vec<f64>,
    /// Rule weights against ξ^{N+2γ−1} dξ.
    pub weights: Vec<f64>,
    /// D_k(f)(ξ_j).
    pub plus: Vec<Complex64>,
    /// D_k(f)(−ξ_j) in rank one; equal to `plus` for radial fields.
    pub minus: Vec<Complex64>,
    /// The 1/M_k convention: this is M_k.
    pub normalization: f64,
    /// Grid scale σ: ξ_j = v_j/σ.
    pub sigma: f64,
    spec_unit: Arc<Vec<f64>>,
    phys_unit: Arc<HalfLineRule>,
    pub warnings: Vec<String>,
}

impl SpectralField {
    pub fn is_rank1(&self) -> bool {
        matches!(self.setting, Setting::Rank1 { .. })
    }

    /// Symmetric grid (rank one) or radial grid with the corresponding values.
    pub fn full_grid(&self) -> (Vec<f64>, Vec<Complex64>) {
        if !self.is_rank1() {
            return (self.xi.clone(), self.plus.clone());
        }
        let mut xs: Vec<f64> = self.xi.iter().rev().map(|x| -x).collect();
        let mut vs: Vec<Complex64> = self.minus.iter().rev().copied().collect();
        xs.extend(&self.xi);
        vs.extend(&self.plus);
        (xs, vs)
    }

    /// (∫ m(|ξ|)² |F|² dμ_k)^{1/2}.
    pub fn weighted_l2(&self, m: impl Fn(f64) -> f64) -> f64 {
        let both = self.is_rank1();
        let s: f64 = (0..self.xi.len())
            .map(|j| {
                let mj = m(self.xi[j]);
                let v = self.plus[j].norm_sqr() + if both { self.minus[j].norm_sqr() } else { 0.0 };
                self.weights[j] * mj * mj * v
            })
            .sum();
        (measure_factor(&self.setting) * s).sqrt()
    }

    pub fn l2_norm(&self) -> f64 {
        self.weighted_l2(|_| 1.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.plus.iter().chain(&self.minus).map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Applies a radial multiplier m(|ξ|).
    pub fn map(&self, m: impl Fn(f64) -> f64) -> SpectralField {
        let mut out = self.clone();
        for j in 0..self.xi.len() {
            let mj = m(self.xi[j]);
            out.plus[j] = self.plus[j] * mj;
            out.minus[j] = self.minus[j] * mj;
        }
        out
    }

    /// A field with the same grids and values from a closure F(ξ), ξ ∈ ℝ (rank one) or |ξ|.
    pub fn with_values(&self, f: impl Fn(f64) -> Complex64) -> SpectralField {
        let mut out = self.clone();
        out.plus = self.xi.iter().map(|&x| f(x)).collect();
        out.minus = if self.is_rank1() { self.xi.iter().map(|&x| f(-x)).collect() } else { out.plus.clone() };
        out
    }

    pub fn zeroed(&self) -> SpectralField {
        self.with_values(|_| Complex64::new(0.0, 0.0))
    }

    /// Physical grid the field was computed from.
    pub fn physical_rule(&self) -> HalfLineRule {
        self.phys_unit.scaled(self.sigma, self.setting.radial_exponent())
    }

    /// The physical rule on the unit scale (nodes are r/σ).
    pub fn physical_unit_rule(&self) -> HalfLineRule {
        (*self.phys_unit).clone()
    }

    /// Physical unit rule on [0, reach·R/σ] resolving the kernel at this field's bandwidth.
    pub fn extended_unit_rule(&self, reach: f64, cfg: &SpectralConfig) -> Result<HalfLineRule> {
        let hi = reach * self.phys_unit.r.iter().fold(0.0, |m: f64, r| m.max(*r));
        let v_max = self.spec_unit.iter().fold(0.0, |m: f64, v| m.max(*v));
        let (n, _) = nodes_for(v_max * hi, cfg.phys_resolution, cfg.max_nodes);
        HalfLineRule::new(RadialDomain { lo: 0.0, hi, tail_power: None }, self.setting.radial_exponent(), 0.0, n)
    }

    /// Inverse transform on the physical grid the field was computed from.
    pub fn inverse_on_grid(&self) -> PhysicalSamples {
        self.inverse_on_unit_rule(&self.phys_unit.clone())
    }

    /// Inverse transform on the rule `unit` dilated by σ.
    pub fn inverse_on_unit_rule(&self, unit: &HalfLineRule) -> PhysicalSamples {
        let ker = kernel(self.setting.bessel_order(), rank1_k(&self.setting), &unit.r, &self.spec_unit);
        let (plus, minus) = self.inverse_with_kernel(&ker);
        let rule = unit.scaled(self.sigma, self.setting.radial_exponent());
        PhysicalSamples { setting: self.setting, r: rule.r, w: rule.w, plus, minus }
    }

    /// Forward transform of samples given at the nodes of `unit` dilated by σ (values at +r_i and,
    /// in rank one, −r_i), onto this field's spectral grid.
    pub fn forward_on_unit_rule(&self, unit: &HalfLineRule, plus: &[Complex64], minus: &[Complex64]) -> Result<SpectralField> {
        let n = unit.r.len();
        if plus.len() != n || (self.is_rank1() && minus.len() != n) {
            return Err(DunklError::InvalidInput(format!("expected {n} samples per half-axis")));
        }
        let rule = unit.scaled(self.sigma, self.setting.radial_exponent());
        let ker = kernel(self.setting.bessel_order(), rank1_k(&self.setting), &unit.r, &self.spec_unit);
        let ns = self.xi.len();
        let mut se = vec![Complex64::new(0.0, 0.0); ns];
        let mut so = vec![Complex64::new(0.0, 0.0); ns];
        for i in 0..n {
            let b = if self.is_rank1() { minus[i] } else { plus[i] };
            let fe = 0.5 * (plus[i] + b) * rule.w[i];
            let fo = 0.5 * (plus[i] - b) * rule.w[i];
            for (acc, k) in se.iter_mut().zip(&ker.even[i * ns..(i + 1) * ns]) {
                *acc += fe * k;
            }
            if let Some(odd) = &ker.odd {
                if fo != Complex64::new(0.0, 0.0) {
                    for (acc, k) in so.iter_mut().zip(&odd[i * ns..(i + 1) * ns]) {
                        *acc += fo * k;
                    }
                }
            }
        }
        let c = kernel_constant(&self.setting);
        let i_unit = Complex64::new(0.0, 1.0);
        let mut out = self.clone();
        out.plus = (0..ns).map(|j| c * (se[j] - i_unit * so[j])).collect();
        out.minus = if self.is_rank1() { (0..ns).map(|j| c * (se[j] + i_unit * so[j])).collect() } else { out.plus.clone() };
        Ok(out)
    }

    fn inverse_with_kernel(&self, ker: &Kernel) -> (Vec<Complex64>, Vec<Complex64>) {
        let c = kernel_constant(&self.setting);
        let rank1 = self.is_rank1();
        let fe: Vec<Complex64> = (0..self.xi.len()).map(|j| 0.5 * (self.plus[j] + self.minus[j]) * self.weights[j]).collect();
        let fo: Vec<Complex64> = (0..self.xi.len()).map(|j| 0.5 * (self.plus[j] - self.minus[j]) * self.weights[j]).collect();
        let mut plus = Vec::with_capacity(ker.rows);
        let mut minus = Vec::with_capacity(ker.rows);
        let i_unit = Complex64::new(0.0, 1.0);
        for i in 0..ker.rows {
            let mut se = Complex64::new(0.0, 0.0);
            let mut so = Complex64::new(0.0, 0.0);
            let row = &ker.even[i * ker.cols..(i + 1) * ker.cols];
            for (j, &k) in row.iter().enumerate() {
                se += fe[j] * k;
            }
            if rank1 {
                for j in 0..ker.cols {
                    so += fo[j] * ker.odd_at(i, j);
                }
            }
            plus.push(c * (se + i_unit * so));
            minus.push(c * (se - i_unit * so));
        }
        (plus, minus)
    }

    /// Inverse transform at arbitrary points (radii for radial fields).
    pub fn inverse_at(&self, xs: &[f64]) -> Vec<Complex64> {
        let c = kernel_constant(&self.setting);
        let nu = self.setting.bessel_order();
        let i_unit = Complex64::new(0.0, 1.0);
        xs.iter()
            .map(|&x| {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..self.xi.len() {
                    let z = self.xi[j] * x;
                    let (a, b) = crate::special::normalized_bessel_pair(nu, z);
                    let fe = 0.5 * (self.plus[j] + self.minus[j]);
                    acc += self.weights[j] * fe * a;
                    if let Setting::Rank1 { k } = self.setting {
                        let fo = 0.5 * (self.plus[j] - self.minus[j]);
                        acc += self.weights[j] * fo * i_unit * (z / (2.0 * k + 1.0) * b);
                    }
                }
                c * acc
            })
            .collect()
    }

    /// Rows "ξ,Re,Im" over the full grid.
    pub fn to_csv(&self) -> String {
        let (xs, vs) = self.full_grid();
        let mut out = String::from("xi,re,im\n");
        for (x, v) in xs.iter().zip(vs) {
            out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", x, v.re, v.im));
        }
        out
    }
}

struct Grids {
    sigma: f64,
    phys_unit: HalfLineRule,
    spec_unit: HalfLineRule,
    warnings: Vec<String>,
}

fn grids(f: &TestFunction, setting: &Setting, cfg: &SpectralConfig, xi_origin: f64, reach: f64) -> Result<Grids> {
    let mut warnings = Vec::new();
    let sigma = f.decay_scale();
    let mut dom = f.radial_domain(cfg.r_factor);
    if dom.tail_power.is_some() {
        dom.hi *= 4.0;
        dom.tail_power = None;
        warnings.push(format!("{}: algebraic tail truncated at r = {:.3e}", f.id, dom.hi));
    }
    let v_max = f.spectral_extent(cfg.r_factor) * sigma;
    let (lo, hi) = (dom.lo / sigma, dom.hi / sigma);
    let (np, capped_p) = nodes_for(v_max * (hi - lo), cfg.phys_resolution, cfg.max_nodes);
    let (ns, capped_s) = nodes_for(v_max * hi * reach, cfg.spec_resolution, cfg.max_nodes);
    if capped_p || capped_s {
        warnings.push(format!("{}: grid under-resolves the kernel oscillation (node cap {})", f.id, cfg.max_nodes));
    }
    let e0 = setting.radial_exponent();
    let rho = f.profile(Op::Value, setting)?.origin_power();
    let rho = if rho.is_finite() { rho } else { 0.0 };
    let phys_unit = HalfLineRule::new(RadialDomain { lo, hi, tail_power: None }, e0, rho, np)?;
    let spec_unit = HalfLineRule::new(RadialDomain { lo: 0.0, hi: v_max, tail_power: None }, e0, xi_origin, ns)?;
    Ok(Grids { sigma, phys_unit, spec_unit, warnings })
}

/// D_k(f)(ξ) = (1/M_k) ∫ f(x) E_k(−iξ, x) dμ_k(x).
pub fn dunkl_transform(f: &TestFunction, setting: &Setting, cfg: &SpectralConfig) -> Result<SpectralField> {
    dunkl_transform_with(f, setting, cfg, 0.0)
}

/// As [`dunkl_transform`], with the spectral rule's first panel adapted to integrands that behave
/// like ξ^{xi_origin} at the origin (e.g. 2s for ∫ |ξ|^{2s}|F|²).
pub fn dunkl_transform_with(
    f: &TestFunction,
    setting: &Setting,
    cfg: &SpectralConfig,
    xi_origin: f64,
) -> Result<SpectralField> {
    dunkl_transform_reaching(f, setting, cfg, xi_origin, 1.0)
}

/// As [`dunkl_transform_with`], with the spectral grid fine enough to invert out to `reach` times
/// the physical truncation radius.
pub fn dunkl_transform_reaching(
    f: &TestFunction,
    setting: &Setting,
    cfg: &SpectralConfig,
    xi_origin: f64,
    reach: f64,
) -> Result<SpectralField> {
    if setting.homogeneous_dim() <= 0.0 {
        return Err(DunklError::InvalidInput("N + 2γ must be positive".into()));
    }
    let g = grids(f, setting, cfg, xi_origin, reach.max(1.0))?;
    let e0 = setting.radial_exponent();
    let phys = g.phys_unit.scaled(g.sigma, e0);
    let spec = g.spec_unit.scaled(1.0 / g.sigma, e0);
    let prof = f.profile(Op::Value, setting)?;
    let rank1 = matches!(setting, Setting::Rank1 { .. });
    let mut fe = Vec::with_capacity(phys.r.len());
    let mut fo = Vec::with_capacity(phys.r.len());
    for (&r, &w) in phys.r.iter().zip(&phys.w) {
        let a = prof.eval(r);
        let b = if rank1 { prof.eval(-r) } else { a };
        if !(a.is_finite() && b.is_finite()) {
            return Err(DunklError::Evaluation(format!("{} at r = {r}", f.id)));
        }
        fe.push(0.5 * (a + b) * w);
        fo.push(0.5 * (a - b) * w);
    }
    let ker = kernel(setting.bessel_order(), rank1_k(setting), &g.phys_unit.r, &g.spec_unit.r);
    let ns = spec.r.len();
    let mut se = vec![0.0; ns];
    let mut so = vec![0.0; ns];
    for i in 0..ker.rows {
        let row = &ker.even[i * ns..(i + 1) * ns];
        for (acc, k) in se.iter_mut().zip(row) {
            *acc += fe[i] * k;
        }
        if let Some(odd) = &ker.odd {
            if fo[i] != 0.0 {
                for (acc, k) in so.iter_mut().zip(&odd[i * ns..(i + 1) * ns]) {
                    *acc += fo[i] * k;
                }
            }
        }
    }
    let c = kernel_constant(setting);
    let plus: Vec<Complex64> = (0..ns).map(|j| Complex64::new(c * se[j], -c * so[j])).collect();
    let minus: Vec<Complex64> = (0..ns).map(|j| Complex64::new(c * se[j], c * so[j])).collect();
    Ok(SpectralField {
        setting: *setting,
        xi: spec.r,
        weights: spec.w,
        plus,
        minus,
        normalization: setting.mehta(),
        sigma: g.sigma,
        spec_unit: Arc::new(g.spec_unit.r),
        phys_unit: Arc::new(g.phys_unit),
        warnings: g.warnings,
    })
}

pub fn dunkl_transform_rank1(f: &TestFunction, k: f64, cfg: &SpectralConfig) -> Result<SpectralField> {
    dunkl_transform(f, &Setting::Rank1 { k }, cfg)
}

/// Hankel-type transform of order N/2 + γ − 1 of a radial profile.
pub fn radial_transform(f: &TestFunction, dim: usize, gamma: f64, cfg: &SpectralConfig) -> Result<SpectralField> {
    if dim < 1 {
        return Err(DunklError::InvalidInput("dimension must be at least 1".into()));
    }
    dunkl_transform(f, &Setting::radial(dim, gamma), cfg)
}

/// f samples on the physical grid of a field (for round-trip comparisons).
pub fn sample_on_grid(f: &TestFunction, field: &SpectralField) -> Result<PhysicalSamples> {
    let rule = field.physical_rule();
    let prof = f.profile(Op::Value, &field.setting)?;
    let plus: Vec<Complex64> = rule.r.iter().map(|&r| Complex64::new(prof.eval(r), 0.0)).collect();
    let minus: Vec<Complex64> = if field.is_rank1() {
        rule.r.iter().map(|&r| Complex64::new(prof.eval(-r), 0.0)).collect()
    } else {
        plus.clone()
    };
    Ok(PhysicalSamples { setting: field.setting, r: rule.r, w: rule.w, plus, minus })
}

/// Transform of the Gaussian against e^{−|ξ|²/2}: the normalization actually realized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub homogeneous_dim: f64,
    pub mehta_constant: f64,
    /// D_k(e^{−|x|²/2})(ξ₁)/e^{−ξ₁²/2} at the smallest node.
    pub ratio_at_origin: f64,
    pub max_abs_deviation: f64,
    pub plancherel_ratio: f64,
}

pub fn calibration_report(setting: &Setting, cfg: &SpectralConfig) -> Result<CalibrationReport> {
    let g = TestFunction::gaussian(1.0);
    let f = dunkl_transform(&g, setting, cfg)?;
    let dev = f
        .xi
        .iter()
        .zip(f.plus.iter().zip(&f.minus))
        .map(|(&x, (p, m))| {
            let e = (-x * x / 2.0).exp();
            (p - e).norm().max((m - e).norm())
        })
        .fold(0.0, f64::max);
    let norm_f = crate::measure::lp_norm_of(&g, Op::Value, 2.0, 0.0, &crate::measure::Infra::new(*setting))?;
    Ok(CalibrationReport {
        homogeneous_dim: setting.homogeneous_dim(),
        mehta_constant: f.normalization,
        ratio_at_origin: f.plus[0].re / (-f.xi[0] * f.xi[0] / 2.0).exp(),
        max_abs_deviation: dev,
        plancherel_ratio: f.l2_norm() / norm_f,
    })
}
