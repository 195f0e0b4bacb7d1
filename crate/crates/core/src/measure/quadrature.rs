//! Composite Gauss rules against r^E dr and the weighted quadratures built from them.

use crate::error::{DunklError, Result};
use crate::rootsys::{self, Family, RootSystem};
use crate::special::{gamma, gauss_jacobi, gauss_legendre, GaussRule};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

/// Nodes per panel of the composite rules.
pub const PANEL_ORDER: usize = 16;
const TAIL_PANELS: usize = 4;
const ANGULAR_ORDER: usize = 40;

fn legendre16() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_ORDER))
}

/// Gauss–Jacobi rules keyed by the bit pattern of (α, β).
fn jacobi_cached(alpha: f64, beta: f64) -> GaussRule {
    static CACHE: OnceLock<Mutex<Vec<((u64, u64), GaussRule)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let key = (alpha.to_bits(), beta.to_bits());
    if let Some((_, r)) = cache.lock().unwrap().iter().find(|(k, _)| *k == key) {
        return r.clone();
    }
    let rule = gauss_jacobi(PANEL_ORDER, alpha, beta);
    let mut guard = cache.lock().unwrap();
    if guard.len() > 512 {
        guard.clear();
    }
    guard.push((key, rule.clone()));
    rule
}

/// Radial integration domain for a half-line rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialDomain {
    /// Lower end; 0 means the rule starts at the origin.
    pub lo: f64,
    /// Truncation radius (or start of the mapped tail).
    pub hi: f64,
    /// Power law r^τ of the integrand h at infinity; when set, [hi, ∞) is integrated by a mapped
    /// Gauss–Jacobi rule instead of being truncated.
    pub tail_power: Option<f64>,
}

/// Nodes r_i and weights ω_i with Σ ω_i h(r_i) ≈ ∫ h(r) r^{E₀} dr over the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfLineRule {
    pub r: Vec<f64>,
    pub w: Vec<f64>,
}

impl HalfLineRule {
    pub fn integrate(&self, h: impl Fn(f64) -> f64) -> f64 {
        self.r.iter().zip(&self.w).map(|(&r, &w)| w * h(r)).sum()
    }

    /// The rule for ∫ h(r) r^{E₀} dr on the domain dilated by c.
    pub fn scaled(&self, c: f64, base_exponent: f64) -> Self {
        let f = c.powf(base_exponent + 1.0);
        HalfLineRule { r: self.r.iter().map(|r| r * c).collect(), w: self.w.iter().map(|w| w * f).collect() }
    }

    /// Builds the rule. `base_exponent` is E₀; `origin_power` is the power r^ρ with which h behaves
    /// at the origin (used to pick the Jacobi exponent of the first panel); `resolution` is the
    /// total number of nodes on [lo, hi] (a multiple of 16 is used).
    pub fn new(domain: RadialDomain, base_exponent: f64, origin_power: f64, resolution: usize) -> Result<Self> {
        let RadialDomain { lo, hi, tail_power } = domain;
        if !(hi > lo && lo >= 0.0) {
            return Err(DunklError::InvalidInput(format!("radial domain [{lo}, {hi}] is empty")));
        }
        let panels = (resolution / PANEL_ORDER).max(1);
        let h = (hi - lo) / panels as f64;
        let gl = legendre16();
        let mut r = Vec::with_capacity(panels * PANEL_ORDER + TAIL_PANELS * PANEL_ORDER);
        let mut w = Vec::with_capacity(r.capacity());
        let mut start = 0;
        if lo == 0.0 {
            let e = base_exponent + if origin_power.is_finite() { origin_power } else { 0.0 };
            if e <= -1.0 {
                return Err(DunklError::NonIntegrable(format!(
                    "integrand behaves like r^{e} at the origin"
                )));
            }
            let gj = jacobi_cached(0.0, e);
            let half = h / 2.0;
            for (x, wj) in gj.nodes.iter().zip(&gj.weights) {
                let ri = half * (1.0 + x);
                r.push(ri);
                w.push(half.powf(e + 1.0) * wj * ri.powf(base_exponent - e));
            }
            start = 1;
        }
        for p in start..panels {
            let a = lo + p as f64 * h;
            let half = h / 2.0;
            for (x, wg) in gl.nodes.iter().zip(&gl.weights) {
                let ri = a + half * (1.0 + x);
                r.push(ri);
                w.push(half * wg * ri.powf(base_exponent));
            }
        }
        if let Some(tau) = tail_power {
            // r = hi/u; h(r) r^{E₀} dr ≈ hi^{τ+E₀+1} u^{-τ-E₀-2} du
            let total = tau + base_exponent;
            if total >= -1.0 {
                return Err(DunklError::NonIntegrable(format!(
                    "integrand decays like r^{total} at infinity"
                )));
            }
            let beta = -total - 2.0;
            let du = 1.0 / TAIL_PANELS as f64;
            for p in 0..TAIL_PANELS {
                let a = p as f64 * du;
                let half = du / 2.0;
                let (nodes, weights, jac) = if p == 0 {
                    let gj = jacobi_cached(0.0, beta);
                    (gj.nodes, gj.weights, true)
                } else {
                    (gl.nodes.clone(), gl.weights.clone(), false)
                };
                for (x, wq) in nodes.iter().zip(&weights) {
                    let u = a + half * (1.0 + x);
                    let ri = hi / u;
                    // dr = hi/u² du
                    let base = hi / (u * u) * ri.powf(base_exponent);
                    let wt = if jac { half.powf(beta + 1.0) * wq * base / u.powf(beta) } else { half * wq * base };
                    r.push(ri);
                    w.push(wt);
                }
            }
        }
        Ok(HalfLineRule { r, w })
    }
}

/// Quadrature layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    TensorGaussLike,
    PolarProduct,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub scheme: Scheme,
    pub r_max: f64,
    /// Nodes per half-axis (rank one and tensor) or per radius (polar).
    pub resolution: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { scheme: Scheme::PolarProduct, r_max: 12.0, resolution: 256 }
    }
}

/// Geometric setting in which test functions live: the rank-one line, or radial functions on ℝ^N.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Setting {
    Rank1 { k: f64 },
    Radial { dim: usize, gamma: f64, sphere: f64 },
}

impl Setting {
    /// Radial setting for γ = 0 with the Euclidean sphere area.
    pub fn radial_flat(dim: usize) -> Self {
        let n = dim as f64;
        Setting::Radial { dim, gamma: 0.0, sphere: 2.0 * PI.powf(n / 2.0) / gamma(n / 2.0) }
    }

    /// Radial setting for given N and γ without a root system: the sphere constant is the formal
    /// area 2π^{n/2}/Γ(n/2) in dimension n = N + 2γ (transforms do not depend on it).
    pub fn radial(dim: usize, gamma_k: f64) -> Self {
        let n = dim as f64 + 2.0 * gamma_k;
        Setting::Radial { dim, gamma: gamma_k, sphere: 2.0 * PI.powf(n / 2.0) / gamma(n / 2.0) }
    }

    /// Rank-one setting for N = 1, radial setting (with the μ_k sphere constant) otherwise.
    pub fn from_root_system(rs: &RootSystem) -> Result<Self> {
        if rs.dim() == 1 {
            return Ok(Setting::Rank1 { k: rootsys::gamma(rs) });
        }
        Ok(Setting::Radial { dim: rs.dim(), gamma: rootsys::gamma(rs), sphere: sphere_constant(rs)? })
    }

    pub fn dim(&self) -> usize {
        match self {
            Setting::Rank1 { .. } => 1,
            Setting::Radial { dim, .. } => *dim,
        }
    }

    pub fn gamma(&self) -> f64 {
        match self {
            Setting::Rank1 { k } => *k,
            Setting::Radial { gamma, .. } => *gamma,
        }
    }

    /// N + 2γ.
    pub fn homogeneous_dim(&self) -> f64 {
        self.dim() as f64 + 2.0 * self.gamma()
    }

    /// Exponent of r in the radial measure, N + 2γ − 1.
    pub fn radial_exponent(&self) -> f64 {
        self.homogeneous_dim() - 1.0
    }

    /// Bessel order N/2 + γ − 1 of the radial kernel.
    pub fn bessel_order(&self) -> f64 {
        self.homogeneous_dim() / 2.0 - 1.0
    }

    /// Macdonald–Mehta constant M_k of the setting.
    pub fn mehta(&self) -> f64 {
        match *self {
            Setting::Rank1 { k } => rank1_mehta(k),
            Setting::Radial { sphere, .. } => {
                let nu = self.bessel_order();
                sphere * 2f64.powf(nu) * gamma(nu + 1.0)
            }
        }
    }

    /// ∫ h dμ_k for h given on the half-line: rank one sums both signs.
    pub fn integrate(&self, rule: &HalfLineRule, h: impl Fn(f64) -> f64) -> f64 {
        match *self {
            Setting::Rank1 { k } => {
                2f64.powf(k) * rule.r.iter().zip(&rule.w).map(|(&r, &w)| w * (h(r) + h(-r))).sum::<f64>()
            }
            Setting::Radial { sphere, .. } => sphere * rule.integrate(h),
        }
    }
}

pub fn rank1_mehta(k: f64) -> f64 {
    2f64.powf(2.0 * k + 0.5) * gamma(k + 0.5)
}

/// Closed form of ∫ e^{−|x|²/2} dμ_k where one is known.
pub fn macdonald_mehta_closed_form(rs: &RootSystem) -> Option<f64> {
    let n = rs.dim() as f64;
    if rs.is_trivial() {
        return Some((2.0 * PI).powf(n / 2.0));
    }
    match rs.family()? {
        Family::Rank1Z2 => Some(rank1_mehta(rs.multiplicities()[0])),
        Family::ProductZ2N => Some(rs.multiplicities().iter().map(|&k| rank1_mehta(k)).product()),
        Family::SymmetricGroupA => {
            let k = rs.multiplicities()[0];
            let prod: f64 = (1..=rs.dim()).map(|j| gamma(1.0 + j as f64 * k) / gamma(1.0 + k)).product();
            Some((2.0 * PI).powf(n / 2.0) * prod)
        }
        Family::DihedralI2m { .. } => None,
    }
}

/// Angular rule on the unit circle with the weight w_k folded in: Σ W_j g(φ_j) ≈ ∫ g(φ) w_k(e^{iφ}) dφ.
pub fn angular_rule(rs: &RootSystem) -> Result<(Vec<f64>, Vec<f64>)> {
    if rs.dim() != 2 {
        return Err(DunklError::UnsupportedFamily("angular rule requires N = 2".into()));
    }
    let mut zeros: Vec<(f64, f64)> = Vec::new();
    for (a, &k) in rs.positive_roots().iter().zip(rs.multiplicities()) {
        let theta = a[1].atan2(a[0]);
        for shift in [PI / 2.0, -PI / 2.0] {
            let z = (theta + shift).rem_euclid(2.0 * PI);
            zeros.push((z, k));
        }
    }
    zeros.sort_by(|a, b| a.0.total_cmp(&b.0));
    zeros.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12);
    let weight_at = |phi: f64| rootsys::weight(rs, &[phi.cos(), phi.sin()]);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let m = zeros.len();
    for i in 0..m {
        let (a, ka) = zeros[i];
        let (mut b, kb) = zeros[(i + 1) % m];
        if i + 1 == m {
            b += 2.0 * PI;
        }
        let (ea, eb) = (2.0 * ka, 2.0 * kb);
        let gj = gauss_jacobi(ANGULAR_ORDER, eb, ea);
        let half = (b - a) / 2.0;
        for (x, wj) in gj.nodes.iter().zip(&gj.weights) {
            let phi = a + half * (1.0 + x);
            let da = phi - a;
            let db = b - phi;
            let smooth = weight_at(phi) / (da.powf(ea) * db.powf(eb));
            nodes.push(phi.rem_euclid(2.0 * PI));
            weights.push(half.powf(ea + eb + 1.0) * wj * smooth);
        }
    }
    Ok((nodes, weights))
}

/// The μ_k area of the unit sphere, d_k = ∫_{S^{N−1}} w_k dσ.
pub fn sphere_constant(rs: &RootSystem) -> Result<f64> {
    let n = rs.dim() as f64;
    let g = rootsys::gamma(rs);
    if rs.is_trivial() {
        return Ok(2.0 * PI.powf(n / 2.0) / gamma(n / 2.0));
    }
    if rs.dim() == 1 {
        return Ok(2.0 * 2f64.powf(g));
    }
    if rs.dim() == 2 {
        let (_, w) = angular_rule(rs)?;
        return Ok(w.iter().sum());
    }
    let m = macdonald_mehta_closed_form(rs).ok_or_else(|| {
        DunklError::UnsupportedFamily("sphere constant for this root system in N ≥ 3".into())
    })?;
    let nu = n / 2.0 + g - 1.0;
    Ok(m / (2f64.powf(nu) * gamma(nu + 1.0)))
}

/// Nodes and weights for integration against dμ_k.
#[derive(Debug, Clone)]
pub struct WeightedQuadrature {
    pub dim: usize,
    pub gamma: f64,
    pub spec: QuadratureSpec,
    pub setting: Setting,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    /// True when only radial integrands are integrated correctly (N ≥ 3).
    pub radial_only: bool,
    pub warnings: Vec<String>,
}

impl WeightedQuadrature {
    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(x)).sum()
    }

    /// Per-function norm engine using this quadrature's setting and resolution.
    pub fn infra(&self) -> crate::measure::Infra {
        crate::measure::Infra { setting: self.setting, resolution: self.spec.resolution, ..Default::default() }
    }
}

pub fn build_quadrature(rs: &RootSystem, spec: QuadratureSpec) -> Result<WeightedQuadrature> {
    if !(spec.r_max > 0.0) {
        return Err(DunklError::InvalidInput("R_max must be positive".into()));
    }
    if spec.resolution < 16 {
        return Err(DunklError::InvalidInput("resolution must be at least 16".into()));
    }
    let mut warnings = Vec::new();
    if spec.resolution < 64 {
        warnings.push(format!("resolution {} is coarse; expect errors above 1e-8", spec.resolution));
    }
    let g = rootsys::gamma(rs);
    let setting = Setting::from_root_system(rs)?;
    let domain = RadialDomain { lo: 0.0, hi: spec.r_max, tail_power: None };
    let (nodes, weights, radial_only) = match rs.dim() {
        1 => {
            let k = g;
            let rule = HalfLineRule::new(domain, 2.0 * k, 0.0, spec.resolution)?;
            let c = 2f64.powf(k);
            let mut nodes = Vec::new();
            let mut weights = Vec::new();
            for (&r, &w) in rule.r.iter().zip(&rule.w).rev() {
                nodes.push(vec![-r]);
                weights.push(c * w);
            }
            for (&r, &w) in rule.r.iter().zip(&rule.w) {
                nodes.push(vec![r]);
                weights.push(c * w);
            }
            (nodes, weights, false)
        }
        2 if spec.scheme == Scheme::TensorGaussLike => {
            let axis_aligned = rs.is_trivial()
                || rs
                    .positive_roots()
                    .iter()
                    .zip(rs.multiplicities())
                    .all(|(a, &k)| k == 0.0 || a.iter().filter(|v| v.abs() > 1e-12).count() == 1);
            if !axis_aligned {
                return Err(DunklError::UnsupportedFamily(
                    "tensor scheme needs a weight that factors over the axes; use PolarProduct".into(),
                ));
            }
            let mut axis_k = [0.0; 2];
            for (a, &k) in rs.positive_roots().iter().zip(rs.multiplicities()) {
                if let Some(i) = a.iter().position(|v| v.abs() > 1e-12) {
                    if a.iter().filter(|v| v.abs() > 1e-12).count() == 1 {
                        axis_k[i] += k;
                    }
                }
            }
            let line = |k: f64| -> Result<Vec<(f64, f64)>> {
                let rule = HalfLineRule::new(domain, 2.0 * k, 0.0, spec.resolution)?;
                let c = 2f64.powf(k);
                let mut v: Vec<(f64, f64)> = rule.r.iter().zip(&rule.w).map(|(&r, &w)| (-r, c * w)).collect();
                v.extend(rule.r.iter().zip(&rule.w).map(|(&r, &w)| (r, c * w)));
                Ok(v)
            };
            let (lx, ly) = (line(axis_k[0])?, line(axis_k[1])?);
            let mut nodes = Vec::with_capacity(lx.len() * ly.len());
            let mut weights = Vec::with_capacity(lx.len() * ly.len());
            for &(x, wx) in &lx {
                for &(y, wy) in &ly {
                    nodes.push(vec![x, y]);
                    weights.push(wx * wy);
                }
            }
            (nodes, weights, false)
        }
        2 => {
            let rule = HalfLineRule::new(domain, 1.0 + 2.0 * g, 0.0, spec.resolution)?;
            let (phis, aw) = angular_rule(rs)?;
            let mut nodes = Vec::with_capacity(rule.r.len() * phis.len());
            let mut weights = Vec::with_capacity(nodes.capacity());
            for (&r, &w) in rule.r.iter().zip(&rule.w) {
                for (&phi, &wa) in phis.iter().zip(&aw) {
                    nodes.push(vec![r * phi.cos(), r * phi.sin()]);
                    weights.push(w * wa);
                }
            }
            (nodes, weights, false)
        }
        n => {
            if spec.scheme == Scheme::TensorGaussLike {
                warnings.push("tensor scheme unavailable for N ≥ 3; using the radial rule".into());
            }
            let d = sphere_constant(rs)?;
            let rule = HalfLineRule::new(domain, n as f64 + 2.0 * g - 1.0, 0.0, spec.resolution)?;
            let nodes = rule
                .r
                .iter()
                .map(|&r| {
                    let mut x = vec![0.0; n];
                    x[0] = r;
                    x
                })
                .collect();
            let weights = rule.w.iter().map(|w| d * w).collect();
            (nodes, weights, true)
        }
    };
    Ok(WeightedQuadrature { dim: rs.dim(), gamma: g, spec, setting, nodes, weights, radial_only, warnings })
}

/// ∫ e^{−|x|²/2} dμ_k by quadrature, with a warning when R_max is too small for the Gaussian mass.
pub fn macdonald_mehta(rs: &RootSystem, quad: &WeightedQuadrature) -> (f64, Vec<String>) {
    let mut warnings = Vec::new();
    let g = rootsys::gamma(rs);
    if quad.spec.r_max < 8.0 * (1.0 + g).sqrt() {
        warnings.push(format!(
            "R_max = {} is below 8√(1+γ) = {:.3}; Gaussian mass is truncated",
            quad.spec.r_max,
            8.0 * (1.0 + g).sqrt()
        ));
    }
    let v = quad.integrate(|x| (-0.5 * x.iter().map(|v| v * v).sum::<f64>()).exp());
    (v, warnings)
}
