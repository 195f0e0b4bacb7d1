//! Closed-form sharp constants and a derivative-free search for near-extremal trial functions.

mod neldermead;

pub use neldermead::{nelder_mead, Simplex, SimplexOptions, SimplexOutcome};

use crate::error::{DunklError, Result};
use crate::inequalities::{admissible, check_class, evaluate_sides, known_ceiling, EvalContext, InequalitySpec};
use crate::measure::TestFunction;
use crate::special::{gamma as gamma_fn, ln_gamma};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// C(s) = 2^s Γ((n/2+s)/2)/Γ((n/2−s)/2) with n = N + 2γ, for 0 ≤ s < n/2.
pub fn sharp_constant_fractional_hardy(dim: f64, gamma: f64, s: f64) -> Result<f64> {
    let n = dim + 2.0 * gamma;
    if !(s >= 0.0 && s < n / 2.0) {
        return Err(DunklError::OutOfRange(format!("s = {s} must lie in [0, {})", n / 2.0)));
    }
    let (u, v) = ((n / 2.0 + s) / 2.0, (n / 2.0 - s) / 2.0);
    // puruspe's ln_gamma is only good to ~1e-11 relative; use it only past Γ's overflow
    if u < 170.0 {
        Ok(2f64.powf(s) * gamma_fn(u) / gamma_fn(v))
    } else {
        Ok((s * std::f64::consts::LN_2 + ln_gamma(u) - ln_gamma(v)).exp())
    }
}

/// (N+2γ)²(N+2γ−4)²/16, the constant in ‖Δ_k f‖² ≥ C‖f/|x|²‖².
pub fn rellich_sharp_constant(dim: f64, gamma: f64) -> Result<f64> {
    let n = dim + 2.0 * gamma;
    if n == 2.0 {
        return Err(DunklError::OutOfRange("the Rellich inequality needs N + 2γ ≠ 2".into()));
    }
    Ok((n * (n - 4.0)).powi(2) / 16.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyTag {
    /// |x|^β e^{−λ|x|²/2}; parameters beta, lambda.
    PowerGaussian,
    /// (1+|x|²)^{−β}; parameter beta.
    InversePower,
    /// Smooth bump on the annulus inner < |x| < inner + width (a ball when inner = 0).
    BumpScale,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamRange {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialFamily {
    pub tag: FamilyTag,
    pub bounds: Vec<ParamRange>,
}

fn range(name: &str, (lo, hi): (f64, f64)) -> ParamRange {
    ParamRange { name: name.into(), lo, hi }
}

impl TrialFamily {
    pub fn power_gaussian(beta: (f64, f64), lambda: (f64, f64)) -> Self {
        TrialFamily { tag: FamilyTag::PowerGaussian, bounds: vec![range("beta", beta), range("lambda", lambda)] }
    }

    pub fn inverse_power(beta: (f64, f64)) -> Self {
        TrialFamily { tag: FamilyTag::InversePower, bounds: vec![range("beta", beta)] }
    }

    pub fn bump_scale(inner: (f64, f64), width: (f64, f64)) -> Self {
        TrialFamily { tag: FamilyTag::BumpScale, bounds: vec![range("inner", inner), range("width", width)] }
    }

    /// Default box for the tag.
    pub fn default_for(tag: FamilyTag) -> Self {
        match tag {
            FamilyTag::PowerGaussian => Self::power_gaussian((0.0, 4.0), (0.25, 4.0)),
            FamilyTag::InversePower => Self::inverse_power((0.3, 4.0)),
            FamilyTag::BumpScale => Self::bump_scale((0.0, 2.0), (0.5, 4.0)),
        }
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    fn validate(&self) -> Result<()> {
        let expected: &[&str] = match self.tag {
            FamilyTag::PowerGaussian => &["beta", "lambda"],
            FamilyTag::InversePower => &["beta"],
            FamilyTag::BumpScale => &["inner", "width"],
        };
        let names: Vec<&str> = self.bounds.iter().map(|b| b.name.as_str()).collect();
        if names != expected {
            return Err(DunklError::InvalidInput(format!("{:?} takes parameters {expected:?}, got {names:?}", self.tag)));
        }
        for b in &self.bounds {
            if !(b.lo.is_finite() && b.hi.is_finite() && b.lo <= b.hi) {
                return Err(DunklError::InvalidInput(format!("bad range for {}: [{}, {}]", b.name, b.lo, b.hi)));
            }
        }
        let lo = |i: usize| self.bounds[i].lo;
        let ok = match self.tag {
            FamilyTag::PowerGaussian => lo(1) > 0.0,
            FamilyTag::InversePower => lo(0) > 0.0,
            FamilyTag::BumpScale => lo(0) >= 0.0 && lo(1) > 0.0,
        };
        if !ok {
            return Err(DunklError::InvalidInput(format!("{:?} box leaves the family's domain", self.tag)));
        }
        Ok(())
    }

    /// The trial function at parameters x (in the order of `bounds`).
    pub fn build(&self, x: &[f64]) -> Result<TestFunction> {
        if x.len() != self.dim() {
            return Err(DunklError::InvalidInput(format!("expected {} parameters, got {}", self.dim(), x.len())));
        }
        Ok(match self.tag {
            FamilyTag::PowerGaussian => TestFunction::power_gaussian(x[0], 1.0 / x[1].sqrt()),
            FamilyTag::InversePower => TestFunction::inverse_power(x[0], 1.0),
            FamilyTag::BumpScale if x[0] > 0.0 => TestFunction::annular_bump(x[0], x[0] + x[1]),
            FamilyTag::BumpScale => TestFunction::radial_bump(x[1]),
        })
    }

    fn from_unit(&self, u: &[f64]) -> Vec<f64> {
        self.bounds.iter().zip(u).map(|(b, &t)| b.lo + t.clamp(0.0, 1.0) * (b.hi - b.lo)).collect()
    }

    fn named(&self, x: &[f64]) -> BTreeMap<String, f64> {
        self.bounds.iter().zip(x).map(|(b, &v)| (b.name.clone(), v)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeOptions {
    pub max_iters: usize,
    /// Converged once the simplex diameter, in box-normalized coordinates, is below this.
    pub tolerance: f64,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions { max_iters: 200, tolerance: 1e-4, restarts: 3, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub restart: usize,
    pub evaluation: usize,
    pub ratio: f64,
    /// Best ratio seen so far over this and all earlier restarts.
    pub best: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestartSummary {
    pub start: BTreeMap<String, f64>,
    pub best_params: BTreeMap<String, f64>,
    pub best_ratio: f64,
    pub converged: bool,
    /// Parameters whose optimum sits on the box face.
    pub boundary: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub spec: InequalitySpec,
    pub family: TrialFamily,
    pub best_params: BTreeMap<String, f64>,
    pub best_ratio: f64,
    pub ceiling: Option<f64>,
    /// 1 − best/ceiling where a ceiling is known.
    pub gap: Option<f64>,
    pub converged: bool,
    /// Every restart ended on the box boundary: the maximizer likely lies outside the family.
    pub all_on_boundary: bool,
    pub restarts: Vec<RestartSummary>,
    pub trace: Vec<TraceEntry>,
}

const FACE_TOL: f64 = 1e-6;

/// Maximizes the constant-free ratio of the spec over the trial family by seeded Nelder–Mead restarts.
pub fn rayleigh_maximize(
    spec: &InequalitySpec,
    family: &TrialFamily,
    opt: &ProbeOptions,
    ctx: &EvalContext,
) -> Result<OptimizationResult> {
    family.validate()?;
    if ctx.options.require_admissible {
        let rep = admissible(spec)?;
        if !rep.admissible {
            return Err(DunklError::Inadmissible(format!("{}: {:?}", spec.theorem, rep.failed_ids())));
        }
    }
    let d = family.dim();
    let centre = vec![0.5; d];
    check_class(spec.theorem, &family.build(&family.from_unit(&centre))?, ctx.options.class_policy)?;
    let free: Vec<bool> = family.bounds.iter().map(|b| b.hi > b.lo).collect();

    let objective = |u: &[f64]| -> f64 {
        let x = family.from_unit(u);
        match family.build(&x).and_then(|f| evaluate_sides(spec, &f, ctx)) {
            Ok(r) => r.ratio,
            Err(_) => f64::NEG_INFINITY,
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed);
    let restarts = opt.restarts.max(1);
    let starts: Vec<Vec<f64>> = (0..restarts)
        .map(|i| {
            let draw: Vec<f64> = (0..d).map(|_| rng.random_range(0.0..1.0)).collect();
            if i == 0 {
                centre.clone()
            } else {
                draw
            }
        })
        .collect();

    let outcomes: Vec<SimplexOutcome> = starts
        .par_iter()
        .map(|s| {
            let so = SimplexOptions { max_iters: opt.max_iters, tolerance: opt.tolerance, ..Default::default() };
            nelder_mead(|u| -objective(u), s, &free, &so)
        })
        .collect();

    let mut trace = Vec::new();
    let mut best_so_far = f64::NEG_INFINITY;
    let mut summaries = Vec::with_capacity(restarts);
    let mut winner = 0;
    for (i, (o, s)) in outcomes.iter().zip(&starts).enumerate() {
        for (e, &v) in o.history.iter().enumerate() {
            let ratio = -v;
            best_so_far = best_so_far.max(ratio);
            trace.push(TraceEntry { restart: i, evaluation: e, ratio, best: best_so_far });
        }
        let boundary = family
            .bounds
            .iter()
            .zip(&o.best)
            .zip(&free)
            .filter(|((_, &u), &fr)| fr && (u <= FACE_TOL || u >= 1.0 - FACE_TOL))
            .map(|((b, _), _)| b.name.clone())
            .collect();
        summaries.push(RestartSummary {
            start: family.named(&family.from_unit(s)),
            best_params: family.named(&family.from_unit(&o.best)),
            best_ratio: -o.value,
            converged: o.converged,
            boundary,
        });
        // strict comparison keeps the lowest restart index on ties
        if -o.value > -outcomes[winner].value {
            winner = i;
        }
    }
    let best_x = family.from_unit(&outcomes[winner].best);
    if !outcomes[winner].value.is_finite() {
        return Err(DunklError::Degenerate(format!("no restart produced a finite {} ratio in the box", spec.theorem)));
    }
    // recompute at the reported parameters
    let best_ratio = evaluate_sides(spec, &family.build(&best_x)?, ctx)?.ratio;
    let ceiling = known_ceiling(spec)?;
    let all_on_boundary = free.iter().any(|&f| f) && summaries.iter().all(|s| !s.boundary.is_empty());
    Ok(OptimizationResult {
        spec: spec.clone(),
        family: family.clone(),
        best_params: family.named(&best_x),
        best_ratio,
        gap: ceiling.map(|c| 1.0 - best_ratio / c),
        ceiling,
        converged: summaries[winner].converged,
        all_on_boundary,
        restarts: summaries,
        trace,
    })
}
