//! Two-sided evaluation of an inequality on a test function, corpus verification and
//! dilation checks.

use super::spec::{admissible, FunctionClass, InequalitySpec, Theorem};
use super::trudinger::trudinger_lhs;
use crate::error::{DunklError, Result};
use crate::extremal::{sharp_constant_fractional_hardy, rellich_sharp_constant};
use crate::measure::{lp_norm_of, Infra, Op, Setting, TestFunction};
use crate::spectral::{fractional_norm, NormRoute, SpectralConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Relative slack allowed above a known sharp ceiling.
pub const CEILING_TOL: f64 = 1e-4;

/// How strictly the theorem's function class is enforced from test-function metadata.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassPolicy {
    /// The class itself: compact support, support away from 0, smoothness without algebraic tails.
    Strict,
    /// Its closure in the norms involved: any member whose norms are finite. Integrability at the
    /// origin is enforced by the quadrature (NonIntegrable), not by metadata.
    #[default]
    Closure,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    pub require_admissible: bool,
    pub class_policy: ClassPolicy,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { require_admissible: true, class_policy: ClassPolicy::Closure }
    }
}

/// Quadrature and spectral settings for evaluating norms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalContext {
    pub infra: Infra,
    pub spectral: SpectralConfig,
    pub options: EvalOptions,
}

impl EvalContext {
    pub fn new(setting: Setting) -> Self {
        EvalContext { infra: Infra::new(setting), spectral: SpectralConfig::default(), options: EvalOptions::default() }
    }

    /// Setting matching the spec's N and γ: rank one for N = 1, radial otherwise.
    pub fn for_spec(spec: &InequalitySpec) -> Result<Self> {
        let dim = spec.get("N")?;
        let gamma = if spec.theorem == Theorem::ClassicalCKN_1_1 { 0.0 } else { spec.get("gamma")? };
        if dim < 1.0 || dim.fract() != 0.0 {
            return Err(DunklError::InvalidInput(format!("N = {dim} must be a positive integer")));
        }
        let setting = if dim == 1.0 { Setting::Rank1 { k: gamma } } else { Setting::radial(dim as usize, gamma) };
        Ok(Self::new(setting))
    }

    pub fn with_options(mut self, options: EvalOptions) -> Self {
        self.options = options;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub function_id: String,
    pub lhs: f64,
    /// Product of the right-hand norms with the theorem's powers, without the constant.
    pub rhs: f64,
    pub ratio: f64,
    pub notes: Vec<String>,
}

impl VerificationRecord {
    pub const CSV_HEADER: &'static str = "function_id,lhs,rhs,ratio,notes";

    pub fn csv_row(&self) -> String {
        format!("{},{:.16e},{:.16e},{:.16e},\"{}\"", self.function_id, self.lhs, self.rhs, self.ratio, self.notes.join("; "))
    }
}

/// Known bound on lhs/rhs, where the theorem states its constant.
pub fn known_ceiling(spec: &InequalitySpec) -> Result<Option<f64>> {
    let gamma = |s: &InequalitySpec| if s.theorem == Theorem::ClassicalCKN_1_1 { Ok(0.0) } else { s.get("gamma") };
    Ok(match spec.theorem {
        Theorem::FractionalHardy => {
            Some(1.0 / sharp_constant_fractional_hardy(spec.get("N")?, gamma(spec)?, spec.get("s")?)?)
        }
        Theorem::ClassicalRellich => {
            let c = rellich_sharp_constant(spec.get("N")?, gamma(spec)?)?;
            (c > 0.0).then(|| 1.0 / c.sqrt())
        }
        Theorem::CKN_fractional => {
            let (a, delta) = (spec.get("a")?, spec.get("delta")?);
            let c = sharp_constant_fractional_hardy(spec.get("N")?, gamma(spec)?, 1.0 - a)?;
            Some(c.powf(-delta))
        }
        _ => None,
    })
}

fn check_setting(spec: &InequalitySpec, setting: &Setting) -> Result<()> {
    let dim = spec.get("N")?;
    let gamma = if spec.theorem == Theorem::ClassicalCKN_1_1 { 0.0 } else { spec.get("gamma")? };
    if (setting.dim() as f64 - dim).abs() > 0.0 || (setting.gamma() - gamma).abs() > 1e-14 {
        return Err(DunklError::InvalidInput(format!(
            "spec has N = {dim}, γ = {gamma} but the quadrature is set up for N = {}, γ = {}",
            setting.dim(),
            setting.gamma()
        )));
    }
    Ok(())
}

/// Checks the function against the theorem's class under the chosen policy.
pub fn check_class(theorem: Theorem, f: &TestFunction, policy: ClassPolicy) -> Result<()> {
    let class = theorem.function_class();
    let fail = |what: &str| Err(DunklError::ClassMismatch(format!("{} is not {what} (required by {theorem})", f.id)));
    match (policy, class) {
        (ClassPolicy::Strict, FunctionClass::Compact) if !(f.has_compact_support() && f.is_smooth()) => {
            fail("smooth with compact support")
        }
        (ClassPolicy::Strict, FunctionClass::CompactAwayFromOrigin) if !f.supported_away_from_origin() => {
            fail("supported away from the origin")
        }
        (ClassPolicy::Strict, FunctionClass::Schwartz) if !(f.is_smooth() && f.tail_power(Op::Value).is_none()) => {
            fail("a Schwartz function")
        }
        _ => Ok(()),
    }
}

struct Norms<'a> {
    f: &'a TestFunction,
    ctx: &'a EvalContext,
    notes: Vec<String>,
}

impl Norms<'_> {
    /// ‖|x|^a D f‖_p.
    fn weighted(&self, op: Op, p: f64, a: f64) -> Result<f64> {
        lp_norm_of(self.f, op, p, a, &self.ctx.infra)
    }

    /// ‖(−Δ_k)^{s/2} f‖_p.
    fn fractional(&mut self, s: f64, p: f64) -> Result<f64> {
        let (v, route) = fractional_norm(self.f, s, p, &self.ctx.infra, &self.ctx.spectral)?;
        if route != NormRoute::Identity {
            self.notes.push(format!("‖(−Δ_k)^({s}/2) f‖_{p} via {route:?}"));
        }
        Ok(v)
    }
}

/// x^e, skipping the evaluation of x when e = 0.
fn pow_of(e: f64, x: impl FnOnce() -> Result<f64>) -> Result<f64> {
    if e == 0.0 {
        Ok(1.0)
    } else {
        Ok(x()?.powf(e))
    }
}

/// Left and right sides of the theorem's display for f, with lhs ≤ C·rhs.
pub fn evaluate_sides(spec: &InequalitySpec, f: &TestFunction, ctx: &EvalContext) -> Result<VerificationRecord> {
    if ctx.options.require_admissible {
        let rep = admissible(spec)?;
        if !rep.admissible {
            let ids: Vec<String> = rep.failed.iter().map(|c| format!("{} ({})", c.id, c.statement)).collect();
            return Err(DunklError::Inadmissible(format!("{}: {}", spec.theorem, ids.join(", "))));
        }
    } else {
        spec.check_symbols()?;
    }
    check_setting(spec, &ctx.infra.setting)?;
    check_class(spec.theorem, f, ctx.options.class_policy)?;
    let g = |k: &str| spec.get(k);
    let n = spec.homogeneous_dim()?;
    let mut nm = Norms { f, ctx, notes: Vec::new() };
    use Theorem::*;
    let (lhs, rhs) = match spec.theorem {
        ClassicalCKN_1_1 => {
            let (p, q, r, a, b, d, delta) = (g("p")?, g("q")?, g("r")?, g("a")?, g("b")?, g("d")?, g("delta")?);
            let c = delta * d + (1.0 - delta) * b;
            let lhs = nm.weighted(Op::Value, r, c)?;
            let rhs = pow_of(delta, || nm.weighted(Op::Gradient, p, a))? * pow_of(1.0 - delta, || nm.weighted(Op::Value, q, b))?;
            (lhs, rhs)
        }
        CKN_I => {
            let (p, q, r, b, c, delta) = (g("p")?, g("q")?, g("r")?, g("b")?, g("c")?, g("delta")?);
            let lhs = nm.weighted(Op::Value, r, c)?;
            let rhs = pow_of(delta, || nm.weighted(Op::Gradient, p, 0.0))? * pow_of(1.0 - delta, || nm.weighted(Op::Value, q, b))?;
            (lhs, rhs)
        }
        CKN_II => {
            let (q, r, a, b, c, delta) = (g("q")?, g("r")?, g("a")?, g("b")?, g("c")?, g("delta")?);
            let lhs = nm.weighted(Op::Value, r, c)?;
            let rhs = pow_of(delta, || nm.weighted(Op::Gradient, 2.0, a))? * pow_of(1.0 - delta, || nm.weighted(Op::Value, q, b))?;
            (lhs, rhs)
        }
        CKN_fractional => {
            let (q, r, a, b, c, delta) = (g("q")?, g("r")?, g("a")?, g("b")?, g("c")?, g("delta")?);
            let lhs = nm.weighted(Op::Value, r, c)?;
            let frac = pow_of(delta, || nm.fractional(1.0 - a, 2.0))?;
            (lhs, frac * pow_of(1.0 - delta, || nm.weighted(Op::Value, q, b))?)
        }
        Hardy_Lp => {
            let p = g("p")?;
            (nm.weighted(Op::Value, p, -1.0)?, nm.weighted(Op::Gradient, p, 0.0)?)
        }
        WeightedHardy => {
            let (a, b, p) = (g("a")?, g("b")?, g("p")?);
            (nm.weighted(Op::Value, p, -b)?, nm.weighted(Op::Gradient, 2.0, -a)?)
        }
        ClassicalRellich => (nm.weighted(Op::Value, 2.0, -2.0)?, nm.weighted(Op::Laplacian(1), 2.0, 0.0)?),
        WeightedRellich => {
            let (a, b, p) = (g("a")?, g("b")?, g("p")?);
            (nm.weighted(Op::Value, p, -b)?, nm.weighted(Op::Laplacian(1), 2.0, -a)?)
        }
        HigherRellich => {
            let (a, b, p, j) = (g("a")?, g("b")?, g("p")?, g("j")?);
            (nm.weighted(Op::Value, p, -b)?, nm.weighted(Op::Laplacian(j as u32), 2.0, -a)?)
        }
        Uncertainty => {
            let (p, q) = (g("p")?, g("q")?);
            let l2 = nm.weighted(Op::Value, 2.0, 0.0)?;
            (l2 * l2, nm.weighted(Op::Gradient, p, 0.0)? * nm.weighted(Op::Value, q, 1.0)?)
        }
        GN_I => {
            let (p, q, r, theta) = (g("p")?, g("q")?, g("r")?, g("theta")?);
            let lhs = nm.weighted(Op::Value, q, 0.0)?;
            let rhs = pow_of(theta, || nm.weighted(Op::Gradient, r, 0.0))? * pow_of(1.0 - theta, || nm.weighted(Op::Value, p, 0.0))?;
            (lhs, rhs)
        }
        GN_II => {
            let (p, s, theta) = (g("p")?, g("s")?, g("theta")?);
            let lhs = nm.fractional(s * (1.0 - theta), p)?;
            let rhs = pow_of(1.0 - theta, || nm.fractional(s, p))? * pow_of(theta, || nm.weighted(Op::Value, p, 0.0))?;
            (lhs, rhs)
        }
        WeightedGN_I => {
            let (p, q, s) = (g("p")?, g("q")?, g("s")?);
            let lhs = nm.weighted(Op::Value, q, -1.0)?;
            let rhs = nm.fractional(s, p)?.powf(2.0 / s) * pow_of(1.0 - 2.0 / s, || nm.weighted(Op::Value, p, 0.0))?;
            (lhs, rhs)
        }
        WeightedGN_II => {
            let (a, s, p) = (g("a")?, g("s")?, g("p")?);
            let lhs = nm.weighted(Op::Value, p, -a)?;
            let rhs = nm.fractional(s, 2.0)?.powf(2.0 / s) * pow_of(1.0 - 2.0 / s, || nm.weighted(Op::Value, 2.0, 0.0))?;
            (lhs, rhs)
        }
        WeightedGN_III => {
            let (a, s) = (g("a")?, g("s")?);
            let e = if s == 0.0 { 0.0 } else { a / s };
            let lhs = nm.weighted(Op::Value, 2.0, -a)?;
            (lhs, pow_of(e, || nm.fractional(s, 2.0))? * pow_of(1.0 - e, || nm.weighted(Op::Value, 2.0, 0.0))?)
        }
        FractionalHardy => {
            let s = g("s")?;
            (nm.weighted(Op::Value, 2.0, -s)?, nm.fractional(s, 2.0)?)
        }
        Trudinger => {
            let (p, a) = (g("p")?, g("a")?);
            let scale = nm.fractional(n / p, p)?;
            if !(scale > 0.0) {
                return Err(DunklError::Degenerate(format!("{}: ‖(−Δ_k)^(N+2γ)/(2p) f‖_p = 0", f.id)));
            }
            let h = f.scaled(1.0 / scale);
            nm.notes.push(format!("normalized by ‖(−Δ_k)^((N+2γ)/(2p)) f‖_p = {scale:.6e}"));
            let lhs = trudinger_lhs(&h, a, p, &ctx.infra, super::trudinger::SERIES_CAP)?;
            (lhs, lp_norm_of(&h, Op::Value, p, 0.0, &ctx.infra)?.powf(p))
        }
        Sobolev => {
            let (p, q) = (g("p")?, g("q")?);
            (nm.weighted(Op::Value, q, 0.0)?, nm.weighted(Op::Gradient, p, 0.0)?)
        }
    };
    if !(rhs > 0.0) || !rhs.is_finite() || !lhs.is_finite() {
        return Err(DunklError::Degenerate(format!("{}: lhs = {lhs}, rhs = {rhs}", f.id)));
    }
    Ok(VerificationRecord { function_id: f.id.clone(), lhs, rhs, ratio: lhs / rhs, notes: nm.notes })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub spec: InequalitySpec,
    pub records: Vec<VerificationRecord>,
    pub max_ratio: f64,
    /// Known ceiling on the ratio, if the theorem states one.
    pub ceiling: Option<f64>,
    /// Indices into `records` exceeding the ceiling by more than the tolerance.
    pub violations: Vec<usize>,
    /// Members not evaluated (class mismatch, non-integrable weight, degenerate), with the reason.
    pub skipped: Vec<(String, String)>,
}

impl CorpusReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(VerificationRecord::CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    }
}

/// Evaluates every member (in parallel; results in corpus order).
pub fn verify_corpus(spec: &InequalitySpec, corpus: &[TestFunction], ctx: &EvalContext) -> Result<CorpusReport> {
    if corpus.is_empty() {
        return Err(DunklError::Empty("corpus is empty".into()));
    }
    let rep = admissible(spec)?;
    if ctx.options.require_admissible && !rep.admissible {
        return Err(DunklError::Inadmissible(format!("{}: {:?}", spec.theorem, rep.failed_ids())));
    }
    let results: Vec<Result<VerificationRecord>> = corpus.par_iter().map(|f| evaluate_sides(spec, f, ctx)).collect();
    let ceiling = known_ceiling(spec)?;
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for (f, r) in corpus.iter().zip(results) {
        match r {
            Ok(rec) => records.push(rec),
            Err(e @ (DunklError::ClassMismatch(_) | DunklError::NonIntegrable(_) | DunklError::Degenerate(_))) => {
                skipped.push((f.id.clone(), e.to_string()))
            }
            Err(e) => return Err(e),
        }
    }
    let max_ratio = records.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
    let violations = match ceiling {
        Some(c) => records.iter().enumerate().filter(|(_, r)| r.ratio > c * (1.0 + CEILING_TOL)).map(|(i, _)| i).collect(),
        None => Vec::new(),
    };
    Ok(CorpusReport { spec: spec.clone(), records, max_ratio, ceiling, violations, skipped })
}

/// Ratios for f(λ·) at each λ.
pub fn dilation_ratios(spec: &InequalitySpec, f: &TestFunction, lambdas: &[f64], ctx: &EvalContext) -> Result<Vec<f64>> {
    lambdas.iter().map(|&l| evaluate_sides(spec, &f.dilate(l), ctx).map(|r| r.ratio)).collect()
}

/// max over λ of |ratio(f(λ·))/ratio(f) − 1|.
pub fn dilation_deviation(spec: &InequalitySpec, f: &TestFunction, lambdas: &[f64], ctx: &EvalContext) -> Result<f64> {
    let base = evaluate_sides(spec, f, ctx)?.ratio;
    let r = dilation_ratios(spec, f, lambdas, ctx)?;
    Ok(r.iter().map(|x| (x / base - 1.0).abs()).fold(0.0, f64::max))
}
