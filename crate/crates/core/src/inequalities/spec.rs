//! Inequality specifications and their admissibility predicates.

use crate::error::{DunklError, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Slack allowed in equality and closed-inequality hypotheses.
pub const ADMISSIBILITY_TOL: f64 = 1e-12;

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    ClassicalCKN_1_1,
    CKN_I,
    CKN_II,
    CKN_fractional,
    Hardy_Lp,
    WeightedHardy,
    ClassicalRellich,
    WeightedRellich,
    HigherRellich,
    Uncertainty,
    GN_I,
    GN_II,
    WeightedGN_I,
    WeightedGN_II,
    WeightedGN_III,
    FractionalHardy,
    Trudinger,
    Sobolev,
}

/// Function class named in a theorem's hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FunctionClass {
    /// C_c^∞(ℝ^N).
    Compact,
    /// C_c^∞(ℝ^N ∖ {0}).
    CompactAwayFromOrigin,
    /// S(ℝ^N).
    Schwartz,
    /// H¹_D(ℝ^N) ∩ Lᵖ(μ_k).
    SobolevH1,
}

impl Theorem {
    pub const ALL: [Theorem; 18] = [
        Theorem::ClassicalCKN_1_1,
        Theorem::CKN_I,
        Theorem::CKN_II,
        Theorem::CKN_fractional,
        Theorem::Hardy_Lp,
        Theorem::WeightedHardy,
        Theorem::ClassicalRellich,
        Theorem::WeightedRellich,
        Theorem::HigherRellich,
        Theorem::Uncertainty,
        Theorem::GN_I,
        Theorem::GN_II,
        Theorem::WeightedGN_I,
        Theorem::WeightedGN_II,
        Theorem::WeightedGN_III,
        Theorem::FractionalHardy,
        Theorem::Trudinger,
        Theorem::Sobolev,
    ];

    /// Parameter names the theorem uses; all are required.
    pub fn symbols(&self) -> &'static [&'static str] {
        use Theorem::*;
        match self {
            ClassicalCKN_1_1 => &["N", "p", "q", "r", "a", "b", "d", "delta"],
            CKN_I => &["N", "gamma", "p", "q", "r", "b", "c", "delta"],
            CKN_II | CKN_fractional => &["N", "gamma", "q", "r", "a", "b", "c", "delta"],
            Hardy_Lp => &["N", "gamma", "p"],
            WeightedHardy | WeightedRellich => &["N", "gamma", "a", "b", "p"],
            ClassicalRellich => &["N", "gamma"],
            HigherRellich => &["N", "gamma", "a", "b", "p", "j"],
            Uncertainty | Sobolev => &["N", "gamma", "p", "q"],
            GN_I => &["N", "gamma", "p", "q", "r", "theta"],
            GN_II => &["N", "gamma", "p", "s", "theta"],
            WeightedGN_I => &["N", "gamma", "p", "q", "s"],
            WeightedGN_II => &["N", "gamma", "a", "s", "p"],
            WeightedGN_III => &["N", "gamma", "a", "s"],
            FractionalHardy => &["N", "gamma", "s"],
            Trudinger => &["N", "gamma", "p", "a"],
        }
    }

    pub fn function_class(&self) -> FunctionClass {
        use Theorem::*;
        match self {
            ClassicalRellich | WeightedGN_II => FunctionClass::CompactAwayFromOrigin,
            CKN_fractional | GN_II | WeightedGN_III | FractionalHardy | Trudinger => FunctionClass::Schwartz,
            GN_I => FunctionClass::SobolevH1,
            _ => FunctionClass::Compact,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Theorem {
    type Err = DunklError;
    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .iter()
            .copied()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| DunklError::InvalidInput(format!("unknown theorem tag `{s}`")))
    }
}

/// Unicode and long-form aliases accepted for parameter names.
fn canonical_name(name: &str) -> &str {
    match name {
        "γ" => "gamma",
        "δ" => "delta",
        "θ" => "theta",
        "j_order" => "j",
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalitySpec {
    pub theorem: Theorem,
    pub params: BTreeMap<String, f64>,
}

impl InequalitySpec {
    /// Checks that the names match the theorem's symbol set exactly.
    pub fn new(theorem: Theorem, params: &[(&str, f64)]) -> Result<Self> {
        let map = params.iter().map(|(k, v)| (canonical_name(k).to_string(), *v)).collect();
        let spec = InequalitySpec { theorem, params: map };
        spec.check_symbols()?;
        Ok(spec)
    }

    pub fn check_symbols(&self) -> Result<()> {
        let symbols = self.theorem.symbols();
        for s in symbols {
            if !self.params.contains_key(*s) {
                return Err(DunklError::MissingParameter(format!("{s} (for {})", self.theorem)));
            }
        }
        for k in self.params.keys() {
            if !symbols.contains(&canonical_name(k)) {
                return Err(DunklError::ExtraParameter(format!("{k} (for {})", self.theorem)));
            }
        }
        for (k, v) in &self.params {
            if !v.is_finite() {
                return Err(DunklError::InvalidInput(format!("parameter {k} = {v} is not finite")));
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<f64> {
        self.params.get(name).copied().ok_or_else(|| DunklError::MissingParameter(name.to_string()))
    }

    /// N + 2γ (γ = 0 for the classical Euclidean statement).
    pub fn homogeneous_dim(&self) -> Result<f64> {
        let n = self.get("N")?;
        let g = if self.theorem == Theorem::ClassicalCKN_1_1 { 0.0 } else { self.get("gamma")? };
        Ok(n + 2.0 * g)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailedCondition {
    pub id: String,
    pub statement: String,
    /// Signed slack of the condition (required > 0, ≥ 0 or = 0 depending on the condition).
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub failed: Vec<FailedCondition>,
    pub checked: usize,
}

impl AdmissibilityReport {
    pub fn failed_ids(&self) -> Vec<&str> {
        self.failed.iter().map(|c| c.id.as_str()).collect()
    }

    pub fn residual(&self, id: &str) -> Option<f64> {
        self.failed.iter().find(|c| c.id == id).map(|c| c.residual)
    }
}

#[derive(Default)]
struct Checker {
    failed: Vec<FailedCondition>,
    checked: usize,
}

impl Checker {
    fn push(&mut self, ok: bool, id: &str, statement: String, residual: f64) {
        self.checked += 1;
        if !ok {
            self.failed.push(FailedCondition { id: id.into(), statement, residual });
        }
    }

    /// value > 0.
    fn positive(&mut self, id: &str, statement: impl Into<String>, value: f64) {
        self.push(value > 0.0, id, statement.into(), value);
    }

    /// value ≥ 0 up to the tolerance.
    fn nonnegative(&mut self, id: &str, statement: impl Into<String>, value: f64) {
        self.push(value >= -ADMISSIBILITY_TOL, id, statement.into(), value);
    }

    /// value = 0 up to the tolerance.
    fn zero(&mut self, id: &str, statement: impl Into<String>, value: f64) {
        self.push(value.abs() <= ADMISSIBILITY_TOL, id, statement.into(), value);
    }

    /// lo ≤ x ≤ hi, reported as two conditions.
    fn within(&mut self, id: &str, name: &str, x: f64, lo: f64, hi: f64) {
        self.nonnegative(&format!("{id}.lower"), format!("{name} ≥ {lo}"), x - lo);
        self.nonnegative(&format!("{id}.upper"), format!("{name} ≤ {hi}"), hi - x);
    }

    fn finish(self) -> AdmissibilityReport {
        AdmissibilityReport { admissible: self.failed.is_empty(), failed: self.failed, checked: self.checked }
    }
}

/// Evaluates every hypothesis of the theorem at the given parameters.
pub fn admissible(spec: &InequalitySpec) -> Result<AdmissibilityReport> {
    spec.check_symbols()?;
    use Theorem::*;
    let g = |k: &str| spec.get(k);
    let mut c = Checker::default();
    let dim = g("N")?;
    c.positive("dimension", "N ≥ 1", dim - 0.5);
    if spec.theorem != ClassicalCKN_1_1 {
        c.nonnegative("gamma", "γ ≥ 0", g("gamma")?);
    }
    let n = spec.homogeneous_dim()?;
    match spec.theorem {
        ClassicalCKN_1_1 => {
            let (p, q, r, a, b, d, delta) = (g("p")?, g("q")?, g("r")?, g("a")?, g("b")?, g("d")?, g("delta")?);
            let cc = delta * d + (1.0 - delta) * b;
            c.nonnegative("p", "p ≥ 1", p - 1.0);
            c.nonnegative("q", "q ≥ 1", q - 1.0);
            c.positive("r", "r > 0", r);
            c.within("delta", "δ", delta, 0.0, 1.0);
            c.positive("clas_CKN0.p", "1/p + a/N > 0", 1.0 / p + a / dim);
            c.positive("clas_CKN0", "1/q + b/N > 0", 1.0 / q + b / dim);
            c.positive("clas_CKN0.r", "1/r + c/N > 0 with c = δd + (1−δ)b", 1.0 / r + cc / dim);
            let lhs = 1.0 / r + cc / dim;
            let rhs = delta * (1.0 / p + (a - 1.0) / dim) + (1.0 - delta) * (1.0 / q + b / dim);
            c.zero("clas_CKN2", "1/r + c/N = δ(1/p + (a−1)/N) + (1−δ)(1/q + b/N)", lhs - rhs);
            if delta > 0.0 {
                c.nonnegative("clas_CKN3", "a − d ≥ 0 when δ > 0", a - d);
                if (lhs - (1.0 / p + (a - 1.0) / dim)).abs() <= ADMISSIBILITY_TOL {
                    c.nonnegative("clas_CKN4", "a − d ≤ 1 when δ > 0 and 1/r + c/N = 1/p + (a−1)/N", 1.0 - (a - d));
                }
            }
        }
        CKN_I => {
            let (p, q, r, b, cc, delta) = (g("p")?, g("q")?, g("r")?, g("b")?, g("c")?, g("delta")?);
            let gm = g("gamma")?;
            c.positive("p.lower", "p > 1", p - 1.0);
            c.positive("p.upper", "p < (N+2γ)/(1+2γ)", n / (1.0 + 2.0 * gm) - p);
            c.positive("q", "1 < q < ∞", q - 1.0);
            c.positive("r", "r > 0", r);
            c.nonnegative("sum", "p + q ≥ r", p + q - r);
            c.within("delta", "δ", delta, 0.0, 1.0);
            c.nonnegative("delta.holder_lower", "δ ≥ (r−q)/r", delta - (r - q) / r);
            c.nonnegative("delta.holder_upper", "δ ≤ p/r", p / r - delta);
            c.zero("balance", "δr/p + (1−δ)r/q = 1", delta * r / p + (1.0 - delta) * r / q - 1.0);
            c.zero("c", "c = −δ + b(1−δ)", cc - (-delta + b * (1.0 - delta)));
        }
        CKN_II => {
            let (q, r, a, b, cc, delta) = (g("q")?, g("r")?, g("a")?, g("b")?, g("c")?, g("delta")?);
            c.positive("dimension.hardy", "N + 2γ > 2", n - 2.0);
            let s2 = 2.0 * n / (n - 2.0);
            c.positive("q", "1 < q < ∞", q - 1.0);
            c.positive("r", "r > 0", r);
            c.nonnegative("sum", "2(N+2γ)/(N+2γ−2) + q ≥ r", s2 + q - r);
            c.within("delta", "δ", delta, 0.0, 1.0);
            c.nonnegative("delta.holder_lower", "δ ≥ (r−q)/r", delta - (r - q) / r);
            c.nonnegative("delta.holder_upper", "δ ≤ 2(N+2γ)/(r(N+2γ−2))", s2 / r - delta);
            c.positive("a", "N + 2γ − 2 + 2a > 0", n - 2.0 + 2.0 * a);
            c.zero(
                "balance",
                "δr(N+2γ−2)/(2(N+2γ)) + (1−δ)r/q = 1",
                delta * r / s2 + (1.0 - delta) * r / q - 1.0,
            );
            c.zero("c", "c = δa + b(1−δ)", cc - (delta * a + b * (1.0 - delta)));
        }
        CKN_fractional => {
            let (q, r, a, b, cc, delta) = (g("q")?, g("r")?, g("a")?, g("b")?, g("c")?, g("delta")?);
            c.positive("q", "1 < q < ∞", q - 1.0);
            c.positive("r", "r > 0", r);
            c.nonnegative("sum", "2 + q ≥ r", 2.0 + q - r);
            c.within("delta", "δ", delta, 0.0, 1.0);
            c.nonnegative("delta.holder_lower", "δ ≥ (r−q)/r", delta - (r - q) / r);
            c.nonnegative("delta.holder_upper", "δ ≤ 2/r", 2.0 / r - delta);
            c.zero("balance", "δr/2 + (1−δ)r/q = 1", delta * r / 2.0 + (1.0 - delta) * r / q - 1.0);
            c.zero("c", "c = δ(a−1) + b(1−δ)", cc - (delta * (a - 1.0) + b * (1.0 - delta)));
            c.positive("a.lower", "a > 1 − (N+2γ)/2", a - (1.0 - n / 2.0));
            c.nonnegative("a.upper", "a ≤ 1", 1.0 - a);
        }
        Hardy_Lp => {
            let p = g("p")?;
            c.positive("p.lower", "p > 1", p - 1.0);
            c.positive("p.upper", "p < (N+2γ)/(1+2γ)", n / (1.0 + 2.0 * g("gamma")?) - p);
        }
        WeightedHardy => {
            let (a, b, p) = (g("a")?, g("b")?, g("p")?);
            c.within("b", "b − a", b - a, 0.0, 1.0);
            c.zero("p", "p = 2(N+2γ)/(N+2γ−2+2(b−a))", p - 2.0 * n / (n - 2.0 + 2.0 * (b - a)));
            c.positive("a", "a < (N+2γ−2)/2", (n - 2.0) / 2.0 - a);
        }
        ClassicalRellich => {
            c.push((n - 2.0).abs() > ADMISSIBILITY_TOL, "dimension", "N + 2γ ≠ 2".into(), n - 2.0);
        }
        WeightedRellich => {
            let (a, b, p) = (g("a")?, g("b")?, g("p")?);
            c.within("b", "b − (a+1)", b - (a + 1.0), 0.0, 1.0);
            c.zero("p", "p = 2(N+2γ)/(N+2γ−2+2(b−(a+1)))", p - 2.0 * n / (n - 2.0 + 2.0 * (b - a - 1.0)));
            c.positive("a", "a + 1 < (N+2γ−2)/2", (n - 2.0) / 2.0 - (a + 1.0));
        }
        HigherRellich => {
            let (a, b, p, j) = (g("a")?, g("b")?, g("p")?, g("j")?);
            c.push(j >= 1.0 && j.fract() == 0.0, "j", "j ∈ ℕ, j ≥ 1".into(), j);
            let base = a + 2.0 * (j - 1.0) + 1.0;
            c.within("b", "b − (a+2(j−1)+1)", b - base, 0.0, 1.0);
            c.zero("p", "p = 2(N+2γ)/(N+2γ−2+2(b−(a+2(j−1)+1)))", p - 2.0 * n / (n - 2.0 + 2.0 * (b - base)));
            c.positive("a", "a + 2(j−1) + 1 < (N+2γ−2)/2", (n - 2.0) / 2.0 - base);
        }
        Uncertainty => {
            let (p, q) = (g("p")?, g("q")?);
            c.positive("p.lower", "p > 1", p - 1.0);
            c.positive("p.upper", "p < (N+2γ)/(1+2γ)", n / (1.0 + 2.0 * g("gamma")?) - p);
            c.zero("q", "1/p + 1/q = 1", 1.0 / p + 1.0 / q - 1.0);
        }
        GN_I => {
            let (p, q, r, theta) = (g("p")?, g("q")?, g("r")?, g("theta")?);
            c.nonnegative("p", "1 ≤ p < ∞", p - 1.0);
            c.nonnegative("q", "1 ≤ q < ∞", q - 1.0);
            c.nonnegative("r.lower", "r ≥ 1", r - 1.0);
            c.positive("r.upper", "r < N + 2γ", n - r);
            c.within("theta", "θ", theta, 0.0, 1.0);
            c.zero("balance", "θ(1/(N+2γ) + 1/p − 1/r) = 1/p − 1/q", theta * (1.0 / n + 1.0 / p - 1.0 / r) - (1.0 / p - 1.0 / q));
        }
        GN_II => {
            let (p, s, theta) = (g("p")?, g("s")?, g("theta")?);
            c.positive("p", "1 < p < ∞", p - 1.0);
            c.within("s", "s", s, 0.0, n / p);
            c.within("theta", "θ", theta, 0.0, 1.0);
        }
        WeightedGN_I => {
            let (p, q, s) = (g("p")?, g("q")?, g("s")?);
            c.positive("p.lower", "p > 1", p - 1.0);
            c.positive("p.upper", "p < (N+2γ)/(2+2γ)", n / (2.0 + 2.0 * g("gamma")?) - p);
            c.within("s", "s", s, 2.0, n / p);
            c.zero("q", "q = p(N+2γ)/(N+2γ−p)", q - p * n / (n - p));
        }
        WeightedGN_II => {
            let (a, s, p) = (g("a")?, g("s")?, g("p")?);
            c.positive("dimension", "(N+2γ)/2 > 2", n / 2.0 - 2.0);
            c.within("a", "a", a, 1.0, 2.0);
            c.within("s", "s", s, 2.0, n / 2.0);
            c.zero("p", "p = 2(N+2γ)/(N+2γ−2+2(a−1))", p - 2.0 * n / (n - 2.0 + 2.0 * (a - 1.0)));
        }
        WeightedGN_III => {
            let (a, s) = (g("a")?, g("s")?);
            c.nonnegative("a", "a ≥ 0", a);
            c.nonnegative("s.lower", "a ≤ s", s - a);
            c.nonnegative("s.upper", "s ≤ (N+2γ)/2", n / 2.0 - s);
        }
        FractionalHardy => {
            let s = g("s")?;
            c.nonnegative("s.lower", "s ≥ 0", s);
            c.positive("s.upper", "s < (N+2γ)/2", n / 2.0 - s);
        }
        Trudinger => {
            let (p, a) = (g("p")?, g("a")?);
            c.positive("p", "1 < p < ∞", p - 1.0);
            c.positive("a", "a > 0", a);
        }
        Sobolev => {
            let (p, q) = (g("p")?, g("q")?);
            c.nonnegative("p.lower", "p ≥ 1", p - 1.0);
            c.positive("p.upper", "p < N + 2γ", n - p);
            c.zero("q", "q = p(N+2γ)/(N+2γ−p)", q - p * n / (n - p));
        }
    }
    Ok(c.finish())
}

/// Parameter point of the introduction's CKN example: N, p = q = r, b = −N/p and
/// c = −δ + b(1−δ) = (δ(N−p) − N)/p, in CKN_I form.
pub fn ckn_example(dim: f64, p: f64, delta: f64) -> Result<InequalitySpec> {
    let b = -dim / p;
    InequalitySpec::new(
        Theorem::CKN_I,
        &[("N", dim), ("gamma", 0.0), ("p", p), ("q", p), ("r", p), ("b", b), ("c", -delta + b * (1.0 - delta)), ("delta", delta)],
    )
}

/// The same point stated for the classical theorem: unweighted gradient (a = 0) and d = −1, so
/// that δd + (1−δ)b equals the CKN_I exponent c.
pub fn ckn_example_classical(dim: f64, p: f64, delta: f64) -> Result<InequalitySpec> {
    InequalitySpec::new(
        Theorem::ClassicalCKN_1_1,
        &[("N", dim), ("p", p), ("q", p), ("r", p), ("a", 0.0), ("b", -dim / p), ("d", -1.0), ("delta", delta)],
    )
}

/// θ forced by the GN_I balance at p = r = 2: θ = (N+2γ)(q−2)/(2q).
pub fn gn_theta_at_p2(n: f64, q: f64) -> f64 {
    n * (q - 2.0) / (2.0 * q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_sets_are_enforced() {
        assert!(matches!(
            InequalitySpec::new(Theorem::FractionalHardy, &[("N", 3.0), ("gamma", 0.0)]),
            Err(DunklError::MissingParameter(_))
        ));
        assert!(matches!(
            InequalitySpec::new(Theorem::FractionalHardy, &[("N", 3.0), ("gamma", 0.0), ("s", 1.0), ("p", 2.0)]),
            Err(DunklError::ExtraParameter(_))
        ));
        let s = InequalitySpec::new(Theorem::FractionalHardy, &[("N", 3.0), ("γ", 0.0), ("s", 1.0)]).unwrap();
        assert_eq!(s.get("gamma").unwrap(), 0.0);
        assert!("nonsense".parse::<Theorem>().is_err());
        assert_eq!("ckn_i".parse::<Theorem>().unwrap(), Theorem::CKN_I);
    }

    #[test]
    fn intro_example_splits_the_two_predicates() {
        let classical = admissible(&ckn_example_classical(3.0, 2.0, 0.5).unwrap()).unwrap();
        assert!(!classical.admissible);
        assert_eq!(classical.failed_ids(), vec!["clas_CKN0"]);
        assert_eq!(classical.residual("clas_CKN0"), Some(0.0));
        let dunkl = admissible(&ckn_example(3.0, 2.0, 0.5).unwrap()).unwrap();
        assert!(dunkl.admissible, "{dunkl:?}");
    }

    #[test]
    fn hardy_range_is_enforced() {
        let ok = InequalitySpec::new(Theorem::Hardy_Lp, &[("N", 3.0), ("gamma", 0.0), ("p", 2.0)]).unwrap();
        assert!(admissible(&ok).unwrap().admissible);
        let bad = InequalitySpec::new(Theorem::Hardy_Lp, &[("N", 3.0), ("gamma", 0.0), ("p", 3.5)]).unwrap();
        assert_eq!(admissible(&bad).unwrap().failed_ids(), vec!["p.upper"]);
        // (N+2γ)/(1+2γ) = 1 in rank one: no admissible p
        let rank1 = InequalitySpec::new(Theorem::Hardy_Lp, &[("N", 1.0), ("gamma", 0.7), ("p", 1.0001)]).unwrap();
        assert!(!admissible(&rank1).unwrap().admissible);
    }

    #[test]
    fn gn_balance_at_p2() {
        for &(n, q) in &[(3.0, 4.0), (5.0, 2.5), (2.4, 3.0)] {
            let theta = gn_theta_at_p2(n, q);
            let s = InequalitySpec::new(
                Theorem::GN_I,
                &[("N", n), ("gamma", 0.0), ("p", 2.0), ("q", q), ("r", 2.0), ("theta", theta)],
            )
            .unwrap();
            let rep = admissible(&s).unwrap();
            assert!(rep.failed_ids().iter().all(|id| !id.starts_with("balance")), "{rep:?}");
        }
    }

    #[test]
    fn every_theorem_has_an_admissible_point() {
        let pts: Vec<InequalitySpec> = vec![
            ckn_example(3.0, 2.0, 0.5).unwrap(),
            InequalitySpec::new(Theorem::ClassicalCKN_1_1, &[("N", 3.0), ("p", 2.0), ("q", 2.0), ("r", 2.0), ("a", 0.0), ("b", 0.0), ("d", -1.0), ("delta", 1.0)]).unwrap(),
            InequalitySpec::new(Theorem::CKN_II, &[("N", 3.0), ("gamma", 0.0), ("q", 2.0), ("r", 3.0), ("a", 0.0), ("b", 0.0), ("c", 0.0), ("delta", 0.5)]).unwrap(),
            InequalitySpec::new(Theorem::CKN_fractional, &[("N", 3.0), ("gamma", 0.0), ("q", 2.0), ("r", 2.0), ("a", 0.5), ("b", 0.0), ("c", -0.25), ("delta", 0.5)]).unwrap(),
            InequalitySpec::new(Theorem::WeightedHardy, &[("N", 4.0), ("gamma", 0.0), ("a", 0.0), ("b", 0.5), ("p", 8.0 / 3.0)]).unwrap(),
            InequalitySpec::new(Theorem::ClassicalRellich, &[("N", 5.0), ("gamma", 0.0)]).unwrap(),
            InequalitySpec::new(Theorem::WeightedRellich, &[("N", 5.0), ("gamma", 0.0), ("a", 0.0), ("b", 2.0), ("p", 2.0)]).unwrap(),
            InequalitySpec::new(Theorem::HigherRellich, &[("N", 9.0), ("gamma", 0.0), ("a", 0.0), ("b", 4.0), ("p", 2.0), ("j", 2.0)]).unwrap(),
            InequalitySpec::new(Theorem::Uncertainty, &[("N", 3.0), ("gamma", 0.0), ("p", 2.0), ("q", 2.0)]).unwrap(),
            InequalitySpec::new(Theorem::GN_II, &[("N", 1.0), ("gamma", 0.5), ("p", 2.0), ("s", 1.0), ("theta", 0.5)]).unwrap(),
            InequalitySpec::new(Theorem::WeightedGN_I, &[("N", 5.0), ("gamma", 0.0), ("p", 1.2), ("q", 6.0 / 3.8), ("s", 3.0)]).unwrap(),
            InequalitySpec::new(Theorem::WeightedGN_II, &[("N", 5.0), ("gamma", 0.0), ("a", 1.5), ("s", 2.0), ("p", 2.5)]).unwrap(),
            InequalitySpec::new(Theorem::WeightedGN_III, &[("N", 1.0), ("gamma", 1.0), ("a", 0.5), ("s", 1.0)]).unwrap(),
            InequalitySpec::new(Theorem::FractionalHardy, &[("N", 3.0), ("gamma", 0.0), ("s", 1.0)]).unwrap(),
            InequalitySpec::new(Theorem::Trudinger, &[("N", 1.0), ("gamma", 0.5), ("p", 2.0), ("a", 0.3)]).unwrap(),
            InequalitySpec::new(Theorem::Sobolev, &[("N", 3.0), ("gamma", 0.0), ("p", 2.0), ("q", 6.0)]).unwrap(),
        ];
        for s in pts {
            let rep = admissible(&s).unwrap();
            assert!(rep.admissible, "{}: {rep:?}", s.theorem);
            assert!(rep.checked > 0);
        }
    }
}
