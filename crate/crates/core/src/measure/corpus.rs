use super::testfn::{FunctionFamily, Shape, TestFunction};
use crate::error::{DunklError, Result};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusConstraints {
    /// Every member has f(0) = 0.
    pub vanish_at_origin: bool,
    /// Every member is radial (even in rank one).
    pub radial: bool,
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

fn satisfies(family: FunctionFamily, c: &CorpusConstraints) -> bool {
    !c.vanish_at_origin
        || matches!(
            family,
            FunctionFamily::HermiteGaussian
                | FunctionFamily::AnnularBump
                | FunctionFamily::SeededSuperposition
                | FunctionFamily::PowerGaussian
        )
}

fn hermite(rng: &mut ChaCha8Rng, c: &CorpusConstraints, sigma: f64) -> TestFunction {
    let degree = rng.random_range(1..=3usize);
    let start = if c.vanish_at_origin { 1 } else { 0 };
    let mut coefs = vec![0.0; 2 * degree + 1];
    for (m, v) in coefs.iter_mut().enumerate() {
        let allowed = m / if c.radial { 2 } else { 1 } >= start && (!c.radial || m % 2 == 0);
        if allowed {
            *v = rng.random_range(-1.0..1.0);
        }
    }
    // keep a dominant term so the member is not accidentally tiny
    let lead = if c.radial { 2 * start } else { start };
    coefs[lead] += if coefs[lead] >= 0.0 { 1.0 } else { -1.0 };
    TestFunction::hermite_gaussian(&coefs, sigma)
}

fn member(family: FunctionFamily, rng: &mut ChaCha8Rng, c: &CorpusConstraints) -> TestFunction {
    match family {
        FunctionFamily::Gaussian => TestFunction::gaussian(log_uniform(rng, 0.5, 2.0)),
        FunctionFamily::DilatedGaussian => {
            let amp = rng.random_range(0.5..2.0);
            let mut f = TestFunction::gaussian(log_uniform(rng, 0.25, 4.0)).scaled(amp);
            f.family = FunctionFamily::DilatedGaussian;
            f.params.insert("amplitude".into(), amp);
            f
        }
        FunctionFamily::HermiteGaussian => {
            let sigma = log_uniform(rng, 0.5, 2.0);
            hermite(rng, c, sigma)
        }
        FunctionFamily::RadialBump => TestFunction::radial_bump(rng.random_range(1.0..3.0)),
        FunctionFamily::AnnularBump => {
            let inner = rng.random_range(0.2..1.0);
            TestFunction::annular_bump(inner, inner + rng.random_range(0.5..2.0))
        }
        FunctionFamily::PowerGaussian => {
            TestFunction::power_gaussian(2.0 * rng.random_range(1..=3) as f64, log_uniform(rng, 0.5, 2.0))
        }
        FunctionFamily::InversePower => {
            TestFunction::inverse_power(rng.random_range(2.0..4.0), log_uniform(rng, 0.5, 2.0))
        }
        FunctionFamily::SeededSuperposition => {
            // Gaussian-type parts on comparable scales: mixing a compact bump with a wide Gaussian
            // needs a spectral grid far beyond the node cap.
            let parts = rng.random_range(2..=3usize);
            let base = log_uniform(rng, 0.5, 2.0);
            let mut shapes = Vec::new();
            for _ in 0..parts {
                let sigma = base * log_uniform(rng, 0.8, 1.25);
                let sub = if c.vanish_at_origin || rng.random_bool(0.5) {
                    hermite(rng, c, sigma)
                } else {
                    TestFunction::gaussian(sigma)
                };
                let w = rng.random_range(0.3..1.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                shapes.push((w, sub.shape));
            }
            TestFunction::new("superposition", FunctionFamily::SeededSuperposition, &[("parts", parts as f64)], Shape::Sum { parts: shapes })
        }
    }
}

/// Deterministic corpus: member i uses `families[i mod len]` among the families compatible with
/// the constraints, with parameters drawn from a ChaCha8 stream seeded by `seed`.
pub fn generate_corpus(
    seed: u64,
    count: usize,
    families: &[FunctionFamily],
    constraints: CorpusConstraints,
) -> Result<Vec<TestFunction>> {
    if count == 0 {
        return Err(DunklError::Empty("corpus size must be at least 1".into()));
    }
    let usable: Vec<FunctionFamily> = families.iter().copied().filter(|f| satisfies(*f, &constraints)).collect();
    if usable.is_empty() {
        return Err(DunklError::Empty(if families.is_empty() {
            "family list is empty".into()
        } else {
            "no listed family satisfies the constraints".into()
        }));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|i| {
            let fam = usable[i % usable.len()];
            let mut f = member(fam, &mut rng, &constraints);
            f.id = format!("{fam}-{seed}-{i}");
            f
        })
        .collect())
}
