//! Root systems, multiplicity functions, reflections and the generated reflection group.

use crate::error::{DunklError, Result};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::PI;

const ROOT_TOL: f64 = 1e-12;
const GROUP_TOL: f64 = 1e-10;
pub const DEFAULT_GROUP_CAP: usize = 100_000;

/// Catalog families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Rank1Z2,
    ProductZ2N,
    SymmetricGroupA,
    DihedralI2m { m: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Rank1Z2 => "Rank1Z2",
            Family::ProductZ2N => "ProductZ2N",
            Family::SymmetricGroupA => "SymmetricGroupA",
            Family::DihedralI2m { .. } => "DihedralI2m",
        }
    }
}

/// A root system with fixed positive subsystem and multiplicity function.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSystem {
    dim: usize,
    positive: Vec<Vec<f64>>,
    k: Vec<f64>,
    family: Option<Family>,
    orbit_multiplicities: Vec<f64>,
}

impl RootSystem {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn positive_roots(&self) -> &[Vec<f64>] {
        &self.positive
    }

    /// Multiplicity of each positive root, in the order of [`positive_roots`](Self::positive_roots).
    pub fn multiplicities(&self) -> &[f64] {
        &self.k
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    /// All roots, R₊ followed by −R₊.
    pub fn roots(&self) -> Vec<Vec<f64>> {
        let mut all = self.positive.clone();
        all.extend(self.positive.iter().map(|a| a.iter().map(|v| -v).collect()));
        all
    }

    /// Multiplicity of an arbitrary root (positive or negative); `None` if not a root.
    pub fn multiplicity_of(&self, alpha: &[f64]) -> Option<f64> {
        self.positive.iter().zip(&self.k).find_map(|(p, &k)| {
            let same = p.iter().zip(alpha).all(|(a, b)| (a - b).abs() < 1e-9);
            let opposite = p.iter().zip(alpha).all(|(a, b)| (a + b).abs() < 1e-9);
            (same || opposite).then_some(k)
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.k.iter().all(|&k| k == 0.0)
    }

    /// Serializable description.
    pub fn to_doc(&self) -> RootSystemDoc {
        match self.family {
            Some(f) => RootSystemDoc::Catalog {
                family: f,
                n: self.dim,
                multiplicities: self.orbit_multiplicities.clone(),
            },
            None => RootSystemDoc::Custom {
                roots: self.positive.clone(),
                multiplicities: self.k.clone(),
            },
        }
    }

    pub fn from_doc(doc: &RootSystemDoc) -> Result<Self> {
        match doc {
            RootSystemDoc::Catalog { family, n, multiplicities } => {
                build_root_system(*family, *n, multiplicities)
            }
            RootSystemDoc::Custom { roots, multiplicities } => from_positive_roots(roots, multiplicities),
        }
    }
}

/// JSON form: `{family, N, multiplicities}` or `{roots, multiplicities}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RootSystemDoc {
    Catalog {
        family: Family,
        #[serde(rename = "N")]
        n: usize,
        multiplicities: Vec<f64>,
    },
    Custom {
        roots: Vec<Vec<f64>>,
        multiplicities: Vec<f64>,
    },
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Builds one of the catalog root systems. Roots are normalized to |α|² = 2.
pub fn build_root_system(family: Family, n: usize, multiplicities: &[f64]) -> Result<RootSystem> {
    if n == 0 {
        return Err(DunklError::UnsupportedFamily(format!("{} with N = 0", family.name())));
    }
    if let Some(&k) = multiplicities.iter().find(|&&k| !(k >= 0.0) || !k.is_finite()) {
        return Err(DunklError::NegativeMultiplicity(k));
    }
    let s2 = 2f64.sqrt();
    let (positive, orbit, orbits): (Vec<Vec<f64>>, Vec<usize>, usize) = match family {
        Family::Rank1Z2 => {
            if n != 1 {
                return Err(DunklError::UnsupportedFamily(format!("Rank1Z2 requires N = 1, got {n}")));
            }
            (vec![vec![s2]], vec![0], 1)
        }
        Family::ProductZ2N => {
            let roots = (0..n)
                .map(|i| {
                    let mut e = vec![0.0; n];
                    e[i] = s2;
                    e
                })
                .collect();
            (roots, (0..n).collect(), n)
        }
        Family::SymmetricGroupA => {
            if n < 2 {
                return Err(DunklError::UnsupportedFamily("SymmetricGroupA requires N ≥ 2".into()));
            }
            let mut roots = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let mut e = vec![0.0; n];
                    e[i] = 1.0;
                    e[j] = -1.0;
                    roots.push(e);
                }
            }
            let len = roots.len();
            (roots, vec![0; len], 1)
        }
        Family::DihedralI2m { m } => {
            if n != 2 || m < 1 {
                return Err(DunklError::UnsupportedFamily(format!(
                    "DihedralI2m requires N = 2 and m ≥ 1, got N = {n}, m = {m}"
                )));
            }
            let roots = (0..m)
                .map(|j| {
                    let t = PI * j as f64 / m as f64;
                    vec![s2 * t.cos(), s2 * t.sin()]
                })
                .collect();
            if m % 2 == 0 {
                (roots, (0..m).map(|j| j % 2).collect(), 2)
            } else {
                (roots, vec![0; m], 1)
            }
        }
    };
    if multiplicities.len() != orbits {
        return Err(DunklError::MultiplicityCount { expected: orbits, got: multiplicities.len() });
    }
    let k = orbit.iter().map(|&o| multiplicities[o]).collect();
    let rs = RootSystem {
        dim: n,
        positive,
        k,
        family: Some(family),
        orbit_multiplicities: multiplicities.to_vec(),
    };
    validate(&rs)?;
    Ok(rs)
}

/// Builds a root system from user-supplied positive roots (rescaled to |α|² = 2) and
/// one multiplicity per positive root.
pub fn from_positive_roots(roots: &[Vec<f64>], multiplicities: &[f64]) -> Result<RootSystem> {
    let n = roots.first().map(|r| r.len()).unwrap_or(0);
    if n == 0 {
        return Err(DunklError::InvalidRootSystem("empty root list".into()));
    }
    if roots.len() != multiplicities.len() {
        return Err(DunklError::MultiplicityCount { expected: roots.len(), got: multiplicities.len() });
    }
    if let Some(&k) = multiplicities.iter().find(|&&k| !(k >= 0.0) || !k.is_finite()) {
        return Err(DunklError::NegativeMultiplicity(k));
    }
    let mut positive = Vec::with_capacity(roots.len());
    for r in roots {
        if r.len() != n {
            return Err(DunklError::InvalidRootSystem("roots of different dimensions".into()));
        }
        let norm2 = dot(r, r);
        if !(norm2 > 0.0) || !norm2.is_finite() {
            return Err(DunklError::InvalidRootSystem("zero or non-finite root".into()));
        }
        let s = (2.0 / norm2).sqrt();
        positive.push(r.iter().map(|v| v * s).collect());
    }
    let rs = RootSystem {
        dim: n,
        positive,
        k: multiplicities.to_vec(),
        family: None,
        orbit_multiplicities: multiplicities.to_vec(),
    };
    validate(&rs)?;
    Ok(rs)
}

fn find_root(all: &[Vec<f64>], v: &[f64]) -> Option<usize> {
    all.iter()
        .position(|r| r.iter().zip(v).all(|(a, b)| (a - b).abs() < ROOT_TOL * (1.0 + a.abs())))
}

/// Checks negation closure, reducedness, σ_α(R) = R and G-invariance of k.
pub fn validate(rs: &RootSystem) -> Result<()> {
    let all = rs.roots();
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            if i == j {
                continue;
            }
            // R ∩ αℝ = {±α}
            let c = dot(a, b) / 2.0;
            let parallel = a.iter().zip(b).all(|(x, y)| (y - c * x).abs() < ROOT_TOL * 10.0);
            if parallel && (c.abs() - 1.0).abs() > 1e-9 {
                return Err(DunklError::InvalidRootSystem("two roots on the same line other than ±α".into()));
            }
            if parallel && (c - 1.0).abs() < 1e-9 {
                return Err(DunklError::InvalidRootSystem("duplicate root".into()));
            }
        }
    }
    for (ai, a) in rs.positive.iter().enumerate() {
        for (bi, b) in all.iter().enumerate() {
            let image = reflect(a, b);
            let Some(idx) = find_root(&all, &image) else {
                return Err(DunklError::InvalidRootSystem("σ_α(R) ≠ R".into()));
            };
            let kb = rs.k[bi % rs.positive.len()];
            let kimg = rs.k[idx % rs.positive.len()];
            if (kb - kimg).abs() > 1e-12 {
                return Err(DunklError::InvalidRootSystem(format!(
                    "multiplicity is not invariant under the reflection of positive root {ai}"
                )));
            }
        }
    }
    Ok(())
}

/// σ_α x = x − 2⟨α,x⟩α/⟨α,α⟩.
pub fn reflect(alpha: &[f64], x: &[f64]) -> Vec<f64> {
    let c = 2.0 * dot(alpha, x) / dot(alpha, alpha);
    x.iter().zip(alpha).map(|(xi, ai)| xi - c * ai).collect()
}

/// w_k(x) = ∏_{α∈R₊} |⟨α,x⟩|^{2k_α}.
pub fn weight(rs: &RootSystem, x: &[f64]) -> f64 {
    rs.positive
        .iter()
        .zip(&rs.k)
        .filter(|(_, &k)| k != 0.0)
        .map(|(a, &k)| dot(a, x).abs().powf(2.0 * k))
        .product()
}

/// γ = Σ_{α∈R₊} k_α.
pub fn gamma(rs: &RootSystem) -> f64 {
    rs.k.iter().sum()
}

/// The finite reflection group generated by the σ_α.
#[derive(Debug, Clone)]
pub struct ReflectionGroup {
    pub elements: Vec<DMatrix<f64>>,
}

impl ReflectionGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Whether `m` is (within tolerance) an element of the group.
    pub fn contains(&self, m: &DMatrix<f64>) -> bool {
        self.elements.iter().any(|g| (g - m).amax() < GROUP_TOL)
    }
}

pub fn reflection_matrix(alpha: &[f64]) -> DMatrix<f64> {
    let n = alpha.len();
    let a2 = dot(alpha, alpha);
    DMatrix::from_fn(n, n, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        id - 2.0 * alpha[i] * alpha[j] / a2
    })
}

pub fn generate_group(rs: &RootSystem) -> Result<ReflectionGroup> {
    generate_group_with_cap(rs, DEFAULT_GROUP_CAP)
}

pub fn generate_group_with_cap(rs: &RootSystem, cap: usize) -> Result<ReflectionGroup> {
    let n = rs.dim;
    let gens: Vec<DMatrix<f64>> = rs.positive.iter().map(|a| reflection_matrix(a)).collect();
    let key = |m: &DMatrix<f64>| -> Vec<i64> { m.iter().map(|v| (v * 1e8).round() as i64).collect() };
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    let id = DMatrix::<f64>::identity(n, n);
    seen.insert(key(&id), 0);
    let mut elements = vec![id];
    let mut head = 0;
    while head < elements.len() {
        let g = elements[head].clone();
        head += 1;
        for s in &gens {
            let h = s * &g;
            let kh = key(&h);
            if let Some(&idx) = seen.get(&kh) {
                debug_assert!((&elements[idx] - &h).amax() < GROUP_TOL);
                continue;
            }
            if elements.len() >= cap {
                return Err(DunklError::GroupCapExceeded(cap));
            }
            seen.insert(kh, elements.len());
            elements.push(h);
        }
    }
    Ok(ReflectionGroup { elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Independent closure oracle: words in the generators up to a length bound, deduplicated by
    /// brute-force pairwise comparison.
    fn closure_by_words(rs: &RootSystem, max_len: usize) -> usize {
        let gens: Vec<DMatrix<f64>> = rs.positive_roots().iter().map(|a| reflection_matrix(a)).collect();
        let n = rs.dim();
        let mut found = vec![DMatrix::<f64>::identity(n, n)];
        let mut frontier = found.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &gens {
                    let h = g * s;
                    if !found.iter().any(|f| (f - &h).amax() < 1e-9) {
                        found.push(h.clone());
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        found.len()
    }

    #[test]
    fn catalog_orders() {
        let r1 = build_root_system(Family::Rank1Z2, 1, &[0.5]).unwrap();
        assert_eq!(generate_group(&r1).unwrap().order(), 2);
        let b2 = build_root_system(Family::ProductZ2N, 2, &[1.0, 1.0]).unwrap();
        assert_eq!(b2.positive_roots().len(), 2);
        assert_eq!(generate_group(&b2).unwrap().order(), 4);
        let b3 = build_root_system(Family::ProductZ2N, 3, &[1.0, 2.0, 0.5]).unwrap();
        assert_eq!(generate_group(&b3).unwrap().order(), 8);
        let a2 = build_root_system(Family::SymmetricGroupA, 3, &[0.7]).unwrap();
        assert_eq!(a2.positive_roots().len(), 3);
        assert_eq!(generate_group(&a2).unwrap().order(), 6);
        assert_eq!(closure_by_words(&a2, 6), 6);
        let a3 = build_root_system(Family::SymmetricGroupA, 4, &[0.7]).unwrap();
        assert_eq!(generate_group(&a3).unwrap().order(), 24);
        for m in 1..=8 {
            let mults: Vec<f64> = if m % 2 == 0 { vec![0.3, 0.8] } else { vec![0.3] };
            let d = build_root_system(Family::DihedralI2m { m }, 2, &mults).unwrap();
            assert_eq!(d.positive_roots().len(), m);
            let order = generate_group(&d).unwrap().order();
            assert_eq!(order, 2 * m);
            assert_eq!(closure_by_words(&d, 2 * m), order);
        }
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            build_root_system(Family::ProductZ2N, 2, &[1.0]),
            Err(DunklError::MultiplicityCount { expected: 2, got: 1 })
        ));
        assert!(matches!(
            build_root_system(Family::Rank1Z2, 1, &[-0.1]),
            Err(DunklError::NegativeMultiplicity(_))
        ));
        assert!(matches!(
            build_root_system(Family::Rank1Z2, 2, &[0.1]),
            Err(DunklError::UnsupportedFamily(_))
        ));
        // dihedral with two orbits cannot carry one multiplicity per root
        assert!(build_root_system(Family::DihedralI2m { m: 4 }, 2, &[1.0]).is_err());
        // non-invariant multiplicity on a custom system
        let roots = vec![vec![1.0, 0.0], vec![0.5, 3f64.sqrt() / 2.0], vec![-0.5, 3f64.sqrt() / 2.0]];
        assert!(from_positive_roots(&roots, &[1.0, 1.0, 2.0]).is_err());
        assert!(from_positive_roots(&roots, &[1.0, 1.0, 1.0]).is_ok());
        // not closed under reflections
        assert!(from_positive_roots(&[vec![1.0, 0.0], vec![1.0, 1.0]], &[1.0, 1.0]).is_err());
    }

    #[test]
    fn custom_roots_are_rescaled() {
        let rs = from_positive_roots(&[vec![3.0]], &[0.5]).unwrap();
        assert_relative_eq!(rs.positive_roots()[0][0], 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn reflect_examples() {
        let s2 = 2f64.sqrt();
        let y = reflect(&[s2, 0.0], &[1.0, 1.0]);
        assert!((y[0] + 1.0).abs() < 1e-15 && (y[1] - 1.0).abs() < 1e-15);
        let z = reflect(&[1.0, 1.0], &[1.0, 0.0]);
        assert!((z[0] - 0.0).abs() < 1e-15 && (z[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn weight_and_gamma_examples() {
        let r0 = build_root_system(Family::Rank1Z2, 1, &[0.0]).unwrap();
        assert_eq!(weight(&r0, &[3.7]), 1.0);
        assert_eq!(gamma(&r0), 0.0);
        let r1 = build_root_system(Family::Rank1Z2, 1, &[1.0]).unwrap();
        assert_relative_eq!(weight(&r1, &[2.0]), 8.0, max_relative = 1e-14);
        assert_eq!(gamma(&r1), 1.0);
        let b3 = build_root_system(Family::ProductZ2N, 3, &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(gamma(&b3), 3.0);
    }

    #[test]
    fn doc_round_trip() {
        let d = build_root_system(Family::DihedralI2m { m: 4 }, 2, &[0.3, 0.8]).unwrap();
        let json = serde_json::to_string(&d.to_doc()).unwrap();
        let back: RootSystemDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(RootSystem::from_doc(&back).unwrap(), d);
        let custom: RootSystemDoc = serde_json::from_str(r#"{"roots": [[2.0]], "multiplicities": [0.25]}"#).unwrap();
        assert_eq!(gamma(&RootSystem::from_doc(&custom).unwrap()), 0.25);
    }
}
