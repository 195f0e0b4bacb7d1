//! Polynomials with double coefficients and the exact action of Dunkl operators on them.

use crate::rootsys::{reflection_matrix, RootSystem};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Coefficients below this (relative to the largest coefficient) are dropped after cancellation.
const DROP_TOL: f64 = 1e-13;

/// Polynomial in N variables, canonical form (no zero coefficients).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Vec<u32>, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonomialDoc {
    pub exponents: Vec<u32>,
    pub coefficient: f64,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        Self::monomial(dim, vec![0; dim], c)
    }

    pub fn monomial(dim: usize, exponents: Vec<u32>, c: f64) -> Self {
        assert_eq!(exponents.len(), dim);
        let mut p = Self::zero(dim);
        if c != 0.0 {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// The coordinate function x_i.
    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Self::monomial(dim, e, 1.0)
    }

    /// ⟨a, x⟩.
    pub fn linear(a: &[f64]) -> Self {
        let dim = a.len();
        let mut p = Self::zero(dim);
        for (i, &ai) in a.iter().enumerate() {
            p.add_term(unit(dim, i), ai);
        }
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, f64)>) -> Self {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            assert_eq!(e.len(), dim);
            p.add_term(e, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &f64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> f64 {
        self.terms.get(e).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    fn add_term(&mut self, e: Vec<u32>, c: f64) {
        if c == 0.0 {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            self.terms.remove(&e);
        }
    }

    /// Drops coefficients that are rounding residue relative to `scale`.
    fn prune(&mut self, scale: f64) {
        let cut = DROP_TOL * scale;
        self.terms.retain(|_, c| c.abs() > cut);
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(x).map(|(&k, &xi)| xi.powi(k as i32)).product::<f64>())
            .sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_terms(self.dim, self.terms.iter().map(|(e, c)| (e.clone(), c * s)))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), *c);
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1.0))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.dim, 1.0);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// ∂_i.
    pub fn partial(&self, i: usize) -> Self {
        let mut p = Self::zero(self.dim);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut d = e.clone();
                d[i] -= 1;
                p.add_term(d, c * e[i] as f64);
            }
        }
        p
    }

    /// f(Mx) for an N×N matrix M given row-major.
    pub fn compose_linear(&self, m: &[Vec<f64>]) -> Self {
        let rows: Vec<Polynomial> = m.iter().map(|row| Polynomial::linear(row)).collect();
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let mut t = Self::constant(self.dim, *c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&rows[i].pow(k));
                }
            }
            out = out.add(&t);
        }
        out.prune(self.max_abs_coefficient());
        out
    }

    /// Exact division by the linear form ⟨a, x⟩. Returns the quotient and the size of the
    /// remainder relative to the dividend (zero when the division is exact).
    pub fn divide_by_linear(&self, a: &[f64]) -> (Self, f64) {
        let scale = self.max_abs_coefficient();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.dim);
        if scale == 0.0 {
            return (quot, 0.0);
        }
        let piv = (0..a.len()).max_by(|&i, &j| a[i].abs().total_cmp(&a[j].abs())).unwrap();
        let ap = a[piv];
        loop {
            rem.prune(scale);
            let lead = rem
                .terms
                .iter()
                .max_by(|x, y| x.0[piv].cmp(&y.0[piv]).then_with(|| y.0.cmp(x.0)))
                .map(|(e, c)| (e.clone(), *c));
            let Some((e, c)) = lead else { break };
            if e[piv] == 0 {
                break;
            }
            let mut qe = e.clone();
            qe[piv] -= 1;
            let qc = c / ap;
            quot.add_term(qe.clone(), qc);
            for (j, &aj) in a.iter().enumerate() {
                if aj == 0.0 {
                    continue;
                }
                let mut te = qe.clone();
                te[j] += 1;
                rem.add_term(te, -qc * aj);
            }
            rem.terms.remove(&e);
        }
        let resid = rem.max_abs_coefficient() / scale;
        (quot, resid)
    }

    pub fn to_doc(&self) -> Vec<MonomialDoc> {
        self.terms
            .iter()
            .map(|(e, c)| MonomialDoc { exponents: e.clone(), coefficient: *c })
            .collect()
    }

    pub fn from_doc(dim: usize, doc: &[MonomialDoc]) -> Self {
        Self::from_terms(dim, doc.iter().map(|m| (m.exponents.clone(), m.coefficient)))
    }
}

fn unit(dim: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; dim];
    e[i] = 1;
    e
}

fn reflection_rows(alpha: &[f64]) -> Vec<Vec<f64>> {
    let m = reflection_matrix(alpha);
    (0..alpha.len()).map(|i| (0..alpha.len()).map(|j| m[(i, j)]).collect()).collect()
}

/// T_i f = ∂_i f + Σ_{α∈R₊} k_α α_i (f − f∘σ_α)/⟨α,x⟩, with exact polynomial division.
///
/// `i` is zero-based.
pub fn dunkl_apply_poly(rs: &RootSystem, i: usize, f: &Polynomial) -> Polynomial {
    assert!(i < rs.dim(), "coordinate index out of range");
    assert_eq!(f.dim(), rs.dim());
    let mut out = f.partial(i);
    for (alpha, &k) in rs.positive_roots().iter().zip(rs.multiplicities()) {
        if k == 0.0 || alpha[i] == 0.0 {
            continue;
        }
        let diff = f.sub(&f.compose_linear(&reflection_rows(alpha)));
        let (q, resid) = diff.divide_by_linear(alpha);
        assert!(resid < 1e-9, "inexact division by a root hyperplane (residual {resid:e})");
        out = out.add(&q.scale(k * alpha[i]));
    }
    out.prune(f.max_abs_coefficient().max(out.max_abs_coefficient()));
    out
}

/// Δ_k f = Σ_i T_i² f.
pub fn dunkl_laplacian_poly(rs: &RootSystem, f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(rs.dim());
    for i in 0..rs.dim() {
        out = out.add(&dunkl_apply_poly(rs, i, &dunkl_apply_poly(rs, i, f)));
    }
    out
}
