//! Special functions and Gauss rules used by the quadrature and transform code.

use nalgebra::{DMatrix, SymmetricEigen};
use std::f64::consts::PI;

pub use puruspe::{gamma, ln_gamma};

/// Below this argument the normalized Bessel function is summed from its power series.
const SERIES_CUTOFF: f64 = 4.0;

fn asymptotic_region(nu: f64, z: f64) -> bool {
    z >= 25.0 + nu * nu
}

/// Hankel's large-argument expansion, summed until the terms stop decreasing.
fn bessel_j_asymptotic(nu: f64, z: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let (mut p, mut q) = (1.0, 0.0);
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * z);
        let a = term.abs();
        if a > prev || a < 1e-17 {
            break;
        }
        prev = a;
        // P collects even k with alternating signs, Q odd k
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
    }
    let chi = z - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * z)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Bessel function of the first kind J_ν(z) for ν > −1 and z > 0.
pub fn bessel_j(nu: f64, z: f64) -> f64 {
    debug_assert!(nu > -1.0 && z > 0.0);
    if asymptotic_region(nu, z) {
        return bessel_j_asymptotic(nu, z);
    }
    if nu >= 0.0 {
        puruspe::besseljy(nu, z).0
    } else {
        let mu = -nu;
        let (j, y, _, _) = puruspe::besseljy(mu, z);
        (mu * PI).cos() * j - (mu * PI).sin() * y
    }
}

/// Normalized Bessel function j_ν(z) = Γ(ν+1)(2/z)^ν J_ν(z), with j_ν(0) = 1.
///
/// Even in z, so negative arguments are accepted.
pub fn normalized_bessel(nu: f64, z: f64) -> f64 {
    let z = z.abs();
    if z <= SERIES_CUTOFF {
        let q = -0.25 * z * z;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut m = 0.0;
        loop {
            m += 1.0;
            term *= q / (m * (nu + m));
            sum += term;
            if term.abs() < 1e-17 * sum.abs().max(1e-300) {
                break;
            }
        }
        sum
    } else {
        gamma(nu + 1.0) * (2.0 / z).powf(nu) * bessel_j(nu, z)
    }
}

/// The pair (j_ν(z), j_{ν+1}(z)) from a single Bessel evaluation, for ν > −1.
pub fn normalized_bessel_pair(nu: f64, z: f64) -> (f64, f64) {
    let z = z.abs();
    if z <= SERIES_CUTOFF {
        return (normalized_bessel(nu, z), normalized_bessel(nu + 1.0, z));
    }
    let g = gamma(nu + 1.0);
    let t = (2.0 / z).powf(nu);
    if asymptotic_region(nu + 1.0, z) {
        let (j0, j1) = (bessel_j_asymptotic(nu, z), bessel_j_asymptotic(nu + 1.0, z));
        return (g * t * j0, g * (nu + 1.0) * t * (2.0 / z) * j1);
    }
    let (j, dj) = if nu >= 0.0 {
        let (j, _, dj, _) = puruspe::besseljy(nu, z);
        (j, dj)
    } else {
        let mu = -nu;
        let (j, y, dj, dy) = puruspe::besseljy(mu, z);
        let (c, s) = ((mu * PI).cos(), (mu * PI).sin());
        (c * j - s * y, c * dj - s * dy)
    };
    // J_{ν+1} = (ν/z) J_ν − J'_ν
    let j1 = nu / z * j - dj;
    (g * t * j, g * (nu + 1.0) * t * (2.0 / z) * j1)
}

/// Gauss rule on [−1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Gauss–Jacobi rule for the weight (1−x)^α (1+x)^β on [−1, 1], by Golub–Welsch.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> GaussRule {
    assert!(n >= 1 && alpha > -1.0 && beta > -1.0);
    let ab = alpha + beta;
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let k = i as f64;
        let diag = if i == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0))
        };
        jac[(i, i)] = diag;
        if i + 1 < n {
            let k1 = k + 1.0;
            let off = if i == 0 {
                (4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))).sqrt()
            } else {
                let s = 2.0 * k1 + ab;
                (4.0 * k1 * (k1 + alpha) * (k1 + beta) * (k1 + ab) / (s * s * (s + 1.0) * (s - 1.0)))
                    .sqrt()
            };
            jac[(i, i + 1)] = off;
            jac[(i + 1, i)] = off;
        }
    }
    let mu0 = 2f64.powf(ab + 1.0) * gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(ab + 2.0);
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Gauss–Legendre rule on [−1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> GaussRule {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    GaussRule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
