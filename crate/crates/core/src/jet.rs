//! Truncated Taylor series ("jets") for exact derivatives of radial profiles.
//!
//! A jet of order n at r₀ stores the coefficients c_m of f(r₀ + ε) = Σ c_m ε^m, m ≤ n.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Jet(pub Vec<f64>);

impl Jet {
    pub fn constant(c: f64, order: usize) -> Self {
        let mut v = vec![0.0; order + 1];
        v[0] = c;
        Jet(v)
    }

    /// The identity function expanded at `x0`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut v = vec![0.0; order + 1];
        v[0] = x0;
        if order >= 1 {
            v[1] = 1.0;
        }
        Jet(v)
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    /// m-th derivative at the expansion point.
    pub fn derivative(&self, m: usize) -> f64 {
        if m > self.order() {
            return 0.0;
        }
        let fact: f64 = (1..=m).map(|i| i as f64).product();
        self.0[m] * fact
    }

    /// d/dε of the series; the result has one order less.
    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return Jet(vec![0.0]);
        }
        Jet((1..self.0.len()).map(|m| m as f64 * self.0[m]).collect())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Jet(self.0[..=order.min(self.order())].to_vec())
    }

    pub fn scale(&self, c: f64) -> Self {
        Jet(self.0.iter().map(|v| v * c).collect())
    }

    pub fn recip(&self) -> Self {
        let a = &self.0;
        let n = a.len();
        let mut b = vec![0.0; n];
        b[0] = 1.0 / a[0];
        for m in 1..n {
            let s: f64 = (1..=m).map(|k| a[k] * b[m - k]).sum();
            b[m] = -s / a[0];
        }
        Jet(b)
    }

    pub fn exp(&self) -> Self {
        let a = &self.0;
        let n = a.len();
        let mut b = vec![0.0; n];
        b[0] = a[0].exp();
        for m in 1..n {
            let s: f64 = (1..=m).map(|k| k as f64 * a[k] * b[m - k]).sum();
            b[m] = s / m as f64;
        }
        Jet(b)
    }

    /// a^β for a jet with positive constant term.
    pub fn powf(&self, beta: f64) -> Self {
        let a = &self.0;
        let n = a.len();
        let mut b = vec![0.0; n];
        b[0] = a[0].powf(beta);
        for m in 1..n {
            let s: f64 = (1..=m)
                .map(|k| (beta * k as f64 - (m - k) as f64) * a[k] * b[m - k])
                .sum();
            b[m] = s / (m as f64 * a[0]);
        }
        Jet(b)
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        Jet(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        Jet(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let n = self.0.len().min(o.0.len());
        let mut c = vec![0.0; n];
        for (i, ci) in c.iter_mut().enumerate() {
            *ci = (0..=i).map(|k| self.0[k] * o.0[i - k]).sum();
        }
        Jet(c)
    }
}

impl Add<f64> for &Jet {
    type Output = Jet;
    fn add(self, c: f64) -> Jet {
        let mut v = self.0.clone();
        v[0] += c;
        Jet(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exp_of_square_matches_closed_form_derivatives() {
        // g(r) = exp(-r²/2): g' = -r g, g'' = (r²-1) g, g''' = (3r - r³) g
        let r0 = 0.7;
        let x = Jet::variable(r0, 4);
        let g = (&x * &x).scale(-0.5).exp();
        let e = (-0.5 * r0 * r0).exp();
        assert_relative_eq!(g.derivative(1), -r0 * e, max_relative = 1e-14);
        assert_relative_eq!(g.derivative(2), (r0 * r0 - 1.0) * e, max_relative = 1e-14);
        assert_relative_eq!(g.derivative(3), (3.0 * r0 - r0.powi(3)) * e, max_relative = 1e-13);
    }

    #[test]
    fn powf_and_recip_agree() {
        let x = Jet::variable(1.3, 5);
        let a = &(&x * &x) + 1.0;
        let p = a.powf(-1.0);
        let q = a.recip();
        for m in 0..=5 {
            assert_relative_eq!(p.0[m], q.0[m], epsilon = 1e-14, max_relative = 1e-12);
        }
    }
}
