//! Closed-form solutions of U'' + bU' + (m+|ξ|²)U = 0 for a single frequency.

use num_complex::Complex64;

/// |D| below this is treated as the double-root case.
pub const SEAM: f64 = 1e-10;

/// D = b² − 4(m+|ξ|²).
pub fn discriminant(b: f64, m: f64, xi: f64) -> f64 {
    b * b - 4.0 * (m + xi * xi)
}

/// Coefficients of (U, U_t)(t) in terms of (U0, U1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Propagator {
    pub u_u0: f64,
    pub u_u1: f64,
    pub ut_u0: f64,
    pub ut_u1: f64,
}

impl Propagator {
    pub fn apply(&self, u0: Complex64, u1: Complex64) -> (Complex64, Complex64) {
        (self.u_u0 * u0 + self.u_u1 * u1, self.ut_u0 * u0 + self.ut_u1 * u1)
    }
}

/// (cosh(ωt), sinh(ωt)/ω) with ω² = D/4, continued to cos/sin for D < 0 and to the series
/// Σ z^j/(2j)!, tΣ z^j/(2j+1)! (z = Dt²/4) near D = 0.
fn cosh_sinhc(d: f64, t: f64) -> (f64, f64) {
    if d.abs() < SEAM {
        let z = d * t * t / 4.0;
        let (mut c, mut s) = (1.0, 1.0);
        let (mut tc, mut ts) = (1.0, 1.0);
        for j in 1..6 {
            tc *= z / ((2 * j - 1) * 2 * j) as f64;
            ts *= z / ((2 * j) * (2 * j + 1)) as f64;
            c += tc;
            s += ts;
        }
        (c, t * s)
    } else if d > 0.0 {
        let w = d.sqrt() / 2.0;
        ((w * t).cosh(), (w * t).sinh() / w)
    } else {
        let w = (-d).sqrt() / 2.0;
        ((w * t).cos(), (w * t).sin() / w)
    }
}

/// U(t) = e^{−bt/2}[U0(C + (b/2)S) + U1 S], U_t(t) = e^{−bt/2}[−(m+|ξ|²)S U0 + (C − (b/2)S) U1].
/// This covers D > 0 (cosh/sinh), D < 0 (cos/sin) and D = 0 (1 + bt/2, t).
pub fn propagator(b: f64, m: f64, xi: f64, t: f64) -> Propagator {
    let d = discriminant(b, m, xi);
    let (c, s) = cosh_sinhc(d, t);
    let e = (-0.5 * b * t).exp();
    Propagator {
        u_u0: e * (c + 0.5 * b * s),
        u_u1: e * s,
        ut_u0: -e * (m + xi * xi) * s,
        ut_u1: e * (c - 0.5 * b * s),
    }
}

pub fn linear_mode_solution(b: f64, m: f64, xi: f64, t: f64, u0: Complex64, u1: Complex64) -> Complex64 {
    propagator(b, m, xi, t).apply(u0, u1).0
}

pub fn linear_mode_derivative(b: f64, m: f64, xi: f64, t: f64, u0: Complex64, u1: Complex64) -> Complex64 {
    propagator(b, m, xi, t).apply(u0, u1).1
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeState {
    pub xi: f64,
    pub u: Complex64,
    pub ut: Complex64,
    pub d: f64,
}

impl ModeState {
    pub fn new(b: f64, m: f64, xi: f64, u: Complex64, ut: Complex64) -> Self {
        ModeState { xi, u, ut, d: discriminant(b, m, xi) }
    }

    /// The state after time t ≥ 0.
    pub fn evolve(&self, b: f64, m: f64, t: f64) -> ModeState {
        let (u, ut) = propagator(b, m, self.xi, t).apply(self.u, self.ut);
        ModeState { u, ut, ..*self }
    }
}
