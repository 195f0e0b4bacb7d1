//! The damped wave equation u_tt − Δ_k u + b u_t + m u = f(u): per-mode closed forms on the Dunkl
//! transform grid, decay fits, and Picard iteration of the Duhamel map for the nonlinear problem.

mod mode;

pub use mode::{
    discriminant, linear_mode_derivative, linear_mode_solution, propagator, ModeState, Propagator, SEAM,
};

use crate::error::{DunklError, Result};
use crate::measure::{HalfLineRule, Setting, TestFunction};
use crate::spectral::{dunkl_transform_reaching, sample_on_grid, PhysicalSamples, SpectralConfig, SpectralField};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PicardOptions {
    pub max_iters: usize,
    /// Stop once ‖u⁽ⁿ⁺¹⁾ − u⁽ⁿ⁾‖_X ≤ tolerance·‖φ‖_X.
    pub tolerance: f64,
    /// Iterate at least this often so that contraction factors can be measured.
    pub min_iters: usize,
}

impl Default for PicardOptions {
    fn default() -> Self {
        PicardOptions { max_iters: 20, tolerance: 1e-13, min_iters: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveConfig {
    pub b: f64,
    pub m: f64,
    /// Data amplitude: the solver uses ε·u0 and ε·u1.
    pub epsilon: f64,
    /// Exponent of f(u) = |u|^{p−1}u; `None` for the linear problem.
    pub p: Option<f64>,
    pub t_max: f64,
    pub dt: f64,
    pub setting: Setting,
    pub spectral: SpectralConfig,
    /// Physical window for the nonlinearity in units of the data's truncation radius R; by default
    /// 1 + T/R, so that fronts moving at unit speed stay inside.
    pub reach: Option<f64>,
    /// Times at which physical snapshots are stored; each must lie on the time grid.
    pub snapshot_times: Vec<f64>,
    pub fit_window: (f64, f64),
    /// The X-norm uses δ = delta_factor × fitted linear decay rate.
    pub delta_factor: f64,
    pub picard: PicardOptions,
}

impl Default for WaveConfig {
    fn default() -> Self {
        WaveConfig {
            b: 1.0,
            m: 1.0,
            epsilon: 1.0,
            p: None,
            t_max: 10.0,
            dt: 0.01,
            setting: Setting::Rank1 { k: 0.5 },
            spectral: SpectralConfig { phys_resolution: 64, spec_resolution: 64, r_factor: 12.0, max_nodes: 4096 },
            reach: None,
            snapshot_times: Vec::new(),
            fit_window: (2.0, 8.0),
            delta_factor: 0.9,
            picard: PicardOptions::default(),
        }
    }
}

impl WaveConfig {
    pub fn steps(&self) -> usize {
        (self.t_max / self.dt).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("b", self.b), ("m", self.m), ("epsilon", self.epsilon), ("dt", self.dt), ("T", self.t_max)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(DunklError::InvalidInput(format!("{name} = {v} must be positive")));
            }
        }
        let n = self.steps();
        if n == 0 || (n as f64 * self.dt - self.t_max).abs() > 1e-9 * self.t_max {
            return Err(DunklError::InvalidInput(format!("T = {} is not a multiple of dt = {}", self.t_max, self.dt)));
        }
        if let Some(p) = self.p {
            if !(p > 1.0 && p.is_finite()) {
                return Err(DunklError::OutOfRange(format!("p = {p} must exceed 1")));
            }
            let hd = self.setting.homogeneous_dim();
            if hd > 2.0 && p > hd / (hd - 2.0) {
                return Err(DunklError::OutOfRange(format!("p = {p} exceeds (N+2γ)/(N+2γ−2) = {}", hd / (hd - 2.0))));
            }
        }
        if !(self.delta_factor > 0.0) {
            return Err(DunklError::InvalidInput("delta_factor must be positive".into()));
        }
        if !(self.fit_window.0 < self.fit_window.1) {
            return Err(DunklError::InvalidInput(format!("empty fit window {:?}", self.fit_window)));
        }
        for &t in &self.snapshot_times {
            self.time_index(t)?;
        }
        Ok(())
    }

    fn time_index(&self, t: f64) -> Result<usize> {
        let i = (t / self.dt).round();
        if t < 0.0 || i as usize > self.steps() || (i * self.dt - t).abs() > 1e-9 * self.t_max.max(1.0) {
            return Err(DunklError::InvalidInput(format!("snapshot time {t} is not on the time grid")));
        }
        Ok(i as usize)
    }
}

/// t ↦ (‖u(t)‖_{H¹_D}, ‖∂_t u(t)‖₂).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormTrace {
    pub times: Vec<f64>,
    pub h1: Vec<f64>,
    pub dt_l2: Vec<f64>,
}

impl NormTrace {
    pub const CSV_HEADER: &'static str = "t,h1_norm,dt_norm";

    /// ‖u(t)‖_{H¹_D} + ‖∂_t u(t)‖₂.
    pub fn total(&self) -> Vec<f64> {
        self.h1.iter().zip(&self.dt_l2).map(|(a, b)| a + b).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{}\n", Self::CSV_HEADER);
        for i in 0..self.times.len() {
            out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", self.times[i], self.h1[i], self.dt_l2[i]));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub delta: f64,
    /// Root-mean-square residual of the log-linear fit.
    pub residual: f64,
}

/// Least-squares slope of log(‖u‖_{H¹_D} + ‖∂_t u‖₂) over the window, sign-flipped.
pub fn decay_rate_fit(trace: &NormTrace, window: (f64, f64)) -> Result<DecayFit> {
    let total = trace.total();
    let pts: Vec<(f64, f64)> = trace
        .times
        .iter()
        .zip(&total)
        .filter(|(t, _)| **t >= window.0 - 1e-12 && **t <= window.1 + 1e-12)
        .map(|(&t, &v)| (t, v))
        .collect();
    if pts.len() < 2 {
        return Err(DunklError::InvalidInput(format!("fit window {window:?} holds fewer than two samples")));
    }
    if let Some((t, v)) = pts.iter().find(|(_, v)| !(*v > 0.0 && v.is_finite())) {
        return Err(DunklError::Degenerate(format!("norm trace is {v} at t = {t}")));
    }
    let n = pts.len() as f64;
    let (mt, my) = pts.iter().fold((0.0, 0.0), |(a, b), (t, v)| (a + t / n, b + v.ln() / n));
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (t, v) in &pts {
        sxy += (t - mt) * (v.ln() - my);
        sxx += (t - mt) * (t - mt);
    }
    let slope = sxy / sxx;
    let ss: f64 = pts.iter().map(|(t, v)| (v.ln() - my - slope * (t - mt)).powi(2)).sum();
    Ok(DecayFit { delta: -slope, residual: (ss / n).sqrt() })
}

/// max over the grid of (1+t)^{−1/2} e^{δt}(‖u(t)‖_{H¹_D} + ‖∂_t u(t)‖₂).
pub fn x_norm(trace: &NormTrace, delta: f64) -> f64 {
    trace
        .times
        .iter()
        .zip(trace.total())
        .map(|(&t, v)| (1.0 + t).powf(-0.5) * (delta * t).exp() * v)
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone)]
pub struct Snapshot {
    pub t: f64,
    pub samples: PhysicalSamples,
}

#[derive(Debug, Clone)]
pub struct WaveSolution {
    pub times: Vec<f64>,
    /// Grids of the computation; its values are U at t = 0.
    pub grid: SpectralField,
    /// Û(t_n) on the grid: the ξ > 0 half followed (in rank one) by the ξ < 0 half.
    pub u_hat: Vec<Vec<Complex64>>,
    pub ut_hat: Vec<Vec<Complex64>>,
    pub snapshots: Vec<Snapshot>,
    pub trace: NormTrace,
    pub delta_fit: Option<DecayFit>,
    /// Picard iterations performed (1 for the linear problem).
    pub iterations: usize,
    /// ‖u⁽ⁿ⁺¹⁾ − u⁽ⁿ⁾‖_X per iteration.
    pub differences: Vec<f64>,
    /// Ratios of consecutive differences.
    pub contraction_factors: Vec<f64>,
    /// δ used in the X-norm.
    pub x_delta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveSummary {
    pub delta_fit: Option<DecayFit>,
    pub x_delta: Option<f64>,
    pub x_norm: Option<f64>,
    pub iterations: usize,
    pub differences: Vec<f64>,
    pub contraction_factors: Vec<f64>,
}

impl WaveSolution {
    /// Û(t_n) as a spectral field.
    pub fn field_at(&self, n: usize) -> SpectralField {
        with_values(&self.grid, &self.u_hat[n])
    }

    pub fn summary(&self) -> WaveSummary {
        WaveSummary {
            delta_fit: self.delta_fit,
            x_delta: self.x_delta,
            x_norm: self.x_delta.map(|d| x_norm(&self.trace, d)),
            iterations: self.iterations,
            differences: self.differences.clone(),
            contraction_factors: self.contraction_factors.clone(),
        }
    }

    /// Rows "t,x,u" (x signed in rank one, radius otherwise) for every stored snapshot.
    pub fn snapshots_csv(&self) -> String {
        let mut out = String::from("t,x,u\n");
        for s in &self.snapshots {
            let rank1 = matches!(s.samples.setting, Setting::Rank1 { .. });
            if rank1 {
                for i in (0..s.samples.r.len()).rev() {
                    out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", s.t, -s.samples.r[i], s.samples.minus[i].re));
                }
            }
            for i in 0..s.samples.r.len() {
                out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", s.t, s.samples.r[i], s.samples.plus[i].re));
            }
        }
        out
    }
}

fn with_values(grid: &SpectralField, v: &[Complex64]) -> SpectralField {
    let n = grid.xi.len();
    let mut f = grid.clone();
    f.plus = v[..n].to_vec();
    f.minus = if grid.is_rank1() { v[n..].to_vec() } else { f.plus.clone() };
    f
}

fn values_of(f: &SpectralField) -> Vec<Complex64> {
    let mut v = f.plus.clone();
    if f.is_rank1() {
        v.extend(&f.minus);
    }
    v
}

fn trace_of(grid: &SpectralField, times: &[f64], u: &[Vec<Complex64>], ut: &[Vec<Complex64>]) -> NormTrace {
    let (h1, dt_l2) = u
        .par_iter()
        .zip(ut)
        .map(|(a, b)| {
            (with_values(grid, a).weighted_l2(|x| (1.0 + x * x).sqrt()), with_values(grid, b).l2_norm())
        })
        .unzip();
    NormTrace { times: times.to_vec(), h1, dt_l2 }
}

/// Grid for the data: the transform of u0, with the spectral rule fine enough to invert over the
/// nonlinearity window. u1 is sampled on u0's physical grid and transformed there.
fn data_fields(config: &WaveConfig, u0: &TestFunction, u1: &TestFunction) -> Result<(SpectralField, SpectralField, f64)> {
    let radius = u0.radial_domain(config.spectral.r_factor).hi;
    let reach = config.reach.unwrap_or(1.0 + config.t_max / radius);
    let f0 = dunkl_transform_reaching(u0, &config.setting, &config.spectral, 0.0, reach)?;
    let s1 = sample_on_grid(u1, &f0)?;
    let f1 = f0.forward_on_unit_rule(&f0.physical_unit_rule(), &s1.plus, &s1.minus)?;
    let eps = config.epsilon;
    Ok((f0.map(|_| eps), f1.map(|_| eps), reach))
}

fn linear_from_fields(config: &WaveConfig, f0: &SpectralField, f1: &SpectralField) -> WaveSolution {
    let n_steps = config.steps();
    let times: Vec<f64> = (0..=n_steps).map(|n| n as f64 * config.dt).collect();
    let v0 = values_of(f0);
    let v1 = values_of(f1);
    let nxi = f0.xi.len();
    let (u_hat, ut_hat): (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) = times
        .par_iter()
        .map(|&t| {
            let mut u = Vec::with_capacity(v0.len());
            let mut ut = Vec::with_capacity(v0.len());
            for (i, (&a, &b)) in v0.iter().zip(&v1).enumerate() {
                let pr = propagator(config.b, config.m, f0.xi[i % nxi], t);
                let (x, y) = pr.apply(a, b);
                u.push(x);
                ut.push(y);
            }
            (u, ut)
        })
        .unzip();
    let trace = trace_of(f0, &times, &u_hat, &ut_hat);
    WaveSolution {
        times,
        grid: f0.clone(),
        u_hat,
        ut_hat,
        snapshots: Vec::new(),
        trace,
        delta_fit: None,
        iterations: 1,
        differences: Vec::new(),
        contraction_factors: Vec::new(),
        x_delta: None,
    }
}

fn finish(config: &WaveConfig, mut sol: WaveSolution) -> Result<WaveSolution> {
    for &t in &config.snapshot_times {
        let n = config.time_index(t)?;
        sol.snapshots.push(Snapshot { t: sol.times[n], samples: sol.field_at(n).inverse_on_grid() });
    }
    sol.delta_fit = decay_rate_fit(&sol.trace, config.fit_window).ok();
    Ok(sol)
}

/// Per-mode closed forms from (ε u0, ε u1), with norm traces and optional physical snapshots.
pub fn solve_linear(config: &WaveConfig, u0: &TestFunction, u1: &TestFunction) -> Result<WaveSolution> {
    config.validate()?;
    let (f0, f1, _) = data_fields(config, u0, u1)?;
    finish(config, linear_from_fields(config, &f0, &f1))
}

/// f(u) = |u|^{p−1}u.
pub fn power_nonlinearity(p: f64) -> impl Fn(f64) -> f64 + Sync + Copy {
    move |u: f64| u.abs().powf(p - 1.0) * u
}

fn growth_ratio(f: &impl Fn(f64) -> f64, p: f64, radius: f64, samples: usize) -> Option<f64> {
    let pts: Vec<f64> = (0..=samples).map(|i| -radius + 2.0 * radius * i as f64 / samples as f64).collect();
    let mut c = 0.0f64;
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            let den = (a.abs().powf(p - 1.0) + b.abs().powf(p - 1.0)) * (a - b).abs();
            let num = (f(a) - f(b)).abs();
            if den == 0.0 {
                if num > 0.0 {
                    return None;
                }
                continue;
            }
            c = c.max(num / den);
        }
    }
    c.is_finite().then_some(c)
}

/// Sampled estimate of the smallest C with |f(a) − f(b)| ≤ C(|a|^{p−1} + |b|^{p−1})|a − b| on
/// [−R, R]. `None` if f(0) ≠ 0 or the estimate keeps growing under grid refinement.
pub fn lipschitz_growth_constant(f: impl Fn(f64) -> f64, p: f64, radius: f64, samples: usize) -> Option<f64> {
    if f(0.0) != 0.0 {
        return None;
    }
    let coarse = growth_ratio(&f, p, radius, samples)?;
    let fine = growth_ratio(&f, p, radius, 4 * samples)?;
    (fine <= 1.5 * coarse).then_some(fine)
}

/// Picard iteration of S(u) = φ + ∫₀ᵗ T(f(u(s)))(t−s) ds with f(u) = |u|^{p−1}u.
pub fn solve_nonlinear(config: &WaveConfig, u0: &TestFunction, u1: &TestFunction) -> Result<WaveSolution> {
    match config.p {
        Some(p) => solve_nonlinear_with(config, u0, u1, power_nonlinearity(p)),
        None => solve_nonlinear_with(config, u0, u1, |_| 0.0),
    }
}

/// As [`solve_nonlinear`] with a user nonlinearity. When `config.p` is set, f must pass the sampled
/// growth check with that p.
pub fn solve_nonlinear_with(
    config: &WaveConfig,
    u0: &TestFunction,
    u1: &TestFunction,
    f: impl Fn(f64) -> f64 + Sync,
) -> Result<WaveSolution> {
    config.validate()?;
    if let Some(p) = config.p {
        if lipschitz_growth_constant(&f, p, 4.0, 200).is_none() {
            return Err(DunklError::InvalidInput(format!("nonlinearity fails the growth condition with p = {p}")));
        }
    }
    let (f0, f1, reach) = data_fields(config, u0, u1)?;
    let phi = linear_from_fields(config, &f0, &f1);
    let fit = decay_rate_fit(&phi.trace, config.fit_window)?;
    let delta = config.delta_factor * fit.delta;
    if !(delta > 0.0) {
        return Err(DunklError::Degenerate(format!("fitted linear decay rate {} is not positive", fit.delta)));
    }
    let x_phi = x_norm(&phi.trace, delta);
    let window: HalfLineRule = f0.extended_unit_rule(reach, &config.spectral)?;
    let n_steps = config.steps();
    let nxi = f0.xi.len();
    let dt = config.dt;
    // K(τ) = e^{−bτ/2}S(τ) and K'(τ): the response to unit initial velocity, per |ξ| and lag
    let (kern, dkern): (Vec<f64>, Vec<f64>) = (0..=n_steps)
        .flat_map(|j| f0.xi.iter().map(move |&x| (j, x)))
        .map(|(j, x)| {
            let pr = propagator(config.b, config.m, x, j as f64 * dt);
            (pr.u_u1, pr.ut_u1)
        })
        .unzip();

    let mut u = phi.u_hat.clone();
    let mut ut = phi.ut_hat.clone();
    let mut differences: Vec<f64> = Vec::new();
    let mut iterations = 0;
    let mut rising = 0;
    let width = u[0].len();
    while iterations < config.picard.max_iters {
        iterations += 1;
        let forcing: Vec<Vec<Complex64>> = u
            .par_iter()
            .map(|v| {
                let s = with_values(&f0, v).inverse_on_unit_rule(&window);
                let g = |z: &Complex64| Complex64::new(f(z.re), 0.0);
                let plus: Vec<Complex64> = s.plus.iter().map(g).collect();
                let minus: Vec<Complex64> = s.minus.iter().map(g).collect();
                f0.forward_on_unit_rule(&window, &plus, &minus).map(|h| values_of(&h))
            })
            .collect::<Result<_>>()?;
        let (nu, nut): (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) = (0..=n_steps)
            .into_par_iter()
            .map(|n| {
                let mut a = phi.u_hat[n].clone();
                let mut b = phi.ut_hat[n].clone();
                for (mi, fm) in forcing.iter().enumerate().take(n + 1).filter(|_| n > 0) {
                    let w = if mi == 0 || mi == n { 0.5 * dt } else { dt };
                    let lag = (n - mi) * nxi;
                    for i in 0..width {
                        let ix = lag + i % nxi;
                        a[i] += w * kern[ix] * fm[i];
                        b[i] += w * dkern[ix] * fm[i];
                    }
                }
                (a, b)
            })
            .unzip();
        let du: Vec<Vec<Complex64>> = nu.iter().zip(&u).map(|(x, y)| x.iter().zip(y).map(|(a, b)| a - b).collect()).collect();
        let dut: Vec<Vec<Complex64>> = nut.iter().zip(&ut).map(|(x, y)| x.iter().zip(y).map(|(a, b)| a - b).collect()).collect();
        let d = x_norm(&trace_of(&f0, &phi.times, &du, &dut), delta);
        if let Some(&last) = differences.last() {
            rising = if d > last { rising + 1 } else { 0 };
        }
        differences.push(d);
        u = nu;
        ut = nut;
        if rising >= 3 || !d.is_finite() {
            return Err(DunklError::Divergence { epsilon: config.epsilon });
        }
        if d == 0.0 || (d <= config.picard.tolerance * x_phi && iterations >= config.picard.min_iters) {
            break;
        }
    }
    let contraction_factors = differences.windows(2).map(|w| w[1] / w[0]).collect();
    let trace = trace_of(&f0, &phi.times, &u, &ut);
    let sol = WaveSolution {
        times: phi.times,
        grid: f0,
        u_hat: u,
        ut_hat: ut,
        snapshots: Vec::new(),
        trace,
        delta_fit: None,
        iterations,
        differences,
        contraction_factors,
        x_delta: Some(delta),
    };
    finish(config, sol)
}
