//! Nelder–Mead simplex minimization in the unit box, with projection onto the box.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub max_iters: usize,
    /// Stop once every vertex is within this distance (max norm) of the best vertex.
    pub tolerance: f64,
    /// Edge length of the initial simplex.
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions { max_iters: 200, tolerance: 1e-6, initial_step: 0.1 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOutcome {
    pub best: Vec<f64>,
    pub value: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Every objective value, in evaluation order.
    pub history: Vec<f64>,
}

/// Vertices with their values, kept sorted ascending.
#[derive(Debug, Clone)]
pub struct Simplex {
    pub points: Vec<Vec<f64>>,
    pub values: Vec<f64>,
}

impl Simplex {
    fn sort(&mut self) {
        let mut idx: Vec<usize> = (0..self.points.len()).collect();
        // NaN sorts last; stable order keeps ties deterministic
        idx.sort_by(|&a, &b| self.values[a].partial_cmp(&self.values[b]).unwrap_or(std::cmp::Ordering::Greater));
        self.points = idx.iter().map(|&i| self.points[i].clone()).collect();
        self.values = idx.iter().map(|&i| self.values[i]).collect();
    }

    fn diameter(&self) -> f64 {
        let b = &self.points[0];
        self.points[1..]
            .iter()
            .flat_map(|p| p.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }
}

fn project(x: &mut [f64], free: &[bool], anchor: &[f64]) {
    for ((v, &f), &a) in x.iter_mut().zip(free).zip(anchor) {
        *v = if f { v.clamp(0.0, 1.0) } else { a };
    }
}

fn along(c: &[f64], w: &[f64], t: f64) -> Vec<f64> {
    c.iter().zip(w).map(|(c, w)| c + t * (w - c)).collect()
}

/// Minimizes `f` over [0,1]^d from `start`; coordinates with `free[i] = false` stay at their start value.
/// Non-finite values count as +∞.
pub fn nelder_mead(mut f: impl FnMut(&[f64]) -> f64, start: &[f64], free: &[bool], opt: &SimplexOptions) -> SimplexOutcome {
    let mut history = Vec::new();
    let mut eval = |x: &[f64], h: &mut Vec<f64>| {
        let v = f(x);
        let v = if v.is_nan() { f64::INFINITY } else { v };
        h.push(v);
        v
    };
    let mut x0 = start.to_vec();
    project(&mut x0, free, start);
    let dims: Vec<usize> = (0..start.len()).filter(|&i| free[i]).collect();
    let v0 = eval(&x0, &mut history);
    if dims.is_empty() {
        return SimplexOutcome { best: x0, value: v0, converged: true, iterations: 0, history };
    }
    let mut s = Simplex { points: vec![x0.clone()], values: vec![v0] };
    for &i in &dims {
        let mut p = x0.clone();
        p[i] += if p[i] + opt.initial_step <= 1.0 { opt.initial_step } else { -opt.initial_step };
        let v = eval(&p, &mut history);
        s.points.push(p);
        s.values.push(v);
    }
    s.sort();
    let m = dims.len();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opt.max_iters {
        if s.diameter() < opt.tolerance {
            converged = true;
            break;
        }
        iterations += 1;
        let mut c = vec![0.0; start.len()];
        for p in &s.points[..m] {
            for (ci, pi) in c.iter_mut().zip(p) {
                *ci += pi / m as f64;
            }
        }
        let worst = s.points[m].clone();
        let mut xr = along(&c, &worst, -1.0);
        project(&mut xr, free, start);
        let fr = eval(&xr, &mut history);
        if fr < s.values[0] {
            let mut xe = along(&c, &worst, -2.0);
            project(&mut xe, free, start);
            let fe = eval(&xe, &mut history);
            if fe < fr {
                s.points[m] = xe;
                s.values[m] = fe;
            } else {
                s.points[m] = xr;
                s.values[m] = fr;
            }
        } else if fr < s.values[m - 1] {
            s.points[m] = xr;
            s.values[m] = fr;
        } else {
            // outside contraction if the reflection improved on the worst, inside otherwise
            let (xc, fc) = if fr < s.values[m] {
                let mut xc = along(&c, &worst, -0.5);
                project(&mut xc, free, start);
                let fc = eval(&xc, &mut history);
                (xc, fc)
            } else {
                let xc = along(&c, &worst, 0.5);
                let fc = eval(&xc, &mut history);
                (xc, fc)
            };
            if fc < s.values[m].min(fr) {
                s.points[m] = xc;
                s.values[m] = fc;
            } else {
                let best = s.points[0].clone();
                for j in 1..=m {
                    let p = along(&best, &s.points[j], 0.5);
                    s.values[j] = eval(&p, &mut history);
                    s.points[j] = p;
                }
            }
        }
        s.sort();
    }
    if !converged && s.diameter() < opt.tolerance {
        converged = true;
    }
    SimplexOutcome { best: s.points[0].clone(), value: s.values[0], converged, iterations, history }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_minimum() {
        let f = |x: &[f64]| (x[0] - 0.3).powi(2) + 2.0 * (x[1] - 0.7).powi(2);
        let o = nelder_mead(f, &[0.5, 0.5], &[true, true], &SimplexOptions { tolerance: 1e-9, max_iters: 1000, ..Default::default() });
        assert!(o.converged);
        assert!((o.best[0] - 0.3).abs() < 1e-6 && (o.best[1] - 0.7).abs() < 1e-6, "{:?}", o.best);
    }

    #[test]
    fn stops_on_the_box_face() {
        let f = |x: &[f64]| x[0] + (x[1] - 0.5).powi(2);
        let o = nelder_mead(f, &[0.5, 0.2], &[true, true], &SimplexOptions { tolerance: 1e-9, max_iters: 1000, ..Default::default() });
        assert!(o.best[0] < 1e-9);
        assert!((o.best[1] - 0.5).abs() < 1e-6);
    }

    #[test]
    fn fixed_coordinates_do_not_move() {
        let f = |x: &[f64]| (x[0] - 0.9).powi(2) + (x[1] - 0.1).powi(2);
        let o = nelder_mead(f, &[0.5, 0.4], &[true, false], &SimplexOptions { tolerance: 1e-9, max_iters: 1000, ..Default::default() });
        assert_eq!(o.best[1], 0.4);
        assert!((o.best[0] - 0.9).abs() < 1e-6);
        let all_fixed = nelder_mead(f, &[0.5, 0.4], &[false, false], &SimplexOptions::default());
        assert!(all_fixed.converged);
        assert_eq!(all_fixed.history.len(), 1);
    }

    #[test]
    fn rosenbrock_in_box() {
        let f = |x: &[f64]| {
            let (a, b) = (2.0 * x[0] - 1.0, 2.0 * x[1] - 1.0);
            (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2)
        };
        let o = nelder_mead(f, &[0.2, 0.8], &[true, true], &SimplexOptions { tolerance: 1e-10, max_iters: 5000, ..Default::default() });
        assert!((o.best[0] - 1.0).abs() < 1e-5 && (o.best[1] - 1.0).abs() < 1e-5, "{:?}", o.best);
    }
}
