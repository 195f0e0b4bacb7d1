//! Dense kernel matrices on scale-free grids, cached by grid content.

use crate::special::normalized_bessel_pair;
use rayon::prelude::*;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

const CACHE_LIMIT: usize = 32;

/// K_ij = j_ν(u_i v_j) and, in rank one, the odd part u_i v_j/(2k+1)·j_{ν+1}(u_i v_j).
#[derive(Debug)]
pub struct Kernel {
    pub rows: usize,
    pub cols: usize,
    pub even: Vec<f64>,
    pub odd: Option<Vec<f64>>,
}

impl Kernel {
    #[inline]
    pub fn odd_at(&self, i: usize, j: usize) -> f64 {
        self.odd.as_ref().map_or(0.0, |o| o[i * self.cols + j])
    }
}

/// Kernel of order ν for the unit physical nodes `u` and unit spectral nodes `v`. `rank1_k` adds the
/// odd part of the rank-one kernel with multiplicity k (then ν = k − 1/2).
pub fn kernel(nu: f64, rank1_k: Option<f64>, u: &[f64], v: &[f64]) -> Arc<Kernel> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Kernel>>>> = OnceLock::new();
    let mut h = DefaultHasher::new();
    nu.to_bits().hash(&mut h);
    rank1_k.map(f64::to_bits).hash(&mut h);
    u.len().hash(&mut h);
    for x in u.iter().chain(v) {
        x.to_bits().hash(&mut h);
    }
    let key = h.finish();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(k) = cache.lock().unwrap().get(&key) {
        return k.clone();
    }
    let cols = v.len();
    let rows: Vec<(Vec<f64>, Vec<f64>)> = u
        .par_iter()
        .map(|&ui| {
            let mut e = Vec::with_capacity(cols);
            let mut o = Vec::with_capacity(if rank1_k.is_some() { cols } else { 0 });
            for &vj in v {
                let z = ui * vj;
                let (a, b) = normalized_bessel_pair(nu, z);
                e.push(a);
                if let Some(k) = rank1_k {
                    o.push(z / (2.0 * k + 1.0) * b);
                }
            }
            (e, o)
        })
        .collect();
    let mut even = Vec::with_capacity(u.len() * cols);
    let mut odd = Vec::with_capacity(if rank1_k.is_some() { u.len() * cols } else { 0 });
    for (e, o) in rows {
        even.extend(e);
        odd.extend(o);
    }
    let k = Arc::new(Kernel { rows: u.len(), cols, even, odd: rank1_k.map(|_| odd) });
    let mut guard = cache.lock().unwrap();
    if guard.len() >= CACHE_LIMIT {
        guard.clear();
    }
    guard.insert(key, k.clone());
    k
}
