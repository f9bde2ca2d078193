//! Lowest eigenpair of a large real symmetric operator by restarted Lanczos
//! with full reorthogonalization.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::tridiag::{tridiagonal_eigen, TriMode};

#[derive(Debug, Clone, Copy)]
pub struct LanczosOptions {
    /// Krylov dimension before a restart.
    pub max_krylov: usize,
    /// Residual tolerance `‖Hx - θx‖`.
    pub tol: f64,
    pub max_restarts: usize,
    /// Seed of the deterministic start vector.
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions { max_krylov: 160, tol: 1e-10, max_restarts: 40, seed: 0x5eed_1a2c }
    }
}

#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
}

fn splitmix(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Lowest eigenpair of the operator `apply(x, y): y = H x` of dimension `dim`.
pub fn lowest_eigenpair<F>(dim: usize, apply: F, opts: LanczosOptions) -> Result<Eigenpair>
where
    F: Fn(&[f64], &mut [f64]),
{
    if dim == 0 {
        return Err(Error::Unsupported("empty operator"));
    }
    let mut hx = vec![0.0; dim];
    if dim == 1 {
        apply(&[1.0], &mut hx);
        return Ok(Eigenpair { value: hx[0], vector: vec![1.0], residual: 0.0 });
    }
    let mut state = opts.seed;
    let mut start: Vec<f64> = (0..dim).map(|_| splitmix(&mut state)).collect();
    let nrm = norm(&start);
    start.iter_mut().for_each(|v| *v /= nrm);

    let kmax = opts.max_krylov.min(dim).max(2);
    let mut best: Option<Eigenpair> = None;
    for _ in 0..=opts.max_restarts {
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(kmax);
        let mut alpha: Vec<f64> = Vec::with_capacity(kmax);
        let mut beta: Vec<f64> = Vec::with_capacity(kmax);
        basis.push(start.clone());
        let mut w = vec![0.0; dim];
        let s = loop {
            let k = basis.len() - 1;
            apply(&basis[k], &mut w);
            let a = dot(&w, &basis[k]);
            alpha.push(a);
            // two passes of classical Gram-Schmidt against the whole basis
            for _ in 0..2 {
                for v in &basis {
                    let c = dot(&w, v);
                    w.iter_mut().zip(v).for_each(|(x, y)| *x -= c * y);
                }
            }
            let b = norm(&w);
            let m = alpha.len();
            let check = m == kmax || b < 1e-13 || m % 8 == 0;
            if check {
                let t = tridiagonal_eigen(&alpha, &beta, TriMode::Vectors)?;
                let s = &t.vectors.as_ref().expect("vectors requested")[0];
                let est = b * s[m - 1].abs();
                if est < 0.1 * opts.tol || b < 1e-13 || m == kmax {
                    break s.clone();
                }
            }
            beta.push(b);
            w.iter_mut().for_each(|x| *x /= b);
            basis.push(w.clone());
        };
        let mut x = vec![0.0; dim];
        for (coef, v) in s.iter().zip(&basis) {
            x.iter_mut().zip(v).for_each(|(xi, vi)| *xi += coef * vi);
        }
        let nx = norm(&x);
        x.iter_mut().for_each(|v| *v /= nx);
        apply(&x, &mut hx);
        let value = dot(&x, &hx);
        let residual = hx.iter().zip(&x).map(|(h, v)| (h - value * v).powi(2)).sum::<f64>().sqrt();
        let pair = Eigenpair { value, vector: x.clone(), residual };
        let done = residual <= opts.tol;
        best = Some(pair);
        if done {
            break;
        }
        start = x;
    }
    let pair = best.expect("at least one Lanczos cycle");
    if pair.residual > opts.tol {
        return Err(Error::NoConvergence("Lanczos ground state"));
    }
    Ok(pair)
}
