//! Symmetric tridiagonal eigensolver (implicit QL with Wilkinson shifts).
//!
//! Besides the usual eigenvector mode the solver can run in projection mode:
//! the Givens rotations are applied to a handful of row vectors `ψᵀ` instead
//! of an identity matrix, which yields the overlaps `Vᵀψ` in O(n²) time
//! without ever storing the eigenvectors.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Output of [`tridiagonal_eigen`].
#[derive(Debug, Clone)]
pub struct TriEigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Column-major eigenvectors (`vectors[j]` is eigenvector `j`) when requested.
    pub vectors: Option<Vec<Vec<f64>>>,
    /// `projections[r][j] = <v_j | ψ_r>` for every projected vector `ψ_r`.
    pub projections: Vec<Vec<f64>>,
}

/// What to accumulate alongside the eigenvalues.
#[derive(Debug, Clone, Copy)]
pub enum TriMode<'a> {
    ValuesOnly,
    Vectors,
    Project(&'a [Vec<f64>]),
}

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal `diag`
/// and off-diagonal `off` (`off.len() == diag.len() - 1`).
pub fn tridiagonal_eigen(diag: &[f64], off: &[f64], mode: TriMode<'_>) -> Result<TriEigen> {
    let n = diag.len();
    if n == 0 {
        return Ok(TriEigen { values: Vec::new(), vectors: None, projections: Vec::new() });
    }
    if off.len() + 1 != n {
        return Err(Error::DimensionMismatch { expected: n - 1, found: off.len() });
    }
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);

    // rows[r] transforms like a row of the accumulated rotation matrix
    let mut rows: Vec<Vec<f64>> = match mode {
        TriMode::ValuesOnly => Vec::new(),
        TriMode::Vectors => (0..n)
            .map(|k| {
                let mut r = vec![0.0; n];
                r[k] = 1.0;
                r
            })
            .collect(),
        TriMode::Project(psis) => {
            for p in psis {
                if p.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: p.len() });
                }
            }
            psis.to_vec()
        }
    };

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(Error::NoConvergence("tridiagonal QL"));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in rows.iter_mut() {
                    let f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&k| d[k]).collect();
    match mode {
        TriMode::ValuesOnly => Ok(TriEigen { values, vectors: None, projections: Vec::new() }),
        TriMode::Vectors => {
            let vectors = order.iter().map(|&j| (0..n).map(|k| rows[k][j]).collect()).collect();
            Ok(TriEigen { values, vectors: Some(vectors), projections: Vec::new() })
        }
        TriMode::Project(_) => {
            let projections = rows.iter().map(|row| order.iter().map(|&j| row[j]).collect()).collect();
            Ok(TriEigen { values, vectors: None, projections })
        }
    }
}

/// `T x` for the tridiagonal matrix `(diag, off)`.
pub fn tridiagonal_apply(diag: &[f64], off: &[f64], x: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut y: Vec<f64> = (0..n).map(|i| diag[i] * x[i]).collect();
    for i in 0..n.saturating_sub(1) {
        y[i] += off[i] * x[i + 1];
        y[i + 1] += off[i] * x[i];
    }
    y
}

/// Eigenvector for a known, isolated eigenvalue by inverse iteration.
///
/// Uses an LU factorization with partial pivoting of `T - λI`; the sign is
/// fixed so that the largest-magnitude component is positive.
pub fn inverse_iteration(diag: &[f64], off: &[f64], lambda: f64) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![1.0]);
    }
    let scale = diag.iter().chain(off.iter()).fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    // shift slightly off the eigenvalue so the factorization stays finite
    let shift = lambda + scale * 8.0 * f64::EPSILON;
    let lu = TriLu::new(diag, off, shift);
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 97) as f64 / 97.0).collect();
    for _ in 0..6 {
        lu.solve(&mut x);
        let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(nrm.is_finite() && nrm > 0.0) {
            return Err(Error::NoConvergence("inverse iteration"));
        }
        x.iter_mut().for_each(|v| *v /= nrm);
        let tx = tridiagonal_apply(diag, off, &x);
        let res = tx.iter().zip(&x).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
        if res <= 1e-11 * scale {
            break;
        }
    }
    let imax = (0..n).max_by(|&a, &b| x[a].abs().total_cmp(&x[b].abs())).unwrap_or(0);
    if x[imax] < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    Ok(x)
}

/// LU factorization with partial pivoting of a shifted tridiagonal matrix.
struct TriLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    piv: Vec<bool>,
}

impl TriLu {
    fn new(diag: &[f64], off: &[f64], shift: f64) -> Self {
        let n = diag.len();
        let mut d: Vec<f64> = diag.iter().map(|x| x - shift).collect();
        let mut dl = off.to_vec();
        let mut du = off.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut piv = vec![false; n.saturating_sub(1)];
        let tiny = f64::EPSILON * diag.iter().fold(1e-300f64, |m, x| m.max(x.abs()));
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let f = dl[i] / d[i];
                dl[i] = f;
                d[i + 1] -= f * du[i];
            } else {
                piv[i] = true;
                let f = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = f;
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - f * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -f * du[i + 1];
                }
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        TriLu { dl, d, du, du2, piv }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n - 1 {
            if self.piv[i] {
                b.swap(i, i + 1);
                b[i + 1] -= self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}
