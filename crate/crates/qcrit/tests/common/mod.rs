#![allow(dead_code)]

use num_complex::Complex64;
use qcrit::linalg::CMat;
use qcrit::qstate::DensityMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_complex_matrix(r: &mut StdRng, n: usize) -> CMat {
    CMat::from_fn(n, n, |_, _| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
}

pub fn random_hermitian(r: &mut StdRng, n: usize) -> CMat {
    let a = random_complex_matrix(r, n);
    (&a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

/// `G G† / Tr(G G†)` for a Ginibre matrix `G`.
pub fn random_density(r: &mut StdRng, n: usize) -> DensityMatrix {
    let g = random_complex_matrix(r, n);
    let m = &g * g.adjoint();
    let t = (0..n).map(|i| m[(i, i)].re).sum::<f64>();
    DensityMatrix::new(m / Complex64::new(t, 0.0)).unwrap()
}

/// Unitary from the QR decomposition of a Ginibre matrix.
pub fn random_unitary(r: &mut StdRng, n: usize) -> CMat {
    qcrit::qstate::unitary_from_columns(&random_complex_matrix(r, n))
}

pub fn max_diff(a: &CMat, b: &CMat) -> f64 {
    (a - b).iter().fold(0.0, |m, z| m.max(z.norm()))
}

/// Lowest eigenpair of a real symmetric matrix by the Jacobi rotation method.
pub fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let vals: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
    let sorted_vals = order.iter().map(|&i| vals[i]).collect();
    let vecs = order.iter().map(|&i| (0..n).map(|k| v[k][i]).collect()).collect();
    (sorted_vals, vecs)
}
