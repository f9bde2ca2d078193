//! Dense complex matrices and the Hermitian eigensolver used throughout.

use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Tolerance on |H - H^dagger| accepted by [`eig_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-10;

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Eigen-decomposition of a Hermitian matrix with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, ordered like `eigenvalues`.
    pub eigenvectors: CMat,
}

impl Spectrum {
    /// Rebuilds `V diag(f(λ)) V†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMat {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut out = CMat::zeros(n, n);
        for (k, &l) in self.eigenvalues.iter().enumerate() {
            let w = f(l);
            if w == 0.0 {
                continue;
            }
            for j in 0..n {
                let vj = v[(j, k)].conj() * w;
                for i in 0..n {
                    out[(i, j)] += v[(i, k)] * vj;
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> CMat {
        self.map(|l| l)
    }
}

/// Largest entry of |H - H^dagger|.
pub fn hermiticity_defect(h: &CMat) -> f64 {
    let n = h.nrows();
    let mut d: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            d = d.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    d
}

pub fn max_abs(h: &CMat) -> f64 {
    h.iter().fold(0.0, |m, z| m.max(z.norm()))
}

/// Hermitian eigen-decomposition, eigenvalues ascending.
pub fn eig_hermitian(h: &CMat) -> Result<Spectrum> {
    if h.nrows() != h.ncols() {
        return Err(Error::DimensionMismatch { expected: h.nrows(), found: h.ncols() });
    }
    let defect = hermiticity_defect(h);
    if defect > HERMITIAN_TOL * max_abs(h).max(1.0) {
        return Err(Error::NonHermitian { defect });
    }
    let n = h.nrows();
    if n == 0 {
        return Ok(Spectrum { eigenvalues: Vec::new(), eigenvectors: CMat::zeros(0, 0) });
    }
    // symmetrize so the solver only sees exact Hermitian input
    let hs = CMat::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let eig = SymmetricEigen::new(hs);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = CMat::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(Spectrum { eigenvalues, eigenvectors })
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Kronecker product of a list of factors, left to right.
pub fn kron_all(factors: &[CMat]) -> CMat {
    let mut out = CMat::identity(1, 1);
    for f in factors {
        out = out.kronecker(f);
    }
    out
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn sigma_x() -> CMat {
    CMat::from_row_slice(2, 2, &[re(0.0), re(1.0), re(1.0), re(0.0)])
}

pub fn sigma_y() -> CMat {
    CMat::from_row_slice(2, 2, &[re(0.0), c64(0.0, -1.0), c64(0.0, 1.0), re(0.0)])
}

pub fn sigma_z() -> CMat {
    CMat::from_row_slice(2, 2, &[re(1.0), re(0.0), re(0.0), re(-1.0)])
}

/// Pauli matrix by index: 0 = I, 1 = x, 2 = y, 3 = z.
pub fn pauli(k: usize) -> CMat {
    match k {
        0 => identity(2),
        1 => sigma_x(),
        2 => sigma_y(),
        3 => sigma_z(),
        _ => panic!("pauli index {k} out of range"),
    }
}

pub fn trace(m: &CMat) -> Complex64 {
    m.diagonal().iter().sum()
}

/// `Tr(a b)` without forming the product.
pub fn trace_product(a: &CMat, b: &CMat) -> Complex64 {
    let n = a.nrows();
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            s += a[(i, k)] * b[(k, i)];
        }
    }
    s
}

/// Positive semidefinite square root. Eigenvalues in `[-clamp_tol, 0)` are
/// set to zero; anything lower is reported as an invalid state.
pub fn matrix_sqrt_psd(m: &CMat, clamp_tol: f64) -> Result<CMat> {
    let s = eig_hermitian(m)?;
    if let Some(&l) = s.eigenvalues.first() {
        if l < -clamp_tol {
            return Err(Error::NegativeEigenvalue { value: l, tol: clamp_tol });
        }
    }
    Ok(s.map(|l| l.max(0.0).sqrt()))
}

/// Real symmetric matrix promoted to complex.
pub fn from_real(n: usize, f: impl Fn(usize, usize) -> f64) -> CMat {
    CMat::from_fn(n, n, |i, j| re(f(i, j)))
}
