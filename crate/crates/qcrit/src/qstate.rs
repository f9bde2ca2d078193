//! Density matrices, pure states and entropy functionals (all in bits).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{self, c64, eig_hermitian, re, CMat, CVec};

/// Default clamp tolerance for small negative eigenvalues.
pub const CLAMP_TOL: f64 = 1e-10;
/// Hermiticity tolerance enforced on density matrices.
pub const STATE_HERMITIAN_TOL: f64 = 1e-12;
/// Trace tolerance enforced on density matrices.
pub const TRACE_TOL: f64 = 1e-10;

/// `-x log2 x` with `0 log 0 = 0`.
#[inline]
pub fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Binary entropy `h(x)` with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    xlog2x(x) + xlog2x(1.0 - x)
}

/// Shannon entropy of a probability vector.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for &x in p {
        if !(x >= -1e-12) {
            return Err(Error::OutOfRange { name: "probability", value: x });
        }
        sum += x;
    }
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::OutOfRange { name: "probability sum", value: sum });
    }
    Ok(entropy_of_weights(p))
}

/// Shannon sum over non-negative weights without normalization checks.
pub fn entropy_of_weights(p: &[f64]) -> f64 {
    p.iter().map(|&x| xlog2x(x)).sum()
}

/// Unit-trace, positive semidefinite Hermitian matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: CMat,
    label: Option<String>,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity.
    pub fn new(mat: CMat) -> Result<Self> {
        Self::with_tolerance(mat, CLAMP_TOL)
    }

    pub fn with_tolerance(mat: CMat, clamp_tol: f64) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::DimensionMismatch { expected: mat.nrows(), found: mat.ncols() });
        }
        let defect = linalg::hermiticity_defect(&mat);
        if defect > STATE_HERMITIAN_TOL {
            return Err(Error::NonHermitian { defect });
        }
        let tr = linalg::trace(&mat).re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace { trace: tr });
        }
        let lo = eig_hermitian(&mat)?.eigenvalues[0];
        if lo < -clamp_tol {
            return Err(Error::NegativeEigenvalue { value: lo, tol: clamp_tol });
        }
        Ok(DensityMatrix { mat, label: None })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let a = &psi.amps;
        DensityMatrix { mat: a * a.adjoint(), label: None }
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix { mat: CMat::identity(dim, dim) / re(dim as f64), label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn into_matrix(self) -> CMat {
        self.mat
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    /// Ascending eigenvalues with negatives inside the clamp window set to zero.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eig_hermitian(&self.mat)
            .expect("validated Hermitian")
            .eigenvalues
            .into_iter()
            .map(|l| l.max(0.0))
            .collect()
    }

    /// Convex combination `w ρ + (1 - w) σ`.
    pub fn mix(&self, other: &DensityMatrix, w: f64) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(DensityMatrix { mat: &self.mat * re(w) + &other.mat * re(1.0 - w), label: None })
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &CMat) -> Self {
        DensityMatrix { mat: u * &self.mat * u.adjoint(), label: self.label.clone() }
    }

    /// `ρ_A ⊗ ρ_B`.
    pub fn tensor(&self, other: &DensityMatrix) -> Self {
        DensityMatrix { mat: linalg::kron(&self.mat, &other.mat), label: None }
    }
}

/// Normalized state vector.
#[derive(Debug, Clone)]
pub struct PureState {
    amps: CVec,
}

impl PureState {
    pub fn new(amps: CVec) -> Result<Self> {
        let n = amps.norm();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::OutOfRange { name: "state norm", value: n });
        }
        Ok(PureState { amps })
    }

    /// Normalizes the given amplitudes.
    pub fn normalized(amps: CVec) -> Result<Self> {
        let n = amps.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidState("zero or non-finite vector"));
        }
        Ok(PureState { amps: amps / re(n) })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::normalized(CVec::from_iterator(amps.len(), amps.iter().map(|&x| re(x))))
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &CVec {
        &self.amps
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }
}

/// Reduced state on the factors listed in `keep` (ascending factor indices).
pub fn partial_trace(rho: &DensityMatrix, dims: &[usize], keep: &[usize]) -> Result<DensityMatrix> {
    let total: usize = dims.iter().product();
    if total != rho.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), found: total });
    }
    if keep.iter().any(|&k| k >= dims.len()) || keep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Unsupported("keep must list distinct factor indices in ascending order"));
    }
    let nf = dims.len();
    let kept: Vec<bool> = (0..nf).map(|f| keep.contains(&f)).collect();
    let dk: usize = keep.iter().map(|&k| dims[k]).product();
    let dt: usize = total / dk;
    // split a global index into (kept index, traced index)
    let split = |mut idx: usize| -> (usize, usize) {
        let mut digits = vec![0usize; nf];
        for f in (0..nf).rev() {
            digits[f] = idx % dims[f];
            idx /= dims[f];
        }
        let (mut a, mut b) = (0usize, 0usize);
        for f in 0..nf {
            if kept[f] {
                a = a * dims[f] + digits[f];
            } else {
                b = b * dims[f] + digits[f];
            }
        }
        (a, b)
    };
    let parts: Vec<(usize, usize)> = (0..total).map(split).collect();
    let mut by_traced: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dt];
    for (g, &(a, b)) in parts.iter().enumerate() {
        by_traced[b].push((a, g));
    }
    let m = rho.matrix();
    let mut out = CMat::zeros(dk, dk);
    for group in &by_traced {
        for &(a, gi) in group {
            for &(b, gj) in group {
                out[(a, b)] += m[(gi, gj)];
            }
        }
    }
    Ok(DensityMatrix { mat: out, label: None })
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_weights(&rho.eigenvalues())
}

/// Quantum Jensen-Shannon divergence, in `[0, 1]`.
pub fn qjsd(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let mid = rho.mix(sigma, 0.5)?;
    let j = von_neumann_entropy(&mid) - 0.5 * von_neumann_entropy(rho) - 0.5 * von_neumann_entropy(sigma);
    Ok(j.clamp(0.0, 1.0))
}

/// `S(A) + S(B) - S(AB)` for a bipartition with factor dimensions `dims = [dA, dB]`.
pub fn mutual_information(rho: &DensityMatrix, dims: [usize; 2]) -> Result<f64> {
    let a = partial_trace(rho, &dims, &[0])?;
    let b = partial_trace(rho, &dims, &[1])?;
    Ok(von_neumann_entropy(&a) + von_neumann_entropy(&b) - von_neumann_entropy(rho))
}

/// Diagonal part of `ρ` in the computational basis.
pub fn dephase(rho: &DensityMatrix) -> DensityMatrix {
    let n = rho.dim();
    let mut mat = CMat::zeros(n, n);
    for i in 0..n {
        mat[(i, i)] = re(rho.mat[(i, i)].re);
    }
    DensityMatrix { mat, label: None }
}

/// Catalogue of named states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedState {
    /// `(1-p)/4 I + p |Ψ-><Ψ-|`.
    Werner(f64),
    /// `p |0><0| + (1-p) |+><+|`.
    WernerMix(f64),
    /// `(|00> + |11>)/√2`.
    Bell,
    /// `(|0…0> + |1…1>)/√2` on `n` qubits.
    Ghz(usize),
    /// `(|0> + |1>)/√2`.
    Plus,
    /// Equal-weight combination of the two parity eigenstates `|0>`, `|1>`
    /// of one qubit with relative sign `+1` or `-1`.
    FsbPair(i8),
}

/// Either representation produced by [`named_state`].
#[derive(Debug, Clone)]
pub enum State {
    Mixed(DensityMatrix),
    Pure(PureState),
}

impl State {
    pub fn density(&self) -> DensityMatrix {
        match self {
            State::Mixed(d) => d.clone(),
            State::Pure(p) => p.density(),
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::OutOfRange { name: "p", value: p })
    }
}

fn basis_vec(dim: usize, entries: &[(usize, f64)]) -> CVec {
    let mut v = CVec::zeros(dim);
    for &(i, a) in entries {
        v[i] = re(a);
    }
    v
}

pub fn named_state(name: NamedState) -> Result<State> {
    Ok(match name {
        NamedState::Werner(p) => {
            check_p(p)?;
            let singlet = basis_vec(4, &[(1, FRAC_1_SQRT_2), (2, -FRAC_1_SQRT_2)]);
            let proj = &singlet * singlet.adjoint();
            let mat = CMat::identity(4, 4) * re((1.0 - p) / 4.0) + proj * re(p);
            State::Mixed(DensityMatrix { mat, label: Some("werner".into()) })
        }
        NamedState::WernerMix(p) => {
            check_p(p)?;
            let h = (1.0 - p) / 2.0;
            let mat = CMat::from_row_slice(2, 2, &[re(p + h), re(h), re(h), re(h)]);
            State::Mixed(DensityMatrix { mat, label: Some("werner_mix".into()) })
        }
        NamedState::Bell => State::Pure(PureState { amps: basis_vec(4, &[(0, FRAC_1_SQRT_2), (3, FRAC_1_SQRT_2)]) }),
        NamedState::Ghz(n) => {
            if n == 0 || n > 20 {
                return Err(Error::OutOfRange { name: "ghz qubits", value: n as f64 });
            }
            let dim = 1usize << n;
            State::Pure(PureState { amps: basis_vec(dim, &[(0, FRAC_1_SQRT_2), (dim - 1, FRAC_1_SQRT_2)]) })
        }
        NamedState::Plus => State::Pure(PureState { amps: basis_vec(2, &[(0, FRAC_1_SQRT_2), (1, FRAC_1_SQRT_2)]) }),
        NamedState::FsbPair(sign) => {
            let s = if sign < 0 { -FRAC_1_SQRT_2 } else { FRAC_1_SQRT_2 };
            State::Pure(PureState { amps: basis_vec(2, &[(0, FRAC_1_SQRT_2), (1, s)]) })
        }
    })
}

/// Gram-Schmidt orthonormalization of the columns of `raw` into a unitary.
pub fn unitary_from_columns(raw: &CMat) -> CMat {
    let n = raw.nrows();
    let mut q = raw.clone();
    for j in 0..n {
        for k in 0..j {
            let proj: Complex64 = (0..n).map(|i| q[(i, k)].conj() * q[(i, j)]).sum();
            for i in 0..n {
                let v = q[(i, k)] * proj;
                q[(i, j)] -= v;
            }
        }
        let nrm = (0..n).map(|i| q[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            q[(i, j)] /= c64(nrm, 0.0);
        }
    }
    q
}
