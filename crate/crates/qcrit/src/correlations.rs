//! Closed-form entanglement, discord and coherence measures for one and two qubits.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{self, eig_hermitian, kron, matrix_sqrt_psd, sigma_y, CMat};
use crate::qstate::{
    binary_entropy, dephase, qjsd, von_neumann_entropy, xlog2x,
    DensityMatrix, CLAMP_TOL,
};

/// Tolerance on entries outside the X pattern.
pub const X_PATTERN_TOL: f64 = 1e-12;

fn require_dim(rho: &DensityMatrix, d: usize) -> Result<()> {
    if rho.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: rho.dim() });
    }
    Ok(())
}

/// Wootters concurrence of a two-qubit state.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_dim(rho, 4)?;
    let yy = kron(&sigma_y(), &sigma_y());
    let rho_tilde = &yy * rho.matrix().conjugate() * &yy;
    let sq = matrix_sqrt_psd(rho.matrix(), CLAMP_TOL)?;
    let r = &sq * rho_tilde * &sq;
    let r = CMat::from_fn(4, 4, |i, j| (r[(i, j)] + r[(j, i)].conj()) * 0.5);
    let mut l: alloc::vec::Vec<f64> =
        eig_hermitian(&r)?.eigenvalues.iter().map(|&x| x.max(0.0).sqrt()).collect();
    l.sort_by(|a, b| b.total_cmp(a));
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Entanglement of formation from the concurrence.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy(0.5 + 0.5 * (1.0 - c * c).sqrt())
}

pub fn entanglement_of_formation(rho: &DensityMatrix) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence(rho)?))
}

/// Coherence of formation of a single qubit, `h((1 + √(1 - 4|ρ01|²))/2)`.
pub fn single_qubit_coherence_of_formation(rho: &DensityMatrix) -> Result<f64> {
    require_dim(rho, 2)?;
    let c = rho.get(0, 1).norm();
    Ok(binary_entropy(0.5 * (1.0 + (1.0 - 4.0 * c * c).max(0.0).sqrt())))
}

/// `√J(ρ, dephase(ρ))`.
pub fn coherence_qjsd(rho: &DensityMatrix) -> Result<f64> {
    Ok(qjsd(rho, &dephase(rho))?.sqrt())
}

/// `S(dephase(ρ)) - S(ρ)`.
pub fn relative_entropy_coherence(rho: &DensityMatrix) -> f64 {
    (von_neumann_entropy(&dephase(rho)) - von_neumann_entropy(rho)).max(0.0)
}

/// Two-qubit state with non-zero entries only on the diagonal and anti-diagonal.
#[derive(Debug, Clone)]
pub struct XState {
    rho: DensityMatrix,
}

const X_ALLOWED: [(usize, usize); 8] = [(0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (1, 2), (2, 1), (3, 0)];

impl XState {
    pub fn new(rho: DensityMatrix) -> Result<Self> {
        require_dim(&rho, 4)?;
        let mut defect: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if !X_ALLOWED.contains(&(i, j)) {
                    defect = defect.max(rho.get(i, j).norm());
                }
            }
        }
        if defect > X_PATTERN_TOL {
            return Err(Error::NotXState { defect });
        }
        Ok(XState { rho })
    }

    /// Builds the state from its eight real/complex X entries
    /// `(ρ11, ρ22, ρ33, ρ44, ρ14, ρ23)`.
    pub fn from_entries(diag: [f64; 4], r14: num_complex::Complex64, r23: num_complex::Complex64) -> Result<Self> {
        let mut m = CMat::zeros(4, 4);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = linalg::re(d);
        }
        m[(0, 3)] = r14;
        m[(3, 0)] = r14.conj();
        m[(1, 2)] = r23;
        m[(2, 1)] = r23.conj();
        Self::new(DensityMatrix::new(m)?)
    }

    pub fn density(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn diag(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|i| self.rho.get(i, i).re)
    }
}

/// Quantum discord and classical correlation of an X-state, measuring the
/// second qubit. Returned as `(discord, classical)`.
pub fn xstate_discord_cc(x: &XState) -> Result<(f64, f64)> {
    let [r11, r22, r33, r44] = x.diag();
    let c = x.rho.get(0, 3).norm() + x.rho.get(1, 2).norm();
    // conditional entropy after the optimal transverse measurement
    let a = 1.0 - 2.0 * (r33 + r44);
    let w = 0.5 * (1.0 + (a * a + 4.0 * c * c).sqrt());
    let d1 = binary_entropy(w.min(1.0));
    // conditional entropy after a σz measurement
    let d2 = [r11, r22, r33, r44].iter().map(|&p| xlog2x(p)).sum::<f64>() - binary_entropy(r11 + r33);
    let s_a = binary_entropy(r11 + r22);
    let s_b = binary_entropy(r11 + r33);
    let cc = (s_a - d1).max(s_a - d2).max(0.0);
    // Σ λ log2 λ over the analytic X-state spectrum
    let block = |p: f64, q: f64, off: f64| {
        let m = 0.5 * (p + q);
        let r = (0.25 * (p - q) * (p - q) + off * off).sqrt();
        -(xlog2x(m + r) + xlog2x((m - r).max(0.0)))
    };
    let lam = block(r11, r44, x.rho.get(0, 3).norm()) + block(r22, r33, x.rho.get(1, 2).norm());
    let qd = (s_b + lam + d1).min(s_b + lam + d2).max(0.0);
    Ok((qd, cc))
}

/// Every closed-form measure for one two-qubit X-state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub concurrence: f64,
    pub eof: f64,
    pub discord: f64,
    pub classical: f64,
    pub coherence_qjsd: f64,
    pub rel_entropy_coherence: f64,
}

pub fn correlation_report(x: &XState) -> Result<CorrelationReport> {
    let rho = x.density();
    let concurrence = concurrence(rho)?;
    let (discord, classical) = xstate_discord_cc(x)?;
    Ok(CorrelationReport {
        concurrence,
        eof: eof_from_concurrence(concurrence),
        discord,
        classical,
        coherence_qjsd: coherence_qjsd(rho)?,
        rel_entropy_coherence: relative_entropy_coherence(rho),
    })
}

/// Closed-form coherence of the XX-chain two-site state with `ρ14 = 0`,
/// `ρ22 = Y+`, `ρ33 = Y-`, `ρ23 = Z`.
pub fn xx_coherence_closed_form(y_plus: f64, y_minus: f64, z: f64) -> f64 {
    let z = z.abs();
    let mixed = xlog2x(y_plus - 0.5 * z) + xlog2x(y_minus + 0.5 * z);
    let full = xlog2x(y_plus - z) + xlog2x(y_minus + z);
    let diag = xlog2x(y_plus) + xlog2x(y_minus);
    (mixed - 0.5 * full - 0.5 * diag).max(0.0).sqrt()
}
