//! Wootters discrete Wigner function and the Stratonovich SU(2) kernel for qubits.
//!
//! The DWF is normalized as `W = Tr(ρ A) / 2ⁿ`, so its values sum to one.
//! Stratonovich angles follow the `U = e^{iσᶻφ} e^{iσʸθ}` parameterization,
//! which makes every formula depend on `2θ` and `2φ`.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fermion::SpinCorrelators;
use crate::linalg::{self, kron_all, matrix_sqrt_psd, re, sigma_x, sigma_y, sigma_z, trace_product, CMat};
use crate::qstate::{DensityMatrix, CLAMP_TOL};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Point of the `2ⁿ × 2ⁿ` qubit phase space. Bit `k` of `x`/`p` (counting
/// from the most significant of `n` bits) belongs to qubit `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhasePoint {
    pub n: usize,
    pub x: u32,
    pub p: u32,
}

impl PhasePoint {
    pub fn new(n: usize, x: u32, p: u32) -> Result<Self> {
        if n == 0 || n > 8 || x >> n != 0 || p >> n != 0 {
            return Err(Error::OutOfRange { name: "phase point", value: n as f64 });
        }
        Ok(PhasePoint { n, x, p })
    }

    /// Builds a point from per-qubit bits, e.g. `from_bits(&[0, 1], &[0, 0])`.
    pub fn from_bits(x: &[u8], p: &[u8]) -> Result<Self> {
        if x.len() != p.len() {
            return Err(Error::DimensionMismatch { expected: x.len(), found: p.len() });
        }
        let pack = |b: &[u8]| b.iter().fold(0u32, |acc, &v| (acc << 1) | u32::from(v & 1));
        Self::new(x.len(), pack(x), pack(p))
    }

    pub fn x_bit(&self, k: usize) -> u32 {
        (self.x >> (self.n - 1 - k)) & 1
    }

    pub fn p_bit(&self, k: usize) -> u32 {
        (self.p >> (self.n - 1 - k)) & 1
    }

    /// Every point, `x` major and `p` minor.
    pub fn all(n: usize) -> Vec<PhasePoint> {
        let side = 1u32 << n;
        (0..side).flat_map(|x| (0..side).map(move |p| PhasePoint { n, x, p })).collect()
    }

    fn index(&self) -> usize {
        ((self.x as usize) << self.n) | self.p as usize
    }
}

fn sign(bit: u32) -> f64 {
    if bit & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Single-qubit `A(x, p) = ½(I + (-1)^x σz + (-1)^p σx + (-1)^{x+p} σy)`.
pub fn single_point_operator(x: u32, p: u32) -> CMat {
    let i2 = linalg::identity(2);
    (i2 + sigma_z() * re(sign(x)) + sigma_x() * re(sign(p)) + sigma_y() * re(sign(x ^ p))) * re(0.5)
}

/// Tensor-product phase-point operator.
pub fn wootters_point_operator(pt: &PhasePoint) -> CMat {
    let factors: Vec<CMat> = (0..pt.n).map(|k| single_point_operator(pt.x_bit(k), pt.p_bit(k))).collect();
    kron_all(&factors)
}

/// Discrete Wigner function over all `4ⁿ` points.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePointTable {
    pub n_qubits: usize,
    values: Vec<f64>,
}

impl PhasePointTable {
    pub fn get(&self, pt: &PhasePoint) -> f64 {
        self.values[pt.index()]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `Σ W(x, p) A(x, p)`.
    pub fn reconstruct(&self) -> CMat {
        let dim = 1usize << self.n_qubits;
        let mut out = CMat::zeros(dim, dim);
        for pt in PhasePoint::all(self.n_qubits) {
            out += wootters_point_operator(&pt) * re(self.get(&pt));
        }
        out
    }
}

fn qubit_count(dim: usize) -> Result<usize> {
    if dim.is_power_of_two() && dim >= 2 {
        Ok(dim.trailing_zeros() as usize)
    } else {
        Err(Error::Unsupported("phase-space functions need a qubit register"))
    }
}

/// `Tr(M A) / 2ⁿ` at every point for an arbitrary Hermitian operator.
pub fn dwf_of_operator(m: &CMat) -> Result<PhasePointTable> {
    let n = qubit_count(m.nrows())?;
    let norm = 1.0 / (1usize << n) as f64;
    let values = PhasePoint::all(n).iter().map(|pt| trace_product(m, &wootters_point_operator(pt)).re * norm).collect();
    Ok(PhasePointTable { n_qubits: n, values })
}

pub fn dwf(rho: &DensityMatrix) -> Result<PhasePointTable> {
    dwf_of_operator(rho.matrix())
}

/// `¼(1 + (-1)^x ⟨σz⟩)`.
pub fn dwf_single_site(sz: f64, x: u32) -> f64 {
    0.25 * (1.0 + sign(x) * sz)
}

/// Two-site DWF of a real parity-symmetric state from its correlators.
pub fn dwf_two_site_symmetric(c: &SpinCorrelators, pt: &PhasePoint) -> Result<f64> {
    if pt.n != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: pt.n });
    }
    let (x1, x2, p1, p2) = (pt.x_bit(0), pt.x_bit(1), pt.p_bit(0), pt.p_bit(1));
    Ok((1.0
        + (sign(x1) + sign(x2)) * c.sz
        + sign(p1 ^ p2) * c.xx
        + sign(x1 ^ x2) * c.zz
        + sign(x1 ^ x2 ^ p1 ^ p2) * c.yy)
        / 16.0)
}

/// `(W_M, W_m)`: extremes over the three representative points
/// `W_{00,00}`, `W_{00,01}`, `W_{01,00}` (labels `x1x2,p1p2`).
pub fn dwf_extremes(table: &PhasePointTable) -> Result<(f64, f64)> {
    if table.n_qubits != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: table.n_qubits });
    }
    let pts = [(0b00, 0b00), (0b00, 0b01), (0b01, 0b00)];
    let vals = pts.map(|(x, p)| table.get(&PhasePoint { n: 2, x, p }));
    let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
    Ok((hi, lo))
}

/// DWF of `√ρ` at one point, without renormalization.
pub fn sqrt_rho_dwf(rho: &DensityMatrix, pt: &PhasePoint) -> Result<f64> {
    let s = matrix_sqrt_psd(rho.matrix(), CLAMP_TOL)?;
    if s.nrows() != 1 << pt.n {
        return Err(Error::DimensionMismatch { expected: s.nrows(), found: 1 << pt.n });
    }
    Ok(trace_product(&s, &wootters_point_operator(pt)).re / (1usize << pt.n) as f64)
}

/// Full `√ρ` table.
pub fn sqrt_rho_table(rho: &DensityMatrix) -> Result<PhasePointTable> {
    dwf_of_operator(&matrix_sqrt_psd(rho.matrix(), CLAMP_TOL)?)
}

/// Stratonovich angles of one site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angles {
    pub theta: f64,
    pub phi: f64,
}

impl Angles {
    pub const fn new(theta: f64, phi: f64) -> Self {
        Angles { theta, phi }
    }

    /// Converts polar/azimuthal Bloch-sphere angles of the kernel axis.
    pub fn from_bloch(theta_b: f64, phi_b: f64) -> Self {
        Angles { theta: 0.5 * (core::f64::consts::PI - theta_b), phi: 0.5 * phi_b }
    }

    fn trig(&self) -> (f64, f64, f64, f64) {
        let (s2t, c2t) = (2.0 * self.theta).sin_cos();
        let (s2p, c2p) = (2.0 * self.phi).sin_cos();
        (c2t, s2t, c2p, s2p)
    }
}

/// `Δ = U Π U†` with `Π = ½(I - √3 σz)`.
pub fn stratonovich_kernel(a: Angles) -> CMat {
    let (c2t, s2t, c2p, s2p) = a.trig();
    (linalg::identity(2) - sigma_z() * re(SQRT3 * c2t) + sigma_x() * re(SQRT3 * s2t * c2p)
        - sigma_y() * re(SQRT3 * s2t * s2p))
        * re(0.5)
}

/// Kernel whose `√3`-scaled axis points along the Bloch angles `(θ, φ)`:
/// `½(I + √3 [sinθ cosφ σx - sinθ sinφ σy + cosθ σz])`.
pub fn stratonovich_kernel_bloch(theta_b: f64, phi_b: f64) -> CMat {
    stratonovich_kernel(Angles::from_bloch(theta_b, phi_b))
}

/// Bloch angles of the kernel equal to the (relabelled) Wootters operator
/// `D A(0,0) D†` with `D = σx^p σz^x`.
pub fn wootters_bloch_angles(x: u32, p: u32) -> (f64, f64) {
    let theta0 = (1.0 / SQRT3).acos();
    let phi0 = -core::f64::consts::FRAC_PI_4;
    let (xf, pf) = (f64::from(x & 1), f64::from(p & 1));
    (theta0 + pf * core::f64::consts::PI, phi0 + (2.0 * xf - pf) * core::f64::consts::FRAC_PI_2)
}

/// `D A(0,0) D†` with `D = σx^p σz^x`; equals `A(p, x)`.
pub fn displaced_origin_operator(x: u32, p: u32) -> CMat {
    single_point_operator(p, x)
}

/// `Tr(M ⊗_k Δ(angles_k))` for any operator on `angles.len()` qubits.
pub fn gwf_kernel_trace(m: &CMat, angles: &[Angles]) -> Result<f64> {
    if m.nrows() != 1 << angles.len() {
        return Err(Error::DimensionMismatch { expected: m.nrows(), found: 1 << angles.len() });
    }
    let k: Vec<CMat> = angles.iter().map(|&a| stratonovich_kernel(a)).collect();
    Ok(trace_product(m, &kron_all(&k)).re)
}

/// Single-site GWF `½(1 - √3 cos 2θ ⟨σz⟩)`.
pub fn gwf_single(sz: f64, theta: f64) -> f64 {
    0.5 * (1.0 - SQRT3 * (2.0 * theta).cos() * sz)
}

/// Two-site GWF from correlators.
pub fn gwf_two(c: &SpinCorrelators, ai: Angles, aj: Angles) -> f64 {
    let (ci, si, cpi, spi) = ai.trig();
    let (cj, sj, cpj, spj) = aj.trig();
    0.25 * (1.0 - SQRT3 * (ci + cj) * c.sz
        + 3.0 * cpi * si * cpj * sj * c.xx
        + 3.0 * si * sj * spi * spj * c.yy
        + 3.0 * ci * cj * c.zz)
}

/// Two-site GWF specialized to `⟨σx σx⟩ = ⟨σy σy⟩`, `⟨σz⟩ = 0`.
pub fn gwf_xxz(c: &SpinCorrelators, ai: Angles, aj: Angles) -> f64 {
    let (ci, si, _, _) = ai.trig();
    let (cj, sj, _, _) = aj.trig();
    0.25 * (1.0 + 3.0 * ci * cj * c.zz + 3.0 * si * sj * (2.0 * (ai.phi - aj.phi)).cos() * c.xx)
}

/// Inputs of the three-site GWF for sites `i < j < k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeSiteCorrelators {
    pub sz: f64,
    pub xx_ij: f64,
    pub xx_ik: f64,
    pub yy_ij: f64,
    pub yy_ik: f64,
    pub zz_ij: f64,
    pub zz_ik: f64,
}

impl ThreeSiteCorrelators {
    /// Consecutive sites of a translation-invariant chain: `ij` at separation 1,
    /// `ik` at separation 2.
    pub fn consecutive(nn: &SpinCorrelators, nnn: &SpinCorrelators) -> Self {
        ThreeSiteCorrelators {
            sz: nn.sz,
            xx_ij: nn.xx,
            xx_ik: nnn.xx,
            yy_ij: nn.yy,
            yy_ik: nnn.yy,
            zz_ij: nn.zz,
            zz_ik: nnn.zz,
        }
    }
}

/// Three-site GWF in the truncated form that keeps one- and two-point
/// correlators and factorizes three-point terms as `⟨σσ⟩⟨σz⟩`.
///
/// The term list, signs and correlator labels are kept exactly as in the
/// published expression, including its pair term with `⟨σy_i σy_k⟩` and the
/// `(⟨σz_i σz_j⟩ - ⟨σz_i σz_k⟩)` cubic term.
pub fn gwf_three(c: &ThreeSiteCorrelators, a: [Angles; 3]) -> f64 {
    let (ci, si, cpi, spi) = a[0].trig();
    let (cj, sj, cpj, spj) = a[1].trig();
    let (ck, sk, cpk, spk) = a[2].trig();
    let s33 = 3.0 * SQRT3;
    let sum = 1.0 - SQRT3 * (ci + cj + ck) * c.sz
        + 3.0 * cpi * si * cpk * sk * c.xx_ik
        + 3.0 * (cpi * si * cpj * sj + cpj * sj * cpk * sk) * c.xx_ij
        + 3.0 * si * spi * sk * spk * c.yy_ik
        + 3.0 * ci * ck * c.zz_ik
        + 3.0 * (si * sj * spi * spj + si * sk * spj * spk) * c.yy_ik
        + 3.0 * (ci * cj + cj * ck) * c.zz_ij
        - s33 * cpi * si * cpj * sj * ck * c.xx_ij * c.sz
        + s33 * cpi * si * cpk * sk * cj * c.xx_ik * c.sz
        - s33 * si * spi * sj * spj * ck * c.yy_ij * c.sz
        + s33 * si * spi * sk * spk * cj * c.yy_ik * c.sz
        - s33 * ci * cj * ck * (c.zz_ij - c.zz_ik) * c.sz;
    sum / 8.0
}
