//! Spin correlators of free-fermion chains.
//!
//! Two routes are provided: closed-form thermodynamic-limit expressions for
//! the isotropic XX chain ([`xx`]) and an exact Bogoliubov solution of the
//! anisotropic XY chain on a finite periodic ring ([`ring`]).

pub mod ring;
pub mod xx;


use crate::correlations::XState;
use crate::error::{Error, Result};
use crate::linalg::{re, CMat};
use crate::qstate::DensityMatrix;

pub use ring::{xy_ring_correlators, Couplings, Parity, RingGroundState};
pub use xx::{fermi_fm, onset_field, xx_correlators, xx_entries, xx_two_site_rho, FermiTable, XxEntries};

/// Model parameters. `field` is `h` for the XX chain and `λ` for the XY chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainParams {
    pub gamma: f64,
    pub field: f64,
    pub temperature: f64,
}

impl ChainParams {
    pub fn new(gamma: f64, field: f64, temperature: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::OutOfRange { name: "gamma", value: gamma });
        }
        if !(temperature >= 0.0) {
            return Err(Error::OutOfRange { name: "temperature", value: temperature });
        }
        Ok(ChainParams { gamma, field, temperature })
    }
}

/// One-point magnetization and two-point correlators at separation `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinCorrelators {
    pub m: usize,
    pub sz: f64,
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
}

impl SpinCorrelators {
    pub fn new(m: usize, sz: f64, xx: f64, yy: f64, zz: f64) -> Self {
        SpinCorrelators { m, sz, xx, yy, zz }
    }
}

/// `½(I + ⟨σz⟩ σz)`.
pub fn assemble_single(sz: f64) -> Result<DensityMatrix> {
    let mut m = CMat::zeros(2, 2);
    m[(0, 0)] = re(0.5 * (1.0 + sz));
    m[(1, 1)] = re(0.5 * (1.0 - sz));
    DensityMatrix::new(m)
}

/// Two-site reduced state of a real, translation-invariant, parity-symmetric chain.
///
/// Basis order `|00>, |01>, |10>, |11>` with `|0>` the `σz = +1` state.
pub fn assemble_two(c: &SpinCorrelators) -> Result<XState> {
    let d = [
        0.25 * (1.0 + 2.0 * c.sz + c.zz),
        0.25 * (1.0 - c.zz),
        0.25 * (1.0 - c.zz),
        0.25 * (1.0 - 2.0 * c.sz + c.zz),
    ];
    XState::from_entries(d, re(0.25 * (c.xx - c.yy)), re(0.25 * (c.xx + c.yy)))
}

/// Symmetric difference quotient `(f(x+h) - f(x-h)) / 2h`.
pub fn central_derivative(f: impl Fn(f64) -> f64, x: f64, step: f64) -> f64 {
    (f(x + step) - f(x - step)) / (2.0 * step)
}

/// Default step for [`central_derivative`].
pub const DERIVATIVE_STEP: f64 = 1e-4;
