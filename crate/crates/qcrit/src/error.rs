use thiserror::Error;

/// Failure modes shared by every routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |H - H^dagger| = {defect:.3e}")]
    NonHermitian { defect: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid state: {0}")]
    InvalidState(&'static str),
    #[error("negative eigenvalue {value:.3e} below clamp tolerance {tol:.1e}")]
    NegativeEigenvalue { value: f64, tol: f64 },
    #[error("trace {trace:.12} differs from 1")]
    BadTrace { trace: f64 },
    #[error("{name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("not an X-state: off-pattern magnitude {defect:.3e}")]
    NotXState { defect: f64 },
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("no convergence: {0}")]
    NoConvergence(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
