//! Quantum-information diagnostics of critical spin chains, the
//! Lipkin-Meshkov-Glick model and single-mode bosonic states.
//!
//! The crate is `no_std` and needs only `alloc`. Matrices are
//! [`nalgebra`] complex matrices; qubit `0` is the most significant bit of a
//! basis index and `|0⟩` is the `σz = +1` state.
//!
//! Floating-point math goes through [`num_traits::Float`] (backed by `libm`).
//! When `std` is linked elsewhere in the build its inherent methods take
//! precedence, which is why those imports carry `allow(unused_imports)`.

#![no_std]

extern crate alloc;

pub mod correlations;
pub mod cv;
pub mod discrete;
pub mod error;
pub mod fermion;
pub mod lanczos;
pub mod linalg;
pub mod lmg;
pub mod qstate;
pub mod quad;
pub mod tridiag;
pub mod xxz;

pub use error::{Error, Result};
