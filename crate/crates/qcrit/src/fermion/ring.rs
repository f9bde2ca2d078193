//! Anisotropic XY chain on a periodic ring, solved through Jordan-Wigner
//! fermions and a Bogoliubov transformation in each parity sector.
//!
//! The Hamiltonian is written in the generic form
//! `H = Σ_j (Jx σˣ_j σˣ_{j+1} + Jy σʸ_j σʸ_{j+1}) - hz Σ_j σᶻ_j`.
//! With Majoranas `a_j = c†_j + c_j`, `b_j = i(c_j - c†_j)` the ground state
//! is fixed by the contraction `G(d) = i⟨b_j a_{j+d}⟩`, from which
//! `⟨σᶻ⟩ = G(0)`, `⟨σˣσˣ⟩_r = det[G(q-p+1)]`, `⟨σʸσʸ⟩_r = det[G(p-q-1)]`
//! and `⟨σᶻσᶻ⟩_r = G(0)² - G(r)G(-r)`.


use alloc::vec::Vec;
use core::f64::consts::PI;
use nalgebra::DMatrix;
#[allow(unused_imports)]
use num_traits::Float;

use super::{ChainParams, SpinCorrelators};
use crate::error::{Error, Result};

/// Couplings of the generic XY form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Couplings {
    pub jx: f64,
    pub jy: f64,
    pub hz: f64,
}

impl Couplings {
    /// `H = Σ (SˣSˣ + SʸSʸ) - h Σ Sᶻ` with spin-½ operators `S = σ/2`.
    pub fn xx_field(h: f64) -> Self {
        Couplings { jx: 0.25, jy: 0.25, hz: 0.5 * h }
    }

    /// `H = -Σ [λ/2 ((1+γ) σˣσˣ + (1-γ) σʸσʸ) + σᶻ]`.
    pub fn xy(gamma: f64, lambda: f64) -> Self {
        Couplings { jx: -0.5 * lambda * (1.0 + gamma), jy: -0.5 * lambda * (1.0 - gamma), hz: 1.0 }
    }
}

/// Jordan-Wigner fermion parity of the chosen ground state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Ground state of the ring described by its Majorana contraction table.
#[derive(Debug, Clone)]
pub struct RingGroundState {
    pub n: usize,
    pub couplings: Couplings,
    pub parity: Parity,
    /// Ground energy of the chosen sector.
    pub energy: f64,
    /// Ground energy of the other sector.
    pub other_energy: f64,
    max_sep: usize,
    /// `g[d + max_sep + 1] = G(d)` for `|d| <= max_sep + 1`.
    g: Vec<f64>,
}

struct Sector {
    energy: f64,
    /// `(k, n_k, s_k)` for every momentum of the sector.
    modes: Vec<(f64, f64, f64)>,
}

fn sector(n: usize, c: &Couplings, parity: Parity) -> Sector {
    let shift = if parity == Parity::Even { 0.5 } else { 0.0 };
    let mut energy = c.hz * n as f64;
    let mut modes = Vec::with_capacity(n);
    let mut unpaired: Vec<(f64, f64)> = Vec::new();
    for j in 0..n {
        let k = 2.0 * PI * (j as f64 + shift) / n as f64;
        let xi = 2.0 * (c.jx + c.jy) * k.cos() - 2.0 * c.hz;
        let self_paired = parity == Parity::Odd && (j == 0 || 2 * j == n);
        if self_paired {
            unpaired.push((k, xi));
            continue;
        }
        let delta = 2.0 * (c.jx - c.jy) * k.sin();
        let e = xi.hypot(delta);
        let (nk, sk) = if e > 0.0 { (0.5 * (1.0 - xi / e), (c.jx - c.jy) * k.sin() / e) } else { (0.0, 0.0) };
        // each (k, -k) pair contributes ξ - E once
        energy += 0.5 * (xi - e);
        modes.push((k, nk, sk));
    }
    if parity == Parity::Odd {
        // exactly one of the k = 0, π modes is filled
        let (fill, _) = unpaired
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
            .expect("two unpaired modes");
        for (i, &(k, xi)) in unpaired.iter().enumerate() {
            let occ = if i == fill { 1.0 } else { 0.0 };
            energy += occ * xi;
            modes.push((k, occ, 0.0));
        }
    }
    Sector { energy, modes }
}

impl RingGroundState {
    /// Solves the ring of `n` sites; correlators are available up to `max_sep`.
    pub fn new(n: usize, couplings: Couplings, max_sep: usize) -> Result<Self> {
        if n < 4 || n % 2 != 0 {
            return Err(Error::OutOfRange { name: "ring size", value: n as f64 });
        }
        if max_sep == 0 || 2 * max_sep > n {
            return Err(Error::OutOfRange { name: "separation", value: max_sep as f64 });
        }
        let even = sector(n, &couplings, Parity::Even);
        let odd = sector(n, &couplings, Parity::Odd);
        let scale = (couplings.jx.abs() + couplings.jy.abs() + couplings.hz.abs()) * n as f64;
        let tie = 1e-12 * scale.max(1.0);
        let (chosen, parity, other) = if odd.energy < even.energy - tie {
            (odd, Parity::Odd, even.energy)
        } else {
            (even, Parity::Even, odd.energy)
        };
        let span = max_sep + 1;
        let inv_n = 1.0 / n as f64;
        let g = (0..=2 * span)
            .map(|idx| {
                let d = idx as f64 - span as f64;
                let (mut cs, mut ss) = (0.0, 0.0);
                for &(k, nk, sk) in &chosen.modes {
                    cs += (k * d).cos() * nk;
                    ss += (k * d).sin() * sk;
                }
                let delta = if idx == span { 1.0 } else { 0.0 };
                2.0 * cs * inv_n - 2.0 * ss * inv_n - delta
            })
            .collect();
        Ok(RingGroundState { n, couplings, parity, energy: chosen.energy, other_energy: other, max_sep, g })
    }

    /// Contraction `G(d)` for `|d| <= max_sep + 1`.
    pub fn contraction(&self, d: isize) -> f64 {
        let span = (self.max_sep + 1) as isize;
        assert!(d.abs() <= span, "separation {d} beyond precomputed range");
        self.g[(d + span) as usize]
    }

    pub fn magnetization(&self) -> f64 {
        self.contraction(0)
    }

    /// Correlators at separation `m`.
    pub fn correlators(&self, m: usize) -> Result<SpinCorrelators> {
        if m == 0 || m > self.max_sep {
            return Err(Error::OutOfRange { name: "separation", value: m as f64 });
        }
        let r = m as isize;
        let toeplitz = |f: &dyn Fn(isize, isize) -> isize| {
            DMatrix::<f64>::from_fn(m, m, |p, q| self.contraction(f(p as isize, q as isize))).determinant()
        };
        let xx = toeplitz(&|p, q| q - p + 1);
        let yy = toeplitz(&|p, q| p - q - 1);
        let g0 = self.contraction(0);
        let zz = g0 * g0 - self.contraction(r) * self.contraction(-r);
        Ok(SpinCorrelators::new(m, g0, xx, yy, zz))
    }
}

/// XY-chain correlators on an `n`-site ring at `T = 0`, with
/// `params.field = λ` and `params.gamma = γ`.
pub fn xy_ring_correlators(n: usize, params: &ChainParams, m: usize) -> Result<SpinCorrelators> {
    if params.temperature != 0.0 {
        return Err(Error::Unsupported("finite-temperature ring correlators"));
    }
    if n < 4 * m {
        return Err(Error::OutOfRange { name: "ring size for separation", value: n as f64 });
    }
    RingGroundState::new(n, Couplings::xy(params.gamma, params.field), m)?.correlators(m)
}

/// Correlators for a list of separations from one solve.
pub fn ring_correlators_many(n: usize, couplings: Couplings, ms: &[usize]) -> Result<Vec<SpinCorrelators>> {
    let max = ms.iter().copied().max().unwrap_or(1);
    let gs = RingGroundState::new(n, couplings, max)?;
    ms.iter().map(|&m| gs.correlators(m)).collect()
}

/// Factorization field `λ_f = 1/√(1-γ²)`.
pub fn factorizing_field(gamma: f64) -> f64 {
    1.0 / (1.0 - gamma * gamma).sqrt()
}

