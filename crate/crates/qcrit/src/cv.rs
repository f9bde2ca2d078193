//! Wigner functions of single-mode states in a truncated Fock basis.
//!
//! Conventions: `ħ = 1`, `α = (x + i p)/√2`, and `∫ W d²α = 1` with
//! `d²α = dx dp / 2`. The Wigner function is the expectation of the displaced
//! parity, `W(α) = (2/π) Tr[ρ D(2α) Π]`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Largest norm deficit accepted for a truncated state.
pub const NORM_DEFICIT_TOL: f64 = 1e-8;
pub const DEFAULT_CUTOFF: usize = 60;
const MAX_CUTOFF: usize = 1920;

/// Pure state `Σ_n a_n |n⟩`, `n = 0..=cutoff`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    amps: Vec<Complex64>,
}

impl FockState {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        let n: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if amps.is_empty() || (n.sqrt() - 1.0).abs() > 1e-12 {
            return Err(Error::OutOfRange { name: "Fock state norm", value: n.sqrt() });
        }
        Ok(FockState { amps })
    }

    pub fn cutoff(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// `W(0) = (2/π) Σ (-1)^n |a_n|²`.
    pub fn wigner_at_origin(&self) -> f64 {
        let s: f64 = self.amps.iter().enumerate().map(|(n, a)| if n % 2 == 0 { 1.0 } else { -1.0 } * a.norm_sqr()).sum();
        2.0 / PI * s
    }
}

/// Single-mode state families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CvKind {
    /// `(|n1⟩ + |n2⟩)/√2`.
    FockSuperposition(usize, usize),
    /// `(|β⟩ + |-β⟩)` normalized.
    Cat(Complex64),
    /// Glauber state `|β⟩`.
    Coherent(Complex64),
    /// Squeezed vacuum `S(r)|0⟩`.
    Squeezed(f64),
}

fn coherent_amps(beta: Complex64, cutoff: usize) -> Vec<Complex64> {
    let mut a = vec![Complex64::new(0.0, 0.0); cutoff + 1];
    a[0] = Complex64::new((-0.5 * beta.norm_sqr()).exp(), 0.0);
    for n in 1..=cutoff {
        a[n] = a[n - 1] * beta / (n as f64).sqrt();
    }
    a
}

/// Truncated amplitudes of the exactly normalized state, plus its norm deficit.
fn raw_amplitudes(kind: CvKind, cutoff: usize) -> Result<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    Ok(match kind {
        CvKind::FockSuperposition(n1, n2) => {
            if n1 == n2 {
                return Err(Error::InvalidState("Fock superposition needs two distinct levels"));
            }
            let mut a = vec![zero; cutoff + 1];
            let w = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
            for n in [n1, n2] {
                if n <= cutoff {
                    a[n] = w;
                }
            }
            a
        }
        CvKind::Coherent(beta) => coherent_amps(beta, cutoff),
        CvKind::Cat(beta) => {
            let norm = (2.0 * (1.0 + (-2.0 * beta.norm_sqr()).exp())).sqrt();
            coherent_amps(beta, cutoff)
                .into_iter()
                .enumerate()
                .map(|(n, c)| if n % 2 == 0 { c * (2.0 / norm) } else { zero })
                .collect()
        }
        CvKind::Squeezed(r) => {
            if !r.is_finite() {
                return Err(Error::OutOfRange { name: "squeezing", value: r });
            }
            let t = -r.tanh();
            let mut a = vec![zero; cutoff + 1];
            a[0] = Complex64::new(1.0 / r.cosh().sqrt(), 0.0);
            let mut n = 2;
            while n <= cutoff {
                let nf = n as f64;
                a[n] = a[n - 2] * (t * (nf * (nf - 1.0)).sqrt() / nf);
                n += 2;
            }
            a
        }
    })
}

/// State truncated at `cutoff`; fails if the discarded weight exceeds the tolerance.
pub fn cv_state(kind: CvKind, cutoff: usize) -> Result<FockState> {
    let amps = raw_amplitudes(kind, cutoff)?;
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if 1.0 - norm > NORM_DEFICIT_TOL {
        return Err(Error::OutOfRange { name: "truncation norm deficit", value: 1.0 - norm });
    }
    let s = norm.sqrt();
    Ok(FockState { amps: amps.into_iter().map(|a| a / s).collect() })
}

/// Like [`cv_state`] but doubles the cutoff until the deficit is acceptable.
pub fn cv_state_auto(kind: CvKind, cutoff: usize) -> Result<FockState> {
    let mut c = cutoff.max(1);
    loop {
        match cv_state(kind, c) {
            Err(Error::OutOfRange { name: "truncation norm deficit", .. }) if c < MAX_CUTOFF => c *= 2,
            other => return other,
        }
    }
}

/// Rectangular grid in the `(x, p)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub nx: usize,
    pub np: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { x_min: -6.0, x_max: 6.0, p_min: -6.0, p_max: 6.0, nx: 241, np: 241 }
    }
}

impl GridSpec {
    pub fn xs(&self) -> Vec<f64> {
        linspace(self.x_min, self.x_max, self.nx)
    }

    pub fn ps(&self) -> Vec<f64> {
        linspace(self.p_min, self.p_max, self.np)
    }

    /// Area element `d²α = dx dp / 2`.
    pub fn cell(&self) -> f64 {
        let dx = (self.x_max - self.x_min) / (self.nx - 1) as f64;
        let dp = (self.p_max - self.p_min) / (self.np - 1) as f64;
        0.5 * dx * dp
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// Wigner function sampled on a grid; `values[ip * nx + ix]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    pub spec: GridSpec,
    pub values: Vec<f64>,
}

impl WignerGrid {
    pub fn at(&self, ix: usize, ip: usize) -> f64 {
        self.values[ip * self.spec.nx + ix]
    }

    /// Riemann sum of `W d²α`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.spec.cell()
    }

    pub fn abs_integral(&self) -> f64 {
        self.values.iter().map(|w| w.abs()).sum::<f64>() * self.spec.cell()
    }
}

/// `W(α)` at a single phase-space point.
pub fn wigner_at(state: &FockState, alpha: Complex64) -> f64 {
    let a = &state.amps;
    let nmax = a.len();
    let beta = alpha * 2.0;
    let x = beta.norm_sqr();
    let rb = beta.norm();
    let phase = if rb > 0.0 { beta / rb } else { Complex64::new(1.0, 0.0) };
    let mut total = 0.0;
    let mut phase_d = Complex64::new(1.0, 0.0);
    // log of |β|^d / √d! built up incrementally
    let mut log_pref = -0.5 * x;
    for d in 0..nmax {
        if d > 0 {
            phase_d *= phase;
            log_pref += if rb > 0.0 { rb.ln() } else { f64::NEG_INFINITY } - 0.5 * (d as f64).ln();
        }
        if log_pref == f64::NEG_INFINITY {
            break;
        }
        let df = d as f64;
        // Q_j = √(j!/(j+d)!) |β|^d e^{-x/2} L_j^{(d)}(x), recurrence in j
        let mut q_prev = 0.0;
        let mut q = log_pref.exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..nmax - d {
            let term = a[j] * a[j + d].conj();
            if term.norm_sqr() > 0.0 {
                let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                acc += term * (s * q);
            }
            let jf = j as f64;
            let r1 = ((jf + 1.0) / (jf + df + 1.0)).sqrt();
            let next = if j == 0 {
                (1.0 + df - x) * q * r1
            } else {
                let r0 = (jf / (jf + df)).sqrt();
                ((2.0 * jf + 1.0 + df - x) * q * r1 - (jf + df) * q_prev * r1 * r0) / (jf + 1.0)
            };
            q_prev = q;
            q = next;
        }
        let contrib = acc * phase_d;
        total += if d == 0 { contrib.re } else { 2.0 * contrib.re };
    }
    2.0 / PI * total
}

/// Samples the Wigner function over the grid, rows of constant `p`.
pub fn wigner_grid(state: &FockState, spec: &GridSpec) -> Result<WignerGrid> {
    if spec.nx < 2 || spec.np < 2 || !(spec.x_max > spec.x_min) || !(spec.p_max > spec.p_min) {
        return Err(Error::Unsupported("grid needs at least two points per axis and a positive extent"));
    }
    let xs = spec.xs();
    let ps = spec.ps();
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let mut values = Vec::with_capacity(xs.len() * ps.len());
    for &p in &ps {
        for &x in &xs {
            values.push(wigner_at(state, Complex64::new(x * s, p * s)));
        }
    }
    Ok(WignerGrid { spec: *spec, values })
}

/// Row `ip` of the grid, for callers that parallelize over rows.
pub fn wigner_row(state: &FockState, spec: &GridSpec, ip: usize) -> Vec<f64> {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let p = spec.ps()[ip];
    spec.xs().iter().map(|&x| wigner_at(state, Complex64::new(x * s, p * s))).collect()
}

/// Negative volume `(∫|W| - ∫W)/2`.
pub fn negativity_volume(grid: &WignerGrid) -> f64 {
    (0.5 * (grid.abs_integral() - grid.integral())).max(0.0)
}
