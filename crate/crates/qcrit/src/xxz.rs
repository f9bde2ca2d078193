//! Periodic XXZ ring `H = ¼ Σ (σxσx + σyσy + Δ σzσz)` by exact
//! diagonalization in fixed-magnetization sectors.
//!
//! Bit `j` of a basis label is site `j`; a set bit is a down spin.

use alloc::vec;
use alloc::vec::Vec;

use crate::discrete::{dwf_two_site_symmetric, PhasePoint};
use crate::error::{Error, Result};
use crate::fermion::SpinCorrelators;
use crate::lanczos::{lowest_eigenpair, LanczosOptions};

pub const MAX_SITES: usize = 18;
/// Energies closer than this (relative to `N`) count as degenerate across sectors.
pub const SECTOR_TIE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XxzParams {
    pub n: usize,
    pub delta: f64,
}

impl XxzParams {
    pub fn new(n: usize, delta: f64) -> Result<Self> {
        if n % 2 != 0 || !(2..=MAX_SITES).contains(&n) {
            return Err(Error::OutOfRange { name: "XXZ ring length", value: n as f64 });
        }
        if !delta.is_finite() {
            return Err(Error::OutOfRange { name: "anisotropy", value: delta });
        }
        Ok(XxzParams { n, delta })
    }
}

/// Basis of the sector with `down` flipped spins.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    pub n: usize,
    pub down: usize,
    states: Vec<u32>,
    index: Vec<u32>,
}

impl SectorBasis {
    pub fn new(n: usize, down: usize) -> Result<Self> {
        if n > MAX_SITES || down > n {
            return Err(Error::OutOfRange { name: "sector", value: down as f64 });
        }
        let full = 1usize << n;
        let mut index = vec![u32::MAX; full];
        let mut states = Vec::new();
        for s in 0..full as u32 {
            if s.count_ones() as usize == down {
                index[s as usize] = states.len() as u32;
                states.push(s);
            }
        }
        Ok(SectorBasis { n, down, states, index })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[u32] {
        &self.states
    }

    pub fn index_of(&self, s: u32) -> Option<usize> {
        match self.index.get(s as usize) {
            Some(&i) if i != u32::MAX => Some(i as usize),
            _ => None,
        }
    }

    /// Total `Σ σz` of the sector.
    pub fn magnetization(&self) -> i64 {
        self.n as i64 - 2 * self.down as i64
    }

    /// `y = H x` restricted to the sector.
    pub fn apply(&self, delta: f64, x: &[f64], y: &mut [f64]) {
        let n = self.n;
        for (i, &s) in self.states.iter().enumerate() {
            let mut diag = 0.0;
            let mut acc = 0.0;
            for j in 0..n {
                let k = (j + 1) % n;
                let a = (s >> j) & 1;
                let b = (s >> k) & 1;
                if a == b {
                    diag += 0.25 * delta;
                } else {
                    diag -= 0.25 * delta;
                    let t = s ^ (1 << j) ^ (1 << k);
                    acc += 0.5 * x[self.index[t as usize] as usize];
                }
            }
            y[i] = diag * x[i] + acc;
        }
    }

    /// Dense sector Hamiltonian, for small rings and tests.
    pub fn dense(&self, delta: f64) -> Vec<Vec<f64>> {
        let d = self.dim();
        let mut cols = Vec::with_capacity(d);
        let mut e = vec![0.0; d];
        let mut y = vec![0.0; d];
        for i in 0..d {
            e[i] = 1.0;
            self.apply(delta, &e, &mut y);
            cols.push(y.clone());
            e[i] = 0.0;
        }
        cols
    }
}

#[derive(Debug, Clone)]
pub struct XxzGroundState {
    pub params: XxzParams,
    pub energy: f64,
    /// Number of down spins of the reported sector.
    pub down: usize,
    /// Energies of the sectors `down = N/2 ..= N`.
    pub sector_energies: Vec<f64>,
    pub basis: SectorBasis,
    pub vector: Vec<f64>,
}

impl XxzGroundState {
    pub fn magnetization(&self) -> f64 {
        self.basis.magnetization() as f64 / self.params.n as f64
    }

    /// Correlators of the bond `(i, i+1)`. `⟨σz⟩` is the sector magnetization
    /// per site, which is what a translation-invariant ground state carries on
    /// every site.
    pub fn bond_correlators(&self, i: usize) -> SpinCorrelators {
        let mut c = bond_correlators(&self.basis, &self.vector, i);
        c.sz = self.magnetization();
        c
    }
}

fn sector_ground(basis: &SectorBasis, delta: f64) -> Result<(f64, Vec<f64>)> {
    if basis.dim() <= 64 {
        let h = basis.dense(delta);
        let d = basis.dim();
        let m = nalgebra::DMatrix::from_fn(d, d, |i, j| h[j][i]);
        let eig = nalgebra::SymmetricEigen::new(m);
        let (k, &e) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty sector");
        return Ok((e, eig.eigenvectors.column(k).iter().copied().collect()));
    }
    let pair = lowest_eigenpair(basis.dim(), |x, y| basis.apply(delta, x, y), LanczosOptions::default())?;
    Ok((pair.value, pair.vector))
}

/// Ground state over all magnetization sectors. Sectors with `Sz < 0` mirror
/// those with `Sz > 0` and are not searched; ties go to the smallest `|Sz|`.
pub fn xxz_ground_state(params: XxzParams) -> Result<XxzGroundState> {
    let n = params.n;
    let mut best: Option<(f64, SectorBasis, Vec<f64>)> = None;
    let mut sector_energies = Vec::with_capacity(n / 2 + 1);
    for down in n / 2..=n {
        let basis = SectorBasis::new(n, down)?;
        let (e, v) = sector_ground(&basis, params.delta)?;
        sector_energies.push(e);
        let better = match &best {
            None => true,
            Some((eb, _, _)) => e < eb - SECTOR_TIE_TOL * n as f64,
        };
        if better {
            best = Some((e, basis, v));
        }
    }
    let (energy, basis, vector) = best.expect("at least one sector");
    Ok(XxzGroundState { params, energy, down: basis.down, sector_energies, basis, vector })
}

/// Ground state of the zero-magnetization sector alone.
pub fn xxz_zero_sector_ground_state(params: XxzParams) -> Result<XxzGroundState> {
    let basis = SectorBasis::new(params.n, params.n / 2)?;
    let (energy, vector) = sector_ground(&basis, params.delta)?;
    Ok(XxzGroundState { params, energy, down: params.n / 2, sector_energies: vec![energy], basis, vector })
}

/// `⟨σz⟩`, `⟨σxσx⟩`, `⟨σyσy⟩`, `⟨σzσz⟩` on the bond `(i, i+1)` of a real sector state.
pub fn bond_correlators(basis: &SectorBasis, v: &[f64], i: usize) -> SpinCorrelators {
    let n = basis.n;
    let j = (i + 1) % n;
    let (mut sz, mut zz, mut flip) = (0.0, 0.0, 0.0);
    for (idx, &s) in basis.states.iter().enumerate() {
        let w = v[idx] * v[idx];
        let a = (s >> i) & 1;
        let b = (s >> j) & 1;
        sz += if a == 0 { w } else { -w };
        if a == b {
            zz += w;
        } else {
            zz -= w;
            let t = s ^ (1 << i) ^ (1 << j);
            flip += v[idx] * v[basis.index[t as usize] as usize];
        }
    }
    // σxσx and σyσy both reduce to the spin-flip term on antiparallel pairs
    SpinCorrelators::new(1, sz, flip, flip, zz)
}

/// Correlators of the equal mixture of the two fully polarized states.
pub fn polarized_mixture_correlators() -> SpinCorrelators {
    SpinCorrelators::new(1, 0.0, 0.0, 0.0, 1.0)
}

/// Nearest-neighbor correlators used by the phase-space scans: the
/// zero-magnetization ground state for `Δ ≥ -1`, the polarized mixture below.
pub fn xxz_nn_correlators(params: XxzParams) -> Result<SpinCorrelators> {
    if params.delta < -1.0 {
        return Ok(polarized_mixture_correlators());
    }
    Ok(xxz_zero_sector_ground_state(params)?.bond_correlators(0))
}

/// The three characteristic phase-point classes of the two-site DWF.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DwfClass {
    /// Depends on `1 + 2xx + zz`.
    Corner,
    /// Depends on `1 - 2xx + zz`.
    Edge,
    /// Depends on `1 - zz` alone.
    Rest,
}

/// Class of a two-qubit phase point for a state with `xx = yy`, `sz = 0`.
pub fn dwf_class(pt: &PhasePoint) -> DwfClass {
    let dx = pt.x_bit(0) ^ pt.x_bit(1);
    let dp = pt.p_bit(0) ^ pt.p_bit(1);
    match (dx, dp) {
        (0, 0) => DwfClass::Corner,
        (0, _) => DwfClass::Edge,
        _ => DwfClass::Rest,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct XxzScanRow {
    pub delta: f64,
    pub correlators: SpinCorrelators,
    pub corner: f64,
    pub edge: f64,
    pub rest: f64,
    pub w_max: f64,
    pub w_min: f64,
}

/// DWF classes and extremes at one anisotropy.
pub fn xxz_dwf_row(n: usize, delta: f64) -> Result<XxzScanRow> {
    let c = xxz_nn_correlators(XxzParams::new(n, delta)?)?;
    let at = |x: u32, p: u32| dwf_two_site_symmetric(&c, &PhasePoint { n: 2, x, p });
    let corner = at(0b00, 0b00)?;
    let edge = at(0b00, 0b01)?;
    let rest = at(0b01, 0b00)?;
    Ok(XxzScanRow {
        delta,
        correlators: c,
        corner,
        edge,
        rest,
        w_max: corner.max(edge).max(rest),
        w_min: corner.min(edge).min(rest),
    })
}

/// Sequential scan over a list of anisotropies.
pub fn xxz_dwf_scan(n: usize, deltas: &[f64]) -> Result<Vec<XxzScanRow>> {
    deltas.iter().map(|&d| xxz_dwf_row(n, d)).collect()
}

/// `Δ_i = start + i·step` for `i = 0..count`, computed from the integer index.
pub fn delta_grid(start: f64, step: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| start + step * i as f64).collect()
}
