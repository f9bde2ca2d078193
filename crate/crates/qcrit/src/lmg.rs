//! Lipkin-Meshkov-Glick model in the two-boson basis `|N, n_t⟩` and
//! sudden-quench work statistics.
//!
//! `H = h n_t - (t†s + s†t)² / (4N) + ε S_x`, of dimension `N + 1`. Without
//! the `ε` term the parity `Π = e^{iπ n_t}` splits `H` into two tridiagonal
//! blocks coupling `n_t ↔ n_t ± 2`.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::qstate::entropy_of_weights;
use crate::tridiag::{inverse_iteration, tridiagonal_eigen, TriMode};

/// Work values closer than this are merged into one atom.
pub const MERGE_TOL: f64 = 1e-9;
/// Symmetry-breaking strength used when breaking is requested without a value.
pub const DEFAULT_EPSILON: f64 = 1e-4;
/// Bin width of the work histogram in units of the mean level spacing.
pub const DEFAULT_BIN_SPACINGS: f64 = 4.0;
/// Weight fraction left out on each side when measuring the level spacing.
pub const SPACING_TAIL: f64 = 0.005;
/// Histogram maxima below this fraction of the tallest bin are ignored.
pub const PEAK_FLOOR: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmgParams {
    pub n: usize,
    pub h: f64,
    pub epsilon: f64,
}

impl LmgParams {
    pub fn new(n: usize, h: f64, epsilon: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange { name: "LMG particle number", value: n as f64 });
        }
        if !(h >= 0.0) || !h.is_finite() {
            return Err(Error::OutOfRange { name: "LMG field", value: h });
        }
        if !epsilon.is_finite() {
            return Err(Error::OutOfRange { name: "symmetry-breaking strength", value: epsilon });
        }
        Ok(LmgParams { n, h, epsilon })
    }

    pub fn symmetric(n: usize, h: f64) -> Result<Self> {
        Self::new(n, h, 0.0)
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    fn diag(&self, k: usize) -> f64 {
        let (n, k) = (self.n as f64, k as f64);
        self.h * k - ((k + 1.0) * (n - k) + k * (n - k + 1.0)) / (4.0 * n)
    }

    /// `⟨n_t|H|n_t + 2⟩`.
    fn pair(&self, k: usize) -> f64 {
        let (n, k) = (self.n as f64, k as f64);
        -((k + 1.0) * (n - k) * (k + 2.0) * (n - k - 1.0)).sqrt() / (4.0 * n)
    }

    /// `⟨n_t|H|n_t + 1⟩`.
    fn single(&self, k: usize) -> f64 {
        let (n, k) = (self.n as f64, k as f64);
        0.5 * self.epsilon * ((n - k) * (k + 1.0)).sqrt()
    }
}

/// Dense Hamiltonian in the `|N, n_t⟩` basis.
pub fn lmg_hamiltonian(p: &LmgParams) -> nalgebra::DMatrix<f64> {
    let d = p.dim();
    let mut m = nalgebra::DMatrix::zeros(d, d);
    for k in 0..d {
        m[(k, k)] = p.diag(k);
        if k + 1 < d && p.epsilon != 0.0 {
            m[(k, k + 1)] = p.single(k);
            m[(k + 1, k)] = p.single(k);
        }
        if k + 2 < d {
            m[(k, k + 2)] = p.pair(k);
            m[(k + 2, k)] = p.pair(k);
        }
    }
    m
}

/// `H x` using the banded structure.
pub fn lmg_apply(p: &LmgParams, x: &[f64]) -> Vec<f64> {
    let d = p.dim();
    let mut y: Vec<f64> = (0..d).map(|k| p.diag(k) * x[k]).collect();
    for k in 0..d {
        if k + 1 < d && p.epsilon != 0.0 {
            let v = p.single(k);
            y[k] += v * x[k + 1];
            y[k + 1] += v * x[k];
        }
        if k + 2 < d {
            let v = p.pair(k);
            y[k] += v * x[k + 2];
            y[k + 2] += v * x[k];
        }
    }
    y
}

/// Eigenvalue of `Π = e^{iπ n_t}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LmgParity {
    /// `Π = +1`, even `n_t`.
    Plus,
    /// `Π = -1`, odd `n_t`.
    Minus,
}

impl LmgParity {
    fn offset(self) -> usize {
        match self {
            LmgParity::Plus => 0,
            LmgParity::Minus => 1,
        }
    }
}

/// One parity block as a symmetric tridiagonal matrix over `n_t = offset, offset + 2, ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityBlock {
    pub parity: LmgParity,
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl ParityBlock {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Full-basis index of block component `j`.
    pub fn level(&self, j: usize) -> usize {
        2 * j + self.parity.offset()
    }

    /// Restriction of a full-basis vector to this block.
    pub fn restrict(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim()).map(|j| x[self.level(j)]).collect()
    }

    /// Full-basis vector with the block vector `v` embedded.
    pub fn embed(&self, v: &[f64], dim: usize) -> Vec<f64> {
        let mut x = vec![0.0; dim];
        for (j, &c) in v.iter().enumerate() {
            x[self.level(j)] = c;
        }
        x
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(tridiagonal_eigen(&self.diag, &self.off, TriMode::ValuesOnly)?.values)
    }
}

fn block(p: &LmgParams, parity: LmgParity) -> ParityBlock {
    let levels: Vec<usize> = (parity.offset()..=p.n).step_by(2).collect();
    let diag = levels.iter().map(|&k| p.diag(k)).collect();
    let off = levels.iter().take(levels.len().saturating_sub(1)).map(|&k| p.pair(k)).collect();
    ParityBlock { parity, diag, off }
}

/// `(Π = +1 block, Π = -1 block)`; requires `ε = 0`.
pub fn parity_split(p: &LmgParams) -> Result<(ParityBlock, ParityBlock)> {
    if p.epsilon != 0.0 {
        return Err(Error::Unsupported("parity blocks exist only without symmetry breaking"));
    }
    Ok((block(p, LmgParity::Plus), block(p, LmgParity::Minus)))
}

/// Ascending spectrum, with parity labels when `ε = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LmgSpectrum {
    pub values: Vec<f64>,
    pub parity: Option<Vec<LmgParity>>,
}

pub fn lmg_spectrum(p: &LmgParams) -> Result<LmgSpectrum> {
    if p.epsilon == 0.0 {
        let (plus, minus) = parity_split(p)?;
        let mut all: Vec<(f64, LmgParity)> = Vec::with_capacity(p.dim());
        for b in [&plus, &minus] {
            all.extend(b.eigenvalues()?.into_iter().map(|e| (e, b.parity)));
        }
        all.sort_by(|a, b| a.0.total_cmp(&b.0));
        return Ok(LmgSpectrum {
            values: all.iter().map(|a| a.0).collect(),
            parity: Some(all.iter().map(|a| a.1).collect()),
        });
    }
    let mut values: Vec<f64> = nalgebra::SymmetricEigen::new(lmg_hamiltonian(p)).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(LmgSpectrum { values, parity: None })
}

/// Histogram with uniform bins starting at `start`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub start: f64,
    pub width: f64,
    pub weights: Vec<f64>,
}

impl Histogram {
    pub fn bin_of(&self, x: f64) -> Option<usize> {
        let i = ((x - self.start) / self.width).floor();
        if i < 0.0 || i >= self.weights.len() as f64 {
            return None;
        }
        Some(i as usize)
    }

    pub fn center(&self, i: usize) -> f64 {
        self.start + (i as f64 + 0.5) * self.width
    }

    pub fn argmax(&self) -> usize {
        (0..self.weights.len()).fold(0, |b, i| if self.weights[i] > self.weights[b] { i } else { b })
    }

    /// Interior bins higher than the left neighbor, at least as high as the
    /// right neighbor, and above `floor` times the tallest bin.
    pub fn local_maxima(&self, floor: f64) -> Vec<usize> {
        let w = &self.weights;
        let top = w.iter().copied().fold(0.0, f64::max);
        (1..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i - 1] && w[i] >= w[i + 1] && w[i] > floor * top).collect()
    }
}

/// Level-count histogram with `⌊√count⌉` bins spanning the spectrum.
pub fn dos_histogram(values: &[f64]) -> Result<Histogram> {
    let bins = (values.len() as f64).sqrt().round().max(1.0) as usize;
    dos_histogram_bins(values, bins)
}

pub fn dos_histogram_bins(values: &[f64], bins: usize) -> Result<Histogram> {
    if values.is_empty() || bins == 0 {
        return Err(Error::Unsupported("histogram needs levels and bins"));
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = ((hi - lo) / bins as f64).max(f64::MIN_POSITIVE);
    let mut weights = vec![0.0; bins];
    for &v in values {
        let i = (((v - lo) / width) as usize).min(bins - 1);
        weights[i] += 1.0;
    }
    Ok(Histogram { start: lo, width, weights })
}

/// Initial state families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialSpec {
    /// Lowest eigenstate; a parity tie goes to `Π = +1`.
    Ground,
    /// `k`-th eigenstate in ascending order (`k = 0` is the ground state).
    Excited(usize),
    /// `(|φ+⟩ ± |φ-⟩)/√2` from the lowest state of each parity.
    Fsb(i8),
    /// `(c+|φ+⟩ + c-|φ-⟩)` normalized.
    Superposition(f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct InitialState {
    pub spec: InitialSpec,
    pub params: LmgParams,
    /// Amplitudes in the `|N, n_t⟩` basis.
    pub psi: Vec<f64>,
    /// `⟨ψ|H_i|ψ⟩`.
    pub energy: f64,
}

fn lowest_of_block(b: &ParityBlock) -> Result<(f64, Vec<f64>)> {
    let e = b.eigenvalues()?[0];
    Ok((e, inverse_iteration(&b.diag, &b.off, e)?))
}

/// Builds an initial state of the symmetric Hamiltonian at field `h_i`.
pub fn prepare_initial(spec: InitialSpec, h_i: f64, n: usize) -> Result<InitialState> {
    let p = LmgParams::symmetric(n, h_i)?;
    let (plus, minus) = parity_split(&p)?;
    let dim = p.dim();
    let psi = match spec {
        InitialSpec::Ground => {
            let (ep, vp) = lowest_of_block(&plus)?;
            let (em, vm) = lowest_of_block(&minus)?;
            if em < ep {
                minus.embed(&vm, dim)
            } else {
                plus.embed(&vp, dim)
            }
        }
        InitialSpec::Excited(k) => {
            let spec = lmg_spectrum(&p)?;
            if k >= spec.values.len() {
                return Err(Error::OutOfRange { name: "excitation index", value: k as f64 });
            }
            let e = spec.values[k];
            let b = match spec.parity.as_ref().expect("symmetric spectrum is labelled")[k] {
                LmgParity::Plus => &plus,
                LmgParity::Minus => &minus,
            };
            b.embed(&inverse_iteration(&b.diag, &b.off, e)?, dim)
        }
        InitialSpec::Fsb(_) | InitialSpec::Superposition(_, _) if h_i >= 1.0 => {
            return Err(Error::OutOfRange { name: "field for a symmetry-broken state", value: h_i });
        }
        InitialSpec::Fsb(sign) => {
            let s = if sign < 0 { -1.0 } else { 1.0 };
            combine(&plus, &minus, 1.0, s, dim)?
        }
        InitialSpec::Superposition(cp, cm) => {
            if cp == 0.0 && cm == 0.0 {
                return Err(Error::InvalidState("superposition with zero coefficients"));
            }
            combine(&plus, &minus, cp, cm, dim)?
        }
    };
    let energy = dot(&psi, &lmg_apply(&p, &psi));
    Ok(InitialState { spec, params: p, psi, energy })
}

/// Normalized `cp|φ+⟩ + cm|φ-⟩`, with both phases fixed so that `⟨S_x⟩ ≥ 0` for `cp·cm > 0`.
fn combine(plus: &ParityBlock, minus: &ParityBlock, cp: f64, cm: f64, dim: usize) -> Result<Vec<f64>> {
    let vp = plus.embed(&lowest_of_block(plus)?.1, dim);
    let mut vm = minus.embed(&lowest_of_block(minus)?.1, dim);
    if sx_cross(&vp, &vm) < 0.0 {
        vm.iter_mut().for_each(|v| *v = -*v);
    }
    let norm = (cp * cp + cm * cm).sqrt();
    Ok(vp.iter().zip(&vm).map(|(a, b)| (cp * a + cm * b) / norm).collect())
}

/// `⟨a|S_x|b⟩` with `S_x = (t†s + s†t)/2`.
fn sx_cross(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() - 1;
    let mut s = 0.0;
    for k in 0..n {
        let m = 0.5 * (((n - k) * (k + 1)) as f64).sqrt();
        s += m * (a[k] * b[k + 1] + a[k + 1] * b[k]);
    }
    s
}

/// `⟨ψ|S_x|ψ⟩`.
pub fn sx_expectation(psi: &[f64]) -> f64 {
    sx_cross(psi, psi)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Overlaps of an initial state with the eigenbasis of the final Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct QuenchResult {
    pub h_i: f64,
    pub h_f: f64,
    pub epsilon: f64,
    pub spec: InitialSpec,
    /// `E_n = ⟨ψ|H_i|ψ⟩`.
    pub initial_energy: f64,
    /// Final energies `E_m`, ascending.
    pub energies: Vec<f64>,
    /// `p_m = |⟨φ_m|ψ⟩|²`.
    pub weights: Vec<f64>,
}

/// Sudden quench `h_i → h_f` with symmetry-breaking strength `epsilon` in
/// the final Hamiltonian. Without symmetry breaking only the parity blocks the
/// initial state occupies contribute atoms.
pub fn quench(initial: &InitialState, h_f: f64, epsilon: f64) -> Result<QuenchResult> {
    let pf = LmgParams::new(initial.params.n, h_f, epsilon)?;
    let mut atoms: Vec<(f64, f64)> = Vec::with_capacity(pf.dim());
    if epsilon == 0.0 {
        let (plus, minus) = parity_split(&pf)?;
        for b in [&plus, &minus] {
            let part = b.restrict(&initial.psi);
            if part.iter().all(|&c| c == 0.0) {
                continue;
            }
            let t = tridiagonal_eigen(&b.diag, &b.off, TriMode::Project(core::slice::from_ref(&part)))?;
            atoms.extend(t.values.iter().zip(&t.projections[0]).map(|(&e, &c)| (e, c * c)));
        }
    } else {
        let eig = nalgebra::SymmetricEigen::new(lmg_hamiltonian(&pf));
        let psi = nalgebra::DVector::from_column_slice(&initial.psi);
        for (j, &e) in eig.eigenvalues.iter().enumerate() {
            let c = eig.eigenvectors.column(j).dot(&psi);
            atoms.push((e, c * c));
        }
    }
    atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(QuenchResult {
        h_i: initial.params.h,
        h_f,
        epsilon,
        spec: initial.spec,
        initial_energy: initial.energy,
        energies: atoms.iter().map(|a| a.0).collect(),
        weights: atoms.iter().map(|a| a.1).collect(),
    })
}

/// `L(t) = |Σ_m p_m e^{-i E_m t}|²` on the given times.
pub fn survival_probability(r: &QuenchResult, times: &[f64]) -> Vec<f64> {
    times
        .iter()
        .map(|&t| {
            let chi: Complex64 = r
                .energies
                .iter()
                .zip(&r.weights)
                .map(|(&e, &p)| Complex64::from_polar(p, -e * t))
                .sum();
            chi.norm_sqr().min(1.0)
        })
        .collect()
}

/// `count` equally spaced times on `[0, t_max]`.
pub fn time_grid(t_max: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![0.0; count];
    }
    (0..count).map(|i| t_max * i as f64 / (count - 1) as f64).collect()
}

/// Atomic work distribution with sorted support.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkDistribution {
    pub work: Vec<f64>,
    pub prob: Vec<f64>,
}

impl WorkDistribution {
    pub fn total(&self) -> f64 {
        self.prob.iter().sum()
    }
}

/// `W_m = E_m - E_n` with atoms closer than [`MERGE_TOL`] merged.
pub fn work_distribution(r: &QuenchResult) -> WorkDistribution {
    let mut work: Vec<f64> = Vec::with_capacity(r.energies.len());
    let mut prob: Vec<f64> = Vec::with_capacity(r.energies.len());
    for (&e, &p) in r.energies.iter().zip(&r.weights) {
        let w = e - r.initial_energy;
        match work.last() {
            Some(&last) if w - last <= MERGE_TOL => *prob.last_mut().expect("paired") += p,
            _ => {
                work.push(w);
                prob.push(p);
            }
        }
    }
    WorkDistribution { work, prob }
}

/// `⟨W^l⟩ = Σ_m p_m (E_m - E_n)^l`.
pub fn work_moment(r: &QuenchResult, l: u32) -> f64 {
    r.energies.iter().zip(&r.weights).map(|(&e, &p)| p * (e - r.initial_energy).powi(l as i32)).sum()
}

/// `⟨ψ|(H_f - E_n)^l|ψ⟩` evaluated directly from the Hamiltonian.
pub fn work_moment_direct(initial: &InitialState, h_f: f64, epsilon: f64, l: u32) -> Result<f64> {
    let pf = LmgParams::new(initial.params.n, h_f, epsilon)?;
    let shifted = |x: &[f64]| -> Vec<f64> {
        let mut y = lmg_apply(&pf, x);
        y.iter_mut().zip(x).for_each(|(a, b)| *a -= initial.energy * b);
        y
    };
    let half = l / 2;
    let mut v = initial.psi.clone();
    for _ in 0..half {
        v = shifted(&v);
    }
    Ok(if l % 2 == 0 { dot(&v, &v) } else { dot(&v, &shifted(&v)) })
}

/// Shannon entropy of the work distribution, in bits.
pub fn diagonal_entropy(d: &WorkDistribution) -> f64 {
    entropy_of_weights(&d.prob)
}

/// Mean level spacing of the atoms spanning the central weight window
/// `[SPACING_TAIL, 1 - SPACING_TAIL]`, and the index of the window's lower edge.
pub fn central_spacing(d: &WorkDistribution) -> Result<(f64, usize)> {
    let mut acc = 0.0;
    let (mut lo, mut hi) = (None, None);
    for (i, &p) in d.prob.iter().enumerate() {
        acc += p;
        if lo.is_none() && acc >= SPACING_TAIL {
            lo = Some(i);
        }
        if hi.is_none() && acc >= 1.0 - SPACING_TAIL {
            hi = Some(i);
        }
    }
    match (lo, hi) {
        (Some(lo), Some(hi)) if hi > lo => Ok(((d.work[hi] - d.work[lo]) / (hi - lo) as f64, lo)),
        _ => Err(Error::Unsupported("work distribution too narrow to define a level spacing")),
    }
}

/// Histogram of `P_W` with bins `spacings` mean level spacings wide. Bin
/// edges sit half a spacing below the lower edge of the central weight window,
/// so regularly spaced atoms fall between edges rather than on them.
pub fn bin_work(d: &WorkDistribution, spacings: f64) -> Result<Histogram> {
    let (spacing, lo) = central_spacing(d)?;
    let width = spacings * spacing;
    let anchor = d.work[lo] - 0.5 * spacing;
    let first = ((d.work[0] - anchor) / width).floor();
    let last = ((d.work[d.work.len() - 1] - anchor) / width).floor();
    let mut weights = vec![0.0; (last - first) as usize + 1];
    for (&w, &p) in d.work.iter().zip(&d.prob) {
        let i = ((w - anchor) / width).floor() - first;
        weights[i as usize] += p;
    }
    Ok(Histogram { start: anchor + first * width, width, weights })
}

/// Mean-field energy per spin of a spin-coherent state, without the constant `hN/2`.
pub fn semiclassical_energy(alpha: f64, h: f64) -> f64 {
    let a2 = alpha * alpha;
    ((a2 * a2 - 1.0) * h - 2.0 * a2) / ((1.0 + a2) * (1.0 + a2))
}

/// Minimizers of [`semiclassical_energy`].
pub fn alpha_gs(h: f64) -> Vec<f64> {
    if h > 1.0 {
        vec![0.0]
    } else {
        let a = ((1.0 - h) / (1.0 + h)).sqrt();
        if a == 0.0 {
            vec![0.0]
        } else {
            vec![-a, a]
        }
    }
}

/// Final field at which the quenched ground state reaches the critical energy.
pub fn critical_quench(h_i: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&h_i) {
        return Err(Error::OutOfRange { name: "initial field for the critical quench", value: h_i });
    }
    Ok(0.5 * (1.0 + h_i))
}

/// Converts a mean-field energy per spin to the boson-form energy of `N` spins.
pub fn boson_energy(n: usize, h: f64, semiclassical: f64) -> f64 {
    0.5 * n as f64 * (semiclassical + h)
}
