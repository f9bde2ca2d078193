//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness. The process fails when the set of
//! failing criteria differs from [`KNOWN_FAILURES`], so a criterion that
//! starts passing or a new regression both surface.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;

use num_complex::Complex64;
use qcrit::correlations::{concurrence, correlation_report, xstate_discord_cc, XState};
use qcrit::cv::{cv_state, negativity_volume, wigner_at, wigner_grid, CvKind, FockState, GridSpec};
use qcrit::discrete::{
    dwf, gwf_kernel_trace, gwf_two, gwf_xxz, sqrt_rho_table, stratonovich_kernel_bloch, Angles,
    PhasePoint,
};
use qcrit::fermion::ring::{factorizing_field, ring_correlators_many};
use qcrit::fermion::xx::xx_concurrence;
use qcrit::fermion::{
    assemble_two, central_derivative, onset_field, xx_entries, xx_two_site_rho, Couplings,
    RingGroundState, SpinCorrelators, DERIVATIVE_STEP,
};
use qcrit::linalg::{matrix_sqrt_psd, CMat};
use qcrit::lmg::{
    bin_work, critical_quench, diagonal_entropy, dos_histogram, lmg_spectrum, parity_split,
    prepare_initial, quench, survival_probability, work_distribution, work_moment, InitialSpec,
    LmgParams, WorkDistribution, DEFAULT_BIN_SPACINGS, PEAK_FLOOR,
};
use qcrit::qstate::{named_state, von_neumann_entropy, DensityMatrix, NamedState, CLAMP_TOL};
use qcrit::xxz::xxz_dwf_row;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Criteria expected to fail, with the reason recorded in the decisions ledger.
const KNOWN_FAILURES: [(u32, &str); 2] = [
    (1, "the exact T = 0 onset fields for m = 3, 4 are 0.8191 and 0.9070, outside 1e-3 of the quoted 0.8 and 0.9"),
    (
        15,
        "the atomic P(W) at h_f = 0.75 has two maxima, but bins four mean spacings wide hold more levels near E_c and fill the dip",
    ),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

// ---------------------------------------------------------------------------
// shared oracles

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli() -> [CMat; 4] {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [
        CMat::from_row_slice(2, 2, &[o, z, z, o]),
        CMat::from_row_slice(2, 2, &[z, o, o, z]),
        CMat::from_row_slice(2, 2, &[z, -i, i, z]),
        CMat::from_row_slice(2, 2, &[o, z, z, -o]),
    ]
}

fn max_diff(a: &CMat, b: &CMat) -> f64 {
    (a - b).iter().fold(0.0, |m, z| m.max(z.norm()))
}

fn random_density(r: &mut StdRng, n: usize) -> DensityMatrix {
    let g = CMat::from_fn(n, n, |_, _| {
        c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
    });
    let m = &g * g.adjoint();
    let t: f64 = (0..n).map(|i| m[(i, i)].re).sum();
    DensityMatrix::new(m / c(t, 0.0)).unwrap()
}

/// Dense ground-state correlators `[σz, σxσx, σyσy, σzσz]` at separations
/// `1..=n/2` of `Σ (Jx σˣσˣ + Jy σʸσʸ) - hz Σ σᶻ` on a ring.
fn dense_ring(n: usize, cp: Couplings) -> (f64, Vec<[f64; 4]>) {
    let dim = 1usize << n;
    let mut best: Option<(f64, Vec<usize>, Vec<f64>)> = None;
    for parity in 0..2u32 {
        let states: Vec<usize> = (0..dim).filter(|s| s.count_ones() % 2 == parity).collect();
        let mut index = vec![usize::MAX; dim];
        for (i, &s) in states.iter().enumerate() {
            index[s] = i;
        }
        let mut h = nalgebra::DMatrix::<f64>::zeros(states.len(), states.len());
        for (i, &s) in states.iter().enumerate() {
            for j in 0..n {
                h[(i, i)] -= cp.hz * if (s >> j) & 1 == 0 { 1.0 } else { -1.0 };
                let k = (j + 1) % n;
                let same = ((s >> j) & 1) == ((s >> k) & 1);
                let yy = if same { -1.0 } else { 1.0 };
                h[(index[s ^ (1 << j) ^ (1 << k)], i)] += cp.jx + cp.jy * yy;
            }
        }
        let eig = nalgebra::SymmetricEigen::new(h);
        let (k, &e) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        if best.as_ref().map_or(true, |b| e < b.0) {
            best = Some((
                e,
                states,
                eig.eigenvectors.column(k).iter().copied().collect(),
            ));
        }
    }
    let (e, states, v) = best.unwrap();
    let mut index = vec![usize::MAX; dim];
    for (i, &s) in states.iter().enumerate() {
        index[s] = i;
    }
    let rows = (1..=n / 2)
        .map(|m| {
            let (mut sz, mut xx, mut yy, mut zz) = (0.0, 0.0, 0.0, 0.0);
            for (i, &s) in states.iter().enumerate() {
                let w = v[i] * v[i];
                let (a, b) = (s & 1, (s >> m) & 1);
                sz += if a == 0 { w } else { -w };
                zz += if a == b { w } else { -w };
                let amp = v[i] * v[index[s ^ 1 ^ (1 << m)]];
                xx += amp;
                yy += if a == b { -amp } else { amp };
            }
            [sz, xx, yy, zz]
        })
        .collect();
    (e, rows)
}

/// `h n_t - S_x²/N` built from bosonic ladder matrices in the `|n_t⟩` basis.
fn lmg_oracle(n: usize, h: f64) -> nalgebra::DMatrix<f64> {
    let d = n + 1;
    let mut sx = nalgebra::DMatrix::<f64>::zeros(d, d);
    for k in 0..n {
        let m = 0.5 * (((n - k) * (k + 1)) as f64).sqrt();
        sx[(k, k + 1)] = m;
        sx[(k + 1, k)] = m;
    }
    let nt = nalgebra::DMatrix::from_fn(d, d, |i, j| if i == j { i as f64 } else { 0.0 });
    nt * h - &sx * &sx / n as f64
}

fn linear_fit_r2(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    sxy * sxy / (sxx * syy)
}

/// Least-squares slope through the origin and the relative residual norm.
fn proportional_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let a = x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>() / x.iter().map(|p| p * p).sum::<f64>();
    let res = x
        .iter()
        .zip(y)
        .map(|(p, q)| (q - a * p).powi(2))
        .sum::<f64>()
        .sqrt();
    let norm = y.iter().map(|q| q * q).sum::<f64>().sqrt();
    (a, res / norm)
}

// ---------------------------------------------------------------------------
// criteria

const ONSET_TOL: f64 = 1e-3;

fn onset_fields() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (m, target) in [(2, 0.5), (3, 0.8), (4, 0.9)] {
        let h = onset_field(m).unwrap();
        let ok = (h - target).abs() <= ONSET_TOL;
        pass &= ok;
        parts.push(format!(
            "m={m}: {h:.6} vs {target} ({})",
            if ok { "ok" } else { "off" }
        ));
    }
    outcome(pass, parts.join("; "))
}

fn unentangled_limits() -> Outcome {
    let mut worst: f64 = 0.0;
    for m in 2..=4 {
        for h in [0.0, 2.0] {
            worst = worst.max(xx_concurrence(m, h, 0.0).unwrap());
        }
    }
    outcome(
        worst <= 1e-12,
        format!("max concurrence {worst:.2e} at h in {{0, 2}}"),
    )
}

fn werner_family() -> Outcome {
    let conc =
        |p: f64| concurrence(&named_state(NamedState::Werner(p)).unwrap().density()).unwrap();
    let discord = |p: f64| {
        let x = XState::new(named_state(NamedState::Werner(p)).unwrap().density()).unwrap();
        xstate_discord_cc(&x).unwrap().0
    };
    let third = 1.0 / 3.0;
    let below = conc(third - 1e-9);
    let above = conc(third + 1e-9);
    let grid: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
    let zero_below = grid
        .iter()
        .filter(|&&p| p <= third)
        .all(|&p| conc(p) <= 1e-12);
    let positive_above = grid.iter().filter(|&&p| p > third).all(|&p| conc(p) > 0.0);
    let mut min_discord = f64::INFINITY;
    for p in grid.iter().copied().skip(1).chain([1e-3, 1e-2]) {
        min_discord = min_discord.min(discord(p));
    }
    let pass = below <= 1e-12 && above > 0.0 && zero_below && positive_above && min_discord > 0.0;
    outcome(
        pass,
        format!("C(1/3 - 1e-9) = {below:.1e}, C(1/3 + 1e-9) = {above:.2e}, min discord on (0, 1] = {min_discord:.3e}"),
    )
}

fn werner_mix_entropy() -> Outcome {
    // closed-form eigenvalues of p|0⟩⟨0| + (1-p)|+⟩⟨+|
    let oracle = |p: f64| {
        let r = (1.0 - 2.0 * p * (1.0 - p)).sqrt();
        [(1.0 + r) / 2.0, (1.0 - r) / 2.0]
            .iter()
            .filter(|&&l| l > 0.0)
            .map(|&l| -l * l.log2())
            .sum::<f64>()
    };
    let mut worst: f64 = 0.0;
    let (mut best_p, mut best_s) = (0.0, f64::NEG_INFINITY);
    for i in 0..=1000 {
        let p = i as f64 / 1000.0;
        let s = von_neumann_entropy(&named_state(NamedState::WernerMix(p)).unwrap().density());
        worst = worst.max((s - oracle(p)).abs());
        if s > best_s {
            (best_p, best_s) = (p, s);
        }
    }
    let pass = (best_p - 0.5).abs() <= 1e-3 && (best_s - 0.601).abs() <= 5e-3 && worst < 1e-12;
    outcome(
        pass,
        format!("max S = {best_s:.6} bits at p = {best_p}; oracle deviation {worst:.1e}"),
    )
}

fn derivative_divergence() -> Outcome {
    let deltas = [0.1, 0.05, 0.025, 0.0125];
    let measure = |k: usize, h: f64| {
        let r = correlation_report(&xx_two_site_rho(2, h, 0.0).unwrap()).unwrap();
        [r.concurrence, r.discord, r.coherence_qjsd][k]
    };
    let mut pass = true;
    let mut parts = Vec::new();
    for (k, name) in ["C", "QD", "QC"].iter().enumerate() {
        let d: Vec<f64> = deltas
            .iter()
            .map(|&dl| central_derivative(|h| measure(k, h), 1.0 - dl, DERIVATIVE_STEP).abs())
            .collect();
        let mono = d.windows(2).all(|w| w[1] > w[0]);
        pass &= mono;
        parts.push(format!(
            "{name}: {}",
            d.iter()
                .map(|v| format!("{v:.3}"))
                .collect::<Vec<_>>()
                .join(" < ")
        ));
    }
    outcome(pass, parts.join("; "))
}

fn dwf_reconstruction() -> Outcome {
    let [id, sx, sy, sz] = pauli();
    let sign = |b: u32| if b & 1 == 0 { 1.0 } else { -1.0 };
    let a1 = |x: u32, p: u32| {
        (&id + &sz * c(sign(x), 0.0) + &sx * c(sign(p), 0.0) + &sy * c(sign(x ^ p), 0.0))
            * c(0.5, 0.0)
    };
    let mut r = StdRng::seed_from_u64(0x5eed_0006);
    let (mut norm_err, mut rec_err): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let rho = random_density(&mut r, 4);
        let w = dwf(&rho).unwrap();
        norm_err = norm_err.max((w.sum() - 1.0).abs());
        let mut rec = CMat::zeros(4, 4);
        for pt in PhasePoint::all(2) {
            let a = a1(pt.x_bit(0), pt.p_bit(0)).kronecker(&a1(pt.x_bit(1), pt.p_bit(1)));
            rec += a * c(w.get(&pt), 0.0);
        }
        rec_err = rec_err.max(max_diff(&rec, rho.matrix()));
    }
    outcome(
        norm_err <= 1e-9 && rec_err <= 1e-9,
        format!("max |ΣW - 1| = {norm_err:.1e}, max |ρ - ΣWA| = {rec_err:.1e}"),
    )
}

fn wootters_stratonovich() -> Outcome {
    let [id, sx, sy, sz] = pauli();
    let a00 = (&id + &sx + &sy + &sz) * c(0.5, 0.0);
    let theta = (1.0 / 3f64.sqrt()).acos();
    let phi = -PI / 4.0;
    let mut worst: f64 = 0.0;
    for x in 0..2u32 {
        for p in 0..2u32 {
            let mut d = &id * c(0.0, 0.5 * PI * (x * p) as f64).exp();
            if p == 1 {
                d = &d * &sx;
            }
            if x == 1 {
                d = &d * &sz;
            }
            let displaced = &d * &a00 * d.adjoint();
            let kernel = stratonovich_kernel_bloch(
                theta + p as f64 * PI,
                phi + (2.0 * x as f64 - p as f64) * PI / 2.0,
            );
            worst = worst.max(max_diff(&displaced, &kernel));
        }
    }
    outcome(
        worst <= 1e-10,
        format!("max |D A(0,0) D† - Δ| = {worst:.1e} over the four points"),
    )
}

fn gwf_reduces_to_xxz() -> Outcome {
    let mut r = StdRng::seed_from_u64(0x5eed_0008);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let xx = r.gen_range(-1.0..1.0);
        let zz = r.gen_range(-1.0..1.0);
        let cr = SpinCorrelators::new(1, 0.0, xx, xx, zz);
        let a = Angles::new(r.gen_range(0.0..PI), r.gen_range(0.0..2.0 * PI));
        let b = Angles::new(r.gen_range(0.0..PI), r.gen_range(0.0..2.0 * PI));
        worst = worst.max((gwf_two(&cr, a, b) - gwf_xxz(&cr, a, b)).abs());
    }
    outcome(
        worst <= 1e-12,
        format!("max deviation {worst:.1e} over 1000 draws"),
    )
}

/// Ring size and spacing of the factorization-point derivative test.
const FACT_RING: usize = 400;
const FACT_STEP: f64 = 1e-3;
const FACT_HALF_POINTS: i32 = 10;
const JUMP_RATIO: f64 = 10.0;

/// Size of the slope jump across `λ_f` relative to the largest slope change
/// between neighboring grid intervals on either side.
fn jump_ratio(f: &[f64], step: f64) -> f64 {
    let d: Vec<f64> = f.windows(2).map(|w| (w[1] - w[0]) / step).collect();
    // intervals 0..K-2 lie left of λ_f, K-1 straddles it, K.. lie right
    let k = FACT_HALF_POINTS as usize;
    let (left, right) = (&d[..k - 1], &d[k..]);
    let jump = (right[0] - left[left.len() - 1]).abs();
    let var = left
        .windows(2)
        .chain(right.windows(2))
        .map(|w| (w[1] - w[0]).abs())
        .fold(0.0, f64::max);
    jump / var.max(f64::MIN_POSITIVE)
}

fn factorization_jump() -> Outcome {
    let gamma = 0.5;
    let lf = factorizing_field(gamma);
    let grid: Vec<f64> = (-FACT_HALF_POINTS..FACT_HALF_POINTS)
        .map(|i| lf + (i as f64 + 0.5) * FACT_STEP)
        .collect();
    let states: Vec<DensityMatrix> = grid
        .iter()
        .map(|&l| {
            let cr = RingGroundState::new(FACT_RING, Couplings::xy(gamma, l), 1)
                .unwrap()
                .correlators(1)
                .unwrap();
            assemble_two(&cr).unwrap().density().clone()
        })
        .collect();
    let kernel = [Angles::new(PI / 4.0, 0.0), Angles::new(PI / 4.0, 0.0)];
    let sqrt_tables: Vec<_> = states.iter().map(|r| sqrt_rho_table(r).unwrap()).collect();
    let plain_tables: Vec<_> = states.iter().map(|r| dwf(r).unwrap()).collect();
    let series = |tables: &[qcrit::discrete::PhasePointTable], pt: &PhasePoint| -> Vec<f64> {
        tables.iter().map(|t| t.get(pt)).collect()
    };
    let mut sqrt_min = f64::INFINITY;
    let mut plain_max: f64 = 0.0;
    for pt in PhasePoint::all(2) {
        sqrt_min = sqrt_min.min(jump_ratio(&series(&sqrt_tables, &pt), FACT_STEP));
        plain_max = plain_max.max(jump_ratio(&series(&plain_tables, &pt), FACT_STEP));
    }
    let sqrt_gwf: Vec<f64> = states
        .iter()
        .map(|r| {
            gwf_kernel_trace(&matrix_sqrt_psd(r.matrix(), CLAMP_TOL).unwrap(), &kernel).unwrap()
        })
        .collect();
    let plain_gwf: Vec<f64> = states
        .iter()
        .map(|r| {
            let x = XState::new(r.clone()).unwrap();
            gwf_kernel_trace(x.density().matrix(), &kernel).unwrap()
        })
        .collect();
    let gwf_ratio = jump_ratio(&sqrt_gwf, FACT_STEP);
    let gwf_plain_ratio = jump_ratio(&plain_gwf, FACT_STEP);

    let far = ring_correlators_many(2000, Couplings::xy(gamma, lf), &[1, 20]).unwrap();
    let configs = [
        kernel,
        [Angles::new(0.3, 0.2), Angles::new(1.1, -0.4)],
        [Angles::new(0.0, 0.0), Angles::new(0.0, 0.0)],
    ];
    let spread = configs
        .iter()
        .map(|a| (gwf_two(&far[0], a[0], a[1]) - gwf_two(&far[1], a[0], a[1])).abs())
        .fold(0.0, f64::max);

    let pass = sqrt_min >= JUMP_RATIO
        && gwf_ratio >= JUMP_RATIO
        && plain_max < JUMP_RATIO
        && gwf_plain_ratio < JUMP_RATIO
        && spread <= 1e-3;
    outcome(
        pass,
        format!(
            "√ρ DWF jump/variation min {sqrt_min:.1}, √ρ GWF {gwf_ratio:.1}; plain DWF max {plain_max:.2}, plain GWF {gwf_plain_ratio:.2}; \
             |G(m=1) - G(m=20)| at λ_f = {spread:.1e}"
        ),
    )
}

fn cross_path_consistency() -> Outcome {
    let mut analytic: f64 = 0.0;
    for h in [0.3, 0.7, 0.95] {
        let ring = ring_correlators_many(2000, Couplings::xx_field(h), &[2, 3, 4]).unwrap();
        for (m, cr) in (2..=4).zip(&ring) {
            let x = assemble_two(cr).unwrap();
            let d = x.density();
            let e = xx_entries(m, h, 0.0).unwrap();
            for (got, want) in [
                (d.get(0, 0).re, e.x_plus),
                (d.get(3, 3).re, e.x_minus),
                (d.get(1, 1).re, e.y_plus),
                (d.get(2, 2).re, e.y_minus),
                (d.get(1, 2).re, e.z),
            ] {
                analytic = analytic.max((got - want).abs());
            }
        }
    }
    let mut dense: f64 = 0.0;
    for (cp, n) in [
        (Couplings::xy(0.5, 0.7), 8),
        (Couplings::xy(0.3, 1.4), 8),
        (Couplings::xy(0.6, 1.1), 10),
        (Couplings::xx_field(0.3), 10),
        (Couplings::xy(0.4, 0.9), 12),
    ] {
        let gs = RingGroundState::new(n, cp, n / 2).unwrap();
        let (e, rows) = dense_ring(n, cp);
        dense = dense.max((gs.energy - e).abs());
        for (m, row) in (1..=n / 2).zip(&rows) {
            let r = gs.correlators(m).unwrap();
            for (a, b) in [r.sz, r.xx, r.yy, r.zz].iter().zip(row) {
                dense = dense.max((a - b).abs());
            }
        }
    }
    outcome(
        analytic <= 1e-3 && dense <= 1e-10,
        format!("ring vs analytic {analytic:.1e}; ring vs dense {dense:.1e}"),
    )
}

fn xxz_scan() -> Outcome {
    let jump =
        (xxz_dwf_row(16, -0.99).unwrap().corner - xxz_dwf_row(16, -1.01).unwrap().corner).abs();
    let deltas: Vec<f64> = (0..=20).map(|i| 0.9 + 0.01 * i as f64).collect();
    let w: Vec<f64> = deltas
        .iter()
        .map(|&d| xxz_dwf_row(16, d).unwrap().w_max)
        .collect();
    let d2: Vec<f64> = w.windows(3).map(|t| t[2] - 2.0 * t[1] + t[0]).collect();
    let flips = d2.windows(2).filter(|p| p[0] * p[1] < 0.0).count();
    outcome(
        jump > 0.05 && flips > 0,
        format!("corner jump {jump:.4}; W_M second-difference sign changes {flips}"),
    )
}

fn lmg_spectrum_checks() -> Outcome {
    let (plus, minus) = parity_split(&LmgParams::symmetric(100, 0.5).unwrap()).unwrap();
    let spec = lmg_spectrum(&LmgParams::symmetric(1000, 0.5).unwrap()).unwrap();
    let hist = dos_histogram(&spec.values).unwrap();
    let peak = hist.argmax();
    let zero_bin = hist.bin_of(0.0);
    outcome(
        plus.dim() == 51 && minus.dim() == 50 && zero_bin == Some(peak),
        format!(
            "blocks {}/{}; DOS peak bin [{:.4}, {:.4}) of {}",
            plus.dim(),
            minus.dim(),
            hist.start + peak as f64 * hist.width,
            hist.start + (peak + 1) as f64 * hist.width,
            hist.weights.len()
        ),
    )
}

fn entropy_curve(n: usize, spec: InitialSpec, grid: &[f64]) -> Vec<f64> {
    let init = prepare_initial(spec, 0.5, n).unwrap();
    grid.iter()
        .map(|&hf| diagonal_entropy(&work_distribution(&quench(&init, hf, 0.0).unwrap())))
        .collect()
}

fn argmax(v: &[f64]) -> usize {
    (0..v.len()).fold(0, |b, i| if v[i] > v[b] { i } else { b })
}

fn lmg_entropy_peak() -> Outcome {
    let grid: Vec<f64> = (0..=220).map(|i| 0.55 + 0.0025 * i as f64).collect();
    let s = entropy_curve(1000, InitialSpec::Ground, &grid);
    let h_peak = grid[argmax(&s)];
    let sizes = [100usize, 200, 400, 800, 1000];
    let fine: Vec<f64> = (0..=160).map(|i| 0.6 + 0.0025 * i as f64).collect();
    let peaks: Vec<f64> = sizes
        .iter()
        .map(|&n| {
            entropy_curve(n, InitialSpec::Ground, &fine)
                .into_iter()
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let logs: Vec<f64> = sizes.iter().map(|&n| (n as f64).log2()).collect();
    let r2 = linear_fit_r2(&logs, &peaks);
    outcome(
        (h_peak - 0.75).abs() <= 0.02 && r2 > 0.99,
        format!(
            "S_W peak at h_f = {h_peak}; peak S_W = [{}] vs log2 N, R² = {r2:.5}",
            peaks
                .iter()
                .map(|v| format!("{v:.3}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    )
}

/// Work values closer than this are treated as the same atom when comparing
/// two distributions whose degenerate doublets were resolved differently.
const W_MATCH: f64 = 1e-6;

/// Largest difference in summed probability over clusters of atoms that lie
/// within [`W_MATCH`] of each other across both distributions.
fn matched_deviation(a: &WorkDistribution, b: &WorkDistribution) -> f64 {
    let mut atoms: Vec<(f64, f64)> = a.work.iter().zip(&a.prob).map(|(&w, &p)| (w, p)).collect();
    atoms.extend(b.work.iter().zip(&b.prob).map(|(&w, &p)| (w, -p)));
    atoms.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut dev: f64 = 0.0;
    let mut i = 0;
    while i < atoms.len() {
        let mut net = atoms[i].1;
        let mut j = i + 1;
        while j < atoms.len() && atoms[j].0 - atoms[j - 1].0 <= W_MATCH {
            net += atoms[j].1;
            j += 1;
        }
        dev = dev.max(net.abs());
        i = j;
    }
    dev
}

fn lmg_symmetry_breaking() -> Outcome {
    let sym = prepare_initial(InitialSpec::Ground, 0.5, 1000).unwrap();
    let fsb = prepare_initial(InitialSpec::Fsb(1), 0.5, 1000).unwrap();
    let s = |init, hf| diagonal_entropy(&work_distribution(&quench(init, hf, 0.0).unwrap()));
    let diff = s(&fsb, 0.9) - s(&sym, 0.9);
    let (a, b) = (
        work_distribution(&quench(&sym, 0.6, 0.0).unwrap()),
        work_distribution(&quench(&fsb, 0.6, 0.0).unwrap()),
    );
    let dev = matched_deviation(&a, &b);
    outcome(
        (diff - 1.0).abs() <= 0.1 && dev <= 1e-9,
        format!("S_W(FSB) - S_W(sym) at h_f = 0.9: {diff:.4} bits; h_f = 0.6 atoms {} vs {}, max deviation {dev:.1e}", a.work.len(), b.work.len()),
    )
}

fn lmg_double_peak() -> Outcome {
    let init = prepare_initial(InitialSpec::Ground, 0.5, 2000).unwrap();
    let peaks = |hf: f64| {
        let d = work_distribution(&quench(&init, hf, 0.0).unwrap());
        let binned = bin_work(&d, DEFAULT_BIN_SPACINGS)
            .unwrap()
            .local_maxima(PEAK_FLOOR)
            .len();
        let top = d.prob.iter().copied().fold(0.0, f64::max);
        let atomic = (1..d.prob.len() - 1)
            .filter(|&i| {
                d.prob[i] > d.prob[i - 1]
                    && d.prob[i] >= d.prob[i + 1]
                    && d.prob[i] > PEAK_FLOOR * top
            })
            .count();
        (binned, atomic)
    };
    let hc = critical_quench(0.5).unwrap();
    let (at, below, above) = (peaks(hc), peaks(0.6), peaks(0.9));
    outcome(
        at.0 >= 2 && below.0 < 2 && above.0 < 2,
        format!(
            "binned local maxima: {} at h_f = {hc}, {} at 0.6, {} at 0.9 (unbinned atoms: {}, {}, {})",
            at.0, below.0, above.0, at.1, below.1, above.1
        ),
    )
}

fn work_identities() -> Outcome {
    let n = 1000;
    let init = prepare_initial(InitialSpec::Ground, 0.5, n).unwrap();
    let psi = nalgebra::DVector::from_column_slice(&init.psi);
    let (mut norm_err, mut mean_err, mut l0_err): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for hf in [0.3, 0.6, 0.75, 0.9, 1.4] {
        let r = quench(&init, hf, 0.0).unwrap();
        norm_err = norm_err.max((r.weights.iter().sum::<f64>() - 1.0).abs());
        let direct = psi.dot(&(lmg_oracle(n, hf) * &psi)) - init.energy;
        mean_err = mean_err.max((work_moment(&r, 1) - direct).abs());
        l0_err = l0_err.max((survival_probability(&r, &[0.0])[0] - 1.0).abs());
    }
    let amps: Vec<f64> = [-0.05, -0.03, -0.01, 0.01, 0.03, 0.05].to_vec();
    let (w1, w2): (Vec<f64>, Vec<f64>) = amps
        .iter()
        .map(|&d| {
            let r = quench(&init, 0.5 + d, 0.0).unwrap();
            (work_moment(&r, 1), work_moment(&r, 2))
        })
        .unzip();
    let sq: Vec<f64> = amps.iter().map(|d| d * d).collect();
    let (_, res1) = proportional_fit(&amps, &w1);
    let (_, res2) = proportional_fit(&sq, &w2);
    let pass =
        norm_err <= 1e-10 && mean_err <= 1e-10 && l0_err <= 1e-10 && res1 < 0.01 && res2 < 0.01;
    outcome(
        pass,
        format!(
            "|Σp - 1| {norm_err:.1e}, |⟨W⟩ - direct| {mean_err:.1e}, |L(0) - 1| {l0_err:.1e}; fit residuals {res1:.1e} (linear), {res2:.1e} (quadratic)"
        ),
    )
}

fn cv_checks() -> Outcome {
    let vacuum = FockState::new(vec![c(1.0, 0.0)]).unwrap();
    let one = FockState::new(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
    let origin = c(0.0, 0.0);
    let e0 = (wigner_at(&vacuum, origin) - 2.0 / PI).abs();
    let e1 = (wigner_at(&one, origin) + 2.0 / PI).abs();
    let spec = GridSpec::default();
    let mut coherent: f64 = 0.0;
    for beta in [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(-1.5, 0.5)] {
        let g = wigner_grid(&cv_state(CvKind::Coherent(beta), 60).unwrap(), &spec).unwrap();
        coherent = coherent.max(negativity_volume(&g));
    }
    let cat = negativity_volume(
        &wigner_grid(&cv_state(CvKind::Cat(c(2.0, 0.0)), 60).unwrap(), &spec).unwrap(),
    );
    outcome(
        e0 <= 1e-8 && e1 <= 1e-8 && coherent < 1e-6 && cat > 0.05,
        format!("|W_0(0) - 2/π| {e0:.1e}, |W_1(0) + 2/π| {e1:.1e}; coherent negativity {coherent:.1e}; cat(β=2) negativity {cat:.6}"),
    )
}

fn configs() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    v.sort();
    v
}

fn data_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| !p.to_string_lossy().ends_with(".manifest.json"))
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&p).unwrap(),
            )
        })
        .collect();
    v.sort();
    v
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_qcrit");
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let cfgs = configs();
    let mut mismatched = Vec::new();
    for cfg in &cfgs {
        for (dir, threads) in [(a.path(), "1"), (b.path(), "0")] {
            let out = Command::new(bin)
                .args([
                    "run",
                    "--config",
                    cfg.to_str().unwrap(),
                    "--out",
                    dir.to_str().unwrap(),
                    "--threads",
                    threads,
                ])
                .output()
                .unwrap();
            if !out.status.success() {
                return outcome(
                    false,
                    format!(
                        "{} failed: {}",
                        cfg.display(),
                        String::from_utf8_lossy(&out.stderr)
                    ),
                );
            }
        }
    }
    let (fa, fb) = (data_files(a.path()), data_files(b.path()));
    if fa.len() != fb.len() {
        return outcome(false, format!("{} vs {} data files", fa.len(), fb.len()));
    }
    for ((na, da), (_, db)) in fa.iter().zip(&fb) {
        if da != db {
            mismatched.push(na.clone());
        }
    }
    outcome(
        mismatched.is_empty(),
        format!(
            "{} configs, {} data files compared; mismatched: {:?}",
            cfgs.len(),
            fa.len(),
            mismatched
        ),
    )
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 18] = [
        (1, "onset fields at T = 0", onset_fields),
        (2, "no entanglement at h = 0 and h = 2", unentangled_limits),
        (3, "Werner concurrence threshold and discord", werner_family),
        (
            4,
            "maximum entropy of the |0>/|+> mixture",
            werner_mix_entropy,
        ),
        (5, "derivative divergence at h = 1", derivative_divergence),
        (
            6,
            "DWF normalization and reconstruction",
            dwf_reconstruction,
        ),
        (
            7,
            "Wootters to Stratonovich correspondence",
            wootters_stratonovich,
        ),
        (8, "GWF reduces to the XXZ form", gwf_reduces_to_xxz),
        (
            9,
            "sqrt(rho) derivative jump at the factorization point",
            factorization_jump,
        ),
        (
            10,
            "ring vs analytic and dense correlators",
            cross_path_consistency,
        ),
        (11, "XXZ DWF scan features", xxz_scan),
        (
            12,
            "LMG parity blocks and density of states",
            lmg_spectrum_checks,
        ),
        (
            13,
            "LMG diagonal entropy peak and scaling",
            lmg_entropy_peak,
        ),
        (14, "LMG symmetry breaking", lmg_symmetry_breaking),
        (15, "LMG work distribution double peak", lmg_double_peak),
        (16, "work statistics identities", work_identities),
        (17, "continuous-variable Wigner values", cv_checks),
        (18, "end-to-end determinism", determinism),
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = Vec::new();
    for (id, name, f) in criteria {
        if filter.is_some_and(|k| k != id) {
            continue;
        }
        let start = std::time::Instant::now();
        let o = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "{tag} [{id:2}] {name}: {} ({:.1} s)",
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed.push(id);
        }
    }
    let expected: Vec<u32> = KNOWN_FAILURES
        .iter()
        .map(|k| k.0)
        .filter(|k| filter.map_or(true, |f| f == *k))
        .collect();
    for (id, why) in KNOWN_FAILURES {
        if failed.contains(&id) {
            println!("note [{id:2}] known failure: {why}");
        }
    }
    if failed != expected {
        eprintln!("failing criteria {failed:?} differ from the known set {expected:?}");
        std::process::exit(1);
    }
}
