//! Thermodynamic-limit XX chain, `H = Σ (SˣSˣ + SʸSʸ) - h Σ Sᶻ` with `J = 1`.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use super::{assemble_two, SpinCorrelators};
use crate::correlations::{concurrence, XState};
use crate::error::{Error, Result};
use crate::linalg::re;
use crate::quad::{integrate, QuadOptions};

/// Thermal widths on each side of the Fermi point given their own subinterval.
const FERMI_EDGE_WIDTHS: f64 = 40.0;

/// Fermi-Dirac filling of the mode with energy `cos k - h`.
fn filling(k: f64, h: f64, t: f64) -> f64 {
    let x = (k.cos() - h) / t;
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// `f_m = (1/π) ∫₀^π cos(km) g(k) dk`.
pub fn fermi_fm(m: usize, h: f64, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::OutOfRange { name: "temperature", value: t });
    }
    let kf = h.clamp(-1.0, 1.0).acos();
    if t == 0.0 {
        return Ok(if m == 0 { 1.0 - kf / PI } else { -(m as f64 * kf).sin() / (m as f64 * PI) });
    }
    let opts = QuadOptions { abs_tol: 1e-10 * PI / 2.0, max_intervals: 4000 };
    let f = |k: f64| (k * m as f64).cos() * filling(k, h, t);
    // Break the range at the Fermi point and at a few thermal widths either
    // side of it, so a sharp edge cannot hide between Gauss-Kronrod nodes.
    let mut cuts = Vec::with_capacity(6);
    cuts.push(0.0);
    if kf > 0.0 && kf < PI {
        let width = t / kf.sin().max(t.sqrt());
        for d in [-FERMI_EDGE_WIDTHS, 0.0, FERMI_EDGE_WIDTHS] {
            let k = kf + d * width;
            if k > *cuts.last().unwrap() && k < PI {
                cuts.push(k);
            }
        }
    }
    cuts.push(PI);
    let mut v = 0.0;
    for w in cuts.windows(2) {
        v += integrate(f, w[0], w[1], opts)?.value;
    }
    Ok(v / PI)
}

/// `f_0 … f_mmax` at one `(h, T)` point.
#[derive(Debug, Clone, PartialEq)]
pub struct FermiTable {
    pub h: f64,
    pub temperature: f64,
    pub values: Vec<f64>,
}

impl FermiTable {
    pub fn new(h: f64, t: f64, mmax: usize) -> Result<Self> {
        let values = (0..=mmax).map(|m| fermi_fm(m, h, t)).collect::<Result<Vec<_>>>()?;
        Ok(FermiTable { h, temperature: t, values })
    }

    pub fn f(&self, m: usize) -> f64 {
        self.values[m]
    }
}

/// Nonzero entries of the two-site X-state: `ρ11 = X+`, `ρ44 = X-`,
/// `ρ22 = Y+`, `ρ33 = Y-`, `ρ23 = Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XxEntries {
    pub x_plus: f64,
    pub x_minus: f64,
    pub y_plus: f64,
    pub y_minus: f64,
    pub z: f64,
}

fn z_of(m: usize, f: &FermiTable) -> f64 {
    let (f0, f1, f2, f3, f4) = (f.f(0), f.f(1), f.f(2), f.f(3), f.f(4));
    match m {
        2 => f2 - 2.0 * f0 * f2 + 2.0 * f1 * f1,
        3 => {
            4.0 * (f1.powi(3) - 2.0 * f0 * f1 * f2 + f2 * f2 * f1 + f0 * f0 * f3 - f1 * f1 * f3 + f1 * f2
                - f0 * f3)
                + f3
        }
        4 => {
            8.0 * (f1.powi(4) - 3.0 * f0 * f1 * f1 * f2 + 2.0 * f1 * f1 * f2 * f2 + 2.0 * f0 * f0 * f1 * f3
                + f0 * f0 * f2 * f2
                - f2.powi(4)
                - 2.0 * f0 * f1 * f2 * f3
                + 2.0 * f1 * f2 * f2 * f3
                - 2.0 * f1.powi(3) * f3
                + f1 * f1 * f3 * f3
                - f0 * f2 * f3 * f3
                - f0.powi(3) * f4
                + 2.0 * f0 * f1 * f1 * f4
                - 2.0 * f1 * f1 * f2 * f4
                + f0 * f2 * f2 * f4)
                + 4.0
                    * (3.0 * f1 * f1 * f2 - 2.0 * f0 * f2 * f2 - 4.0 * f0 * f1 * f3 + 2.0 * f1 * f2 * f3
                        + 3.0 * f0 * f0 * f4
                        - 2.0 * f1 * f1 * f4
                        + f2 * f3 * f3
                        - f2 * f2 * f4)
                + 2.0 * (2.0 * f1 * f3 - 3.0 * f0 * f4 + f2 * f2)
                + f4
        }
        _ => unreachable!("checked by caller"),
    }
}

fn check_m(m: usize) -> Result<()> {
    if (2..=4).contains(&m) {
        Ok(())
    } else {
        Err(Error::Unsupported("analytic XX correlators exist only for m in {2, 3, 4}; use the ring solver"))
    }
}

pub fn xx_entries(m: usize, h: f64, t: f64) -> Result<XxEntries> {
    check_m(m)?;
    let f = FermiTable::new(h, t, 4)?;
    Ok(entries_from_table(m, &f))
}

fn entries_from_table(m: usize, f: &FermiTable) -> XxEntries {
    let (f0, fm) = (f.f(0), f.f(m));
    let y = f0 - f0 * f0 + fm * fm;
    XxEntries {
        x_plus: f0 * f0 - fm * fm,
        x_minus: 1.0 - 2.0 * f0 + f0 * f0 - fm * fm,
        y_plus: y,
        y_minus: y,
        z: z_of(m, f),
    }
}

/// Two-site reduced state of the XX chain at separation `m ∈ {2, 3, 4}`.
pub fn xx_two_site_rho(m: usize, h: f64, t: f64) -> Result<XState> {
    let e = xx_entries(m, h, t)?;
    XState::from_entries([e.x_plus, e.y_plus, e.y_minus, e.x_minus], re(0.0), re(e.z))
}

/// Correlators `⟨σz⟩, ⟨σxσx⟩, ⟨σyσy⟩, ⟨σzσz⟩` at separation `m ∈ {2, 3, 4}`.
pub fn xx_correlators(m: usize, h: f64, t: f64) -> Result<SpinCorrelators> {
    check_m(m)?;
    let f = FermiTable::new(h, t, 4)?;
    let e = entries_from_table(m, &f);
    let sz = 2.0 * f.f(0) - 1.0;
    let zz = sz * sz - 4.0 * f.f(m) * f.f(m);
    Ok(SpinCorrelators::new(m, sz, 2.0 * e.z, 2.0 * e.z, zz))
}

/// `|Z| - √(X+ X-)`; its sign change marks the entanglement onset.
fn onset_indicator(m: usize, h: f64) -> Result<f64> {
    let e = xx_entries(m, h, 0.0)?;
    Ok(e.z.abs() - (e.x_plus * e.x_minus).max(0.0).sqrt())
}

/// Field at which two-site entanglement at separation `m` first appears at `T = 0`.
pub fn onset_field(m: usize) -> Result<f64> {
    check_m(m)?;
    let mut lo = 0.0;
    if onset_indicator(m, lo)? > 0.0 {
        return Err(Error::NoConvergence("entangled already at h = 0"));
    }
    let mut hi = None;
    let steps = 1000;
    for i in 1..steps {
        let h = i as f64 / steps as f64;
        if onset_indicator(m, h)? > 0.0 {
            hi = Some(h);
            break;
        }
        lo = h;
    }
    let mut hi = hi.ok_or(Error::NoConvergence("no entanglement onset in [0, 1)"))?;
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if onset_indicator(m, mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Concurrence of the analytic two-site state.
pub fn xx_concurrence(m: usize, h: f64, t: f64) -> Result<f64> {
    concurrence(xx_two_site_rho(m, h, t)?.density())
}

/// Same state built through the generic correlator assembly.
pub fn xx_two_site_rho_via_correlators(m: usize, h: f64, t: f64) -> Result<XState> {
    assemble_two(&xx_correlators(m, h, t)?)
}
