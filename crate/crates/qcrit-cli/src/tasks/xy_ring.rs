//! Phase-space functions of the finite XY ring `H = -Σ [λ/2 ((1+γ)σˣσˣ + (1-γ)σʸσʸ) + σᶻ]`.

use qcrit::discrete::{
    dwf, gwf_kernel_trace, gwf_three, gwf_two, sqrt_rho_table, Angles, PhasePoint,
    ThreeSiteCorrelators,
};
use qcrit::fermion::{assemble_two, Couplings, RingGroundState, SpinCorrelators, DERIVATIVE_STEP};
use qcrit::linalg::matrix_sqrt_psd;
use qcrit::qstate::CLAMP_TOL;
use serde::{Deserialize, Serialize};

use super::{par_rows, Estimate};
use crate::error::{CliError, Result};
use crate::grid::{int_list, Grid};
use crate::table::{col, Cell, Table};

pub const DEFAULT_RING: usize = 2000;
pub const MAX_RING: usize = 200_000;

fn default_ring() -> usize {
    DEFAULT_RING
}

fn default_m() -> Vec<usize> {
    vec![1]
}

fn default_step() -> f64 {
    DERIVATIVE_STEP
}

/// Seconds per ring solve and correlator, from a laptop-class single core.
fn ring_cost(n: usize, max_sep: usize) -> f64 {
    2e-8 * n as f64 * (4.0 + max_sep as f64)
}

fn check_ring(gamma: f64, n: usize) -> Result<()> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(CliError::config(format!(
            "gamma = {gamma} must lie in [0, 1]"
        )));
    }
    if n < 4 || n % 2 != 0 || n > MAX_RING {
        return Err(CliError::config(format!(
            "ring size n = {n} must be even and in [4, {MAX_RING}]"
        )));
    }
    Ok(())
}

fn check_step(derivatives: bool, step: f64) -> Result<()> {
    if derivatives && !(step > 0.0 && step.is_finite()) {
        return Err(CliError::config("derivative_step must be positive"));
    }
    Ok(())
}

fn check_separations(m: &[usize], n: usize) -> Result<Vec<usize>> {
    let m = int_list(m, "m")?;
    if let Some(bad) = m.iter().find(|&&k| k == 0 || k > n / 2) {
        return Err(CliError::config(format!(
            "separation m = {bad} must lie in [1, n/2 = {}]",
            n / 2
        )));
    }
    Ok(m)
}

/// Correlators at the requested separations for one coupling.
fn ring(n: usize, gamma: f64, lambda: f64, ms: &[usize]) -> Result<Vec<SpinCorrelators>> {
    let ctx = || format!("gamma = {gamma}, lambda = {lambda}, n = {n}");
    let max_sep = ms.iter().copied().max().unwrap_or(1);
    let g = RingGroundState::new(n, Couplings::xy(gamma, lambda), max_sep)
        .map_err(|e| CliError::numerical(ctx(), e))?;
    ms.iter()
        .map(|&m| g.correlators(m).map_err(|e| CliError::numerical(ctx(), e)))
        .collect()
}

/// Discrete Wigner function of two ring sites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XyDwfConfig {
    pub gamma: f64,
    pub lambda: Grid,
    #[serde(default = "default_ring")]
    pub n: usize,
    #[serde(default = "default_m")]
    pub m: Vec<usize>,
    /// Evaluate on `√ρ` instead of `ρ`.
    #[serde(default)]
    pub sqrt_rho: bool,
    #[serde(default)]
    pub derivatives: bool,
    #[serde(default = "default_step")]
    pub derivative_step: f64,
}

impl XyDwfConfig {
    fn grids(&self) -> Result<(Vec<f64>, Vec<usize>)> {
        check_ring(self.gamma, self.n)?;
        check_step(self.derivatives, self.derivative_step)?;
        Ok((
            self.lambda.values("lambda")?,
            check_separations(&self.m, self.n)?,
        ))
    }

    pub fn plan(&self) -> Result<Estimate> {
        let (lambda, m) = self.grids()?;
        let solves = if self.derivatives { 3.0 } else { 1.0 };
        let max_sep = *m.last().expect("non-empty");
        Ok(Estimate {
            points: lambda.len(),
            records: lambda.len() * m.len() * 16,
            seconds: lambda.len() as f64
                * solves
                * (ring_cost(self.n, max_sep) + m.len() as f64 * 5e-5),
        })
    }

    fn tables(&self, cs: &[SpinCorrelators]) -> Result<Vec<Vec<f64>>> {
        cs.iter()
            .map(|c| {
                let ctx = || format!("two-site state at m = {}", c.m);
                let x = assemble_two(c).map_err(|e| CliError::numerical(ctx(), e))?;
                let t = if self.sqrt_rho {
                    sqrt_rho_table(x.density())
                } else {
                    dwf(x.density())
                }
                .map_err(|e| CliError::numerical(ctx(), e))?;
                Ok(PhasePoint::all(2).iter().map(|pt| t.get(pt)).collect())
            })
            .collect()
    }

    pub fn run(&self) -> Result<Vec<Table>> {
        let (lambda, m) = self.grids()?;
        let mut columns = vec![
            col("lambda", "1"),
            col("m", "sites"),
            col("x", "label"),
            col("p", "label"),
            col("W", "1"),
        ];
        if self.derivatives {
            columns.push(col("dW_dlambda", "1"));
        }
        let mut table = Table::new("", columns);
        let s = self.derivative_step;
        table.rows = par_rows(&lambda, |&l| {
            let w = self.tables(&ring(self.n, self.gamma, l, &m)?)?;
            let dw = if self.derivatives {
                let up = self.tables(&ring(self.n, self.gamma, l + s, &m)?)?;
                let down = self.tables(&ring(self.n, self.gamma, l - s, &m)?)?;
                Some((up, down))
            } else {
                None
            };
            let mut rows = Vec::with_capacity(16 * m.len());
            for (k, &mk) in m.iter().enumerate() {
                for (i, pt) in PhasePoint::all(2).iter().enumerate() {
                    let mut row: Vec<Cell> = vec![
                        l.into(),
                        mk.into(),
                        pt.x.into(),
                        pt.p.into(),
                        w[k][i].into(),
                    ];
                    if let Some((up, down)) = &dw {
                        row.push(((up[k][i] - down[k][i]) / (2.0 * s)).into());
                    }
                    rows.push(row);
                }
            }
            Ok(rows)
        })?;
        Ok(vec![table])
    }
}

/// Stratonovich generalized Wigner function of two or three ring sites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XyGwfConfig {
    pub gamma: f64,
    pub lambda: Grid,
    #[serde(default = "default_ring")]
    pub n: usize,
    /// Separations for two-site runs; three-site runs use consecutive sites.
    pub m: Option<Vec<usize>>,
    #[serde(default = "two_sites")]
    pub sites: usize,
    /// One entry per kernel configuration: `[θ, φ]` per site, in radians.
    pub angles: Vec<Vec<f64>>,
    /// Evaluate the kernel trace on `√ρ` instead of `ρ` (two sites only).
    #[serde(default)]
    pub sqrt_rho: bool,
    #[serde(default)]
    pub derivatives: bool,
    #[serde(default = "default_step")]
    pub derivative_step: f64,
}

fn two_sites() -> usize {
    2
}

impl XyGwfConfig {
    fn grids(&self) -> Result<(Vec<f64>, Vec<usize>, Vec<Vec<Angles>>)> {
        check_ring(self.gamma, self.n)?;
        check_step(self.derivatives, self.derivative_step)?;
        let lambda = self.lambda.values("lambda")?;
        let m = match (self.sites, &self.m) {
            (2, Some(m)) => check_separations(m, self.n)?,
            (2, None) => vec![1],
            (3, None) => vec![1, 2],
            (3, Some(_)) => {
                return Err(CliError::config(
                    "three-site GWF uses consecutive sites; remove `m`",
                ));
            }
            (s, _) => {
                return Err(CliError::config(format!(
                    "sites = {s} is unsupported; use 2 or 3"
                )))
            }
        };
        if self.sites == 3 && self.sqrt_rho {
            return Err(CliError::config(
                "sqrt_rho is available only for two sites: the three-site GWF is built from pair correlators",
            ));
        }
        if self.angles.is_empty() {
            return Err(CliError::config("list `angles` is empty"));
        }
        let angles = self
            .angles
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if a.len() != 2 * self.sites || a.iter().any(|x| !x.is_finite()) {
                    return Err(CliError::config(format!(
                        "angles[{i}] must hold {} finite numbers ([θ, φ] per site)",
                        2 * self.sites
                    )));
                }
                Ok(a.chunks(2).map(|p| Angles::new(p[0], p[1])).collect())
            })
            .collect::<Result<Vec<Vec<Angles>>>>()?;
        Ok((lambda, m, angles))
    }

    pub fn plan(&self) -> Result<Estimate> {
        let (lambda, m, angles) = self.grids()?;
        let solves = if self.derivatives { 3.0 } else { 1.0 };
        let outputs = if self.sites == 3 { 1 } else { m.len() };
        let max_sep = *m.last().expect("non-empty");
        Ok(Estimate {
            points: lambda.len(),
            records: lambda.len() * outputs * angles.len(),
            seconds: lambda.len() as f64
                * solves
                * (ring_cost(self.n, max_sep)
                    + (outputs * angles.len()) as f64 * if self.sqrt_rho { 2e-4 } else { 2e-6 }),
        })
    }

    /// Values indexed `[separation][configuration]`.
    fn values(&self, cs: &[SpinCorrelators], angles: &[Vec<Angles>]) -> Result<Vec<Vec<f64>>> {
        if self.sites == 3 {
            let c = ThreeSiteCorrelators::consecutive(&cs[0], &cs[1]);
            return Ok(vec![angles
                .iter()
                .map(|a| gwf_three(&c, [a[0], a[1], a[2]]))
                .collect()]);
        }
        cs.iter()
            .map(|c| {
                if !self.sqrt_rho {
                    return Ok(angles.iter().map(|a| gwf_two(c, a[0], a[1])).collect());
                }
                let ctx = || format!("two-site state at m = {}", c.m);
                let x = assemble_two(c).map_err(|e| CliError::numerical(ctx(), e))?;
                let r = matrix_sqrt_psd(x.density().matrix(), CLAMP_TOL)
                    .map_err(|e| CliError::numerical(ctx(), e))?;
                angles
                    .iter()
                    .map(|a| gwf_kernel_trace(&r, a).map_err(|e| CliError::numerical(ctx(), e)))
                    .collect()
            })
            .collect()
    }

    pub fn run(&self) -> Result<Vec<Table>> {
        let (lambda, m, angles) = self.grids()?;
        let mut columns = vec![
            col("lambda", "1"),
            col("m", "sites"),
            col("config", "index"),
            col("G", "1"),
        ];
        if self.derivatives {
            columns.push(col("dG_dlambda", "1"));
        }
        let mut table = Table::new("", columns);
        let s = self.derivative_step;
        let labels: Vec<usize> = if self.sites == 3 { vec![1] } else { m.clone() };
        table.rows = par_rows(&lambda, |&l| {
            let g = self.values(&ring(self.n, self.gamma, l, &m)?, &angles)?;
            let dg = if self.derivatives {
                let up = self.values(&ring(self.n, self.gamma, l + s, &m)?, &angles)?;
                let down = self.values(&ring(self.n, self.gamma, l - s, &m)?, &angles)?;
                Some((up, down))
            } else {
                None
            };
            let mut rows = Vec::new();
            for (k, &mk) in labels.iter().enumerate() {
                for i in 0..angles.len() {
                    let mut row: Vec<Cell> = vec![l.into(), mk.into(), i.into(), g[k][i].into()];
                    if let Some((up, down)) = &dg {
                        row.push(((up[k][i] - down[k][i]) / (2.0 * s)).into());
                    }
                    rows.push(row);
                }
            }
            Ok(rows)
        })?;
        Ok(vec![table])
    }
}
