use qcrit::correlations::{correlation_report, CorrelationReport};
use qcrit::fermion::{xx_two_site_rho, DERIVATIVE_STEP};
use serde::{Deserialize, Serialize};

use super::{par_rows, product, Estimate};
use crate::error::{CliError, Result};
use crate::grid::{int_list, Grid};
use crate::table::{col, Cell, Table};

/// Separations with a closed-form two-site state.
pub const ANALYTIC_SEPARATIONS: [usize; 3] = [2, 3, 4];

/// Pair correlations of the infinite XX chain in a field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XxCorrelationsConfig {
    /// Field `h` in units of the exchange.
    pub h: Grid,
    /// Temperature in units of the exchange.
    #[serde(default = "zero_temperature")]
    pub t: Grid,
    pub m: Vec<usize>,
    /// Adds `d/dh` of C, QD and QC by central differences.
    #[serde(default)]
    pub derivatives: bool,
    #[serde(default = "default_step")]
    pub derivative_step: f64,
}

fn zero_temperature() -> Grid {
    Grid::Single(0.0)
}

fn default_step() -> f64 {
    DERIVATIVE_STEP
}

fn report(m: usize, h: f64, t: f64) -> Result<CorrelationReport> {
    let ctx = || format!("m = {m}, h = {h}, T = {t}");
    let x = xx_two_site_rho(m, h, t).map_err(|e| CliError::numerical(ctx(), e))?;
    correlation_report(&x).map_err(|e| CliError::numerical(ctx(), e))
}

impl XxCorrelationsConfig {
    fn grids(&self) -> Result<(Vec<f64>, Vec<f64>, Vec<usize>)> {
        let h = self.h.values("h")?;
        let t = self.t.values("t")?;
        if let Some(x) = t.iter().find(|&&x| x < 0.0) {
            return Err(CliError::config(format!("temperature {x} is negative")));
        }
        let m = int_list(&self.m, "m")?;
        if let Some(bad) = m.iter().find(|k| !ANALYTIC_SEPARATIONS.contains(k)) {
            return Err(CliError::config(format!(
                "m = {bad} is unsupported: the analytic XX two-site state exists only for m ≤ 4 (m ∈ {{2, 3, 4}}); \
                 use the xy-dwf or xy-gwf ring tasks with gamma = 0 for larger separations"
            )));
        }
        if self.derivatives && !(self.derivative_step > 0.0 && self.derivative_step.is_finite()) {
            return Err(CliError::config("derivative_step must be positive"));
        }
        Ok((h, t, m))
    }

    pub fn plan(&self) -> Result<Estimate> {
        let (h, t, m) = self.grids()?;
        let points = h.len() * t.len() * m.len();
        let per_point = if self.derivatives { 3.0 } else { 1.0 };
        let thermal = t.iter().filter(|&&x| x > 0.0).count() as f64 / t.len() as f64;
        let unit = 2e-5 + thermal * 5e-5;
        Ok(Estimate {
            points,
            records: points,
            seconds: points as f64 * per_point * unit,
        })
    }

    pub fn run(&self) -> Result<Vec<Table>> {
        let (h, t, m) = self.grids()?;
        let mut columns = vec![
            col("h", "J"),
            col("T", "J/k_B"),
            col("m", "sites"),
            col("C", "1"),
            col("QD", "bits"),
            col("CC", "bits"),
            col("QC", "1"),
        ];
        if self.derivatives {
            columns.extend([
                col("dC_dh", "1/J"),
                col("dQD_dh", "bits/J"),
                col("dQC_dh", "1/J"),
            ]);
        }
        let mut table = Table::new("", columns);
        let points: Vec<((f64, f64), usize)> = product(&product(&t, &h), &m)
            .into_iter()
            .map(|((t, h), m)| ((h, t), m))
            .collect();
        table.rows = par_rows(&points, |&((h, t), m)| {
            let r = report(m, h, t)?;
            let mut row: Vec<Cell> = vec![
                h.into(),
                t.into(),
                m.into(),
                r.concurrence.into(),
                r.discord.into(),
                r.classical.into(),
                r.coherence_qjsd.into(),
            ];
            if self.derivatives {
                let s = self.derivative_step;
                let (up, down) = (report(m, h + s, t)?, report(m, h - s, t)?);
                let d = |f: fn(&CorrelationReport) -> f64| (f(&up) - f(&down)) / (2.0 * s);
                row.extend([
                    d(|r| r.concurrence).into(),
                    d(|r| r.discord).into(),
                    d(|r| r.coherence_qjsd).into(),
                ]);
            }
            Ok(vec![row])
        })?;
        Ok(vec![table])
    }
}
