use qcrit::xxz::{xxz_dwf_row, MAX_SITES};
use serde::{Deserialize, Serialize};

use super::{par_rows, Estimate};
use crate::error::{CliError, Result};
use crate::grid::Grid;
use crate::table::{col, Table};

fn default_ring() -> usize {
    16
}

/// Nearest-neighbor DWF classes of the XXZ ring across the anisotropy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XxzScanConfig {
    #[serde(default = "default_ring")]
    pub n: usize,
    pub delta: Grid,
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl XxzScanConfig {
    fn grid(&self) -> Result<Vec<f64>> {
        if self.n % 2 != 0 || !(2..=MAX_SITES).contains(&self.n) {
            return Err(CliError::config(format!(
                "XXZ ring size n = {} must be even and in [2, {MAX_SITES}]",
                self.n
            )));
        }
        self.delta.values("delta")
    }

    pub fn plan(&self) -> Result<Estimate> {
        let delta = self.grid()?;
        // Lanczos on the zero-magnetization sector: ~200 matrix-vector products
        let per_point = 200.0 * binomial(self.n, self.n / 2) * self.n as f64 * 2.7e-9;
        Ok(Estimate {
            points: delta.len(),
            records: delta.len(),
            seconds: delta.len() as f64 * per_point,
        })
    }

    pub fn run(&self) -> Result<Vec<Table>> {
        let delta = self.grid()?;
        let mut table = Table::new(
            "",
            vec![
                col("delta", "1"),
                col("xx", "1"),
                col("zz", "1"),
                col("corner", "1"),
                col("edge", "1"),
                col("rest", "1"),
                col("w_max", "1"),
                col("w_min", "1"),
            ],
        );
        table.rows = par_rows(&delta, |&d| {
            let r = xxz_dwf_row(self.n, d)
                .map_err(|e| CliError::numerical(format!("delta = {d}"), e))?;
            Ok(vec![vec![
                d.into(),
                r.correlators.xx.into(),
                r.correlators.zz.into(),
                r.corner.into(),
                r.edge.into(),
                r.rest.into(),
                r.w_max.into(),
                r.w_min.into(),
            ]])
        })?;
        Ok(vec![table])
    }
}
