use num_complex::Complex64;
use qcrit::cv::{
    cv_state, cv_state_auto, negativity_volume, wigner_row, CvKind, GridSpec, WignerGrid,
    DEFAULT_CUTOFF,
};
use serde::{Deserialize, Serialize};

use super::{par_rows, Estimate};
use crate::error::{CliError, Result};
use crate::table::{col, Table};

/// Single-mode state families; complex amplitudes are `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CvStateConfig {
    FockSuperposition([usize; 2]),
    Cat([f64; 2]),
    Coherent([f64; 2]),
    Squeezed(f64),
}

impl CvStateConfig {
    fn kind(&self) -> CvKind {
        match *self {
            CvStateConfig::FockSuperposition([a, b]) => CvKind::FockSuperposition(a, b),
            CvStateConfig::Cat([re, im]) => CvKind::Cat(Complex64::new(re, im)),
            CvStateConfig::Coherent([re, im]) => CvKind::Coherent(Complex64::new(re, im)),
            CvStateConfig::Squeezed(r) => CvKind::Squeezed(r),
        }
    }
}

/// Phase-space window and resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

fn default_window() -> WindowConfig {
    let d = GridSpec::default();
    WindowConfig {
        min: d.x_min,
        max: d.x_max,
        points: d.nx,
    }
}

fn default_cutoff() -> usize {
    DEFAULT_CUTOFF
}

fn yes() -> bool {
    true
}

/// Wigner function of one bosonic mode on a rectangular grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CvWignerConfig {
    pub state: CvStateConfig,
    #[serde(default = "default_cutoff")]
    pub cutoff: usize,
    /// Doubles the cutoff until the truncated norm is acceptable.
    #[serde(default = "yes")]
    pub auto_cutoff: bool,
    #[serde(default = "default_window")]
    pub x: WindowConfig,
    #[serde(default = "default_window")]
    pub p: WindowConfig,
}

impl CvWignerConfig {
    fn spec(&self) -> Result<GridSpec> {
        for (name, w) in [("x", self.x), ("p", self.p)] {
            if !(w.min.is_finite() && w.max.is_finite()) || w.max <= w.min || w.points < 2 {
                return Err(CliError::config(format!(
                    "window `{name}` needs finite min < max and at least 2 points"
                )));
            }
        }
        if self.cutoff == 0 {
            return Err(CliError::config("cutoff must be positive"));
        }
        Ok(GridSpec {
            x_min: self.x.min,
            x_max: self.x.max,
            p_min: self.p.min,
            p_max: self.p.max,
            nx: self.x.points,
            np: self.p.points,
        })
    }

    pub fn plan(&self) -> Result<Estimate> {
        let spec = self.spec()?;
        let cells = spec.nx * spec.np;
        let seconds = cells as f64 * self.cutoff as f64 * 3e-7;
        Ok(Estimate {
            points: spec.np,
            records: cells + 1,
            seconds,
        })
    }

    pub fn run(&self) -> Result<Vec<Table>> {
        let spec = self.spec()?;
        let kind = self.state.kind();
        let state = if self.auto_cutoff {
            cv_state_auto(kind, self.cutoff)
        } else {
            cv_state(kind, self.cutoff)
        }
        .map_err(|e| CliError::numerical("state preparation", e))?;
        let (xs, ps) = (spec.xs(), spec.ps());
        let rows: Vec<usize> = (0..spec.np).collect();
        let mut grid = Table::new("", vec![col("x", "1"), col("p", "1"), col("W", "1")]);
        grid.rows = par_rows(&rows, |&ip| {
            Ok(wigner_row(&state, &spec, ip)
                .into_iter()
                .zip(&xs)
                .map(|(w, &x)| vec![x.into(), ps[ip].into(), w.into()])
                .collect())
        })?;
        let w = WignerGrid {
            spec,
            values: grid.numbers("W").expect("column W"),
        };
        let mut summary = Table::new(
            "_summary",
            vec![
                col("cutoff", "photons"),
                col("integral", "1"),
                col("abs_integral", "1"),
                col("negativity", "1"),
                col("W_origin", "1"),
            ],
        );
        summary.rows.push(vec![
            state.cutoff().into(),
            w.integral().into(),
            w.abs_integral().into(),
            negativity_volume(&w).into(),
            state.wigner_at_origin().into(),
        ]);
        Ok(vec![grid, summary])
    }
}
