use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Upper bound on the points one grid may expand to.
pub const MAX_GRID_POINTS: usize = 1_000_000;

/// A one-dimensional parameter grid: an explicit list, a single value, or an
/// arithmetic range whose points are computed from the integer index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    Range { start: f64, stop: f64, step: f64 },
    Values(Vec<f64>),
    Single(f64),
}

impl Grid {
    /// Expands the grid, rejecting empty, non-finite or non-monotone input.
    pub fn values(&self, name: &str) -> Result<Vec<f64>> {
        let v = match *self {
            Grid::Single(x) => vec![x],
            Grid::Values(ref v) => v.clone(),
            Grid::Range { start, stop, step } => {
                if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
                    return Err(CliError::config(format!(
                        "grid `{name}`: start, stop and step must be finite"
                    )));
                }
                if step <= 0.0 {
                    return Err(CliError::config(format!(
                        "grid `{name}`: step must be positive, got {step}"
                    )));
                }
                if stop < start {
                    return Err(CliError::config(format!(
                        "grid `{name}` is empty: stop {stop} < start {start}"
                    )));
                }
                // tolerate stop landing a rounding error short of a grid point
                let span = (stop - start) / step;
                let count = (span + 1e-9).floor() + 1.0;
                if count > MAX_GRID_POINTS as f64 {
                    return Err(CliError::config(format!(
                        "grid `{name}` has more than {MAX_GRID_POINTS} points"
                    )));
                }
                (0..count as usize)
                    .map(|i| start + step * i as f64)
                    .collect()
            }
        };
        if v.is_empty() {
            return Err(CliError::config(format!("grid `{name}` is empty")));
        }
        if v.len() > MAX_GRID_POINTS {
            return Err(CliError::config(format!(
                "grid `{name}` has more than {MAX_GRID_POINTS} points"
            )));
        }
        if let Some(x) = v.iter().find(|x| !x.is_finite()) {
            return Err(CliError::config(format!(
                "grid `{name}` contains the non-finite value {x}"
            )));
        }
        let increasing = v.windows(2).all(|w| w[1] > w[0]);
        let decreasing = v.windows(2).all(|w| w[1] < w[0]);
        if !(increasing || decreasing) {
            return Err(CliError::config(format!(
                "grid `{name}` must be strictly monotone"
            )));
        }
        Ok(v)
    }
}

/// Checks an integer list the way [`Grid::values`] checks a real one.
pub fn int_list(v: &[usize], name: &str) -> Result<Vec<usize>> {
    if v.is_empty() {
        return Err(CliError::config(format!("list `{name}` is empty")));
    }
    if !v.windows(2).all(|w| w[1] > w[0]) {
        return Err(CliError::config(format!(
            "list `{name}` must be strictly increasing"
        )));
    }
    Ok(v.to_vec())
}
