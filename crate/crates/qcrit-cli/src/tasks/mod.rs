//! One module per sweep task. Each exposes a serde config, a `plan` that
//! validates it and estimates its cost, and a `run` that produces tables.

use rayon::prelude::*;

use crate::config::TaskConfig;
use crate::error::Result;
use crate::table::{Cell, Table};

pub mod cv_wigner;
pub mod lmg_quench;
pub mod named_state;
pub mod xx_correlations;
pub mod xxz_scan;
pub mod xy_ring;

pub use cv_wigner::CvWignerConfig;
pub use lmg_quench::LmgQuenchConfig;
pub use named_state::NamedStateConfig;
pub use xx_correlations::XxCorrelationsConfig;
pub use xxz_scan::XxzScanConfig;
pub use xy_ring::{XyDwfConfig, XyGwfConfig};

/// Outcome of validation: how much work the run involves.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    /// Independent grid points handed to the worker pool.
    pub points: usize,
    /// Output records over all files.
    pub records: usize,
    /// Rough single-thread wall time.
    pub seconds: f64,
}

pub fn plan(task: &TaskConfig) -> Result<Estimate> {
    match task {
        TaskConfig::XxCorrelations(c) => c.plan(),
        TaskConfig::XyDwf(c) => c.plan(),
        TaskConfig::XyGwf(c) => c.plan(),
        TaskConfig::XxzScan(c) => c.plan(),
        TaskConfig::LmgQuench(c) => c.plan(),
        TaskConfig::CvWigner(c) => c.plan(),
        TaskConfig::NamedStateReport(c) => c.plan(),
    }
}

/// Runs a validated task on the current rayon pool.
pub fn execute(task: &TaskConfig) -> Result<Vec<Table>> {
    plan(task)?;
    match task {
        TaskConfig::XxCorrelations(c) => c.run(),
        TaskConfig::XyDwf(c) => c.run(),
        TaskConfig::XyGwf(c) => c.run(),
        TaskConfig::XxzScan(c) => c.run(),
        TaskConfig::LmgQuench(c) => c.run(),
        TaskConfig::CvWigner(c) => c.run(),
        TaskConfig::NamedStateReport(c) => c.run(),
    }
}

/// Maps every point to its records in parallel and concatenates them in
/// grid order, so the output does not depend on scheduling.
pub(crate) fn par_rows<P, F>(points: &[P], f: F) -> Result<Vec<Vec<Cell>>>
where
    P: Sync,
    F: Fn(&P) -> Result<Vec<Vec<Cell>>> + Sync + Send,
{
    let chunks: Vec<Vec<Vec<Cell>>> = points.par_iter().map(f).collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Cartesian product of two lists, first index major.
pub(crate) fn product<A: Copy, B: Copy>(a: &[A], b: &[B]) -> Vec<(A, B)> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| (x, y)))
        .collect()
}
