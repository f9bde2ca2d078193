use qcrit::lmg::{
    bin_work, diagonal_entropy, dos_histogram, lmg_spectrum, prepare_initial, quench,
    survival_probability, time_grid, work_distribution, work_moment, InitialSpec, InitialState,
    LmgParams, DEFAULT_BIN_SPACINGS,
};
use serde::{Deserialize, Serialize};

use super::{par_rows, Estimate};
use crate::error::{CliError, Result};
use crate::grid::Grid;
use crate::table::{col, Cell, Table};

/// Largest `N` for which the dense symmetry-breaking path is allowed.
pub const MAX_DENSE_SPINS: usize = 4000;
pub const MAX_SPINS: usize = 1_000_000;

/// Initial state of the quench, prepared at `h_i` without symmetry breaking.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialConfig {
    #[default]
    Ground,
    /// Eigenstate index in ascending order.
    Excited(usize),
    /// `(|φ+⟩ ± |φ-⟩)/√2`; the value is the sign.
    Fsb(i8),
    /// `c+|φ+⟩ + c-|φ-⟩`, normalized.
    Superposition([f64; 2]),
}

impl InitialConfig {
    fn spec(self) -> InitialSpec {
        match self {
            InitialConfig::Ground => InitialSpec::Ground,
            InitialConfig::Excited(k) => InitialSpec::Excited(k),
            InitialConfig::Fsb(s) => InitialSpec::Fsb(s),
            InitialConfig::Superposition([a, b]) => InitialSpec::Superposition(a, b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurvivalConfig {
    pub t_max: f64,
    pub points: usize,
}

fn default_spacings() -> f64 {
    DEFAULT_BIN_SPACINGS
}

/// Sudden field quench of the LMG model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LmgQuenchConfig {
    pub n: usize,
    pub h_i: f64,
    pub h_f: Grid,
    #[serde(default)]
    pub initial: InitialConfig,
    /// Symmetry-breaking field of the final Hamiltonian.
    #[serde(default)]
    pub epsilon: f64,
    /// Writes the binned work distribution of every `h_f`.
    #[serde(default)]
    pub distribution: bool,
    #[serde(default = "default_spacings")]
    pub bin_spacings: f64,
    pub survival: Option<SurvivalConfig>,
    /// Writes the density of states of the initial Hamiltonian.
    #[serde(default)]
    pub dos: bool,
}

impl LmgQuenchConfig {
    fn grid(&self) -> Result<Vec<f64>> {
        if !(2..=MAX_SPINS).contains(&self.n) {
            return Err(CliError::config(format!(
                "spin number n = {} must lie in [2, {MAX_SPINS}]",
                self.n
            )));
        }
        if !self.h_i.is_finite() || !self.epsilon.is_finite() {
            return Err(CliError::config("h_i and epsilon must be finite"));
        }
        if self.epsilon != 0.0 && self.n > MAX_DENSE_SPINS {
            return Err(CliError::config(format!(
                "epsilon != 0 needs dense diagonalization, limited to n <= {MAX_DENSE_SPINS}"
            )));
        }
        match self.initial {
            InitialConfig::Fsb(_) | InitialConfig::Superposition(_) if self.h_i >= 1.0 => {
                return Err(CliError::config(format!(
                    "symmetry-broken initial states need h_i < 1, got {}",
                    self.h_i
                )));
            }
            InitialConfig::Excited(k) if k > self.n => {
                return Err(CliError::config(format!(
                    "excited index {k} exceeds the {} levels",
                    self.n + 1
                )));
            }
            _ => {}
        }
        if !(self.bin_spacings > 0.0 && self.bin_spacings.is_finite()) {
            return Err(CliError::config("bin_spacings must be positive"));
        }
        if let Some(s) = self.survival {
            if !(s.t_max > 0.0 && s.t_max.is_finite()) || s.points < 2 {
                return Err(CliError::config(
                    "survival needs t_max > 0 and at least 2 points",
                ));
            }
        }
        self.h_f.values("h_f")
    }

    pub fn plan(&self) -> Result<Estimate> {
        let h_f = self.grid()?;
        let n = self.n as f64;
        let per_quench = if self.epsilon == 0.0 {
            1.2e-8 * n * n
        } else {
            4e-9 * n * n * n
        };
        let survival = self.survival.map_or(0.0, |s| s.points as f64 * n * 1e-8);
        let mut records = h_f.len() * (1 + self.survival.map_or(0, |s| s.points));
        if self.distribution {
            records += h_f.len() * 16;
        }
        Ok(Estimate {
            points: h_f.len(),
            records,
            seconds: h_f.len() as f64 * (per_quench + survival) + 2e-9 * n * n,
        })
    }

    fn initial(&self) -> Result<InitialState> {
        prepare_initial(self.initial.spec(), self.h_i, self.n)
            .map_err(|e| CliError::numerical("initial state", e))
    }

    pub fn run(&self) -> Result<Vec<Table>> {
        let h_f = self.grid()?;
        let init = self.initial()?;
        let times = self.survival.map(|s| time_grid(s.t_max, s.points));
        let per_point = par_rows(&h_f, |&hf| {
            let ctx = || format!("h_f = {hf}");
            let r = quench(&init, hf, self.epsilon).map_err(|e| CliError::numerical(ctx(), e))?;
            let d = work_distribution(&r);
            // one tagged record per output file: 0 main, 1 distribution, 2 survival
            let mut rows: Vec<Vec<Cell>> = vec![vec![
                Cell::Int(0),
                hf.into(),
                diagonal_entropy(&d).into(),
                work_moment(&r, 1).into(),
                work_moment(&r, 2).into(),
            ]];
            if self.distribution {
                match bin_work(&d, self.bin_spacings) {
                    Ok(hist) => rows.extend(hist.weights.iter().enumerate().map(|(i, &p)| {
                        vec![Cell::Int(1), hf.into(), hist.center(i).into(), p.into()]
                    })),
                    // too few atoms to define a level spacing: emit them unbinned
                    Err(qcrit::Error::Unsupported(_)) => rows.extend(
                        d.work
                            .iter()
                            .zip(&d.prob)
                            .map(|(&w, &p)| vec![Cell::Int(1), hf.into(), w.into(), p.into()]),
                    ),
                    Err(e) => return Err(CliError::numerical(ctx(), e)),
                }
            }
            if let Some(times) = &times {
                let l = survival_probability(&r, times);
                rows.extend(
                    times
                        .iter()
                        .zip(l)
                        .map(|(&t, l)| vec![Cell::Int(2), hf.into(), t.into(), l.into()]),
                );
            }
            Ok(rows)
        })?;

        let mut main = Table::new(
            "",
            vec![
                col("h_f", "J"),
                col("S_W", "bits"),
                col("W_mean", "J"),
                col("W2_mean", "J^2"),
            ],
        );
        let mut dist = Table::new("_pw", vec![col("h_f", "J"), col("W", "J"), col("P", "1")]);
        let mut surv = Table::new(
            "_survival",
            vec![col("h_f", "J"), col("t", "1/J"), col("L", "1")],
        );
        for mut row in per_point {
            let tag = row.remove(0);
            match tag {
                Cell::Int(0) => main.rows.push(row),
                Cell::Int(1) => dist.rows.push(row),
                _ => surv.rows.push(row),
            }
        }
        let mut tables = vec![main];
        if self.distribution {
            tables.push(dist);
        }
        if self.survival.is_some() {
            tables.push(surv);
        }
        if self.dos {
            let p = LmgParams::new(self.n, self.h_i, 0.0)
                .map_err(|e| CliError::numerical("spectrum", e))?;
            let spec = lmg_spectrum(&p).map_err(|e| CliError::numerical("spectrum", e))?;
            let hist =
                dos_histogram(&spec.values).map_err(|e| CliError::numerical("spectrum", e))?;
            let mut dos = Table::new("_dos", vec![col("E", "J"), col("count", "levels")]);
            dos.rows = hist
                .weights
                .iter()
                .enumerate()
                .map(|(i, &c)| vec![hist.center(i).into(), Cell::Int(c as i64)])
                .collect();
            tables.push(dos);
        }
        Ok(tables)
    }
}
