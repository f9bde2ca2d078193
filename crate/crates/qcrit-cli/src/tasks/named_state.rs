use qcrit::correlations::{coherence_qjsd, correlation_report, relative_entropy_coherence, XState};
use qcrit::qstate::{named_state, von_neumann_entropy, DensityMatrix, NamedState};
use serde::{Deserialize, Serialize};

use super::{par_rows, Estimate};
use crate::error::{CliError, Result};
use crate::grid::Grid;
use crate::table::{col, Cell, Table};

pub const MAX_GHZ_QUBITS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Two-qubit `(1-p)/4 I + p|Ψ-⟩⟨Ψ-|`, swept over `p`.
    Werner,
    /// Single-qubit `p|0⟩⟨0| + (1-p)|+⟩⟨+|`, swept over `p`.
    WernerMix,
    Bell,
    Plus,
    Ghz,
}

/// Correlation and coherence measures of a catalogue state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedStateConfig {
    pub family: Family,
    /// Mixing parameter, required by the parametric families.
    pub p: Option<Grid>,
    /// Qubit count of the GHZ state.
    pub qubits: Option<usize>,
}

fn density(s: NamedState) -> Result<DensityMatrix> {
    Ok(named_state(s)
        .map_err(|e| CliError::numerical(format!("{s:?}"), e))?
        .density())
}

fn two_qubit_row(rho: DensityMatrix, ctx: &str) -> Result<Vec<Cell>> {
    let entropy = von_neumann_entropy(&rho);
    let x = XState::new(rho).map_err(|e| CliError::numerical(ctx, e))?;
    let r = correlation_report(&x).map_err(|e| CliError::numerical(ctx, e))?;
    Ok(vec![
        r.concurrence.into(),
        r.eof.into(),
        r.discord.into(),
        r.classical.into(),
        r.coherence_qjsd.into(),
        entropy.into(),
    ])
}

fn coherence_row(rho: &DensityMatrix, ctx: &str) -> Result<Vec<Cell>> {
    Ok(vec![
        von_neumann_entropy(rho).into(),
        coherence_qjsd(rho)
            .map_err(|e| CliError::numerical(ctx, e))?
            .into(),
        relative_entropy_coherence(rho).into(),
    ])
}

impl NamedStateConfig {
    fn grid(&self) -> Result<Option<Vec<f64>>> {
        let parametric = matches!(self.family, Family::Werner | Family::WernerMix);
        match (parametric, &self.p) {
            (true, None) => {
                return Err(CliError::config(format!(
                    "family {:?} needs a `p` grid",
                    self.family
                )))
            }
            (false, Some(_)) => {
                return Err(CliError::config(format!(
                    "family {:?} takes no `p`",
                    self.family
                )))
            }
            _ => {}
        }
        match (self.family, self.qubits) {
            (Family::Ghz, Some(q)) if !(2..=MAX_GHZ_QUBITS).contains(&q) => {
                return Err(CliError::config(format!(
                    "GHZ qubits = {q} must lie in [2, {MAX_GHZ_QUBITS}]"
                )));
            }
            (Family::Ghz, None) => return Err(CliError::config("family ghz needs `qubits`")),
            (f, Some(_)) if f != Family::Ghz => {
                return Err(CliError::config("only family ghz takes `qubits`"))
            }
            _ => {}
        }
        let Some(g) = &self.p else { return Ok(None) };
        let p = g.values("p")?;
        if let Some(x) = p.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(CliError::config(format!(
                "mixing parameter p = {x} must lie in [0, 1]"
            )));
        }
        Ok(Some(p))
    }

    pub fn plan(&self) -> Result<Estimate> {
        let points = self.grid()?.map_or(1, |p| p.len());
        Ok(Estimate {
            points,
            records: points,
            seconds: points as f64 * 5e-5,
        })
    }

    pub fn run(&self) -> Result<Vec<Table>> {
        let p = self.grid()?;
        let measures = [
            col("C", "1"),
            col("EoF", "ebits"),
            col("QD", "bits"),
            col("CC", "bits"),
            col("QC", "1"),
            col("S", "bits"),
        ];
        let single = [col("S", "bits"), col("QC", "1"), col("C_rel", "bits")];
        let table = match self.family {
            Family::Werner => {
                let mut t = Table::new("", [col("p", "1")].into_iter().chain(measures).collect());
                t.rows = par_rows(p.as_deref().expect("checked"), |&p| {
                    let mut row: Vec<Cell> = vec![p.into()];
                    row.extend(two_qubit_row(
                        density(NamedState::Werner(p))?,
                        &format!("Werner p = {p}"),
                    )?);
                    Ok(vec![row])
                })?;
                t
            }
            Family::WernerMix => {
                let mut t = Table::new("", [col("p", "1")].into_iter().chain(single).collect());
                t.rows = par_rows(p.as_deref().expect("checked"), |&p| {
                    let mut row: Vec<Cell> = vec![p.into()];
                    row.extend(coherence_row(
                        &density(NamedState::WernerMix(p))?,
                        &format!("mixture p = {p}"),
                    )?);
                    Ok(vec![row])
                })?;
                t
            }
            Family::Bell => {
                let mut t = Table::new("", measures.to_vec());
                t.rows
                    .push(two_qubit_row(density(NamedState::Bell)?, "Bell state")?);
                t
            }
            Family::Plus => {
                let mut t = Table::new("", single.to_vec());
                t.rows
                    .push(coherence_row(&density(NamedState::Plus)?, "plus state")?);
                t
            }
            Family::Ghz => {
                let q = self.qubits.expect("checked");
                let mut t =
                    Table::new("", [col("qubits", "1")].into_iter().chain(single).collect());
                let mut row: Vec<Cell> = vec![q.into()];
                row.extend(coherence_row(&density(NamedState::Ghz(q))?, "GHZ state")?);
                t.rows.push(row);
                t
            }
        };
        Ok(vec![table])
    }
}
