use std::path::Path;

use serde::de::DeserializeOwned;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};
use crate::table::Format;
use crate::tasks::{
    CvWignerConfig, LmgQuenchConfig, NamedStateConfig, XxCorrelationsConfig, XxzScanConfig,
    XyDwfConfig, XyGwfConfig,
};

/// The sweep tasks, one per CLI subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    XxCorrelations,
    XyDwf,
    XyGwf,
    XxzScan,
    LmgQuench,
    CvWigner,
    NamedStateReport,
}

impl TaskKind {
    pub const ALL: [TaskKind; 7] = [
        TaskKind::XxCorrelations,
        TaskKind::XyDwf,
        TaskKind::XyGwf,
        TaskKind::XxzScan,
        TaskKind::LmgQuench,
        TaskKind::CvWigner,
        TaskKind::NamedStateReport,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TaskKind::XxCorrelations => "xx-correlations",
            TaskKind::XyDwf => "xy-dwf",
            TaskKind::XyGwf => "xy-gwf",
            TaskKind::XxzScan => "xxz-scan",
            TaskKind::LmgQuench => "lmg-quench",
            TaskKind::CvWigner => "cv-wigner",
            TaskKind::NamedStateReport => "named-state-report",
        }
    }
}

/// Task-specific parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum TaskConfig {
    XxCorrelations(XxCorrelationsConfig),
    XyDwf(XyDwfConfig),
    XyGwf(XyGwfConfig),
    XxzScan(XxzScanConfig),
    LmgQuench(LmgQuenchConfig),
    CvWigner(CvWignerConfig),
    NamedStateReport(NamedStateConfig),
}

impl TaskConfig {
    pub fn kind(&self) -> TaskKind {
        match self {
            TaskConfig::XxCorrelations(_) => TaskKind::XxCorrelations,
            TaskConfig::XyDwf(_) => TaskKind::XyDwf,
            TaskConfig::XyGwf(_) => TaskKind::XyGwf,
            TaskConfig::XxzScan(_) => TaskKind::XxzScan,
            TaskConfig::LmgQuench(_) => TaskKind::LmgQuench,
            TaskConfig::CvWigner(_) => TaskKind::CvWigner,
            TaskConfig::NamedStateReport(_) => TaskKind::NamedStateReport,
        }
    }
}

/// A parsed sweep configuration.
///
/// The file is TOML with the common keys `task`, `output` (file stem) and
/// `format`; every other key belongs to the task and unknown keys are rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub task: TaskConfig,
    pub output: String,
    pub format: Format,
    /// SHA-256 of the canonical JSON form of the parsed file.
    pub hash: String,
}

fn take<T: DeserializeOwned>(table: &mut toml::Table, key: &str) -> Result<Option<T>> {
    match table.remove(key) {
        None => Ok(None),
        Some(v) => v
            .try_into()
            .map(Some)
            .map_err(|e| CliError::config(format!("key `{key}`: {e}"))),
    }
}

fn task_params<T: DeserializeOwned>(rest: toml::Table, task: TaskKind) -> Result<T> {
    toml::Value::Table(rest)
        .try_into()
        .map_err(|e| CliError::config(format!("{} parameters: {e}", task.name())))
}

/// Hash of the configuration content, independent of comments, whitespace and key order.
pub fn config_hash(table: &toml::Table) -> String {
    let json = serde_json::to_value(table).expect("TOML values map onto JSON");
    hex(&Sha256::digest(canonical_json(&json).as_bytes()))
}

fn canonical_json(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let body: Vec<String> = keys
                .iter()
                .map(|k| {
                    format!(
                        "{}:{}",
                        serde_json::Value::from(k.as_str()),
                        canonical_json(&m[*k])
                    )
                })
                .collect();
            format!("{{{}}}", body.join(","))
        }
        serde_json::Value::Array(a) => format!(
            "[{}]",
            a.iter().map(canonical_json).collect::<Vec<_>>().join(",")
        ),
        other => other.to_string(),
    }
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| CliError::config(e.to_string()))?;
        let hash = config_hash(&table);
        let mut rest = table;
        let kind: TaskKind =
            take(&mut rest, "task")?.ok_or_else(|| CliError::config("missing key `task`"))?;
        let output: Option<String> = take(&mut rest, "output")?;
        let format: Option<Format> = take(&mut rest, "format")?;
        let task = match kind {
            TaskKind::XxCorrelations => TaskConfig::XxCorrelations(task_params(rest, kind)?),
            TaskKind::XyDwf => TaskConfig::XyDwf(task_params(rest, kind)?),
            TaskKind::XyGwf => TaskConfig::XyGwf(task_params(rest, kind)?),
            TaskKind::XxzScan => TaskConfig::XxzScan(task_params(rest, kind)?),
            TaskKind::LmgQuench => TaskConfig::LmgQuench(task_params(rest, kind)?),
            TaskKind::CvWigner => TaskConfig::CvWigner(task_params(rest, kind)?),
            TaskKind::NamedStateReport => TaskConfig::NamedStateReport(task_params(rest, kind)?),
        };
        let output = output.unwrap_or_else(|| kind.name().replace('-', "_"));
        if output.is_empty() || output.contains(['/', '\\']) || output.starts_with('.') {
            return Err(CliError::config(format!(
                "output stem `{output}` must be a plain file name"
            )));
        }
        Ok(SweepConfig {
            task,
            output,
            format: format.unwrap_or(Format::Csv),
            hash,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}
