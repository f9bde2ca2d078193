use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{hex, SweepConfig};
use crate::error::{CliError, Result};
use crate::table::{render, Format, Header};
use crate::tasks::{execute, plan, Estimate};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Environment variable that sets the worker count; unset or 0 means all cores.
pub const THREADS_ENV: &str = "QCRIT_THREADS";

#[derive(Debug, Clone, Serialize)]
pub struct FileRecord {
    pub path: String,
    pub records: usize,
    pub sha256: String,
}

/// Provenance of one run. Only this file carries timestamps.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub task: &'static str,
    pub config_sha256: String,
    pub format: Format,
    pub threads: usize,
    pub started_unix_seconds: u64,
    pub wall_time_seconds: f64,
    pub files: Vec<FileRecord>,
}

/// Worker count: the explicit value, else the environment variable, else all cores.
pub fn resolve_threads(explicit: Option<usize>) -> Result<usize> {
    let n = match explicit {
        Some(n) => n,
        None => match std::env::var(THREADS_ENV) {
            Ok(v) if !v.trim().is_empty() => v.trim().parse().map_err(|_| {
                CliError::config(format!("{THREADS_ENV} = `{v}` is not a thread count"))
            })?,
            _ => 0,
        },
    };
    Ok(if n == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        n
    })
}

pub fn validate(config: &SweepConfig) -> Result<Estimate> {
    plan(&config.task)
}

/// Runs the sweep and writes its data files and manifest into `out`.
pub fn run(
    config: &SweepConfig,
    out: &Path,
    format: Option<Format>,
    threads: Option<usize>,
) -> Result<Manifest> {
    let start = Instant::now();
    let started_unix_seconds = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    let format = format.unwrap_or(config.format);
    let threads = resolve_threads(threads)?;
    plan(&config.task)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::config(format!("cannot start {threads} worker threads: {e}")))?;
    let tables = pool.install(|| execute(&config.task))?;

    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let kind = config.task.kind();
    let header = Header {
        tool_version: VERSION,
        task: kind.name(),
        config_sha256: config.hash.clone(),
    };
    let mut files = Vec::with_capacity(tables.len());
    for t in &tables {
        let name = format!("{}{}.{}", config.output, t.suffix, format.extension());
        let text = render(t, &header, format)?;
        let path = out.join(&name);
        fs::write(&path, &text).map_err(|e| CliError::io(&path, e))?;
        files.push(FileRecord {
            path: name,
            records: t.rows.len(),
            sha256: hex(&Sha256::digest(text.as_bytes())),
        });
    }
    let manifest = Manifest {
        tool: "qcrit",
        version: VERSION,
        task: kind.name(),
        config_sha256: config.hash.clone(),
        format,
        threads,
        started_unix_seconds,
        wall_time_seconds: start.elapsed().as_secs_f64(),
        files,
    };
    let path = manifest_path(config, out);
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&path, json + "\n").map_err(|e| CliError::io(&path, e))?;
    Ok(manifest)
}

pub fn manifest_path(config: &SweepConfig, out: &Path) -> PathBuf {
    out.join(format!("{}.manifest.json", config.output))
}
