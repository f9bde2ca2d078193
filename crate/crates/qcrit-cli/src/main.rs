use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcrit_cli::{run, validate, CliError, Format, SweepConfig, TaskKind};

#[derive(Parser)]
#[command(
    name = "qcrit",
    version,
    about = "Parameter sweeps over critical spin models and phase-space functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pair correlations of the infinite XX chain.
    XxCorrelations(RunArgs),
    /// Two-site discrete Wigner function of the XY ring.
    XyDwf(RunArgs),
    /// Generalized Wigner function of the XY ring.
    XyGwf(RunArgs),
    /// DWF classes of the XXZ ring across the anisotropy.
    XxzScan(RunArgs),
    /// Work statistics of an LMG field quench.
    LmgQuench(RunArgs),
    /// Wigner function of a single bosonic mode.
    CvWigner(RunArgs),
    /// Measures of catalogue states.
    NamedStateReport(RunArgs),
    /// Runs whatever task the config names.
    Run(RunArgs),
    /// Checks a config and prints a cost estimate without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Overrides the config's `format`.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads; defaults to QCRIT_THREADS, then to all cores.
    #[arg(long)]
    threads: Option<usize>,
}

fn sweep(expected: Option<TaskKind>, args: &RunArgs) -> Result<(), CliError> {
    let config = SweepConfig::load(&args.config)?;
    let kind = config.task.kind();
    if let Some(want) = expected {
        if want != kind {
            return Err(CliError::config(format!(
                "subcommand {} was given a config for task {}",
                want.name(),
                kind.name()
            )));
        }
    }
    let manifest = run(&config, &args.out, args.format, args.threads)?;
    for f in &manifest.files {
        println!(
            "wrote {} ({} records)",
            args.out.join(&f.path).display(),
            f.records
        );
    }
    println!(
        "{} finished in {:.3} s on {} threads",
        kind.name(),
        manifest.wall_time_seconds,
        manifest.threads
    );
    Ok(())
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::XxCorrelations(a) => sweep(Some(TaskKind::XxCorrelations), &a),
        Command::XyDwf(a) => sweep(Some(TaskKind::XyDwf), &a),
        Command::XyGwf(a) => sweep(Some(TaskKind::XyGwf), &a),
        Command::XxzScan(a) => sweep(Some(TaskKind::XxzScan), &a),
        Command::LmgQuench(a) => sweep(Some(TaskKind::LmgQuench), &a),
        Command::CvWigner(a) => sweep(Some(TaskKind::CvWigner), &a),
        Command::NamedStateReport(a) => sweep(Some(TaskKind::NamedStateReport), &a),
        Command::Run(a) => sweep(None, &a),
        Command::Validate { config } => {
            let config = SweepConfig::load(&config)?;
            let e = validate(&config)?;
            println!(
                "ok: task {}, {} grid points, {} records, estimated {:.2} s on one thread",
                config.task.kind().name(),
                e.points,
                e.records,
                e.seconds
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qcrit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
