// Copyright 2026 photon-qsl Contributors
// SPDX-License-Identifier: Apache-2.0

//! Command line front end for the photon-qsl library.
//!
//! Exit codes: 0 success, 1 configuration or parameter error, 2 numerical
//! failure (including failed self checks), 3 I/O error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use photon_qsl::config::SweepVariable;
use photon_qsl::output::write_output;
use photon_qsl::selfcheck;
use photon_qsl::sweep::{run_point, run_sweep, run_sweep_parallel, solve_critical};
use photon_qsl::{OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "photon-qsl",
    version,
    about = "Quantum speed limits and information backflow for a dephasing polarization qubit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every derived quantity at one parameter point.
    Point(RunArgs),
    /// Tabulate the derived quantities across a configured sweep range.
    Sweep(SweepArgs),
    /// Locate the mixing angles where information backflow switches on.
    Critical(ConfigArgs),
    /// Run the built-in numerical cross-checks and report each one.
    Check,
}

#[derive(Args)]
struct ConfigArgs {
    /// Configuration file of `key = value` lines (`#` starts a comment).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Override one configuration key, e.g. `--set spectral.xi_rad=0.5`.
    /// May be given multiple times; later settings win.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Write results to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Result format.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Compute sweep rows across all available threads.
    #[arg(long)]
    parallel: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

fn build_config(args: &RunArgs) -> photon_qsl::Result<RunConfig> {
    let mut cfg = RunConfig::load(args.config.config.as_deref(), &args.config.set)?;
    if let Some(path) = &args.output {
        cfg.output_path = Some(path.clone());
    }
    if let Some(format) = args.format {
        cfg.format = format.into();
    }
    Ok(cfg)
}

fn run(cli: Cli) -> photon_qsl::Result<ExitCode> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Point(args) => {
            let cfg = build_config(&args)?;
            let row = run_point(&cfg)?;
            write_output(&[row], &cfg, SweepVariable::Xi.column_name(), &mut stdout)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep(args) => {
            let cfg = build_config(&args.run)?;
            let rows = if args.parallel {
                run_sweep_parallel(&cfg)?
            } else {
                run_sweep(&cfg)?
            };
            let column = cfg
                .sweep
                .as_ref()
                .map(|s| s.variable.column_name())
                .unwrap_or_else(|| SweepVariable::Xi.column_name());
            write_output(&rows, &cfg, column, &mut stdout)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Critical(args) => {
            let cfg = RunConfig::load(args.config.as_deref(), &args.set)?;
            let report = solve_critical(&cfg)?;
            write!(stdout, "{report}").map_err(|source| photon_qsl::Error::Io {
                path: "<stdout>".into(),
                source,
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check => {
            let results = selfcheck::run_all();
            for r in &results {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                println!("[{tag}] {}: {}", r.name, r.detail);
            }
            if selfcheck::all_passed(&results) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
