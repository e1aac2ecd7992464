use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qqm_cli::{run, run_all, CliError, ExperimentConfig, ExperimentKind, Report, SuiteConfig};

#[derive(Parser)]
#[command(name = "qqm", version, about = "Quaternionic measurement algebra experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment.
    Run {
        /// JSON experiment config. Flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        experiment: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory for report.json and traces.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Imaginary components of η, e.g. `0,1,0`.
        #[arg(long, value_parser = parse_eta, allow_hyphen_values = true)]
        eta: Option<[f64; 3]>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Run every experiment listed in a suite file.
    Suite {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_eta(s: &str) -> Result<[f64; 3], String> {
    let parts = s.split(',').map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"))).collect::<Result<Vec<_>, _>>()?;
    parts.try_into().map_err(|v: Vec<f64>| format!("expected three components x,y,z, got {}", v.len()))
}

fn print_report(r: &Report) {
    for rec in &r.records {
        let status = if rec.pass { "ok  " } else { "FAIL" };
        println!("  {status} {:<36} {:>12.3e}  (tol {:.1e})", rec.name, rec.max_deviation, rec.tolerance);
    }
    println!("{}: {} ({} ms)", r.experiment, if r.pass { "pass" } else { "FAIL" }, r.wall_time_ms);
}

fn execute(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Run { config, experiment, seed, out, eta, trials } => {
            let mut cfg = match &config {
                Some(path) => ExperimentConfig::from_path(path)?,
                None => ExperimentConfig::default(),
            };
            if let Some(name) = experiment {
                let kind = ExperimentKind::parse(&name).ok_or_else(|| CliError::ConfigInvalid {
                    field: "experiment".into(),
                    message: format!("unknown experiment {name:?}"),
                })?;
                cfg.experiment = Some(kind);
            }
            if seed.is_some() {
                cfg.seed = seed;
            }
            if eta.is_some() {
                cfg.eta = eta;
            }
            if trials.is_some() {
                cfg.trials = trials;
            }
            if out.is_some() {
                cfg.output_dir = out;
            }
            let resolved = cfg.resolve(0, "")?;
            let dir = qqm_cli::output_dir(&resolved, &PathBuf::from("qqm-out"));
            let report = run(&resolved, &dir)?;
            print_report(&report);
            println!("report: {}", dir.join("report.json").display());
            Ok(report.pass)
        }
        Command::Suite { file, out } => {
            let suite = SuiteConfig::from_path(&file)?;
            let dir = out.or_else(|| suite.output_dir.clone()).unwrap_or_else(|| PathBuf::from("qqm-out"));
            let (summary, reports) = run_all(&suite, &dir)?;
            for r in &reports {
                print_report(r);
            }
            let passed = summary.entries.iter().filter(|e| e.pass).count();
            println!(
                "suite: {passed}/{} experiments passed in {} ms; summary: {}",
                summary.entries.len(),
                summary.wall_time_ms,
                dir.join("summary.json").display()
            );
            Ok(summary.pass)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
