use std::path::Path;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{ResolvedConfig, SuiteConfig};
use crate::error::{CliError, CliResult};
use crate::report::{write_json, Report, SuiteEntry, Summary};
use crate::run::run;

pub const THREADS_ENV: &str = "QQM_THREADS";

/// Seed for entry `index` of a suite seeded with `suite_seed`.
pub fn derive_seed(suite_seed: u64, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(suite_seed);
    rng.set_stream(index as u64);
    rng.next_u64()
}

/// Validates every entry before anything runs.
pub fn resolve_suite(suite: &SuiteConfig) -> CliResult<Vec<ResolvedConfig>> {
    suite
        .experiments
        .iter()
        .enumerate()
        .map(|(i, e)| e.resolve(derive_seed(suite.seed, i), &format!("experiments[{i}].")))
        .collect()
}

fn entry_dir(index: usize, cfg: &ResolvedConfig) -> String {
    format!("{index:02}_{}", cfg.experiment.name())
}

fn thread_cap() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::ConfigInvalid { field: THREADS_ENV.into(), message: format!("expected a positive integer, got {v:?}") }),
        },
    }
}

/// Runs every entry, in parallel, and writes `summary.json` into `out`.
/// Each entry writes into `out/<index>_<experiment>/` unless it names its
/// own `output_dir`.
pub fn run_all(suite: &SuiteConfig, out: &Path) -> CliResult<(Summary, Vec<Report>)> {
    let configs = resolve_suite(suite)?;
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let start = Instant::now();
    let work = || -> CliResult<Vec<Report>> {
        configs
            .par_iter()
            .enumerate()
            .map(|(i, cfg)| {
                let dir = cfg.output_dir.clone().unwrap_or_else(|| out.join(entry_dir(i, cfg)));
                run(cfg, &dir)
            })
            .collect()
    };
    let reports = match thread_cap()? {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::ConfigInvalid { field: THREADS_ENV.into(), message: e.to_string() })?
            .install(work)?,
        None => work()?,
    };
    let entries = reports
        .iter()
        .zip(&configs)
        .enumerate()
        .map(|(i, (r, cfg))| SuiteEntry {
            index: i,
            experiment: r.experiment.clone(),
            seed: cfg.seed,
            output_dir: cfg.output_dir.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| entry_dir(i, cfg)),
            pass: r.pass,
            failed_records: r.failures().map(|f| f.name.clone()).collect(),
            wall_time_ms: r.wall_time_ms,
        })
        .collect();
    let summary = Summary::new(suite.seed, entries, start.elapsed().as_millis() as u64);
    write_json(&out.join("summary.json"), &summary)?;
    Ok((summary, reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_seeds_differ_by_index_and_repeat() {
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
        assert_ne!(derive_seed(7, 3), derive_seed(7, 4));
        assert_ne!(derive_seed(7, 3), derive_seed(8, 3));
    }
}
