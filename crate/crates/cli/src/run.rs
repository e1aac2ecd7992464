use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::config::ResolvedConfig;
use crate::error::{CliError, CliResult};
use crate::experiments::execute;
use crate::report::Report;

/// Runs one experiment and writes `report.json` plus trace CSVs into `out`.
pub fn run(cfg: &ResolvedConfig, out: &Path) -> CliResult<Report> {
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let start = Instant::now();
    let outcome = execute(cfg)?;
    let report = Report::new(cfg.clone(), outcome.records, start.elapsed().as_millis() as u64);
    for trace in &outcome.traces {
        let path = out.join(&trace.file);
        std::fs::write(&path, &trace.csv).map_err(|e| CliError::io(&path, e))?;
    }
    report.write(&out.join("report.json"))?;
    Ok(report)
}

/// `cfg.output_dir`, else `fallback`.
pub fn output_dir(cfg: &ResolvedConfig, fallback: &Path) -> PathBuf {
    cfg.output_dir.clone().unwrap_or_else(|| fallback.to_path_buf())
}
