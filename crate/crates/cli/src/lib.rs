//! Scenario runner: reads a scenario file, runs the decomposition pipeline
//! and writes CSV output.

pub mod catalog;
pub mod output;
pub mod scenario;

use std::path::{Path, PathBuf};

use airy_core::config::ScenarioConfig;
use airy_core::Exec;

pub use catalog::list_scenarios;
pub use scenario::{compute, ScenarioResult, StageError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Outcome of one scenario: exit code and a message for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub code: i32,
    pub message: String,
}

/// Runs the scenario at `config` and writes its files into `out_dir`.
pub fn run_scenario(config: &Path, out_dir: &Path, exec: Exec) -> RunOutcome {
    let fail = |code, message: String| RunOutcome {
        code,
        message: format!("{}: {message}", config.display()),
    };
    let cfg = match ScenarioConfig::load(config) {
        Ok(cfg) => cfg,
        Err(e) => return fail(EXIT_CONFIG, e.to_string()),
    };
    let base_dir = config.parent().unwrap_or(Path::new("."));
    let result = match compute(&cfg, base_dir, exec) {
        Ok(result) => result,
        Err(e) if e.is_config() => return fail(EXIT_CONFIG, e.to_string()),
        Err(e) => return fail(EXIT_NUMERICAL, e.to_string()),
    };
    match output::write_all(out_dir, &result) {
        Ok(()) => RunOutcome {
            code: EXIT_OK,
            message: format!("{}: wrote {}", config.display(), out_dir.display()),
        },
        Err(e) => fail(EXIT_IO, format!("writing {}: {e}", out_dir.display())),
    }
}

/// Output directory for each config: `out_dir` itself for a single run,
/// `out_dir/<file stem>` otherwise.
pub fn output_dirs(configs: &[PathBuf], out_dir: &Path) -> Vec<PathBuf> {
    if configs.len() == 1 {
        return vec![out_dir.to_path_buf()];
    }
    configs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let stem = c.file_stem().map_or_else(
                || format!("scenario{i}"),
                |s| s.to_string_lossy().into_owned(),
            );
            out_dir.join(stem)
        })
        .collect()
}

/// Runs several scenarios, at most `jobs` at a time; outcomes keep the
/// order of `configs`.
pub fn run_all(configs: &[PathBuf], out_dir: &Path, jobs: usize, exec: Exec) -> Vec<RunOutcome> {
    let dirs = output_dirs(configs, out_dir);
    let work: Vec<(&PathBuf, &PathBuf)> = configs.iter().zip(&dirs).collect();
    let mut outcomes = Vec::with_capacity(work.len());
    for batch in work.chunks(jobs.max(1)) {
        let batch_outcomes: Vec<RunOutcome> = std::thread::scope(|scope| {
            let handles: Vec<_> = batch
                .iter()
                .map(|(cfg, dir)| scope.spawn(move || run_scenario(cfg, dir, exec)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("scenario worker panicked"))
                .collect()
        });
        outcomes.extend(batch_outcomes);
    }
    outcomes
}
