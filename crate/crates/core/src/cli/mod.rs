//! Plumbing behind the `verify` binary: configuration, suites, reports.
//!
//! `report.json` has the shape
//!
//! ```text
//! {
//!   "schema_version": 1,
//!   "timestamp": <unix seconds>,
//!   "config": { suite, seed, window, h, lattice_n, mass, spacing, qubits, depth, schema_version },
//!   "checks": [ { "id", "kind": "check" | "control", "pass", "metrics": {..}, "detail" } ],
//!   "summary": { checks, checks_passed, controls, controls_passed, exit_code }
//! }
//! ```
//!
//! Plot files are tab-separated with a header row:
//!
//! * `pauli_jordan.tsv`: `t, n, delta` for a few times and every site offset.
//! * `fermi_deviation.tsv`: `t, deviation`, trace distance at atom A per layer.
//! * `diamond_cells.tsv`: `t, x, part` for each cell of the diamond, `part` one
//!   of `cylinder`, `caps_t`, `caps_r`.

mod config;
mod explain;
mod suites;

use std::io::Write;
use std::path::Path;

use serde::Serialize;

pub use config::{ConfigError, RunConfig, Suite, KEYS, MAX_QUBITS, SCHEMA_VERSION};
pub use explain::{explain, REGISTRY};
pub use suites::{proof_cylinder, small_cylinders, CheckKind, CheckResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub checks_passed: usize,
    pub controls: usize,
    pub controls_passed: usize,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub timestamp: u64,
    pub config: RunConfig,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Pretty JSON with the timestamp on its own line.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data") + "\n"
    }
}

#[derive(Debug)]
pub struct RunOutcome {
    pub report: Report,
    /// `(file name, contents)` of the plot data.
    pub files: Vec<(&'static str, String)>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        self.report.summary.exit_code
    }
}

/// Runs the selected suites concurrently and assembles the report in suite
/// order.
pub fn run_checks(cfg: &RunConfig) -> Result<RunOutcome, ConfigError> {
    cfg.validate()?;
    let suites = cfg.suite.expand();
    let outputs: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| s.spawn(move || suites::run_one(suite, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite panicked"))
            .collect()
    });

    let mut checks = Vec::new();
    let mut files = Vec::new();
    for o in outputs {
        checks.extend(o.checks);
        files.extend(o.files);
    }
    let count = |kind: CheckKind, pass: bool| {
        checks
            .iter()
            .filter(|c| c.kind == kind && (!pass || c.pass))
            .count()
    };
    let mut summary = Summary {
        checks: count(CheckKind::Check, false),
        checks_passed: count(CheckKind::Check, true),
        controls: count(CheckKind::Control, false),
        controls_passed: count(CheckKind::Control, true),
        exit_code: EXIT_OK,
    };
    if summary.checks_passed < summary.checks {
        summary.exit_code = EXIT_FAIL;
    }
    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Ok(RunOutcome {
        report: Report {
            schema_version: SCHEMA_VERSION,
            timestamp,
            config: cfg.clone(),
            checks,
            summary,
        },
        files,
    })
}

fn write_file(dir: &Path, name: &str, contents: &str) -> std::io::Result<()> {
    let mut f = std::fs::File::create(dir.join(name))?;
    f.write_all(contents.as_bytes())
}

/// Runs the suites and writes `report.json` plus plot files to `cfg.out`.
/// Config and I/O errors are returned before anything is written.
pub fn run_suite(cfg: &RunConfig) -> Result<RunOutcome, ConfigError> {
    cfg.validate()?;
    let io_err = |e: std::io::Error| ConfigError::Io {
        path: cfg.out.display().to_string(),
        reason: e.to_string(),
    };
    std::fs::create_dir_all(&cfg.out).map_err(io_err)?;
    let outcome = run_checks(cfg)?;
    for (name, contents) in &outcome.files {
        write_file(&cfg.out, name, contents).map_err(io_err)?;
    }
    write_file(&cfg.out, "report.json", &outcome.report.to_json()).map_err(io_err)?;
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invalid_config_runs_nothing() {
        let dir = std::env::temp_dir().join("causalnet-cli-invalid");
        let cfg = RunConfig {
            qubits: 9,
            out: dir.clone(),
            ..RunConfig::default()
        };
        assert!(run_suite(&cfg).is_err());
        assert!(!dir.join("report.json").exists());
    }

    #[test]
    fn geometry_only_run() {
        let cfg = RunConfig {
            suite: Suite::Geometry,
            h: 0.1,
            ..RunConfig::default()
        };
        let out = run_checks(&cfg).unwrap();
        assert_eq!(out.exit_code(), EXIT_OK);
        assert!(out.report.checks.iter().all(|c| c.id.starts_with("geometry.")));
        assert!(out.report.checks.iter().all(|c| explain(&c.id).is_some()));
        assert_eq!(out.files.len(), 1);
    }
}
