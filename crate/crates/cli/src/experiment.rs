//! Runs a configured experiment and persists its artifacts.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::Context as _;
use chabauty::format::fmt_real;
use chabauty::{oracle, verify_convergence_lenient};
use serde::Serialize;
use serde_json::json;

use crate::config::{Experiment, ExperimentConfig};
use crate::figures::{self, emit_decay_curve};
use crate::output::write_atomic;

pub const RESULTS_JSON: &str = "results.json";
pub const DATA_CSV: &str = "data.csv";
pub const FIGURE_SVG: &str = "figure.svg";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// Some numeric work failed; the artifacts hold whatever succeeded.
    Partial,
    Failed,
}

impl Status {
    /// Process exit code: 0 for success, 2 for numeric failure.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Partial | Status::Failed => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub files: Vec<PathBuf>,
}

struct Artifacts {
    results: serde_json::Value,
    csv: Option<String>,
    svg: Option<String>,
    status: Status,
}

fn persist(dir: &Path, a: Artifacts) -> anyhow::Result<Outcome> {
    let mut files = Vec::new();
    let mut results = a.results;
    results["status"] = json!(a.status);
    let mut text = serde_json::to_string_pretty(&results)?;
    text.push('\n');
    files.push(write_atomic(dir, RESULTS_JSON, text.as_bytes()).context("writing results")?);
    if let Some(csv) = a.csv {
        files.push(write_atomic(dir, DATA_CSV, csv.as_bytes()).context("writing csv")?);
    }
    if let Some(svg) = a.svg {
        files.push(write_atomic(dir, FIGURE_SVG, svg.as_bytes()).context("writing svg")?);
    }
    Ok(Outcome {
        status: a.status,
        files,
    })
}

/// Runs the experiment and writes `results.json`, plus `data.csv` and
/// `figure.svg` where they apply.
pub fn run(config: &ExperimentConfig, out: &Path) -> anyhow::Result<Outcome> {
    let artifacts = match &config.experiment {
        Experiment::Decay {
            schedule,
            n,
            radius,
            step,
        } => {
            let (table, failures) = verify_convergence_lenient(schedule, n, *radius, *step)?;
            let status = match (failures.is_empty(), table.rows.is_empty()) {
                (true, _) => Status::Ok,
                (false, false) => Status::Partial,
                (false, true) => Status::Failed,
            };
            let failures: Vec<_> = failures
                .iter()
                .map(|(n, e)| json!({ "n": n, "error": e.to_string() }))
                .collect();
            let svg = (!table.rows.is_empty()).then(|| emit_decay_curve(&table).svg);
            Artifacts {
                results: json!({
                    "config": config,
                    "limit": table.limit,
                    "rows": table.rows,
                    "decays_to_floor": table.decays_to_floor(),
                    "failures": failures,
                }),
                csv: Some(table.to_csv()),
                svg,
                status,
            }
        }
        Experiment::Figure { figure } => {
            let fig = figures::emit(figure)?;
            Artifacts {
                results: json!({ "config": config, "figure": fig.meta }),
                csv: Some(fig.csv),
                svg: Some(fig.svg),
                status: Status::Ok,
            }
        }
        Experiment::OracleSweep {
            pairs,
            max_size,
            tol,
        } => {
            let report = oracle::sweep(*pairs, *max_size, config.seed, *tol)?;
            let mut csv = String::from("space,pairs,mismatches,max_abs_diff\n");
            for s in &report.spaces {
                let space = serde_json::to_value(s.space)?;
                let _ = writeln!(
                    csv,
                    "{},{},{},{}",
                    space.as_str().unwrap_or_default(),
                    s.pairs,
                    s.mismatches,
                    fmt_real(s.max_abs_diff)
                );
            }
            let status = if report.mismatches() == 0 {
                Status::Ok
            } else {
                Status::Failed
            };
            Artifacts {
                results: json!({ "config": config, "report": report, "mismatches": report.mismatches() }),
                csv: Some(csv),
                svg: None,
                status,
            }
        }
    };
    persist(out, artifacts)
}
