use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _};
use chab::config::{Experiment, ExperimentConfig, CONFIG_VERSION};
use chab::experiment::{run, Outcome};
use chab::figures::FigureSpec;
use chab::output::resolve_out_dir;
use chabauty::{classify, SequenceSchedule, SequenceSpec};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "chab",
    version,
    about = "Chabauty spaces of R and C*: experiments and figures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureKind {
    LinePoints,
    DBouquet,
    Pinching,
    Layer,
    DecayCurve,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render one figure.
    Figure {
        kind: FigureKind,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 4)]
        m_max: u32,
        #[arg(long, default_value_t = 4)]
        q_max: u32,
        /// Lattice generators for line-points (repeatable).
        #[arg(long = "r", num_args = 1..)]
        r: Vec<f64>,
        /// Truncation radius for line-points and decay-curve.
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = 1)]
        p: i64,
        #[arg(long, default_value_t = 2)]
        q: i64,
        /// Sequence schedule JSON for decay-curve.
        #[arg(long)]
        schedule: Option<PathBuf>,
        #[arg(long = "n", num_args = 1..)]
        n: Vec<u64>,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare grid and brute-force Hausdorff engines on random clouds.
    SweepOracle {
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        max_size: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the limit of a sequence given by its limiting parameters (JSON).
    Classify { spec: PathBuf },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn report(outcome: &Outcome) -> ExitCode {
    for f in &outcome.files {
        println!("{}", f.display());
    }
    if outcome.status.exit_code() != 0 {
        eprintln!("numeric failure: results are flagged {:?}", outcome.status);
    }
    ExitCode::from(outcome.status.exit_code() as u8)
}

fn execute(cli: Cli) -> anyhow::Result<ExitCode> {
    let (config, flag_out) = match cli.command {
        Command::Classify { spec } => {
            let spec: SequenceSpec = read_json(&spec)?;
            let limit = classify(&spec)?;
            println!("{}", serde_json::to_string(&limit)?);
            return Ok(ExitCode::SUCCESS);
        }
        Command::Run { config, out } => (ExperimentConfig::load(&config)?, out),
        Command::SweepOracle {
            pairs,
            seed,
            max_size,
            out,
        } => (
            ExperimentConfig {
                version: CONFIG_VERSION,
                out: None,
                seed,
                experiment: Experiment::OracleSweep {
                    pairs,
                    max_size,
                    tol: 1e-12,
                },
            },
            out,
        ),
        Command::Figure {
            kind,
            m,
            m_max,
            q_max,
            r,
            radius,
            p,
            q,
            schedule,
            n,
            step,
            out,
        } => {
            let figure = match kind {
                FigureKind::LinePoints => FigureSpec::LinePoints {
                    r: if r.is_empty() { vec![1.0, 0.1] } else { r },
                    radius: radius.unwrap_or(50.0),
                },
                FigureKind::DBouquet => FigureSpec::DBouquet { m_max },
                FigureKind::Pinching => FigureSpec::Pinching {
                    m,
                    p,
                    q,
                    slopes: vec![-2.0, -1.0, 0.0, 1.0, 2.0],
                },
                FigureKind::Layer => FigureSpec::Layer { m, q_max },
                FigureKind::DecayCurve => {
                    let Some(path) = schedule else {
                        bail!("decay-curve needs --schedule <file.json>");
                    };
                    let schedule: SequenceSchedule = read_json(&path)?;
                    FigureSpec::DecayCurve {
                        schedule,
                        n: if n.is_empty() { vec![10, 100, 1000] } else { n },
                        radius: radius.unwrap_or(100.0),
                        step,
                    }
                }
            };
            let config = ExperimentConfig {
                version: CONFIG_VERSION,
                out: None,
                seed: 0,
                experiment: Experiment::Figure { figure },
            };
            config.validate()?;
            (config, out)
        }
    };
    let dir = resolve_out_dir(flag_out.as_deref(), config.out.as_deref());
    let outcome = run(&config, &dir)?;
    Ok(report(&outcome))
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
