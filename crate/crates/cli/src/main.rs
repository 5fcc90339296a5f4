//! `sisnet`: seeded experiment pipelines for the SIS contact process with
//! isolation and vigilance.
//!
//! Exit status is 0 on success (including expected findings such as an
//! attractiveness violation), 1 when an invariant is violated, and 2 on
//! usage or input errors.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod analyze;
mod config;
mod couple;
mod generate;
mod graphs;
mod output;
mod simulate;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sisnet::dynamics::{LogMode, Variant};

use config::ExperimentConfig;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum Failure {
    /// Bad flags, configuration or input files.
    Usage(String),
    /// A checked invariant does not hold.
    Violation(String),
    /// Anything else (output I/O, worker pool).
    Runtime(anyhow::Error),
}

impl Failure {
    pub fn input(e: anyhow::Error) -> Self {
        Failure::Usage(format!("{e:#}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "sisnet", version, about = "Contact-process experiments with isolation and vigilance")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// JSON experiment configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed; every run derives its own stream from it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory (created if missing).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Trajectory logging: `full` or `thinned`.
    #[arg(long, global = true, value_parser = parse_log_mode)]
    log_mode: Option<LogMode>,
}

fn parse_log_mode(s: &str) -> Result<LogMode, String> {
    s.parse()
}

/// Overrides shared by the simulation commands.
#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long)]
    variant: Option<Variant>,
    /// Infection rate; repeat or comma-separate for a grid.
    #[arg(long, value_delimiter = ',')]
    lambda: Vec<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    /// System sizes; repeat or comma-separate.
    #[arg(long = "n", value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long)]
    replicates: Option<usize>,
    #[arg(long)]
    t_cap: Option<f64>,
    /// Use this edge list instead of generating graphs.
    #[arg(long)]
    graph_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write generated graphs (edge list plus JSON metadata) for each size.
    Generate {
        #[arg(long = "n", value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Plant a star of stars of this order.
        #[arg(long)]
        plant: Option<usize>,
    },
    /// Run one trajectory from the all-infected state.
    Simulate(ModelArgs),
    /// Extinction times over a grid of sizes and infection rates.
    Sweep(ModelArgs),
    /// Pathwise domination and attractiveness checks on shared marks.
    Couple {
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        horizon: Option<f64>,
        /// Check the swapped (wrong) domination direction; must fail.
        #[arg(long)]
        self_test_corrupt: bool,
    },
    /// Fit extinction-time scaling to sweep outputs in a directory.
    Analyze {
        /// Directory holding `sweep*.jsonl` files.
        input: PathBuf,
    },
}

impl ModelArgs {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        if let Some(v) = self.variant {
            cfg.variant = v;
        }
        if !self.lambda.is_empty() {
            cfg.lambda = self.lambda.clone();
        }
        if let Some(a) = self.alpha {
            cfg.alpha = a;
        }
        if !self.sizes.is_empty() {
            cfg.sizes = self.sizes.clone();
        }
        if let Some(r) = self.replicates {
            cfg.replicates = r;
        }
        if self.t_cap.is_some() {
            cfg.t_cap = self.t_cap;
        }
        if self.graph_file.is_some() {
            cfg.graph_file = self.graph_file.clone();
        }
    }
}

fn resolve(cli: &Cli) -> Result<ExperimentConfig, Failure> {
    let mut cfg = match &cli.common.config {
        Some(p) => ExperimentConfig::load(p).map_err(Failure::input)?,
        None => ExperimentConfig::default(),
    };
    let c = &cli.common;
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    if let Some(o) = &c.out {
        cfg.out = o.clone();
    }
    if let Some(t) = c.threads {
        cfg.threads = t;
    }
    if c.log_mode.is_some() {
        cfg.log_mode = c.log_mode;
    }
    match &cli.command {
        Command::Generate { sizes, plant } => {
            if !sizes.is_empty() {
                cfg.sizes = sizes.clone();
            }
            if plant.is_some() {
                cfg.plant_order = *plant;
            }
        }
        Command::Simulate(m) | Command::Sweep(m) => m.apply(&mut cfg),
        Command::Couple { trials, horizon, .. } => {
            if let Some(t) = trials {
                cfg.trials = *t;
            }
            if let Some(h) = horizon {
                cfg.horizon = *h;
            }
        }
        Command::Analyze { .. } => {}
    }
    cfg.validate().map_err(Failure::Usage)?;
    Ok(cfg)
}

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    let cfg = resolve(cli)?;
    std::fs::create_dir_all(&cfg.out)
        .map_err(|e| Failure::Usage(format!("creating output directory {}: {e}", cfg.out.display())))?;
    match &cli.command {
        Command::Generate { .. } => generate::run(&cfg),
        Command::Simulate(_) => simulate::run(&cfg),
        Command::Sweep(_) => sweep::run(&cfg),
        Command::Couple { self_test_corrupt, .. } => couple::run(&cfg, *self_test_corrupt),
        Command::Analyze { input } => analyze::run(&cfg, input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
