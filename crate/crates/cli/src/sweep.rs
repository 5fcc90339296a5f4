use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sisnet::dynamics::{all_infected, run_summary, run_with_mode, write_trajectory_jsonl, LogMode, ModelParams, Outcome, Variant};
use sisnet::seed::mix_path;

use crate::config::ExperimentConfig;
use crate::{graphs, output, Failure, VERSION};

/// One replicate of the sweep, as written to `sweep.jsonl` and `sweep.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "type")]
    pub kind: String,
    pub n: usize,
    pub lambda: f64,
    pub alpha: f64,
    pub variant: Variant,
    pub replicate: usize,
    pub graph_seed: u64,
    pub run_seed: u64,
    pub outcome: Outcome,
    pub events: u64,
}

#[derive(Serialize)]
struct Header<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    version: &'static str,
    config: &'a ExperimentConfig,
}

struct Task {
    n: usize,
    li: usize,
    replicate: usize,
}

/// Replicate `r` at size `n` uses a graph seeded by `mix_path(seed, [0, n, r])`
/// and a run seeded by `mix_path(seed, [2, n, i, r])` for the `i`-th rate,
/// so results do not depend on scheduling or thread count.
pub fn run(cfg: &ExperimentConfig) -> Result<(), Failure> {
    let mode = cfg.log_mode.unwrap_or(LogMode::Thinned);
    let tasks: Vec<Task> = graphs::sizes(cfg)
        .into_iter()
        .flat_map(|n| (0..cfg.lambda.len()).flat_map(move |li| (0..cfg.replicates).map(move |replicate| Task { n, li, replicate })))
        .collect();
    if tasks.is_empty() {
        return Err(Failure::Usage("nothing to run: no replicates".into()));
    }
    output::write_config(cfg)?;
    let traj_dir = cfg.out.join("trajectories");
    if mode == LogMode::Full {
        std::fs::create_dir_all(&traj_dir)?;
    }
    let config = cfg.to_value();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build().map_err(anyhow::Error::from)?;
    let rows: Vec<SweepRow> = pool.install(|| {
        tasks
            .par_iter()
            .map(|t| {
                let graph_seed = mix_path(cfg.seed, &[0, t.n as u64, t.replicate as u64]);
                let g = graphs::load_or_build(cfg, t.n, graph_seed)?;
                let n = g.n();
                let lambda = cfg.lambda[t.li];
                let p = ModelParams::new(cfg.variant, lambda, cfg.alpha).map_err(|e| Failure::Usage(e.to_string()))?;
                let run_seed = mix_path(cfg.seed, &[2, t.n as u64, t.li as u64, t.replicate as u64]);
                let init = all_infected(n);
                let (outcome, events) = if mode == LogMode::Full {
                    let traj = run_with_mode(&g, &init, p, cfg.t_cap_for(n), run_seed, LogMode::Full)
                        .map_err(|e| Failure::Usage(e.to_string()))?;
                    if !traj.is_consistent() {
                        return Err(Failure::Violation(format!("inconsistent trajectory (n = {n}, replicate {})", t.replicate)));
                    }
                    let path = traj_dir.join(format!("n{n}_l{}_r{}.jsonl", t.li, t.replicate));
                    write_trajectory_jsonl(&traj, Some(&config), output::create(&path)?)?;
                    (traj.outcome, traj.event_count() as u64)
                } else {
                    let s = run_summary(&g, &init, p, cfg.t_cap_for(n), run_seed).map_err(|e| Failure::Usage(e.to_string()))?;
                    (s.outcome, s.events)
                };
                Ok(SweepRow {
                    kind: "run".into(),
                    n,
                    lambda,
                    alpha: cfg.alpha,
                    variant: cfg.variant,
                    replicate: t.replicate,
                    graph_seed,
                    run_seed,
                    outcome,
                    events,
                })
            })
            .collect::<Result<Vec<_>, Failure>>()
    })?;

    let mut jsonl = output::create(&cfg.out.join("sweep.jsonl"))?;
    serde_json::to_writer(&mut jsonl, &Header { kind: "header", version: VERSION, config: cfg }).map_err(anyhow::Error::from)?;
    jsonl.write_all(b"\n")?;
    for r in &rows {
        serde_json::to_writer(&mut jsonl, r).map_err(anyhow::Error::from)?;
        jsonl.write_all(b"\n")?;
    }
    jsonl.flush()?;

    let mut csv = output::create(&cfg.out.join("sweep.csv"))?;
    output::csv_preamble(&mut csv, cfg)?;
    writeln!(csv, "n,lambda,alpha,variant,replicate,graph_seed,run_seed,status,time,events")?;
    for r in &rows {
        let status = if r.outcome.is_censored() { "censored" } else { "extinct" };
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{}",
            r.n,
            r.lambda,
            r.alpha,
            r.variant,
            r.replicate,
            r.graph_seed,
            r.run_seed,
            status,
            r.outcome.time(),
            r.events
        )?;
    }
    csv.flush()?;
    let censored = rows.iter().filter(|r| r.outcome.is_censored()).count();
    println!("{} runs, {censored} censored", rows.len());
    Ok(())
}
