use sisnet::dynamics::{all_infected, run_with_mode, write_series_csv, write_trajectory_jsonl, LogMode, ModelParams};
use sisnet::seed::mix_path;

use crate::config::ExperimentConfig;
use crate::{graphs, output, Failure};

/// One run of the first configured size and rate. The graph is seeded by
/// `mix_path(seed, [0, n])` (as in `generate`) and the run by
/// `mix_path(seed, [1, n])`.
pub fn run(cfg: &ExperimentConfig) -> Result<(), Failure> {
    let n = graphs::sizes(cfg).first().copied().ok_or_else(|| Failure::Usage("no size given".into()))?;
    let g = graphs::load_or_build(cfg, n, mix_path(cfg.seed, &[0, n as u64]))?;
    let n = g.n();
    let p = ModelParams::new(cfg.variant, cfg.lambda[0], cfg.alpha).map_err(|e| Failure::Usage(e.to_string()))?;
    let mode = cfg.log_mode.unwrap_or(LogMode::Full);
    let traj = run_with_mode(&g, &all_infected(n), p, cfg.t_cap_for(n), mix_path(cfg.seed, &[1, n as u64]), mode)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    if !traj.is_consistent() {
        return Err(Failure::Violation("trajectory fails its replay check".into()));
    }
    output::write_config(cfg)?;
    let config = cfg.to_value();
    write_trajectory_jsonl(&traj, Some(&config), output::create(&cfg.out.join("trajectory.jsonl"))?)?;
    let mut csv = output::create(&cfg.out.join("series.csv"))?;
    output::csv_preamble(&mut csv, cfg)?;
    write_series_csv(&traj, csv)?;
    match traj.extinction_time() {
        Some(t) => println!("extinct at t = {t} after {} events", traj.event_count()),
        None => println!("censored at t = {} after {} events", traj.outcome.time(), traj.event_count()),
    }
    Ok(())
}
