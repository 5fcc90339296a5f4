//! Trajectory export: JSON lines for full logs, CSV step functions for
//! thinned ones. Both end with (or accompany) a summary record.

use std::io::{self, Write};

use serde::Serialize;

use super::{LogMode, Outcome, Trajectory};

#[derive(Debug, Clone, Serialize)]
pub struct TrajectorySummary<'a> {
    #[serde(rename = "type")]
    pub kind: &'static str,
    pub version: &'static str,
    pub n: usize,
    pub seed: Option<u64>,
    pub log_mode: LogMode,
    pub outcome: Outcome,
    pub censored: bool,
    pub extinction_time: Option<f64>,
    pub events: usize,
    pub final_infected: usize,
    pub final_isolated: usize,
    /// Experiment configuration that produced the trajectory, if any.
    pub config: Option<&'a serde_json::Value>,
}

impl<'a> TrajectorySummary<'a> {
    pub fn of(traj: &Trajectory, config: Option<&'a serde_json::Value>) -> Self {
        let last = traj.series.last().expect("series always has the initial point");
        Self {
            kind: "summary",
            version: env!("CARGO_PKG_VERSION"),
            n: traj.n(),
            seed: traj.seed,
            log_mode: if traj.events.is_some() { LogMode::Full } else { LogMode::Thinned },
            outcome: traj.outcome,
            censored: traj.outcome.is_censored(),
            extinction_time: traj.extinction_time(),
            events: traj.event_count(),
            final_infected: last.infected,
            final_isolated: last.isolated,
            config,
        }
    }
}

/// One `{"t":…,"v":…,"from":…,"to":…}` object per event, then the summary
/// record. Thinned trajectories produce only the summary.
pub fn write_trajectory_jsonl<W: Write>(traj: &Trajectory, config: Option<&serde_json::Value>, mut out: W) -> io::Result<()> {
    if let Some(events) = traj.events() {
        for e in events {
            serde_json::to_writer(&mut out, e)?;
            out.write_all(b"\n")?;
        }
    }
    serde_json::to_writer(&mut out, &TrajectorySummary::of(traj, config))?;
    out.write_all(b"\n")?;
    out.flush()
}

/// Step function `t,I,A`, one row per breakpoint.
pub fn write_series_csv<W: Write>(traj: &Trajectory, mut out: W) -> io::Result<()> {
    writeln!(out, "t,I,A")?;
    for p in &traj.series {
        writeln!(out, "{},{},{}", p.t, p.infected, p.isolated)?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{all_infected, run, run_with_mode, Event, ModelParams, Variant};
    use crate::netgen::Graph;

    #[test]
    fn jsonl_layout() {
        let g = Graph::path(3);
        let p = ModelParams::new(Variant::Isolation, 1.0, 1.0).unwrap();
        let t = run(&g, &all_infected(3), p, 100.0, 2).unwrap();
        let mut buf = Vec::new();
        write_trajectory_jsonl(&t, None, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), t.event_count() + 1);
        let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        let keys: Vec<&String> = first.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["from", "t", "to", "v"]);
        let parsed: Event = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(parsed, t.events().unwrap()[0]);
        let summary: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
        assert_eq!(summary["type"], "summary");
        assert_eq!(summary["events"], t.event_count());
    }

    #[test]
    fn thinned_exports() {
        let g = Graph::cycle(4);
        let p = ModelParams::classical(0.5);
        let t = run_with_mode(&g, &all_infected(4), p, 100.0, 1, LogMode::Thinned).unwrap();
        let mut buf = Vec::new();
        write_trajectory_jsonl(&t, None, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 1);
        let mut csv = Vec::new();
        write_series_csv(&t, &mut csv).unwrap();
        let csv = String::from_utf8(csv).unwrap();
        assert!(csv.starts_with("t,I,A\n0,4,0\n"));
        assert_eq!(csv.lines().count(), t.series.len() + 1);
    }
}
