//! Experiment configuration: one JSON file per experiment, every field
//! optional, command-line flags layered on top.

use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::{Deserialize, Serialize};
use sisnet::dynamics::{LogMode, Variant};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSpec {
    /// Erased configuration model on power-law degrees; `d_max` defaults
    /// to `n - 1`.
    PowerLaw { gamma: f64, d_min: u32, d_max: Option<u32> },
    /// Uniform simple `d`-regular graph.
    Regular { d: u32 },
    /// Star of stars of order `m` (the size list is ignored).
    StarOfStars { m: usize },
    Path,
    Cycle,
    Complete,
    /// Star with `n - 1` leaves.
    Star,
}

impl Default for GraphSpec {
    fn default() -> Self {
        GraphSpec::PowerLaw { gamma: 3.5, d_min: 3, d_max: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Master seed; every random quantity is derived from it.
    pub seed: u64,
    pub out: PathBuf,
    /// Worker threads for replicate-parallel commands (0 = all cores).
    pub threads: usize,
    /// Defaults to full for `simulate` and thinned for `sweep`.
    pub log_mode: Option<LogMode>,
    pub graph: GraphSpec,
    /// Edge list to use instead of generating from `graph`.
    pub graph_file: Option<PathBuf>,
    /// Plant a star of stars of this order into generated graphs.
    pub plant_order: Option<usize>,
    pub sizes: Vec<usize>,
    pub variant: Variant,
    pub lambda: Vec<f64>,
    pub alpha: f64,
    pub replicates: usize,
    /// Simulation cap; defaults to `50 n`.
    pub t_cap: Option<f64>,
    /// Mark horizon for coupling checks.
    pub horizon: f64,
    /// Mark sets per graph for domination, and attractiveness trials.
    pub trials: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            out: PathBuf::from("out"),
            threads: 0,
            log_mode: None,
            graph: GraphSpec::default(),
            graph_file: None,
            plant_order: None,
            sizes: vec![1000],
            variant: Variant::Isolation,
            lambda: vec![1.0],
            alpha: 1.0,
            replicates: 10,
            t_cap: None,
            horizon: 20.0,
            trials: 1000,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }

    pub fn t_cap_for(&self, n: usize) -> f64 {
        self.t_cap.unwrap_or(50.0 * n as f64)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.lambda.is_empty() {
            return Err("lambda grid is empty".into());
        }
        if self.lambda.iter().any(|&l| !(l >= 0.0 && l.is_finite())) || !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err("rates must be finite and non-negative".into());
        }
        if self.sizes.is_empty() && self.graph_file.is_none() && !matches!(self.graph, GraphSpec::StarOfStars { .. }) {
            return Err("size list is empty".into());
        }
        if self.t_cap.is_some_and(|t| !(t > 0.0)) {
            return Err("t_cap must be positive".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let mut c = ExperimentConfig {
            graph: GraphSpec::Regular { d: 3 },
            lambda: vec![0.5, 1.0],
            t_cap: Some(12.5),
            log_mode: Some(LogMode::Thinned),
            ..Default::default()
        };
        assert_eq!(serde_json::from_str::<ExperimentConfig>(&c.to_json()).unwrap(), c);
        c.graph = GraphSpec::PowerLaw { gamma: 2.5, d_min: 2, d_max: Some(40) };
        assert_eq!(serde_json::from_str::<ExperimentConfig>(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn partial_files_fill_defaults() {
        let c: ExperimentConfig = serde_json::from_str(r#"{"seed": 4, "graph": {"kind": "cycle"}}"#).unwrap();
        assert_eq!(c.seed, 4);
        assert_eq!(c.graph, GraphSpec::Cycle);
        assert_eq!(c.lambda, vec![1.0]);
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"sede": 4}"#).is_err());
    }

    #[test]
    fn empty_grid_rejected() {
        let c = ExperimentConfig { lambda: vec![], ..Default::default() };
        assert!(c.validate().is_err());
    }
}
