//! Exact continuous-time simulation of the four model variants.
//!
//! Every vertex carries a state in `{0, 1, -1}` (healthy, infected,
//! isolated). The per-vertex transition rates are
//!
//! | state | transition | classical | isolation | vigilance | comparison |
//! |-------|------------|-----------|-----------|-----------|------------|
//! | 0     | 0 → 1      | λ·#inf nbrs | λ·#inf nbrs | λ·#inf nbrs | λ·#inf nbrs |
//! | 0     | 0 → −1     | –         | –         | –         | α          |
//! | 1     | 1 → 0      | 1         | 1         | 1         | 1          |
//! | 1     | 1 → −1     | –         | α         | α·#healthy nbrs | α    |
//! | −1    | −1 → 0     | –         | 1         | 1         | 1          |
//!
//! Sampling uses the Gillespie direct method: one exponential clock at the
//! total rate, then a vertex drawn from a sum tree over per-vertex rates,
//! then the transition within the vertex.

mod engine;
mod export;
mod state;
mod sumtree;
mod trajectory;

pub use engine::{run, run_summary, run_with_mode, step, RunSummary, Step};
pub use export::{write_series_csv, write_trajectory_jsonl, TrajectorySummary};
pub use state::{audit_state, total_rates, Counts, RateTable, SystemState};
pub use sumtree::SumTree;
pub use trajectory::{Event, EventKind, LogMode, Outcome, SeriesPoint, Trajectory};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DynamicsError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("initial state has {got} entries, graph has {n} vertices")]
    StateLength { got: usize, n: usize },
    #[error("system state is inconsistent with the graph")]
    InconsistentState,
    #[error("total rate is zero; the chain is absorbed")]
    Absorbed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Classical,
    Isolation,
    Vigilance,
    Comparison,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Classical, Variant::Isolation, Variant::Vigilance, Variant::Comparison];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Classical => "classical",
            Variant::Isolation => "isolation",
            Variant::Vigilance => "vigilance",
            Variant::Comparison => "comparison",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = DynamicsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| DynamicsError::InvalidParameter(format!("unknown variant {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub variant: Variant,
    pub lambda: f64,
    /// Isolation (or vigilance) rate; ignored by the classical variant.
    pub alpha: f64,
}

impl ModelParams {
    pub fn new(variant: Variant, lambda: f64, alpha: f64) -> Result<Self, DynamicsError> {
        for (name, x) in [("lambda", lambda), ("alpha", alpha)] {
            if !(x.is_finite() && x >= 0.0) {
                return Err(DynamicsError::InvalidParameter(format!("{name} must be finite and >= 0, got {x}")));
            }
        }
        Ok(Self { variant, lambda, alpha })
    }

    pub fn classical(lambda: f64) -> Self {
        Self { variant: Variant::Classical, lambda, alpha: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
#[repr(i8)]
pub enum VertexState {
    Isolated = -1,
    Healthy = 0,
    Infected = 1,
}

impl VertexState {
    pub const ALL: [VertexState; 3] = [VertexState::Healthy, VertexState::Infected, VertexState::Isolated];
}

impl From<VertexState> for i8 {
    fn from(s: VertexState) -> i8 {
        s as i8
    }
}

impl TryFrom<i8> for VertexState {
    type Error = String;

    fn try_from(x: i8) -> Result<Self, String> {
        match x {
            -1 => Ok(VertexState::Isolated),
            0 => Ok(VertexState::Healthy),
            1 => Ok(VertexState::Infected),
            other => Err(format!("vertex state must be -1, 0 or 1, got {other}")),
        }
    }
}

/// All-infected initial condition used by every persistence experiment.
pub fn all_infected(n: usize) -> Vec<VertexState> {
    vec![VertexState::Infected; n]
}

/// Initial condition with exactly the listed vertices infected.
pub fn infected_set(n: usize, infected: &[usize]) -> Vec<VertexState> {
    let mut s = vec![VertexState::Healthy; n];
    for &v in infected {
        s[v] = VertexState::Infected;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validate() {
        assert!(ModelParams::new(Variant::Isolation, -1.0, 1.0).is_err());
        assert!(ModelParams::new(Variant::Isolation, 1.0, f64::NAN).is_err());
        assert!(ModelParams::new(Variant::Isolation, 0.0, 0.0).is_ok());
    }

    #[test]
    fn variant_names_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert!("sir".parse::<Variant>().is_err());
    }

    #[test]
    fn state_serializes_as_integer() {
        let json = serde_json::to_string(&[VertexState::Isolated, VertexState::Healthy, VertexState::Infected]).unwrap();
        assert_eq!(json, "[-1,0,1]");
        assert!(serde_json::from_str::<VertexState>("2").is_err());
    }
}
