//! Proof-level observables extracted from trajectories, analytic reference
//! quantities, and the finite-size scaling classifier.
//!
//! Everything here is a pure function of an immutable [`Trajectory`] or a
//! table of outcomes.
//!
//! [`Trajectory`]: crate::dynamics::Trajectory

mod analytic;
mod drift;
mod phases;
mod renewal;
mod scaling;
mod stars;
mod stats;

pub use analytic::{center_reinfection_q, gambler_ruin_prob};
pub use drift::{drift_series, DriftSeries};
pub use phases::{extract_phases, PhaseKind, PhaseRecord};
pub use renewal::{renewal_cycles, renewal_cycles_in, renewal_levels, RenewalHit, RenewalLevels, RenewalOutcome};
pub use scaling::{fit_scaling, Classification, ExponentialFit, LinearFit, ScalingReport, SizeSamples, SizeSummary};
pub use stars::{hub_star_stats, lit_count, lit_count_at, lit_counts_at, HubStarSeries, HubStarStats};
pub use stats::{ks_distance, median};

use thiserror::Error;

/// Default drift weight in `V_t = |A_t| - η |I_t|`.
pub const DEFAULT_ETA: f64 = 0.01;
/// Default lit threshold: a hub star is lit with at least `δ m` infected leaves.
pub const DEFAULT_DELTA: f64 = 0.1;
/// Default renewal scale: levels `εn/3`, `2εn/3`, `εn`.
pub const DEFAULT_EPS: f64 = 0.1;

#[derive(Debug, Error, PartialEq)]
pub enum ObservablesError {
    #[error("trajectory has no per-vertex events (thinned log)")]
    Unavailable,
    #[error("renewal levels collide for eps = {eps}, n = {n}: {levels:?}")]
    LevelCollision { eps: f64, n: usize, levels: [usize; 3] },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
