use serde::Serialize;

use crate::dynamics::Trajectory;

/// Piecewise-constant `V_t = |A_t| - η |I_t|` with one breakpoint per
/// transition. The jump chain `U_k` is `values[k]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DriftSeries {
    pub eta: f64,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl DriftSeries {
    /// `U_k`, the value after the `k`-th jump (`U_0 = V_0`).
    pub fn jumps(&self) -> &[f64] {
        &self.values
    }

    /// `V_t` (breakpoints at exactly `t` applied).
    pub fn value_at(&self, t: f64) -> f64 {
        let k = self.times.partition_point(|&s| s <= t);
        self.values[k.saturating_sub(1)]
    }
}

pub fn drift_series(traj: &Trajectory, eta: f64) -> DriftSeries {
    let v = |infected: usize, isolated: usize| isolated as f64 - eta * infected as f64;
    DriftSeries {
        eta,
        times: traj.series.iter().map(|p| p.t).collect(),
        values: traj.series.iter().map(|p| v(p.infected, p.isolated)).collect(),
    }
}
