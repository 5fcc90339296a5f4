use serde::Serialize;

use super::ObservablesError;
use crate::dynamics::Trajectory;

/// The three renewal levels `round(εn/3) < round(2εn/3) < round(εn)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RenewalLevels {
    pub low: usize,
    pub mid: usize,
    pub high: usize,
}

pub fn renewal_levels(eps: f64, n: usize) -> Result<RenewalLevels, ObservablesError> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(ObservablesError::InvalidParameter(format!("eps must be in (0, 1], got {eps}")));
    }
    let scale = eps * n as f64;
    let level = |f: f64| (scale * f).round() as usize;
    let (low, mid, high) = (level(1.0 / 3.0), level(2.0 / 3.0), level(1.0));
    if !(low < mid && mid < high) {
        return Err(ObservablesError::LevelCollision { eps, n, levels: [low, mid, high] });
    }
    Ok(RenewalLevels { low, mid, high })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RenewalHit {
    /// Reached `εn` first.
    Upper,
    /// Reached `εn/3` first.
    Lower,
    /// The series ended in between.
    Unresolved,
}

/// One excursion of `|I_t|` started at the middle level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RenewalOutcome {
    pub index: usize,
    pub start_time: f64,
    pub start_level: usize,
    pub hit: RenewalHit,
    pub hit_level: Option<usize>,
    pub hit_time: Option<f64>,
}

impl RenewalOutcome {
    pub fn success(&self) -> bool {
        self.hit == RenewalHit::Upper
    }
}

/// Excursions of a `(t, |I_t|)` step series from the middle level to
/// whichever outer level comes first.
pub fn renewal_cycles_in(
    points: impl IntoIterator<Item = (f64, usize)>,
    levels: RenewalLevels,
) -> Vec<RenewalOutcome> {
    let mut out = Vec::new();
    let mut open: Option<f64> = None;
    for (t, i) in points {
        match open {
            None if i == levels.mid => open = Some(t),
            Some(start) if i == levels.high || i == levels.low => {
                let hit = if i == levels.high { RenewalHit::Upper } else { RenewalHit::Lower };
                out.push(RenewalOutcome {
                    index: out.len(),
                    start_time: start,
                    start_level: levels.mid,
                    hit,
                    hit_level: Some(i),
                    hit_time: Some(t),
                });
                open = None;
            }
            _ => {}
        }
    }
    if let Some(start) = open {
        out.push(RenewalOutcome {
            index: out.len(),
            start_time: start,
            start_level: levels.mid,
            hit: RenewalHit::Unresolved,
            hit_level: None,
            hit_time: None,
        });
    }
    out
}

pub fn renewal_cycles(traj: &Trajectory, eps: f64, n: usize) -> Result<Vec<RenewalOutcome>, ObservablesError> {
    let levels = renewal_levels(eps, n)?;
    Ok(renewal_cycles_in(traj.series.iter().map(|p| (p.t, p.infected)), levels))
}
