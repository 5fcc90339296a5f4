use serde::{Deserialize, Serialize};

use super::ObservablesError;
use crate::dynamics::{Trajectory, VertexState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseKind {
    One,
    Zero,
    MinusOne,
}

impl From<VertexState> for PhaseKind {
    fn from(s: VertexState) -> Self {
        match s {
            VertexState::Infected => PhaseKind::One,
            VertexState::Healthy => PhaseKind::Zero,
            VertexState::Isolated => PhaseKind::MinusOne,
        }
    }
}

/// Maximal interval `[start, end]` during which the center holds one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseRecord {
    pub index: usize,
    pub start: f64,
    pub end: f64,
    pub kind: PhaseKind,
    /// One phase lasting more than `1 / (1 + α)`.
    pub long: bool,
    /// The phase was cut by the end of the observation window rather than
    /// ended by a transition of the center.
    pub censored: bool,
}

impl PhaseRecord {
    pub fn duration(&self) -> f64 {
        self.end - self.start
    }
}

/// Splits `[0, min(extinction, t_cap)]` into the phases of `center`.
pub fn extract_phases(traj: &Trajectory, center: usize, alpha: f64) -> Result<Vec<PhaseRecord>, ObservablesError> {
    let events = traj.events().ok_or(ObservablesError::Unavailable)?;
    if center >= traj.n() {
        return Err(ObservablesError::InvalidParameter(format!("center {center} out of range")));
    }
    if !(alpha >= 0.0) {
        return Err(ObservablesError::InvalidParameter(format!("alpha must be >= 0, got {alpha}")));
    }
    let horizon = traj.outcome.time();
    let threshold = 1.0 / (1.0 + alpha);
    let mut phases = Vec::new();
    let mut push = |start: f64, end: f64, kind: PhaseKind, censored: bool| {
        let index = phases.len();
        let long = kind == PhaseKind::One && end - start > threshold;
        phases.push(PhaseRecord { index, start, end, kind, long, censored });
    };
    let mut start = 0.0;
    let mut kind = PhaseKind::from(traj.initial[center]);
    for e in events.iter().filter(|e| e.v == center) {
        if e.t >= horizon {
            if e.t == horizon {
                push(start, horizon, kind, false);
                return Ok(phases);
            }
            break;
        }
        push(start, e.t, kind, false);
        start = e.t;
        kind = e.to.into();
    }
    push(start, horizon, kind, true);
    Ok(phases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{all_infected, run, Event, ModelParams, Outcome, SeriesPoint, Variant};
    use crate::netgen::Graph;
    use VertexState::*;

    fn lone(events: Vec<Event>, outcome: Outcome) -> Trajectory {
        let initial = vec![events.first().map_or(Healthy, |e| e.from)];
        let mut series = vec![SeriesPoint { t: 0.0, infected: usize::from(initial[0] == Infected), isolated: 0 }];
        for e in &events {
            series.push(SeriesPoint { t: e.t, infected: usize::from(e.to == Infected), isolated: usize::from(e.to == Isolated) });
        }
        Trajectory { initial, events: Some(events), series, end_time: outcome.time(), outcome, seed: None }
    }

    #[test]
    fn long_threshold() {
        let t = lone(vec![Event { t: 2.0, v: 0, from: Infected, to: Healthy }], Outcome::Extinct(2.0));
        let p = extract_phases(&t, 0, 1.0).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p[0].long && !p[0].censored);
        let t = lone(vec![Event { t: 0.3, v: 0, from: Infected, to: Healthy }], Outcome::Extinct(0.3));
        assert!(!extract_phases(&t, 0, 1.0).unwrap()[0].long);
        let t = lone(vec![Event { t: 0.5, v: 0, from: Infected, to: Healthy }], Outcome::Extinct(0.5));
        assert!(!extract_phases(&t, 0, 1.0).unwrap()[0].long);
    }

    #[test]
    fn never_infected_center() {
        let g = Graph::star(3);
        let init = vec![Healthy, Infected, Infected, Infected];
        let p = ModelParams::new(Variant::Isolation, 0.0, 1.0).unwrap();
        let t = run(&g, &init, p, 50.0, 4).unwrap();
        let phases = extract_phases(&t, 0, 1.0).unwrap();
        assert!(phases.iter().all(|p| p.kind == PhaseKind::Zero && !p.long));
    }

    #[test]
    fn phases_partition_the_window() {
        let g = Graph::star(6);
        let p = ModelParams::new(Variant::Isolation, 1.5, 1.0).unwrap();
        for seed in 0..50 {
            let t = run(&g, &all_infected(7), p, 30.0, seed).unwrap();
            let phases = extract_phases(&t, 0, 1.0).unwrap();
            assert_eq!(phases[0].start, 0.0);
            assert_eq!(phases.last().unwrap().end, t.outcome.time());
            for w in phases.windows(2) {
                assert_eq!(w[0].end, w[1].start);
                assert_ne!(w[0].kind, w[1].kind);
            }
            assert!(phases.iter().all(|p| !p.long || p.kind == PhaseKind::One));
        }
    }

    #[test]
    fn thinned_is_unavailable() {
        let mut t = lone(vec![], Outcome::Extinct(0.0));
        t.events = None;
        assert_eq!(extract_phases(&t, 0, 1.0), Err(ObservablesError::Unavailable));
    }
}
