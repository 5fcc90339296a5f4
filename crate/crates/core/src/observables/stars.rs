use serde::Serialize;

use super::ObservablesError;
use crate::dynamics::{Trajectory, VertexState};
use crate::netgen::StarOfStars;

fn lit_threshold(sos: &StarOfStars, delta: f64) -> f64 {
    delta * sos.order() as f64
}

/// Hubs that are infected with at least `δ m` infected leaves in `states`.
pub fn lit_count(states: &[VertexState], sos: &StarOfStars, delta: f64) -> usize {
    let need = lit_threshold(sos, delta);
    sos.hubs
        .iter()
        .zip(&sos.leaves)
        .filter(|(&h, leaves)| {
            states[h] == VertexState::Infected
                && leaves.iter().filter(|&&l| states[l] == VertexState::Infected).count() as f64 >= need
        })
        .count()
}

/// Lit count at time `t` (events at exactly `t` applied).
pub fn lit_count_at(traj: &Trajectory, sos: &StarOfStars, delta: f64, t: f64) -> Result<usize, ObservablesError> {
    let states = traj.state_at(t).ok_or(ObservablesError::Unavailable)?;
    Ok(lit_count(&states, sos, delta))
}

/// Lit counts at a non-decreasing list of times in one replay.
pub fn lit_counts_at(traj: &Trajectory, sos: &StarOfStars, delta: f64, times: &[f64]) -> Result<Vec<usize>, ObservablesError> {
    let events = traj.events().ok_or(ObservablesError::Unavailable)?;
    if times.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(ObservablesError::InvalidParameter("times must be non-decreasing".into()));
    }
    let mut states = traj.initial.clone();
    let mut next = 0;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        while next < events.len() && events[next].t <= t {
            states[events[next].v] = events[next].to;
            next += 1;
        }
        out.push(lit_count(&states, sos, delta));
    }
    Ok(out)
}

/// State of one hub star at each time its hub or a leaf changed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HubStarSeries {
    pub hub: usize,
    pub times: Vec<f64>,
    pub hub_state: Vec<VertexState>,
    pub infected_leaves: Vec<usize>,
    pub lit: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HubStarStats {
    pub m: usize,
    pub delta: f64,
    pub hubs: Vec<HubStarSeries>,
}

impl HubStarStats {
    /// Fraction of the window `[0, end]` during which hub star `i` was lit.
    pub fn lit_fraction(&self, i: usize, end: f64) -> f64 {
        let s = &self.hubs[i];
        if end <= 0.0 {
            return f64::from(u8::from(s.lit[0]));
        }
        let mut lit_time = 0.0;
        for k in 0..s.times.len() {
            let a = s.times[k].min(end);
            let b = s.times.get(k + 1).copied().unwrap_or(end).min(end);
            if s.lit[k] {
                lit_time += b - a;
            }
        }
        lit_time / end
    }
}

/// Per-hub time series of hub state, infected-leaf count and lit flag.
pub fn hub_star_stats(traj: &Trajectory, sos: &StarOfStars, delta: f64) -> Result<HubStarStats, ObservablesError> {
    let events = traj.events().ok_or(ObservablesError::Unavailable)?;
    let need = lit_threshold(sos, delta);
    let n = traj.n();
    // owner[v] = index of the hub star containing v as hub or leaf
    let mut owner = vec![usize::MAX; n];
    for (i, (&h, leaves)) in sos.hubs.iter().zip(&sos.leaves).enumerate() {
        owner[h] = i;
        for &l in leaves {
            owner[l] = i;
        }
    }
    let mut states = traj.initial.clone();
    let mut hubs: Vec<HubStarSeries> = sos
        .hubs
        .iter()
        .zip(&sos.leaves)
        .map(|(&hub, leaves)| {
            let k = leaves.iter().filter(|&&l| states[l] == VertexState::Infected).count();
            HubStarSeries {
                hub,
                times: vec![0.0],
                hub_state: vec![states[hub]],
                infected_leaves: vec![k],
                lit: vec![states[hub] == VertexState::Infected && k as f64 >= need],
            }
        })
        .collect();
    for e in events {
        let i = owner[e.v];
        states[e.v] = e.to;
        if i == usize::MAX {
            continue;
        }
        let s = &mut hubs[i];
        let mut k = *s.infected_leaves.last().expect("series starts non-empty");
        if e.v != s.hub {
            if e.from == VertexState::Infected {
                k -= 1;
            }
            if e.to == VertexState::Infected {
                k += 1;
            }
        }
        let hs = states[s.hub];
        s.times.push(e.t);
        s.hub_state.push(hs);
        s.infected_leaves.push(k);
        s.lit.push(hs == VertexState::Infected && k as f64 >= need);
    }
    Ok(HubStarStats { m: sos.order(), delta, hubs })
}
