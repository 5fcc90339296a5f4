use serde::{Deserialize, Serialize};

use super::{Counts, VertexState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Infection,
    Recovery,
    Isolation,
    Return,
}

impl EventKind {
    pub fn classify(from: VertexState, to: VertexState) -> Option<Self> {
        use VertexState::*;
        match (from, to) {
            (Healthy, Infected) => Some(EventKind::Infection),
            (Infected, Healthy) => Some(EventKind::Recovery),
            (Healthy | Infected, Isolated) => Some(EventKind::Isolation),
            (Isolated, Healthy) => Some(EventKind::Return),
            _ => None,
        }
    }

    pub fn target(self, from: VertexState) -> VertexState {
        match self {
            EventKind::Infection => VertexState::Infected,
            EventKind::Isolation => VertexState::Isolated,
            EventKind::Recovery | EventKind::Return => {
                debug_assert!(from != VertexState::Healthy);
                VertexState::Healthy
            }
        }
    }
}

/// One vertex transition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub t: f64,
    pub v: usize,
    pub from: VertexState,
    pub to: VertexState,
}

impl Event {
    pub fn kind(&self) -> EventKind {
        EventKind::classify(self.from, self.to).expect("events only record legal transitions")
    }
}

/// Value of `(|I_t|, |A_t|)` from time `t` until the next point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub t: f64,
    pub infected: usize,
    pub isolated: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "t")]
pub enum Outcome {
    /// The infected set emptied at this time.
    Extinct(f64),
    /// Still infected when the run stopped at the cap.
    Censored(f64),
}

impl Outcome {
    pub fn time(&self) -> f64 {
        match *self {
            Outcome::Extinct(t) | Outcome::Censored(t) => t,
        }
    }

    pub fn is_censored(&self) -> bool {
        matches!(self, Outcome::Censored(_))
    }

    pub fn extinction_time(&self) -> Option<f64> {
        match *self {
            Outcome::Extinct(t) => Some(t),
            Outcome::Censored(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogMode {
    /// Every transition plus the count series.
    #[default]
    Full,
    /// Count series only.
    Thinned,
}

impl std::str::FromStr for LogMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "full" => Ok(LogMode::Full),
            "thinned" => Ok(LogMode::Thinned),
            other => Err(format!("log mode must be full or thinned, got {other:?}")),
        }
    }
}

/// Ordered event log of one run with its count series and outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub initial: Vec<VertexState>,
    /// `None` in thinned mode.
    pub events: Option<Vec<Event>>,
    /// First point is the initial condition at `t = 0`; then one point per event.
    pub series: Vec<SeriesPoint>,
    pub outcome: Outcome,
    /// Time up to which the trajectory is determined (extinction time,
    /// cap, or mark horizon).
    pub end_time: f64,
    pub seed: Option<u64>,
}

impl Trajectory {
    pub fn n(&self) -> usize {
        self.initial.len()
    }

    pub fn end_time(&self) -> f64 {
        self.end_time
    }

    pub fn extinction_time(&self) -> Option<f64> {
        self.outcome.extinction_time()
    }

    pub fn events(&self) -> Option<&[Event]> {
        self.events.as_deref()
    }

    /// Number of transitions (available in both log modes).
    pub fn event_count(&self) -> usize {
        self.series.len() - 1
    }

    /// Replays the events from the initial condition. Events at time
    /// exactly `t` are applied.
    pub fn state_at(&self, t: f64) -> Option<Vec<VertexState>> {
        let events = self.events.as_ref()?;
        let mut s = self.initial.clone();
        for e in events.iter().take_while(|e| e.t <= t) {
            s[e.v] = e.to;
        }
        Some(s)
    }

    pub fn final_state(&self) -> Option<Vec<VertexState>> {
        self.state_at(f64::INFINITY)
    }

    /// Sequence of `(|S|, |I|, |A|)` after each jump, starting with the
    /// initial condition.
    pub fn jump_chain(&self) -> Vec<Counts> {
        let n = self.n();
        self.series
            .iter()
            .map(|p| Counts { healthy: n - p.infected - p.isolated, infected: p.infected, isolated: p.isolated })
            .collect()
    }

    /// Checks the internal invariants: non-decreasing times (the engine
    /// produces strictly increasing ones; equal times only arise from
    /// hand-written mark fixtures), each
    /// event's `from` matching the replayed state, the series matching the
    /// replay, and extinction coinciding with the first zero of `|I|`.
    pub fn is_consistent(&self) -> bool {
        if self.series.is_empty() || self.series.windows(2).any(|w| !(w[0].t <= w[1].t)) {
            return false;
        }
        let first_zero = self.series.iter().find(|p| p.infected == 0).map(|p| p.t);
        match self.outcome {
            Outcome::Extinct(t) if first_zero != Some(t) => return false,
            Outcome::Censored(_) if first_zero.is_some() => return false,
            _ => {}
        }
        let Some(events) = &self.events else {
            return true;
        };
        if events.len() + 1 != self.series.len() {
            return false;
        }
        let mut s = self.initial.clone();
        let mut c = Counts::of(&s);
        if c.infected != self.series[0].infected || c.isolated != self.series[0].isolated {
            return false;
        }
        for (e, p) in events.iter().zip(&self.series[1..]) {
            if s[e.v] != e.from || EventKind::classify(e.from, e.to).is_none() || e.t != p.t {
                return false;
            }
            s[e.v] = e.to;
            for (state, delta) in [(e.from, -1isize), (e.to, 1)] {
                match state {
                    VertexState::Infected => c.infected = c.infected.wrapping_add_signed(delta),
                    VertexState::Isolated => c.isolated = c.isolated.wrapping_add_signed(delta),
                    VertexState::Healthy => c.healthy = c.healthy.wrapping_add_signed(delta),
                }
            }
            if c.infected != p.infected || c.isolated != p.isolated {
                return false;
            }
        }
        true
    }
}
