use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use super::{
    Counts, DynamicsError, Event, EventKind, LogMode, ModelParams, Outcome, SeriesPoint, SystemState, Trajectory,
    VertexState,
};
use crate::netgen::Graph;
use crate::seed::rng_from_seed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub event: Event,
    pub dt: f64,
}

fn draw_dt<R: Rng + ?Sized>(st: &SystemState, rng: &mut R) -> Result<f64, DynamicsError> {
    let total = st.total_rate();
    if !(total > 0.0) {
        return Err(DynamicsError::Absorbed);
    }
    let e: f64 = rng.sample(Exp1);
    Ok(e / total)
}

fn draw_and_apply<R: Rng + ?Sized>(g: &Graph, st: &mut SystemState, rng: &mut R) -> Event {
    let target = rng.random::<f64>() * st.total_rate();
    let v = st.rates.find(target);
    let [(first, a), (second, b)] = st.vertex_rates(v);
    let kind = if b == 0.0 || rng.random::<f64>() * (a + b) < a { first } else { second };
    let from = st.states[v];
    let to = kind.target(from);
    st.set_state(g, v, to);
    Event { t: st.time, v, from, to }
}

/// One Gillespie step: exponential holding time at the total rate, vertex
/// drawn proportionally to its rate, then the transition within the vertex.
pub fn step<R: Rng + ?Sized>(g: &Graph, st: &mut SystemState, rng: &mut R) -> Result<Step, DynamicsError> {
    let dt = draw_dt(st, rng)?;
    st.time += dt;
    let event = draw_and_apply(g, st, rng);
    Ok(Step { event, dt })
}

/// Drives the chain until `|I| = 0` or the next event would pass `t_cap`,
/// reporting each applied event to `observe`.
///
/// The random stream is consumed identically regardless of `t_cap`, so a
/// longer cap with the same seed only extends the event sequence.
fn drive<R, F>(g: &Graph, st: &mut SystemState, t_cap: f64, rng: &mut R, mut observe: F) -> Result<Outcome, DynamicsError>
where
    R: Rng + ?Sized,
    F: FnMut(&Event, &SystemState),
{
    loop {
        if st.counts.infected == 0 {
            return Ok(Outcome::Extinct(st.time));
        }
        // an infected vertex always has recovery rate 1, so this cannot absorb
        let dt = draw_dt(st, rng)?;
        if st.time + dt > t_cap {
            st.time = t_cap;
            return Ok(Outcome::Censored(t_cap));
        }
        st.time += dt;
        let event = draw_and_apply(g, st, rng);
        observe(&event, st);
    }
}

fn check_cap(t_cap: f64) -> Result<(), DynamicsError> {
    if t_cap > 0.0 {
        Ok(())
    } else {
        Err(DynamicsError::InvalidParameter(format!("t_cap must be positive, got {t_cap}")))
    }
}

pub fn run(g: &Graph, init: &[VertexState], p: ModelParams, t_cap: f64, seed: u64) -> Result<Trajectory, DynamicsError> {
    run_with_mode(g, init, p, t_cap, seed, LogMode::Full)
}

pub fn run_with_mode(
    g: &Graph,
    init: &[VertexState],
    p: ModelParams,
    t_cap: f64,
    seed: u64,
    mode: LogMode,
) -> Result<Trajectory, DynamicsError> {
    check_cap(t_cap)?;
    let mut st = SystemState::new(g, init, p)?;
    let mut rng = rng_from_seed(seed);
    let c0 = st.counts();
    let mut series = vec![SeriesPoint { t: 0.0, infected: c0.infected, isolated: c0.isolated }];
    let mut events = (mode == LogMode::Full).then(Vec::new);
    let outcome = drive(g, &mut st, t_cap, &mut rng, |e, s| {
        let c = s.counts();
        series.push(SeriesPoint { t: e.t, infected: c.infected, isolated: c.isolated });
        if let Some(ev) = events.as_mut() {
            ev.push(*e);
        }
    })?;
    Ok(Trajectory {
        initial: init.to_vec(),
        events,
        series,
        outcome,
        end_time: outcome.time(),
        seed: Some(seed),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub outcome: Outcome,
    pub events: u64,
    pub infections: u64,
    pub final_counts: Counts,
}

/// Runs without keeping any log; for sweeps where only the extinction time
/// matters.
pub fn run_summary(g: &Graph, init: &[VertexState], p: ModelParams, t_cap: f64, seed: u64) -> Result<RunSummary, DynamicsError> {
    check_cap(t_cap)?;
    let mut st = SystemState::new(g, init, p)?;
    let mut rng = rng_from_seed(seed);
    let (mut events, mut infections) = (0u64, 0u64);
    let outcome = drive(g, &mut st, t_cap, &mut rng, |e, _| {
        events += 1;
        infections += u64::from(e.kind() == EventKind::Infection);
    })?;
    Ok(RunSummary { outcome, events, infections, final_counts: st.counts() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{all_infected, audit_state, infected_set, Variant};
    use crate::seed::rng_from_seed;
    use VertexState::*;

    #[test]
    fn all_healthy_is_extinct_at_zero() {
        let g = Graph::cycle(5);
        let t = run(&g, &[Healthy; 5], ModelParams::classical(2.0), 10.0, 0).unwrap();
        assert_eq!(t.outcome, Outcome::Extinct(0.0));
        assert_eq!(t.event_count(), 0);
    }

    #[test]
    fn absorbed_step_errors() {
        let g = Graph::path(3);
        let mut st = SystemState::new(&g, &[Healthy; 3], ModelParams::classical(1.0)).unwrap();
        assert_eq!(step(&g, &mut st, &mut rng_from_seed(0)), Err(DynamicsError::Absorbed));
    }

    #[test]
    fn lone_vertex_classical_recovers() {
        let g = Graph::empty(1);
        let mut rng = rng_from_seed(3);
        let mut sum = 0.0;
        let reps = 20_000;
        for _ in 0..reps {
            let mut st = SystemState::new(&g, &[Infected], ModelParams::classical(5.0)).unwrap();
            let s = step(&g, &mut st, &mut rng).unwrap();
            assert_eq!(s.event.kind(), EventKind::Recovery);
            sum += s.dt;
        }
        let mean = sum / reps as f64;
        assert!((mean - 1.0).abs() < 0.03, "mean {mean}");
    }

    #[test]
    fn lone_vertex_isolation_split() {
        let g = Graph::empty(1);
        let alpha = 1.5;
        let p = ModelParams::new(Variant::Isolation, 1.0, alpha).unwrap();
        let mut rng = rng_from_seed(4);
        let reps = 100_000;
        let mut recoveries = 0;
        for _ in 0..reps {
            let mut st = SystemState::new(&g, &[Infected], p).unwrap();
            match step(&g, &mut st, &mut rng).unwrap().event.kind() {
                EventKind::Recovery => recoveries += 1,
                EventKind::Isolation => {}
                k => panic!("unexpected {k:?}"),
            }
        }
        let freq = recoveries as f64 / reps as f64;
        assert!((freq - 1.0 / (1.0 + alpha)).abs() < 0.01, "freq {freq}");
    }

    #[test]
    fn vigilance_k2_all_infected_only_recoveries() {
        let g = Graph::path(2);
        let p = ModelParams::new(Variant::Vigilance, 3.0, 2.0).unwrap();
        let mut st = SystemState::new(&g, &[Infected, Infected], p).unwrap();
        assert_eq!(st.total_rate(), 2.0);
        let s = step(&g, &mut st, &mut rng_from_seed(1)).unwrap();
        assert_eq!(s.event.kind(), EventKind::Recovery);
    }

    /// E[max(X, Y)] for X, Y iid Exp(1) is 1 + 1/2.
    #[test]
    fn k2_no_infection_mean_is_three_halves() {
        let g = Graph::path(2);
        let reps = 100_000u64;
        let total: f64 = (0..reps)
            .map(|r| run_summary(&g, &all_infected(2), ModelParams::classical(0.0), 1e9, r).unwrap().outcome.time())
            .sum();
        let mean = total / reps as f64;
        assert!((mean - 1.5).abs() < 0.02, "mean {mean}");
    }

    /// Two-state chain: leave state 1 at rate 1 + α; with probability
    /// α / (1 + α) the vertex isolates, but extinction of the infection
    /// happens at that moment either way. With α = 1 the extinction time
    /// is Exp(2) with mean 1/2; the time until the vertex is fully
    /// healthy again adds P(isolate) · E[Exp(1)] = 1/2, for 1 in total.
    #[test]
    fn lone_vertex_isolation_times() {
        let g = Graph::empty(1);
        let p = ModelParams::new(Variant::Isolation, 1.0, 1.0).unwrap();
        let reps = 100_000u64;
        let (mut extinct, mut healthy) = (0.0, 0.0);
        for r in 0..reps {
            let mut st = SystemState::new(&g, &[Infected], p).unwrap();
            let mut rng = rng_from_seed(r);
            let first = step(&g, &mut st, &mut rng).unwrap();
            extinct += first.dt;
            healthy += first.dt;
            if first.event.to == Isolated {
                healthy += step(&g, &mut st, &mut rng).unwrap().dt;
            }
            assert_eq!(st.state(0), Healthy);
        }
        let (extinct, healthy) = (extinct / reps as f64, healthy / reps as f64);
        assert!((extinct - 0.5).abs() < 0.01, "extinction mean {extinct}");
        assert!((healthy - 1.0).abs() < 0.02, "return-to-healthy mean {healthy}");
    }

    #[test]
    fn trajectories_are_consistent() {
        let g = Graph::cycle(12);
        for v in Variant::ALL {
            let p = ModelParams::new(v, 2.0, 0.5).unwrap();
            let t = run(&g, &all_infected(12), p, 50.0, 9).unwrap();
            assert!(t.is_consistent(), "{v}");
            assert!(t.series.windows(2).all(|w| w[0].t < w[1].t));
            if let Some(te) = t.extinction_time() {
                assert_eq!(t.events().unwrap().last().unwrap().t, te);
                assert_eq!(t.series.last().unwrap().infected, 0);
            }
            let replayed = t.final_state().unwrap();
            let mut st = SystemState::new(&g, &replayed, p).unwrap();
            assert!(audit_state(&g, &st));
            st.install(&g, &replayed).unwrap();
            assert!(audit_state(&g, &st));
        }
    }

    #[test]
    fn censoring_extends_prefix() {
        let g = Graph::complete(8);
        let p = ModelParams::new(Variant::Vigilance, 4.0, 0.5).unwrap();
        let short = run(&g, &infected_set(8, &[0, 1]), p, 2.0, 77).unwrap();
        let long = run(&g, &infected_set(8, &[0, 1]), p, 20.0, 77).unwrap();
        let (a, b) = (short.events().unwrap(), long.events().unwrap());
        assert!(b.len() >= a.len());
        assert_eq!(&b[..a.len()], a);
        if short.outcome.is_censored() {
            assert!(b[a.len()..].iter().all(|e| e.t > 2.0));
        } else {
            assert_eq!(short.outcome, long.outcome);
        }
    }

    #[test]
    fn summary_matches_full_run() {
        let g = Graph::cycle(10);
        let p = ModelParams::new(Variant::Isolation, 3.0, 0.3).unwrap();
        let full = run(&g, &all_infected(10), p, 30.0, 5).unwrap();
        let sum = run_summary(&g, &all_infected(10), p, 30.0, 5).unwrap();
        assert_eq!(full.outcome, sum.outcome);
        assert_eq!(full.event_count() as u64, sum.events);
        let thin = run_with_mode(&g, &all_infected(10), p, 30.0, 5, LogMode::Thinned).unwrap();
        assert_eq!(thin.series, full.series);
        assert!(thin.events.is_none());
    }

    #[test]
    fn rejects_nonpositive_cap() {
        let g = Graph::path(2);
        assert!(run(&g, &all_infected(2), ModelParams::classical(1.0), 0.0, 0).is_err());
    }
}
