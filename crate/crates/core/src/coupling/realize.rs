use super::marks::Mark;
use super::{CouplingError, MarkSet, RealizationRules};
use crate::dynamics::{Counts, Event, Outcome, SeriesPoint, Trajectory, VertexState};
use crate::netgen::Graph;

/// State of one process being driven by a shared mark sequence.
pub(crate) struct Realizer {
    pub(crate) rules: RealizationRules,
    pub(crate) states: Vec<VertexState>,
    pub(crate) counts: Counts,
}

impl Realizer {
    pub(crate) fn new(rules: RealizationRules, init: &[VertexState], n: usize) -> Result<Self, CouplingError> {
        if init.len() != n {
            return Err(CouplingError::StateLength { got: init.len(), n });
        }
        Ok(Self { rules, states: init.to_vec(), counts: Counts::of(init) })
    }

    /// Applies one mark and returns the transition it caused, if any.
    ///
    /// Arrows act only from an infected source onto a healthy target.
    pub(crate) fn apply(&mut self, t: f64, mark: Mark) -> Option<Event> {
        use VertexState::*;
        let (v, to) = match mark {
            Mark::Dot(v) => match (self.states[v], self.rules) {
                (Infected, _) => (v, Healthy),
                (Isolated, RealizationRules::Isolation | RealizationRules::Comparison) => (v, Healthy),
                _ => return None,
            },
            Mark::Cross(v) => match (self.states[v], self.rules) {
                (Infected, RealizationRules::Isolation | RealizationRules::Comparison) => (v, Isolated),
                (Healthy, RealizationRules::Comparison) => (v, Isolated),
                _ => return None,
            },
            Mark::Arrow(u, v) => {
                if self.states[u] == Infected && self.states[v] == Healthy {
                    (v, Infected)
                } else {
                    return None;
                }
            }
        };
        let from = self.states[v];
        self.states[v] = to;
        self.counts.bump(from, -1);
        self.counts.bump(to, 1);
        Some(Event { t, v, from, to })
    }
}

/// Deterministic realization of `rules` on `g` from `init`, driven by
/// `marks` up to their horizon.
///
/// The trajectory always runs to the horizon (needed for pathwise
/// comparisons after extinction, when isolated vertices may still return);
/// the outcome is `Extinct` at the first time `|I| = 0` and `Censored` at
/// the horizon otherwise.
pub fn realize(g: &Graph, marks: &MarkSet, rules: RealizationRules, init: &[VertexState]) -> Result<Trajectory, CouplingError> {
    marks.validate(g)?;
    let mut r = Realizer::new(rules, init, g.n())?;
    let mut events = Vec::new();
    let mut series = vec![SeriesPoint { t: 0.0, infected: r.counts.infected, isolated: r.counts.isolated }];
    let mut extinct = (r.counts.infected == 0).then_some(0.0);
    for (t, m) in marks.ordered() {
        if let Some(e) = r.apply(t, m) {
            events.push(e);
            series.push(SeriesPoint { t, infected: r.counts.infected, isolated: r.counts.isolated });
            if extinct.is_none() && r.counts.infected == 0 {
                extinct = Some(t);
            }
        }
    }
    Ok(Trajectory {
        initial: init.to_vec(),
        events: Some(events),
        series,
        outcome: extinct.map_or(Outcome::Censored(marks.horizon), Outcome::Extinct),
        end_time: marks.horizon,
        seed: marks.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::generate_marks;
    use crate::dynamics::{all_infected, infected_set};
    use VertexState::*;

    fn single_edge(arrow: f64, dot: Option<f64>, cross: Option<f64>) -> MarkSet {
        let mut m = generate_marks(&Graph::path(2), 0.0, 0.0, 10.0, 0).unwrap();
        m.dots = vec![vec![], vec![]];
        m.set_arrows(0, 1, vec![arrow]);
        if let Some(d) = dot {
            m.dots[0] = vec![d];
        }
        if let Some(c) = cross {
            m.crosses[1] = vec![c];
        }
        m
    }

    #[test]
    fn arrow_needs_infected_source() {
        let g = Graph::path(2);
        let m = single_edge(2.0, Some(1.0), None);
        let t = realize(&g, &m, RealizationRules::Classical, &infected_set(2, &[0])).unwrap();
        assert_eq!(t.final_state().unwrap(), vec![Healthy, Healthy]);
        assert_eq!(t.outcome, Outcome::Extinct(1.0));
        let m = single_edge(0.5, Some(1.0), None);
        let t = realize(&g, &m, RealizationRules::Classical, &infected_set(2, &[0])).unwrap();
        assert_eq!(t.final_state().unwrap(), vec![Healthy, Infected]);
        assert_eq!(t.outcome, Outcome::Censored(10.0));
        assert!(t.is_consistent());
    }

    #[test]
    fn cross_rules() {
        let g = Graph::path(2);
        let m = single_edge(2.0, None, Some(1.0));
        let init = infected_set(2, &[0]);
        let iso = realize(&g, &m, RealizationRules::Isolation, &init).unwrap();
        assert_eq!(iso.final_state().unwrap(), vec![Infected, Infected]);
        let cmp = realize(&g, &m, RealizationRules::Comparison, &init).unwrap();
        assert_eq!(cmp.final_state().unwrap(), vec![Infected, Isolated]);
        let cls = realize(&g, &m, RealizationRules::Classical, &all_infected(2)).unwrap();
        assert_eq!(cls.final_state().unwrap(), vec![Infected, Infected]);
    }

    #[test]
    fn dots_return_isolated() {
        let g = Graph::empty(1);
        let mut m = generate_marks(&g, 0.0, 0.0, 5.0, 0).unwrap();
        m.dots[0] = vec![2.0];
        m.crosses[0] = vec![1.0];
        let t = realize(&g, &m, RealizationRules::Isolation, &[Infected]).unwrap();
        assert_eq!(t.series.iter().map(|p| (p.infected, p.isolated)).collect::<Vec<_>>(), [(1, 0), (0, 1), (0, 0)]);
        assert_eq!(t.outcome, Outcome::Extinct(1.0));
    }

    #[test]
    fn truncation_after_last_event_is_invisible() {
        let g = Graph::cycle(6);
        for seed in 0..50 {
            let m = generate_marks(&g, 1.5, 0.7, 15.0, seed).unwrap();
            for rules in [RealizationRules::Classical, RealizationRules::Isolation, RealizationRules::Comparison] {
                let full = realize(&g, &m, rules, &all_infected(6)).unwrap();
                let last = full.events().unwrap().last().map_or(0.0, |e| e.t);
                let cut = realize(&g, &m.truncated(last), rules, &all_infected(6)).unwrap();
                assert_eq!(full, cut);
                assert!(full.is_consistent());
            }
        }
    }

    #[test]
    fn rejects_wrong_length() {
        let g = Graph::path(3);
        let m = generate_marks(&g, 1.0, 1.0, 1.0, 0).unwrap();
        assert_eq!(
            realize(&g, &m, RealizationRules::Isolation, &[Infected]).unwrap_err(),
            CouplingError::StateLength { got: 1, n: 3 }
        );
    }
}
