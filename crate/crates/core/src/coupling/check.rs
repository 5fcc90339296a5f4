use rand::seq::IndexedRandom;
use rand::Rng;
use serde::Serialize;

use super::realize::Realizer;
use super::{generate_marks, CouplingError, MarkSet, RealizationRules};
use crate::dynamics::{infected_set, VertexState};
use crate::netgen::Graph;
use crate::seed::{mix, rng_from_seed};

/// A time at which the infected set of the smaller process was not
/// contained in that of the larger one, with a witness vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContainmentViolation {
    pub t: f64,
    pub vertex: usize,
}

/// Drives two processes with the same marks and checks
/// `I_small(t) ⊆ I_large(t)` after every group of marks sharing a time.
pub fn first_containment_violation(
    g: &Graph,
    marks: &MarkSet,
    small: (RealizationRules, &[VertexState]),
    large: (RealizationRules, &[VertexState]),
) -> Result<Option<ContainmentViolation>, CouplingError> {
    marks.validate(g)?;
    let n = g.n();
    let mut a = Realizer::new(small.0, small.1, n)?;
    let mut b = Realizer::new(large.0, large.1, n)?;
    let infected = |r: &Realizer, v: usize| r.states[v] == VertexState::Infected;
    let witness = |a: &Realizer, b: &Realizer, t: f64| {
        (0..n).find(|&v| infected(a, v) && !infected(b, v)).map(|vertex| ContainmentViolation { t, vertex })
    };
    if let Some(w) = witness(&a, &b, 0.0) {
        return Ok(Some(w));
    }
    let ordered = marks.ordered();
    let mut i = 0;
    while i < ordered.len() {
        let t = ordered[i].0;
        while i < ordered.len() && ordered[i].0 == t {
            let m = ordered[i].1;
            a.apply(t, m);
            b.apply(t, m);
            i += 1;
        }
        if let Some(w) = witness(&a, &b, t) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum DominationReport {
    /// The comparison process stayed inside the isolation process.
    Dominated,
    Violated(ContainmentViolation),
}

impl DominationReport {
    pub fn holds(&self) -> bool {
        matches!(self, DominationReport::Dominated)
    }
}

/// Pathwise domination of the isolation process over the comparison
/// process from a common initial condition.
pub fn check_domination(g: &Graph, marks: &MarkSet, init: &[VertexState]) -> Result<DominationReport, CouplingError> {
    let v = first_containment_violation(g, marks, (RealizationRules::Comparison, init), (RealizationRules::Isolation, init))?;
    Ok(v.map_or(DominationReport::Dominated, DominationReport::Violated))
}

/// Random pair of infected sets `A ⊊ B` with `B` non-empty.
pub fn random_nested_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (Vec<usize>, Vec<usize>) {
    assert!(n > 0, "need at least one vertex");
    let mut b: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
    if b.is_empty() {
        b.push(rng.random_range(0..n));
    }
    let mut a: Vec<usize> = b.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
    if a.len() == b.len() {
        let drop = *a.choose(rng).expect("b is non-empty");
        a.retain(|&v| v != drop);
    }
    (a, b)
}

/// A pair of nested initial conditions whose coupled evolutions lost
/// containment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttractivenessViolation {
    pub trial: usize,
    pub marks_seed: u64,
    pub smaller: Vec<usize>,
    pub larger: Vec<usize>,
    pub violation: ContainmentViolation,
}

/// Samples nested initial infected sets and fresh marks until the coupled
/// evolutions under `rules` violate `I^A(t) ⊆ I^B(t)`, or `trials` run out.
///
/// Trial `k` uses marks seeded by `mix(seed, 2k)` and a pair seeded by
/// `mix(seed, 2k + 1)`, so any reported violation is reproducible alone.
pub fn search_attractiveness_violation(
    g: &Graph,
    rules: RealizationRules,
    lambda: f64,
    alpha: f64,
    horizon: f64,
    trials: usize,
    seed: u64,
) -> Result<Option<AttractivenessViolation>, CouplingError> {
    let n = g.n();
    if n == 0 {
        return Err(CouplingError::InvalidParameter("graph has no vertices".into()));
    }
    for trial in 0..trials {
        let marks_seed = mix(seed, 2 * trial as u64);
        let marks = generate_marks(g, lambda, alpha, horizon, marks_seed)?;
        let (smaller, larger) = random_nested_pair(n, &mut rng_from_seed(mix(seed, 2 * trial as u64 + 1)));
        let (ia, ib) = (infected_set(n, &smaller), infected_set(n, &larger));
        if let Some(violation) = first_containment_violation(g, &marks, (rules, &ia), (rules, &ib))? {
            return Ok(Some(AttractivenessViolation { trial, marks_seed, smaller, larger, violation }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::isolation_counterexample_marks;
    use crate::dynamics::all_infected;

    #[test]
    fn nested_pairs_are_strict() {
        let mut rng = rng_from_seed(4);
        for n in 1..6 {
            for _ in 0..200 {
                let (a, b) = random_nested_pair(n, &mut rng);
                assert!(!b.is_empty() && a.len() < b.len());
                assert!(a.iter().all(|v| b.contains(v)));
            }
        }
    }

    #[test]
    fn domination_on_random_marks() {
        let g = Graph::cycle(5);
        for s in 0..300 {
            let m = generate_marks(&g, 2.0, 1.0, 10.0, s).unwrap();
            assert!(check_domination(&g, &m, &all_infected(5)).unwrap().holds());
            assert!(check_domination(&g, &m, &infected_set(5, &[0])).unwrap().holds());
        }
    }

    #[test]
    fn classical_dominates_isolation() {
        let g = Graph::star(4);
        for s in 0..300 {
            let m = generate_marks(&g, 1.5, 1.0, 10.0, s).unwrap();
            let init = infected_set(5, &[0, 2]);
            let v = first_containment_violation(
                &g,
                &m,
                (RealizationRules::Isolation, &init),
                (RealizationRules::Classical, &init),
            )
            .unwrap();
            assert_eq!(v, None);
        }
    }

    /// Swapping the rules must be caught: on the isolation counterexample the
    /// isolation process leaves an infected vertex the comparison process
    /// does not have.
    #[test]
    fn swapped_rules_are_caught() {
        let (g, m) = isolation_counterexample_marks();
        let init = infected_set(4, &[0]);
        let swapped = first_containment_violation(
            &g,
            &m,
            (RealizationRules::Isolation, &init),
            (RealizationRules::Comparison, &init),
        )
        .unwrap();
        assert!(swapped.is_some());
        assert!(check_domination(&g, &m, &init).unwrap().holds());
    }

    #[test]
    fn isolation_loses_attractiveness_on_a_path() {
        let found = search_attractiveness_violation(&Graph::path(4), RealizationRules::Isolation, 1.0, 1.0, 10.0, 10_000, 11)
            .unwrap()
            .expect("violation within budget");
        let g = Graph::path(4);
        let m = generate_marks(&g, 1.0, 1.0, 10.0, found.marks_seed).unwrap();
        let again = first_containment_violation(
            &g,
            &m,
            (RealizationRules::Isolation, &infected_set(4, &found.smaller)),
            (RealizationRules::Isolation, &infected_set(4, &found.larger)),
        )
        .unwrap();
        assert_eq!(again, Some(found.violation));
    }
}
