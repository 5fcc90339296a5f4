//! Hand-written mark sets in JSON.
//!
//! Times are decimal strings so that fixtures state exactly the values
//! they mean. Streams not listed are empty; `horizon` defaults to the
//! largest listed time.
//!
//! ```json
//! { "vertices": 2, "edges": [[0, 1]], "horizon": "4",
//!   "arrows": { "0->1": ["1.5"] }, "dots": { "0": ["3"] }, "crosses": {} }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CouplingError, MarkSet};
use crate::netgen::Graph;

pub const CLASSICAL_EXAMPLE_JSON: &str = include_str!("../../fixtures/classical_example.json");
pub const ISOLATION_COUNTEREXAMPLE_JSON: &str = include_str!("../../fixtures/isolation_counterexample.json");

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Fixture {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    horizon: Option<String>,
    #[serde(default)]
    arrows: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    dots: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    crosses: BTreeMap<String, Vec<String>>,
}

fn malformed(msg: impl Into<String>) -> CouplingError {
    CouplingError::MalformedMarks(msg.into())
}

fn parse_time(s: &str) -> Result<f64, CouplingError> {
    s.trim().parse::<f64>().map_err(|_| malformed(format!("bad time {s:?}")))
}

fn parse_times(v: &[String]) -> Result<Vec<f64>, CouplingError> {
    v.iter().map(|s| parse_time(s)).collect()
}

fn parse_vertex(s: &str, n: usize) -> Result<usize, CouplingError> {
    match s.trim().parse::<usize>() {
        Ok(v) if v < n => Ok(v),
        _ => Err(malformed(format!("bad vertex {s:?}"))),
    }
}

impl MarkSet {
    /// Parses a fixture into its graph and marks, and validates them.
    pub fn from_fixture_json(text: &str) -> Result<(Graph, MarkSet), CouplingError> {
        let fx: Fixture = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        let n = fx.vertices;
        let g = Graph::from_edges(n, &fx.edges).map_err(|e| malformed(e.to_string()))?;
        let mut dots = vec![Vec::new(); n];
        let mut crosses = vec![Vec::new(); n];
        for (map, out) in [(&fx.dots, &mut dots), (&fx.crosses, &mut crosses)] {
            for (k, times) in map {
                out[parse_vertex(k, n)?] = parse_times(times)?;
            }
        }
        let mut arrow_edges = Vec::with_capacity(2 * g.edge_count());
        for v in 0..n {
            arrow_edges.extend(g.neighbors(v).iter().map(|&w| (v, w)));
        }
        let mut arrows = vec![Vec::new(); arrow_edges.len()];
        for (k, times) in &fx.arrows {
            let (u, v) = k.split_once("->").ok_or_else(|| malformed(format!("bad arrow key {k:?}")))?;
            let e = (parse_vertex(u, n)?, parse_vertex(v, n)?);
            let idx = arrow_edges
                .iter()
                .position(|&x| x == e)
                .ok_or_else(|| malformed(format!("arrow {k} is not an edge of the graph")))?;
            arrows[idx] = parse_times(times)?;
        }
        let latest = arrows.iter().chain(&dots).chain(&crosses).flatten().copied().fold(0.0, f64::max);
        let horizon = match &fx.horizon {
            Some(h) => parse_time(h)?,
            None => latest,
        };
        if !(horizon > 0.0) {
            return Err(malformed("horizon must be positive"));
        }
        let marks = MarkSet { n, horizon, seed: None, arrow_edges, arrows, dots, crosses };
        marks.validate(&g)?;
        Ok((g, marks))
    }

    /// Inverse of [`MarkSet::from_fixture_json`]; times use the shortest
    /// decimal that round-trips.
    pub fn to_fixture_json(&self, g: &Graph) -> String {
        let fmt = |v: &[f64]| v.iter().map(|t| format!("{t:?}")).collect::<Vec<_>>();
        let per_vertex = |s: &[Vec<f64>]| {
            s.iter().enumerate().filter(|(_, x)| !x.is_empty()).map(|(v, x)| (v.to_string(), fmt(x))).collect()
        };
        let fx = Fixture {
            vertices: self.n,
            edges: g.edges().collect(),
            horizon: Some(format!("{:?}", self.horizon)),
            arrows: self
                .arrow_edges
                .iter()
                .zip(&self.arrows)
                .filter(|(_, x)| !x.is_empty())
                .map(|(&(u, v), x)| (format!("{u}->{v}"), fmt(x)))
                .collect(),
            dots: per_vertex(&self.dots),
            crosses: per_vertex(&self.crosses),
        };
        serde_json::to_string_pretty(&fx).expect("fixture serializes")
    }
}

/// Four-vertex path marks on which the classical process ends with {0, 1, 2}
/// infected from {0}.
pub fn classical_example_marks() -> (Graph, MarkSet) {
    MarkSet::from_fixture_json(CLASSICAL_EXAMPLE_JSON).expect("embedded fixture is valid")
}

/// The same path with isolation crosses added: starting from {0} leaves {1}
/// infected, while the larger start {0, 1} dies out.
pub fn isolation_counterexample_marks() -> (Graph, MarkSet) {
    MarkSet::from_fixture_json(ISOLATION_COUNTEREXAMPLE_JSON).expect("embedded fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::{generate_marks, realize, RealizationRules};
    use crate::dynamics::{infected_set, VertexState};

    fn infected(states: &[VertexState]) -> Vec<usize> {
        (0..states.len()).filter(|&v| states[v] == VertexState::Infected).collect()
    }

    #[test]
    fn classical_example_realizes() {
        let (g, m) = classical_example_marks();
        assert_eq!(m.horizon, 8.0);
        assert_eq!(m.total_marks(), 10);
        let t = realize(&g, &m, RealizationRules::Classical, &infected_set(4, &[0])).unwrap();
        assert_eq!(infected(&t.final_state().unwrap()), [0, 1, 2]);
        assert!(t.is_consistent());
    }

    #[test]
    fn isolation_counterexample_not_attractive() {
        let (g, m) = isolation_counterexample_marks();
        let a = realize(&g, &m, RealizationRules::Isolation, &infected_set(4, &[0])).unwrap();
        let b = realize(&g, &m, RealizationRules::Isolation, &infected_set(4, &[0, 1])).unwrap();
        let (fa, fb) = (a.final_state().unwrap(), b.final_state().unwrap());
        assert_eq!(infected(&fa), [1]);
        assert!(infected(&fb).is_empty());
        assert_eq!(b.outcome.extinction_time(), Some(2.0));
    }

    #[test]
    fn roundtrip() {
        let g = Graph::cycle(5);
        let m = generate_marks(&g, 1.3, 0.4, 6.0, 21).unwrap();
        let (g2, m2) = MarkSet::from_fixture_json(&m.to_fixture_json(&g)).unwrap();
        assert_eq!(g, g2);
        assert_eq!(MarkSet { seed: Some(21), ..m2 }, m);
    }

    #[test]
    fn rejects_bad_fixtures() {
        for bad in [
            r#"{"vertices": 2, "edges": [[0, 1]], "arrows": {"0->2": ["1"]}}"#,
            r#"{"vertices": 2, "edges": [[0, 1]], "dots": {"0": ["2", "1"]}}"#,
            r#"{"vertices": 2, "edges": [[0, 1]], "dots": {"0": ["x"]}}"#,
            r#"{"vertices": 2, "edges": [[0, 1]], "horizon": "1", "dots": {"0": ["2"]}}"#,
            r#"{"vertices": 2, "edges": [[0, 1]], "extra": 1}"#,
        ] {
            assert!(matches!(MarkSet::from_fixture_json(bad), Err(CouplingError::MalformedMarks(_))), "{bad}");
        }
    }
}
