//! Shared helpers for the exhaustive small-graph checks.

#![allow(dead_code)]

use sisnet::dynamics::{ModelParams, RateTable, Variant, VertexState};
use sisnet::Graph;

const STATES: [VertexState; 3] = [VertexState::Healthy, VertexState::Infected, VertexState::Isolated];

pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0..1u32 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

pub fn all_states(n: usize) -> Vec<Vec<VertexState>> {
    (0..3usize.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let s = STATES[code % 3];
                    code /= 3;
                    s
                })
                .collect()
        })
        .collect()
}

/// Rates read straight off the transition table, one vertex at a time.
pub fn naive_rates(g: &Graph, s: &[VertexState], p: &ModelParams) -> RateTable {
    use VertexState::*;
    let mut r = RateTable::default();
    for v in 0..g.n() {
        let count = |want| g.neighbors(v).iter().filter(|&&w| s[w] == want).count() as f64;
        match s[v] {
            Healthy => {
                r.infection += p.lambda * count(Infected);
                if p.variant == Variant::Comparison {
                    r.isolation += p.alpha;
                }
            }
            Infected => {
                r.recovery += 1.0;
                r.isolation += match p.variant {
                    Variant::Classical => 0.0,
                    Variant::Isolation | Variant::Comparison => p.alpha,
                    Variant::Vigilance => p.alpha * count(Healthy),
                };
            }
            Isolated => {
                if p.variant != Variant::Classical {
                    r.ret += 1.0;
                }
            }
        }
    }
    r
}
