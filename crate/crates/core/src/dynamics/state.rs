use serde::{Deserialize, Serialize};

use super::{DynamicsError, EventKind, ModelParams, SumTree, Variant, VertexState};
use crate::netgen::Graph;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub healthy: usize,
    pub infected: usize,
    pub isolated: usize,
}

impl Counts {
    pub fn of(states: &[VertexState]) -> Self {
        let mut c = Counts::default();
        for &s in states {
            c.bump(s, 1);
        }
        c
    }

    pub(crate) fn bump(&mut self, s: VertexState, up: isize) {
        let slot = match s {
            VertexState::Healthy => &mut self.healthy,
            VertexState::Infected => &mut self.infected,
            VertexState::Isolated => &mut self.isolated,
        };
        *slot = slot.checked_add_signed(up).expect("count underflow");
    }
}

/// Aggregate rate of each event class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct RateTable {
    pub infection: f64,
    pub recovery: f64,
    pub isolation: f64,
    pub ret: f64,
}

impl RateTable {
    pub fn total(&self) -> f64 {
        self.infection + self.recovery + self.isolation + self.ret
    }

    /// Closed-form class totals from the aggregate counts.
    pub fn from_counts(p: &ModelParams, counts: Counts, si_edges: u64) -> Self {
        let si = si_edges as f64;
        let infected = counts.infected as f64;
        let isolation = match p.variant {
            Variant::Classical => 0.0,
            Variant::Isolation => p.alpha * infected,
            Variant::Vigilance => p.alpha * si,
            Variant::Comparison => p.alpha * (counts.healthy + counts.infected) as f64,
        };
        let ret = match p.variant {
            Variant::Classical => 0.0,
            _ => counts.isolated as f64,
        };
        RateTable { infection: p.lambda * si, recovery: infected, isolation, ret }
    }
}

/// Rates of the (at most two) transitions out of a vertex, given its
/// state and neighbour counts. Order matters: the engine picks the first
/// with probability `a / (a + b)`.
pub(crate) fn vertex_rates(p: &ModelParams, s: VertexState, inf_nbrs: u32, healthy_nbrs: u32) -> [(EventKind, f64); 2] {
    match s {
        VertexState::Healthy => {
            let iso = if p.variant == Variant::Comparison { p.alpha } else { 0.0 };
            [(EventKind::Infection, p.lambda * f64::from(inf_nbrs)), (EventKind::Isolation, iso)]
        }
        VertexState::Infected => {
            let iso = match p.variant {
                Variant::Classical => 0.0,
                Variant::Isolation | Variant::Comparison => p.alpha,
                Variant::Vigilance => p.alpha * f64::from(healthy_nbrs),
            };
            [(EventKind::Recovery, 1.0), (EventKind::Isolation, iso)]
        }
        VertexState::Isolated => {
            let ret = if p.variant == Variant::Classical { 0.0 } else { 1.0 };
            [(EventKind::Return, ret), (EventKind::Return, 0.0)]
        }
    }
}

/// Mutable state of one simulation: vertex states, cached neighbour
/// counts, aggregate counts and a sum tree over per-vertex total rates.
#[derive(Debug, Clone)]
pub struct SystemState {
    pub(crate) params: ModelParams,
    pub(crate) time: f64,
    pub(crate) states: Vec<VertexState>,
    pub(crate) inf_nbrs: Vec<u32>,
    pub(crate) healthy_nbrs: Vec<u32>,
    pub(crate) counts: Counts,
    pub(crate) si_edges: u64,
    pub(crate) rates: SumTree,
}

impl SystemState {
    pub fn new(g: &Graph, init: &[VertexState], params: ModelParams) -> Result<Self, DynamicsError> {
        if init.len() != g.n() {
            return Err(DynamicsError::StateLength { got: init.len(), n: g.n() });
        }
        let n = g.n();
        let mut inf_nbrs = vec![0u32; n];
        let mut healthy_nbrs = vec![0u32; n];
        for v in 0..n {
            for &w in g.neighbors(v) {
                match init[w] {
                    VertexState::Infected => inf_nbrs[v] += 1,
                    VertexState::Healthy => healthy_nbrs[v] += 1,
                    VertexState::Isolated => {}
                }
            }
        }
        let si_edges = (0..n).filter(|&v| init[v] == VertexState::Healthy).map(|v| u64::from(inf_nbrs[v])).sum();
        let weights: Vec<f64> = (0..n)
            .map(|v| vertex_rates(&params, init[v], inf_nbrs[v], healthy_nbrs[v]).iter().map(|r| r.1).sum())
            .collect();
        Ok(Self {
            params,
            time: 0.0,
            states: init.to_vec(),
            inf_nbrs,
            healthy_nbrs,
            counts: Counts::of(init),
            si_edges,
            rates: SumTree::from_weights(&weights),
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn states(&self) -> &[VertexState] {
        &self.states
    }

    pub fn state(&self, v: usize) -> VertexState {
        self.states[v]
    }

    pub fn counts(&self) -> Counts {
        self.counts
    }

    pub fn si_edges(&self) -> u64 {
        self.si_edges
    }

    pub fn infected_neighbors(&self, v: usize) -> u32 {
        self.inf_nbrs[v]
    }

    pub fn healthy_neighbors(&self, v: usize) -> u32 {
        self.healthy_nbrs[v]
    }

    /// Sum-tree total over per-vertex rates.
    pub fn total_rate(&self) -> f64 {
        self.rates.total()
    }

    /// Class totals from the cached counts, without an audit.
    pub fn rate_table(&self) -> RateTable {
        RateTable::from_counts(&self.params, self.counts, self.si_edges)
    }

    pub(crate) fn vertex_rates(&self, v: usize) -> [(EventKind, f64); 2] {
        vertex_rates(&self.params, self.states[v], self.inf_nbrs[v], self.healthy_nbrs[v])
    }

    fn refresh(&mut self, v: usize) {
        let [a, b] = self.vertex_rates(v);
        self.rates.set(v, a.1 + b.1);
    }

    fn si_contribution(&self, v: usize) -> u64 {
        match self.states[v] {
            VertexState::Healthy => u64::from(self.inf_nbrs[v]),
            _ => 0,
        }
    }

    /// Moves `v` to state `to`, updating every cache in O(deg(v) log n).
    pub(crate) fn set_state(&mut self, g: &Graph, v: usize, to: VertexState) {
        let from = self.states[v];
        if from == to {
            return;
        }
        // SI edges at v are counted from the healthy endpoint
        let mut si = self.si_edges as i64;
        si -= self.si_contribution(v) as i64;
        for &w in g.neighbors(v) {
            si -= self.si_contribution(w) as i64;
        }
        self.states[v] = to;
        self.counts.bump(from, -1);
        self.counts.bump(to, 1);
        for &w in g.neighbors(v) {
            match from {
                VertexState::Infected => self.inf_nbrs[w] -= 1,
                VertexState::Healthy => self.healthy_nbrs[w] -= 1,
                VertexState::Isolated => {}
            }
            match to {
                VertexState::Infected => self.inf_nbrs[w] += 1,
                VertexState::Healthy => self.healthy_nbrs[w] += 1,
                VertexState::Isolated => {}
            }
        }
        si += self.si_contribution(v) as i64;
        for &w in g.neighbors(v) {
            si += self.si_contribution(w) as i64;
        }
        self.si_edges = si as u64;
        self.refresh(v);
        for &w in g.neighbors(v) {
            self.refresh(w);
        }
    }

    /// Replaces the whole state vector and rebuilds all caches.
    pub fn install(&mut self, g: &Graph, states: &[VertexState]) -> Result<(), DynamicsError> {
        let time = self.time;
        *self = Self::new(g, states, self.params)?;
        self.time = time;
        Ok(())
    }

    /// Test hook for corrupting a cache entry.
    #[doc(hidden)]
    pub fn corrupt_infected_neighbors(&mut self, v: usize, value: u32) {
        self.inf_nbrs[v] = value;
    }
}

/// Full recount of every cached quantity; true iff all invariants hold.
pub fn audit_state(g: &Graph, st: &SystemState) -> bool {
    let n = g.n();
    if st.states.len() != n || st.inf_nbrs.len() != n || st.healthy_nbrs.len() != n || st.rates.len() != n {
        return false;
    }
    let mut si = 0u64;
    for v in 0..n {
        let (mut inf, mut healthy) = (0, 0);
        for &w in g.neighbors(v) {
            match st.states[w] {
                VertexState::Infected => inf += 1,
                VertexState::Healthy => healthy += 1,
                VertexState::Isolated => {}
            }
        }
        if inf != st.inf_nbrs[v] || healthy != st.healthy_nbrs[v] {
            return false;
        }
        if st.states[v] == VertexState::Healthy {
            si += u64::from(inf);
        }
        let expected: f64 = vertex_rates(&st.params, st.states[v], inf, healthy).iter().map(|r| r.1).sum();
        if st.rates.get(v) != expected {
            return false;
        }
    }
    if si != st.si_edges || Counts::of(&st.states) != st.counts {
        return false;
    }
    let analytic = RateTable::from_counts(&st.params, st.counts, si).total();
    (st.rates.total() - analytic).abs() <= 1e-9 * analytic.max(1.0)
}

/// Per-class aggregate rates, after a full audit of the state.
pub fn total_rates(g: &Graph, st: &SystemState) -> Result<RateTable, DynamicsError> {
    if !audit_state(g, st) {
        return Err(DynamicsError::InconsistentState);
    }
    Ok(st.rate_table())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{all_infected, ModelParams, Variant::*};
    use VertexState::*;

    #[test]
    fn isolation_single_edge() {
        let g = Graph::path(2);
        let p = ModelParams::new(Isolation, 2.0, 3.0).unwrap();
        let st = SystemState::new(&g, &[Infected, Healthy], p).unwrap();
        let r = total_rates(&g, &st).unwrap();
        assert_eq!(r, RateTable { infection: 2.0, recovery: 1.0, isolation: 3.0, ret: 0.0 });
        assert_eq!(r.total(), 6.0);
        assert_eq!(st.total_rate(), 6.0);
    }

    #[test]
    fn vigilance_triangle() {
        let g = Graph::complete(3);
        let (lambda, alpha) = (1.7, 0.4);
        let p = ModelParams::new(Vigilance, lambda, alpha).unwrap();
        let st = SystemState::new(&g, &[Infected, Healthy, Isolated], p).unwrap();
        let r = total_rates(&g, &st).unwrap();
        assert_eq!(r, RateTable { infection: lambda, recovery: 1.0, isolation: alpha, ret: 1.0 });
    }

    #[test]
    fn all_healthy_only_comparison_moves() {
        let g = Graph::cycle(6);
        for v in Variant::ALL {
            let p = ModelParams::new(v, 1.3, 0.7).unwrap();
            let st = SystemState::new(&g, &[Healthy; 6], p).unwrap();
            let r = total_rates(&g, &st).unwrap();
            let expected_iso = if v == Comparison { 0.7 * 6.0 } else { 0.0 };
            assert_eq!(r, RateTable { infection: 0.0, recovery: 0.0, isolation: expected_iso, ret: 0.0 });
        }
    }

    #[test]
    fn audit_catches_corruption() {
        let g = Graph::cycle(5);
        let p = ModelParams::new(Isolation, 1.0, 1.0).unwrap();
        let mut st = SystemState::new(&g, &all_infected(5), p).unwrap();
        assert!(audit_state(&g, &st));
        st.corrupt_infected_neighbors(2, 7);
        assert!(!audit_state(&g, &st));
        assert_eq!(total_rates(&g, &st), Err(DynamicsError::InconsistentState));
    }

    #[test]
    fn set_state_matches_rebuild() {
        let g = Graph::complete(5);
        let p = ModelParams::new(Vigilance, 0.9, 1.1).unwrap();
        let mut st = SystemState::new(&g, &[Healthy, Infected, Isolated, Healthy, Infected], p).unwrap();
        let moves = [(0, Infected), (2, Healthy), (4, Isolated), (1, Healthy), (0, Healthy), (3, Infected)];
        for (v, to) in moves {
            st.set_state(&g, v, to);
            assert!(audit_state(&g, &st));
            let rebuilt = SystemState::new(&g, st.states(), p).unwrap();
            assert_eq!(rebuilt.si_edges(), st.si_edges());
            assert_eq!(rebuilt.counts(), st.counts());
        }
    }

    #[test]
    fn length_mismatch() {
        let g = Graph::path(3);
        let p = ModelParams::classical(1.0);
        assert!(matches!(SystemState::new(&g, &[Healthy], p), Err(DynamicsError::StateLength { got: 1, n: 3 })));
    }
}
