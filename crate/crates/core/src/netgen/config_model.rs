use rand::seq::SliceRandom;

use super::{DegreeSequence, Graph, NetgenError};
use crate::seed::{mix, rng_from_seed, SimRng};

/// Output of the erased configuration model.
#[derive(Debug, Clone)]
pub struct ConfigurationModel {
    pub graph: Graph,
    pub requested: Vec<u32>,
    /// Half-edges each vertex received in the matching, before erasure.
    /// Always equal to `requested`; kept as an audit trail.
    pub matched: Vec<u32>,
    /// `requested[v] - degree(v)` after loops and parallel edges are erased.
    pub deficits: Vec<u32>,
    pub self_loops_erased: usize,
    pub multi_edges_collapsed: usize,
}

impl ConfigurationModel {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn is_simple_matching(&self) -> bool {
        self.self_loops_erased == 0 && self.multi_edges_collapsed == 0
    }
}

/// Uniform perfect matching of half-edges (Fisher–Yates over the half-edge
/// array, consecutive entries paired), then loop erasure and parallel-edge
/// collapse.
pub fn build_configuration_model(degrees: &[u32], seed: u64) -> Result<ConfigurationModel, NetgenError> {
    let mut rng = rng_from_seed(seed);
    match_half_edges(degrees, &mut rng)
}

impl DegreeSequence {
    pub fn configuration_model(&self, seed: u64) -> Result<ConfigurationModel, NetgenError> {
        build_configuration_model(&self.degrees, seed)
    }
}

fn match_half_edges(degrees: &[u32], rng: &mut SimRng) -> Result<ConfigurationModel, NetgenError> {
    let sum: u64 = degrees.iter().map(|&d| u64::from(d)).sum();
    if sum % 2 == 1 {
        return Err(NetgenError::OddDegreeSum(sum));
    }
    let n = degrees.len();
    let mut stubs: Vec<usize> = Vec::with_capacity(sum as usize);
    for (v, &d) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat_n(v, d as usize));
    }
    stubs.shuffle(rng);

    let mut matched = vec![0u32; n];
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut self_loops_erased = 0;
    for pair in stubs.chunks_exact(2) {
        let (u, v) = (pair[0], pair[1]);
        matched[u] += 1;
        matched[v] += 1;
        if u == v {
            self_loops_erased += 1;
        } else {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
    }
    let mut multi_edges_collapsed = 0;
    for list in &mut adjacency {
        list.sort_unstable();
        let before = list.len();
        list.dedup();
        multi_edges_collapsed += before - list.len();
    }
    // each collapsed parallel edge was counted from both endpoints
    multi_edges_collapsed /= 2;

    let graph = Graph::from_adjacency_unchecked(adjacency);
    let deficits = (0..n).map(|v| degrees[v] - graph.degree(v) as u32).collect();
    Ok(ConfigurationModel {
        graph,
        requested: degrees.to_vec(),
        matched,
        deficits,
        self_loops_erased,
        multi_edges_collapsed,
    })
}

/// Uniform random `d`-regular simple graph by rejection: configuration
/// model draws are repeated until one is already simple.
pub fn random_regular(n: usize, d: u32, seed: u64) -> Result<Graph, NetgenError> {
    const MAX_ATTEMPTS: usize = 100_000;
    if d as usize >= n.max(1) {
        return Err(NetgenError::InvalidParameter(format!("degree {d} too large for n = {n}")));
    }
    if (n as u64 * u64::from(d)) % 2 == 1 {
        return Err(NetgenError::OddDegreeSum(n as u64 * u64::from(d)));
    }
    let degrees = vec![d; n];
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = rng_from_seed(mix(seed, attempt as u64));
        let model = match_half_edges(&degrees, &mut rng)?;
        if model.is_simple_matching() {
            return Ok(model.into_graph());
        }
    }
    Err(NetgenError::RegularRejection(MAX_ATTEMPTS))
}
