use std::collections::VecDeque;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, NetgenError};
use crate::seed::{rng_from_seed, SimRng};

/// Largest graph the exact mode will enumerate (`2^n` subsets).
pub const MAX_EXACT_N: usize = 24;

/// Number of vertices outside `set` with at least one neighbour inside it.
pub fn external_boundary(g: &Graph, set: &[usize]) -> usize {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    let mut seen = vec![false; g.n()];
    boundary_with(g, set, &inside, &mut seen)
}

fn boundary_with(g: &Graph, set: &[usize], inside: &[bool], seen: &mut [bool]) -> usize {
    let mut count = 0;
    for &v in set {
        for &w in g.neighbors(v) {
            if !inside[w] && !seen[w] {
                seen[w] = true;
                count += 1;
            }
        }
    }
    for &v in set {
        for &w in g.neighbors(v) {
            seen[w] = false;
        }
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionMode {
    /// Enumerate every subset in the size window.
    Exact,
    /// `samples` uniform subsets per admissible size, plus connected
    /// BFS-ball candidates, each refined by swap descent.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub eps_lo: f64,
    pub eps_hi: f64,
    pub min_size: usize,
    pub max_size: usize,
    /// Smallest `|∂B| / |B|` found. Exact in exact mode, an upper bound on
    /// the true minimum in sampled mode.
    pub delta_observed: f64,
    pub mode: ExpansionMode,
    pub witness: Vec<usize>,
}

/// Integer sizes `k` with `eps_lo * n <= k <= eps_hi * n`, tolerant to
/// round-off in the products (e.g. `3/n * n`).
fn size_window(n: usize, eps_lo: f64, eps_hi: f64) -> Result<(usize, usize), NetgenError> {
    const SLACK: f64 = 1e-9;
    if !(eps_lo > 0.0 && eps_lo < eps_hi && eps_hi < 0.5) {
        return Err(NetgenError::InvalidParameter(format!(
            "need 0 < eps_lo < eps_hi < 1/2, got {eps_lo}, {eps_hi}"
        )));
    }
    let lo_real = eps_lo * n as f64;
    let hi_real = eps_hi * n as f64;
    let lo = ((lo_real - SLACK).ceil().max(1.0)) as usize;
    let hi = (hi_real + SLACK).floor() as usize;
    if lo > hi {
        return Err(NetgenError::WindowEmpty { lo: lo_real, hi: hi_real });
    }
    Ok((lo, hi))
}

pub fn check_expansion(g: &Graph, eps_lo: f64, eps_hi: f64, mode: ExpansionMode) -> Result<ExpansionReport, NetgenError> {
    let (min_size, max_size) = size_window(g.n(), eps_lo, eps_hi)?;
    let (delta_observed, witness) = match mode {
        ExpansionMode::Exact => exact_minimum(g, min_size, max_size)?,
        ExpansionMode::Sampled { samples, seed } => sampled_minimum(g, min_size, max_size, samples, seed),
    };
    Ok(ExpansionReport { eps_lo, eps_hi, min_size, max_size, delta_observed, mode, witness })
}

fn exact_minimum(g: &Graph, min_size: usize, max_size: usize) -> Result<(f64, Vec<usize>), NetgenError> {
    let n = g.n();
    if n > MAX_EXACT_N {
        return Err(NetgenError::TooLargeForExact { n, max: MAX_EXACT_N });
    }
    let nbr_mask: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect();
    let mut best = (f64::INFINITY, 0u32);
    for k in min_size..=max_size {
        // Gosper's hack over all k-subsets of n bits
        let mut set: u32 = (1u32 << k) - 1;
        let limit: u32 = 1u32 << n;
        while set < limit {
            let mut reach = 0u32;
            let mut bits = set;
            while bits != 0 {
                reach |= nbr_mask[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            let ratio = f64::from((reach & !set).count_ones()) / k as f64;
            if ratio < best.0 {
                best = (ratio, set);
            }
            let c = set & set.wrapping_neg();
            let r = set + c;
            set = (((r ^ set) >> 2) / c) | r;
        }
    }
    let witness = (0..n).filter(|&v| best.1 & (1 << v) != 0).collect();
    Ok((best.0, witness))
}

struct Search<'g> {
    g: &'g Graph,
    inside: Vec<bool>,
    seen: Vec<bool>,
}

impl<'g> Search<'g> {
    fn boundary(&mut self, set: &[usize]) -> usize {
        for &v in set {
            self.inside[v] = true;
        }
        let b = boundary_with(self.g, set, &self.inside, &mut self.seen);
        for &v in set {
            self.inside[v] = false;
        }
        b
    }

    fn boundary_vertices(&mut self, set: &[usize]) -> Vec<usize> {
        for &v in set {
            self.inside[v] = true;
        }
        let mut out = Vec::new();
        for &v in set {
            for &w in self.g.neighbors(v) {
                if !self.inside[w] && !self.seen[w] {
                    self.seen[w] = true;
                    out.push(w);
                }
            }
        }
        for &w in &out {
            self.seen[w] = false;
        }
        for &v in set {
            self.inside[v] = false;
        }
        out
    }

    /// Best-improvement swap descent at fixed size.
    fn descend(&mut self, mut set: Vec<usize>, mut boundary: usize, rng: &mut SimRng) -> (Vec<usize>, usize) {
        const MAX_ROUNDS: usize = 64;
        const MAX_PAIRS: usize = 8192;
        for _ in 0..MAX_ROUNDS {
            if boundary == 0 {
                break;
            }
            let ins = self.boundary_vertices(&set);
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            if ins.len() * set.len() <= MAX_PAIRS {
                for i in 0..ins.len() {
                    for o in 0..set.len() {
                        pairs.push((i, o));
                    }
                }
            } else {
                for _ in 0..MAX_PAIRS {
                    pairs.push((rng.random_range(0..ins.len()), rng.random_range(0..set.len())));
                }
            }
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, o) in pairs {
                let old = set[o];
                set[o] = ins[i];
                let b = self.boundary(&set);
                set[o] = old;
                if b < best.map_or(boundary, |x| x.2) {
                    best = Some((i, o, b));
                }
            }
            match best {
                Some((i, o, b)) => {
                    set[o] = ins[i];
                    boundary = b;
                }
                None => break,
            }
        }
        (set, boundary)
    }

    fn bfs_prefix(&self, start: usize, k: usize) -> Option<Vec<usize>> {
        let mut visited = vec![false; self.g.n()];
        let mut order = Vec::with_capacity(k);
        let mut queue = VecDeque::from([start]);
        visited[start] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            if order.len() == k {
                return Some(order);
            }
            for &w in self.g.neighbors(v) {
                if !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

fn sampled_minimum(g: &Graph, min_size: usize, max_size: usize, samples: usize, seed: u64) -> (f64, Vec<usize>) {
    const BFS_STARTS: usize = 64;
    let n = g.n();
    let mut rng = rng_from_seed(seed);
    let mut search = Search { g, inside: vec![false; n], seen: vec![false; n] };
    let mut best = (f64::INFINITY, Vec::new());
    for k in min_size..=max_size {
        let mut candidates: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut best_uniform: Option<(usize, Vec<usize>)> = None;
        for _ in 0..samples {
            let set = sample(&mut rng, n, k).into_vec();
            let b = search.boundary(&set);
            if best_uniform.as_ref().is_none_or(|(bb, _)| b < *bb) {
                best_uniform = Some((b, set));
            }
        }
        candidates.extend(best_uniform);
        let starts = sample(&mut rng, n, BFS_STARTS.min(n)).into_vec();
        let mut best_ball: Option<(usize, Vec<usize>)> = None;
        for s in starts {
            if let Some(set) = search.bfs_prefix(s, k) {
                let b = search.boundary(&set);
                if best_ball.as_ref().is_none_or(|(bb, _)| b < *bb) {
                    best_ball = Some((b, set));
                }
            }
        }
        candidates.extend(best_ball);
        for (b, set) in candidates {
            let (set, b) = search.descend(set, b, &mut rng);
            let ratio = b as f64 / k as f64;
            if ratio < best.0 {
                best = (ratio, set);
            }
        }
    }
    best.1.sort_unstable();
    best
}
