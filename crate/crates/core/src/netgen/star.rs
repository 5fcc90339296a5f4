use std::collections::HashSet;

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use super::{Graph, NetgenError};
use crate::seed::rng_from_seed;

/// A depth-two tree embedded in a graph: a centre with `m` hubs, each hub
/// with `m` leaves. Leaves only need to be leaves of the embedded tree, not
/// of the host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarOfStars {
    pub center: usize,
    pub hubs: Vec<usize>,
    pub leaves: Vec<Vec<usize>>,
}

impl StarOfStars {
    pub fn order(&self) -> usize {
        self.hubs.len()
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.hubs.len() + self.leaves.iter().map(Vec::len).sum::<usize>()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.center)
            .chain(self.hubs.iter().copied())
            .chain(self.leaves.iter().flatten().copied())
    }
}

/// The bare star-of-stars tree of order `m`: centre 0, hubs `1..=m`, and the
/// leaves of hub `i` numbered consecutively after the hubs.
pub fn star_of_stars_tree(m: usize) -> (Graph, StarOfStars) {
    let n = 1 + m + m * m;
    let hubs: Vec<usize> = (1..=m).collect();
    let leaves: Vec<Vec<usize>> = (0..m).map(|i| (0..m).map(|j| 1 + m + i * m + j).collect()).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for (i, &h) in hubs.iter().enumerate() {
        edges.push((0, h));
        edges.extend(leaves[i].iter().map(|&l| (h, l)));
    }
    let g = Graph::from_edges(n, &edges).expect("tree edges are simple");
    (g, StarOfStars { center: 0, hubs, leaves })
}

pub fn validate_star_of_stars(g: &Graph, s: &StarOfStars) -> bool {
    let m = s.hubs.len();
    if m == 0 || s.leaves.len() != m || s.leaves.iter().any(|l| l.len() != m) {
        return false;
    }
    let mut seen = HashSet::with_capacity(s.vertex_count());
    if !s.vertices().all(|v| v < g.n() && seen.insert(v)) {
        return false;
    }
    s.hubs.iter().zip(&s.leaves).all(|(&h, leaves)| {
        g.has_edge(s.center, h) && leaves.iter().all(|&l| g.has_edge(h, l))
    })
}

/// Greedy degree-ordered search for a star of stars of order `m`.
///
/// Candidate centres are tried in decreasing degree order. For a centre,
/// its neighbours are tried as hubs in decreasing degree order; a hub is
/// accepted when it still has `m` unclaimed neighbours, which it then
/// claims as leaves. Leaves are picked preferring vertices that are not
/// themselves neighbours of the centre, then lower degree, so that hub
/// candidates are not consumed early.
///
/// `None` does not certify that no star of stars exists.
pub fn find_star_of_stars(g: &Graph, m: usize) -> Option<StarOfStars> {
    if m == 0 {
        return None;
    }
    let mut centers: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= m).collect();
    centers.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut claimed = vec![false; g.n()];
    for &c in &centers {
        if let Some(s) = try_center(g, c, m, &mut claimed) {
            debug_assert!(validate_star_of_stars(g, &s));
            return Some(s);
        }
    }
    None
}

fn try_center(g: &Graph, center: usize, m: usize, claimed: &mut [bool]) -> Option<StarOfStars> {
    let mut touched = vec![center];
    claimed[center] = true;
    let mut hub_candidates: Vec<usize> = g.neighbors(center).iter().copied().filter(|&h| g.degree(h) > m).collect();
    hub_candidates.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let center_nbrs = g.neighbors(center);

    let mut hubs = Vec::with_capacity(m);
    let mut leaves = Vec::with_capacity(m);
    for &h in &hub_candidates {
        if hubs.len() == m {
            break;
        }
        if claimed[h] {
            continue;
        }
        let mut free: Vec<usize> = g.neighbors(h).iter().copied().filter(|&l| !claimed[l] && l != h).collect();
        if free.len() < m {
            continue;
        }
        free.sort_by_key(|&l| (center_nbrs.binary_search(&l).is_ok(), g.degree(l), l));
        free.truncate(m);
        claimed[h] = true;
        touched.push(h);
        for &l in &free {
            claimed[l] = true;
            touched.push(l);
        }
        hubs.push(h);
        leaves.push(free);
    }
    for v in touched {
        claimed[v] = false;
    }
    (hubs.len() == m).then_some(StarOfStars { center, hubs, leaves })
}

/// Plants a star of stars of order `m` on `1 + m + m^2` uniformly chosen
/// vertices of `g` by adding the tree edges that are missing.
pub fn plant_star_of_stars(g: &Graph, m: usize, seed: u64) -> Result<(Graph, StarOfStars), NetgenError> {
    let need = 1 + m + m * m;
    if m == 0 || need > g.n() {
        return Err(NetgenError::InvalidParameter(format!(
            "order {m} needs {need} vertices, graph has {}",
            g.n()
        )));
    }
    let mut rng = rng_from_seed(seed);
    let picked = sample(&mut rng, g.n(), need).into_vec();
    let center = picked[0];
    let hubs = picked[1..=m].to_vec();
    let leaves: Vec<Vec<usize>> = (0..m).map(|i| picked[1 + m + i * m..1 + m + (i + 1) * m].to_vec()).collect();
    let mut extra = Vec::with_capacity(need - 1);
    for (i, &h) in hubs.iter().enumerate() {
        extra.push((center, h));
        extra.extend(leaves[i].iter().map(|&l| (h, l)));
    }
    let planted = g.with_extra_edges(&extra)?;
    Ok((planted, StarOfStars { center, hubs, leaves }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn finds_bare_tree() {
        let (g, s) = star_of_stars_tree(3);
        assert_eq!(g.n(), 13);
        assert!(validate_star_of_stars(&g, &s));
        let found = find_star_of_stars(&g, 3).unwrap();
        assert_eq!(found.center, 0);
        assert!(validate_star_of_stars(&g, &found));
    }

    /// Exhaustive search over every centre, ordered hub pair and leaf
    /// assignment; the independent oracle for small graphs.
    fn exists_by_brute_force(g: &Graph, m: usize) -> bool {
        assert_eq!(m, 2);
        for c in 0..g.n() {
            for &h1 in g.neighbors(c) {
                for &h2 in g.neighbors(c) {
                    if h1 >= h2 {
                        continue;
                    }
                    for &a in g.neighbors(h1) {
                        for &b in g.neighbors(h1) {
                            for &x in g.neighbors(h2) {
                                for &y in g.neighbors(h2) {
                                    let s = StarOfStars { center: c, hubs: vec![h1, h2], leaves: vec![vec![a, b], vec![x, y]] };
                                    if validate_star_of_stars(g, &s) {
                                        return true;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn path_has_none() {
        let g = Graph::path(5);
        assert!(!exists_by_brute_force(&g, 2));
        assert!(find_star_of_stars(&g, 2).is_none());
    }

    #[test]
    fn planted_with_noise_among_leaves() {
        let (tree, s) = star_of_stars_tree(6);
        let leaves: Vec<usize> = s.leaves.iter().flatten().copied().collect();
        let mut rng = rng_from_seed(8);
        let mut extra = HashSet::new();
        while extra.len() < 200 {
            let a = leaves[rng.random_range(0..leaves.len())];
            let b = leaves[rng.random_range(0..leaves.len())];
            if a != b && !tree.has_edge(a, b) {
                extra.insert((a.min(b), a.max(b)));
            }
        }
        let extra: Vec<_> = extra.into_iter().collect();
        let g = tree.with_extra_edges(&extra).unwrap();
        assert_eq!(g.edge_count(), tree.edge_count() + 200);
        let found = find_star_of_stars(&g, 6).expect("planted structure is reachable");
        assert!(validate_star_of_stars(&g, &found));
    }

    #[test]
    fn validator_rejects_corruption() {
        let (g, s) = star_of_stars_tree(4);
        assert!(validate_star_of_stars(&g, &s));

        let mut bad = s.clone();
        // a leaf of hub 1 is not adjacent to hub 0
        bad.leaves[0][0] = s.leaves[1][0];
        bad.leaves[1][0] = s.leaves[0][0];
        assert!(!validate_star_of_stars(&g, &bad));

        let mut dup = s.clone();
        dup.leaves[1][0] = dup.leaves[0][0];
        assert!(!validate_star_of_stars(&g, &dup));

        let mut out_of_range = s.clone();
        out_of_range.center = 999;
        assert!(!validate_star_of_stars(&g, &out_of_range));

        let mut ragged = s;
        ragged.leaves[2].pop();
        assert!(!validate_star_of_stars(&g, &ragged));
    }

    #[test]
    fn planting_into_random_graph() {
        let deg = crate::netgen::sample_power_law_degrees(300, 3.5, 3, 299, 1).unwrap();
        let g = deg.configuration_model(2).unwrap().into_graph();
        let (planted, s) = plant_star_of_stars(&g, 5, 3).unwrap();
        assert!(validate_star_of_stars(&planted, &s));
        let found = find_star_of_stars(&planted, 5).unwrap();
        assert!(validate_star_of_stars(&planted, &found));
        assert!(plant_star_of_stars(&g, 20, 0).is_err());
    }
}
