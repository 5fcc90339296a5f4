use std::fmt;

use super::NetgenError;

/// Simple undirected graph stored as sorted adjacency lists.
///
/// Graphs are immutable once built; every constructor guarantees symmetry
/// and the absence of self-loops and duplicate neighbours.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops and repeated edges are
    /// rejected; use the configuration model builder for erasure semantics.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, NetgenError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(NetgenError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(NetgenError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(NetgenError::DuplicateEdge(v.min(w[0]), v.max(w[0])));
            }
        }
        Ok(Self { adjacency, edge_count: edges.len() })
    }

    /// Builds from adjacency lists that are already symmetric and simple
    /// up to ordering. Used by generators that deduplicate themselves.
    pub(crate) fn from_adjacency_unchecked(mut adjacency: Vec<Vec<usize>>) -> Self {
        let mut twice = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            twice += list.len();
        }
        debug_assert!(twice % 2 == 0);
        let g = Self { adjacency, edge_count: twice / 2 };
        debug_assert!(g.is_consistent());
        g
    }

    pub fn empty(n: usize) -> Self {
        Self { adjacency: vec![Vec::new(); n], edge_count: 0 }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges).expect("path edges are simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle edges are simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_edges(n, &edges).expect("complete graph edges are simple")
    }

    /// Star with centre 0 and `leaves` leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::from_edges(leaves + 1, &edges).expect("star edges are simple")
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Adds the given edges, skipping ones already present. Returns a new graph.
    pub fn with_extra_edges(&self, extra: &[(usize, usize)]) -> Result<Self, NetgenError> {
        let mut edges: Vec<_> = self.edges().collect();
        for &(u, v) in extra {
            if u == v {
                return Err(NetgenError::SelfLoop(u));
            }
            if !self.has_edge(u, v) {
                edges.push((u.min(v), u.max(v)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Self::from_edges(self.n(), &edges)
    }

    /// Full scan of the symmetry and simplicity invariants.
    pub fn is_consistent(&self) -> bool {
        let mut twice = 0;
        for (v, list) in self.adjacency.iter().enumerate() {
            twice += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &w in list {
                if w == v || w >= self.n() || self.adjacency[w].binary_search(&v).is_err() {
                    return false;
                }
            }
        }
        twice == 2 * self.edge_count
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edge_count", &self.edge_count)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graphs() {
        let p = Graph::path(4);
        assert_eq!(p.edge_count(), 3);
        assert_eq!(p.neighbors(1), &[0, 2]);
        let c = Graph::cycle(5);
        assert!(c.has_edge(4, 0));
        assert_eq!(Graph::complete(5).edge_count(), 10);
        let s = Graph::star(10);
        assert_eq!(s.degree(0), 10);
        assert_eq!(s.n(), 11);
        for g in [p, c, s] {
            assert!(g.is_consistent());
        }
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(matches!(Graph::from_edges(2, &[(1, 1)]), Err(NetgenError::SelfLoop(1))));
        assert!(matches!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(NetgenError::DuplicateEdge(0, 1))
        ));
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn edges_are_canonical() {
        let g = Graph::cycle(4);
        let e: Vec<_> = g.edges().collect();
        assert_eq!(e, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        let h = g.with_extra_edges(&[(2, 0), (0, 1)]).unwrap();
        assert_eq!(h.edge_count(), 5);
    }
}
