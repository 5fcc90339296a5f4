//! Plain-text edge lists: a header line `n m`, then one `u v` line per edge
//! with `u < v`, 0-indexed, LF-terminated.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{Graph, NetgenError, ParityFix, StarOfStars};

/// JSON sidecar written next to a generated edge list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphMetadata {
    pub generator: String,
    pub version: String,
    pub seed: u64,
    pub n: usize,
    pub gamma: Option<f64>,
    pub d_min: Option<u32>,
    pub d_max: Option<u32>,
    #[serde(default)]
    pub parity_fix: Option<ParityFix>,
    /// Requested minus realized degree, per vertex.
    #[serde(default)]
    pub deficits: Vec<u32>,
    #[serde(default)]
    pub self_loops_erased: usize,
    #[serde(default)]
    pub multi_edges_collapsed: usize,
    #[serde(default)]
    pub planted: Option<StarOfStars>,
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph, NetgenError> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| NetgenError::Parse("missing header".into()))??;
    let (n, m) = parse_pair(&header, 1)?;
    let mut edges = Vec::with_capacity(m);
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (u, v) = parse_pair(&line, i + 2)?;
        if u >= v {
            return Err(NetgenError::Parse(format!("line {}: expected u < v, got {u} {v}", i + 2)));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(NetgenError::Parse(format!("header promises {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, &edges)
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize), NetgenError> {
    let mut it = line.split_ascii_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(NetgenError::Parse(format!("line {lineno}: expected two integers, got {line:?}"))),
    }
}
