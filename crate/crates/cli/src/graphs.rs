use std::fs::File;
use std::io::BufReader;

use anyhow::Context;
use sisnet::netgen::{
    plant_star_of_stars, random_regular, read_edge_list, sample_power_law_degrees, star_of_stars_tree, GraphMetadata,
};
use sisnet::seed::mix;
use sisnet::Graph;

use crate::config::{ExperimentConfig, GraphSpec};
use crate::Failure;

pub struct Built {
    pub graph: Graph,
    pub meta: GraphMetadata,
}

fn bare_meta(generator: &str, seed: u64, n: usize) -> GraphMetadata {
    GraphMetadata {
        generator: generator.into(),
        version: crate::VERSION.into(),
        seed,
        n,
        gamma: None,
        d_min: None,
        d_max: None,
        parity_fix: None,
        deficits: Vec::new(),
        self_loops_erased: 0,
        multi_edges_collapsed: 0,
        planted: None,
    }
}

/// Builds the configured graph on `n` vertices from `seed`.
pub fn build(spec: &GraphSpec, n: usize, plant: Option<usize>, seed: u64) -> Result<Built, Failure> {
    let usage = |e: sisnet::netgen::NetgenError| Failure::Usage(e.to_string());
    let (graph, mut meta) = match *spec {
        GraphSpec::PowerLaw { gamma, d_min, d_max } => {
            let d_max = d_max.unwrap_or(n.saturating_sub(1).max(1) as u32);
            let degrees = sample_power_law_degrees(n, gamma, d_min, d_max, seed).map_err(usage)?;
            let cm = degrees.configuration_model(mix(seed, 1)).map_err(usage)?;
            let mut meta = bare_meta("power_law", seed, n);
            meta.gamma = Some(gamma);
            meta.d_min = Some(d_min);
            meta.d_max = Some(d_max);
            meta.parity_fix = degrees.parity_fix;
            meta.deficits = cm.deficits.clone();
            meta.self_loops_erased = cm.self_loops_erased;
            meta.multi_edges_collapsed = cm.multi_edges_collapsed;
            (cm.into_graph(), meta)
        }
        GraphSpec::Regular { d } => (random_regular(n, d, seed).map_err(usage)?, bare_meta("regular", seed, n)),
        GraphSpec::StarOfStars { m } => {
            let (g, sos) = star_of_stars_tree(m);
            let mut meta = bare_meta("star_of_stars", seed, g.n());
            meta.planted = Some(sos);
            (g, meta)
        }
        GraphSpec::Path => (Graph::path(n), bare_meta("path", seed, n)),
        GraphSpec::Cycle => (Graph::cycle(n), bare_meta("cycle", seed, n)),
        GraphSpec::Complete => (Graph::complete(n), bare_meta("complete", seed, n)),
        GraphSpec::Star => (Graph::star(n.saturating_sub(1)), bare_meta("star", seed, n)),
    };
    let graph = match plant {
        Some(m) => {
            let (g, sos) = plant_star_of_stars(&graph, m, mix(seed, 2)).map_err(usage)?;
            meta.planted = Some(sos);
            g
        }
        None => graph,
    };
    Ok(Built { graph, meta })
}

/// Graph from `graph_file` when given, otherwise generated for size `n`.
pub fn load_or_build(cfg: &ExperimentConfig, n: usize, seed: u64) -> Result<Graph, Failure> {
    match &cfg.graph_file {
        Some(path) => {
            let f = File::open(path).with_context(|| format!("opening {}", path.display())).map_err(Failure::input)?;
            read_edge_list(BufReader::new(f)).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => Ok(build(&cfg.graph, n, cfg.plant_order, seed)?.graph),
    }
}

/// Sizes to iterate over: the configured list, or the single size implied
/// by a graph file or a star of stars.
pub fn sizes(cfg: &ExperimentConfig) -> Vec<usize> {
    if let GraphSpec::StarOfStars { m } = cfg.graph {
        if cfg.graph_file.is_none() {
            return vec![1 + m + m * m];
        }
    }
    if cfg.graph_file.is_some() {
        return vec![0];
    }
    cfg.sizes.clone()
}
