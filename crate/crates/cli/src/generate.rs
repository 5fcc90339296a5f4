use std::io::Write;

use serde::Serialize;
use sisnet::netgen::{find_star_of_stars, validate_star_of_stars, write_edge_list, GraphMetadata};
use sisnet::seed::mix_path;

use crate::config::ExperimentConfig;
use crate::{graphs, output, Failure};

#[derive(Serialize)]
struct Sidecar<'a> {
    graph: &'a GraphMetadata,
    edges: usize,
    /// Result of searching the written graph for the planted order.
    found_star_of_stars: Option<bool>,
}

/// Graph for size `n` is seeded by `mix_path(seed, [0, n])`.
pub fn run(cfg: &ExperimentConfig) -> Result<(), Failure> {
    output::write_config(cfg)?;
    for n in graphs::sizes(cfg) {
        let seed = mix_path(cfg.seed, &[0, n as u64]);
        let built = graphs::build(&cfg.graph, n, cfg.plant_order, seed)?;
        let g = &built.graph;
        let found = built.meta.planted.as_ref().map(|sos| {
            validate_star_of_stars(g, sos)
                && find_star_of_stars(g, sos.order()).is_some_and(|s| validate_star_of_stars(g, &s))
        });
        if found == Some(false) {
            return Err(Failure::Violation(format!("planted star of stars not recovered in graph n = {n}")));
        }
        let stem = format!("graph_n{}", g.n());
        let mut w = output::create(&cfg.out.join(format!("{stem}.txt")))?;
        write_edge_list(g, &mut w)?;
        w.flush()?;
        let sidecar = Sidecar { graph: &built.meta, edges: g.edge_count(), found_star_of_stars: found };
        output::write_json(&cfg.out.join(format!("{stem}.json")), cfg, sidecar)?;
        println!("{stem}: {} vertices, {} edges", g.n(), g.edge_count());
    }
    Ok(())
}
