//! Graph generation and structural checks.
//!
//! Power-law degree sequences are drawn by inverse CDF from a truncated
//! pmf, matched into an erased configuration model, and then inspected for
//! star-of-stars substructures or isoperimetric expansion.

mod config_model;
mod degrees;
mod expansion;
mod graph;
mod io;
mod star;

pub use config_model::{build_configuration_model, random_regular, ConfigurationModel};
pub use degrees::{sample_power_law_degrees, DegreeSequence, ParityFix, PowerLawPmf};
pub use expansion::{check_expansion, external_boundary, ExpansionMode, ExpansionReport};
pub use graph::Graph;
pub use io::{read_edge_list, write_edge_list, GraphMetadata};
pub use star::{find_star_of_stars, plant_star_of_stars, star_of_stars_tree, validate_star_of_stars, StarOfStars};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NetgenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degree sum {0} is odd; half-edges cannot be perfectly matched")]
    OddDegreeSum(u64),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("no integer subset size lies in [{lo}, {hi}]")]
    WindowEmpty { lo: f64, hi: f64 },
    #[error("exact expansion is limited to n <= {max}, got n = {n}")]
    TooLargeForExact { n: usize, max: usize },
    #[error("gave up after {0} attempts to draw a simple regular graph")]
    RegularRejection(usize),
    #[error("malformed edge list: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
