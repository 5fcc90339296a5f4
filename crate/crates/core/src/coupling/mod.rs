//! Graphical (Harris) construction.
//!
//! Infection arrows on directed edges, recovery dots and isolation crosses
//! on vertices are drawn once as a [`MarkSet`]; the classical, isolation
//! and comparison processes are then realized deterministically from the
//! same marks, which makes domination and attractiveness pathwise
//! statements that can be checked exactly.
//!
//! The vigilance variant has no such construction (its isolation clock
//! depends on neighbour states) and is only simulated by [`crate::dynamics`].

mod check;
mod fixture;
mod marks;
mod realize;

pub use check::{
    check_domination, first_containment_violation, random_nested_pair, search_attractiveness_violation,
    AttractivenessViolation, ContainmentViolation, DominationReport,
};
pub use fixture::{classical_example_marks, isolation_counterexample_marks, CLASSICAL_EXAMPLE_JSON, ISOLATION_COUNTEREXAMPLE_JSON};
pub use marks::{generate_marks, MarkSet};
pub use realize::realize;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::Variant;

#[derive(Debug, Error, PartialEq)]
pub enum CouplingError {
    #[error("malformed marks: {0}")]
    MalformedMarks(String),
    #[error("initial state has {got} entries, graph has {n} vertices")]
    StateLength { got: usize, n: usize },
    #[error("the {0} variant has no graphical construction")]
    NoConstruction(Variant),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// How isolation crosses act during a realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RealizationRules {
    /// Crosses are ignored.
    Classical,
    /// Crosses isolate infected vertices only.
    Isolation,
    /// Crosses isolate healthy and infected vertices alike.
    Comparison,
}

impl RealizationRules {
    pub fn variant(self) -> Variant {
        match self {
            RealizationRules::Classical => Variant::Classical,
            RealizationRules::Isolation => Variant::Isolation,
            RealizationRules::Comparison => Variant::Comparison,
        }
    }
}

impl TryFrom<Variant> for RealizationRules {
    type Error = CouplingError;

    fn try_from(v: Variant) -> Result<Self, CouplingError> {
        match v {
            Variant::Classical => Ok(RealizationRules::Classical),
            Variant::Isolation => Ok(RealizationRules::Isolation),
            Variant::Comparison => Ok(RealizationRules::Comparison),
            Variant::Vigilance => Err(CouplingError::NoConstruction(v)),
        }
    }
}
