//! Exact event-driven simulation of the SIS contact process and its
//! isolation, vigilance and comparison variants on finite graphs.
//!
//! The crate is split along the experiment pipeline:
//!
//! * [`netgen`] builds the arena: power-law configuration-model graphs,
//!   star-of-stars substructures and isoperimetric expansion checks.
//! * [`dynamics`] runs the continuous-time Markov chains exactly with a
//!   Gillespie direct method over a per-vertex sum tree.
//! * [`coupling`] realizes the processes pathwise from shared Poisson marks
//!   and checks domination and attractiveness claims on them.
//! * [`observables`] turns trajectories into phase, drift and renewal
//!   statistics and classifies extinction-time scaling.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coupling;
pub mod dynamics;
pub mod netgen;
pub mod observables;
pub mod seed;

pub use dynamics::{ModelParams, Variant, VertexState};
pub use netgen::Graph;
