//! Disjoint covers of random two-coloured hypergraphs.
//!
//! A list-colouring instance of K_{n,n} (every vertex carries a random
//! k-subset of a palette of size s) is colourable iff the red hypergraph of
//! left lists and the blue hypergraph of right lists admit *disjoint covers*:
//! a red/blue colouring of the palette in which every red edge sees Red and
//! every blue edge sees Blue. This crate samples such instances, decides them
//! exactly (with UNSAT certificates for k = 2), evaluates the moment
//! machinery behind the threshold bounds, and runs Monte Carlo experiments.

#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod analytics;
pub mod error;
pub mod experiments;
pub mod format;
pub mod hypergraph;
pub mod reduction;
pub mod sampler;
pub mod solver2;
pub mod solvergen;
pub mod stream;

pub use error::{Error, Result};
pub use format::{read_instance, write_instance};
pub use hypergraph::{
    verify_assignment, Assignment, Colour, Edge, ListScheme, Mode, TwoColouredHypergraph,
    ValidationReport,
};
