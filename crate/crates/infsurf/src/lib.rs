//! Infinite-type surfaces from finitely presented end structures.
//!
//! A surface is described by an automaton over the triadic interval basis of
//! the Cantor set. From it the crate builds truncated standard surfaces,
//! classifies ends, lists generating Lagrangians, computes combinatorial
//! wrapped Floer complexes and checks the restriction tower.

pub mod blueprint;
pub mod cantor_basis;
pub mod dsl;
pub mod floer;
pub mod ideal_boundary;
pub mod lagrangians;
pub mod limits;
pub mod report;
pub mod surface_builder;

pub use blueprint::{EndAutomaton, StateId};
pub use cantor_basis::{Digit, TriadicInterval};
pub use ideal_boundary::EndPath;
