//! Executable first-order transductions of finite colored graphs.
//!
//! The crate is organized around a single carrier, [`graph::ColoredGraph`],
//! and the operations that map colored graphs to sets of graphs:
//!
//! - [`logic`]: first-order formulas over `{E, =, colors}` with a distance
//!   primitive, a parser, a brute-force evaluator and locality checks.
//! - [`transduction`]: copying, coloring, simple interpretations, pipelines,
//!   gluing, and exhaustive image enumeration / membership search.
//! - [`perturbation`]: subset complementations and their partition-flip form.
//! - [`encodings`]: explicit host constructions, each verified on build.
//! - [`games`]: Ehrenfeucht–Fraïssé games.
//! - [`params`]: exact small-scale graph parameters.

pub mod encodings;
pub mod error;
pub mod games;
pub mod graph;
pub mod logic;
pub mod params;
pub mod perturbation;
pub mod transduction;

pub use error::{Error, Result};
pub use graph::{ColoredGraph, Distance, Graph};
pub use logic::Formula;
