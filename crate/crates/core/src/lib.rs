//! Forbidden patterns and topological minors for binary constraint satisfaction problems.
//!
//! The crate is organised bottom-up:
//!
//! * [`pattern`] holds the value types (patterns, instances, augmented patterns,
//!   graphs), the microstructure and incidence constructions, subdivision and a
//!   catalogue of named patterns.
//! * [`occurrence`] decides sub-pattern and topological-minor occurrence and
//!   class membership.
//! * [`graphs`] has constraint graphs, articulation vertices, Tutte
//!   decompositions, graph topological minors and part-disjoint paths.
//! * [`solvers`] has brute force, MAC, arc and singleton arc consistency, the
//!   structural solvers and the classifier.
//! * [`gadgets`] builds the 3-SAT reduction instances.
//! * [`io`] reads and writes the JSON formats; [`cli`] is the command line.

pub mod cli;
pub mod gadgets;
pub mod graphs;
pub mod io;
pub mod occurrence;
pub mod pattern;
pub mod solvers;
