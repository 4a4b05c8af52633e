//! Toolkit for hamiltonicity under vertex deletions.
//!
//! The crate is organized around a single backtracking search core
//! ([`engine`]) that every higher layer drives:
//!
//! * [`graph`] / [`named`] — immutable bitset graphs and fixed-label
//!   constructors for the graphs the test suite and CLI refer to by name.
//! * [`formats`] — graph6/sparse6, edge lists and rotation-system text.
//! * [`engine`] — hamiltonian cycles, st-paths and disjoint spanning path
//!   pairs under required/forbidden edge constraints, with witnesses.
//! * [`predicates`] — hamiltonicity-after-deletion properties (every vertex
//!   deleted, every adjacent pair deleted, hypohamiltonicity, snarks).
//! * [`cells`] — labeled building blocks `(G, a, b, c, d)`, their property
//!   ledgers, and the cyclic identification that chains an odd number of
//!   cells into one graph.
//! * [`constructions`] — fragments and gluing, the dot product with its
//!   sufficient-condition checkers, and extendable 5-cycles.
//! * [`planar`] — rotation systems, face traversal and Grinberg sums.
//! * [`pipeline`] / [`certificate`] / [`cli`] — the stream filter, JSON
//!   certificates with replay validation, and the thin command-line binary.
//!
//! The `examples/` directory contains one runnable walkthrough per major
//! capability; start there.

#![forbid(unsafe_code)]

pub mod cells;
pub mod certificate;
pub mod cli;
pub mod constructions;
pub mod engine;
pub mod formats;
pub mod graph;
pub mod named;
pub mod pipeline;
pub mod planar;
pub mod predicates;

pub use graph::{Bipartiteness, Graph, GraphError, Relabeling, VertexSet, MAX_VERTICES};
