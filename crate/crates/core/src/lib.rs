//! Computations on finite metric graphs: geodesic distances and edge paths,
//! Reeb ε-smoothings of the distance function to a basepoint, Gromov trees
//! realised as merge trees, first Vietoris–Rips persistence and persistence
//! sequences, hyperbolicity, and Gromov–Hausdorff bounds.
//!
//! The [`harness`] module ties everything together into seeded random
//! ensembles and a verification report that checks the approximation
//! inequalities on every generated instance.
//!
//! Data-parallel loops (pairwise distances, four-point scans, ensemble runs)
//! go through [`Execution`]; with the `parallel` feature disabled every entry
//! point falls back to the sequential path.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod exec;
pub mod gh;
pub mod gromov_tree;
pub mod harness;
pub mod matrix;
pub mod metric_graph;
pub mod persistence;
pub mod reeb;

pub use error::{Error, Result};
pub use exec::Execution;
pub use matrix::DistanceMatrix;
pub use metric_graph::{EdgeId, EdgePath, GraphPoint, MetricGraph, VertexId, TOL};
