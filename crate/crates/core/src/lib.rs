//! Focused ant colony optimization for the symmetric Euclidean TSP.
//!
//! The pipeline is: build k-nearest candidate lists, pick a heuristic prior
//! (inverse distance or a learned matrix loaded from a HEUR v1 file), then
//! iterate a Min-Max Ant System in which every ant copies a reference tour,
//! relocates a handful of nodes guided by `tau^alpha * H^beta`, and repairs
//! the result with a 2-opt restricted to the edges it changed.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod classical;
pub mod construction;
pub mod error;
pub mod heuristic;
pub mod instance;
pub mod local_search;
pub mod neighbors;
pub mod pheromone;
pub mod solver;
pub mod tour;
pub mod tsplib;

pub use construction::{RelocationMove, SamplerParams};
pub use error::{Error, Result};
pub use heuristic::HeuristicMatrix;
pub use instance::{gap_percent, EdgeMetric, Instance};
pub use neighbors::NeighborModel;
pub use pheromone::PheromoneState;
pub use solver::{HeuristicSource, RunResult, SolverConfig};
pub use tour::Tour;
