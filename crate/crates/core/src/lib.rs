//! Topology-driven information diffusion and true-versus-false news
//! intervention on synthetic social networks.
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`]: immutable undirected graphs, BFS layering, closed-triplet
//!   queries and the edge-list file format.
//! * [`generators`]: Erdős–Rényi, Gaussian random partition and LFR graphs.
//! * [`centrality`]: degree, eigenvector, closeness, betweenness and
//!   PageRank, plus seed selection.
//! * [`diffusion`]: the layered single-message model.
//! * [`intervention`]: competing false/true messages with blocking.
//! * [`stats`]: Wilcoxon signed-rank test and summaries.
//! * [`harness`]: seeded ensemble experiments and result export.

pub mod centrality;
pub mod diffusion;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod intervention;
pub mod seeding;
pub mod stats;

pub use centrality::{CentralityKind, CentralityScores};
pub use diffusion::{DiffusionParams, DiffusionState, NodeLabel};
pub use error::{Error, Result};
pub use graph::{Graph, LayeredView};
pub use harness::{ExperimentConfig, ExperimentResult, Scale};
pub use intervention::{CombatParams, CombatState};
