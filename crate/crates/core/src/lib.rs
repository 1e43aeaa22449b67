//! Sublinear-query estimators for personalized PageRank on undirected
//! graphs, exact oracles to check them against, and the lower-bound
//! instance families with their swap operations.

pub mod access;
pub mod bidir;
pub mod config;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod graph;
pub mod instances;
pub mod mc;
mod par;
pub mod push;
pub mod sparse;
pub mod suites;

pub use access::{AccessModel, Oracle, QueryCounts, Session};
pub use config::EstimatorConfig;
pub use error::{Error, QueryKind, Result};
pub use graph::{Graph, Vertex};
pub use sparse::{SparseEstimate, SparseVec};
