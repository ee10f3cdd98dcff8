//! Centrality and influence indices for weighted directed graphs.
//!
//! Besides the classical measures (degree, closeness, betweenness, flow,
//! spectral and Myerson), the crate computes short- and long-range
//! interaction indices built on critical groups: sets of in-neighbours whose
//! combined weight reaches a node's quota.

pub mod centrality;
pub mod coalitions;
pub mod error;
pub mod graph;
pub mod io;
pub mod lric;
pub mod quota;
pub mod rank;
pub mod scores;
pub mod sric;

pub use error::{Error, Result};
pub use graph::{GraphBuilder, NodeId, WeightedDigraph};
pub use quota::{QuotaMode, ThresholdConfig};
pub use scores::ScoreVector;
