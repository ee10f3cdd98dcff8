//! Classical centrality measures.

mod degree;
mod distance;
mod flow;
mod myerson;
mod spectral;

pub use degree::{degree_family, DegreeFamily};
pub use distance::{betweenness, harmonic_closeness, BetweennessKind, DistanceMode};
pub use flow::{flow_betweenness, max_flow};
pub use myerson::{internal_weight, myerson_value, myerson_values, MYERSON_CAP};
pub use spectral::{
    bonacich, eigenvector_centrality, katz, pagerank_variant, spectral_radius, SolverOptions,
    SpectralResult,
};
