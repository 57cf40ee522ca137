//! Polarized lattices, nilpotent cones, monodromy weight filtrations and the
//! Deligne / rational splittings attached to them.

pub mod deligne;
pub mod lattice;
pub mod rational;
pub mod splitting;
pub mod weight;

pub use deligne::deligne_splitting;
pub use lattice::{NilpotentCone, PolarizedLattice};
pub use rational::rational_splitting;
pub use splitting::GradedSplitting;
pub use weight::{cone_weight_filtrations, verify_weight_axioms, weight_filtration};

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MixedHodgeError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid polarized lattice: {}", .0.join("; "))]
    InvalidLattice(Vec<String>),
    #[error("invalid nilpotent cone: {}", .0.join("; "))]
    InvalidCone(Vec<String>),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("weight filtration axiom fails: {0}")]
    WeightAxiom(String),
    #[error("weight filtration of M_{index} changes inside the cone (coefficients {coefficients})")]
    ConeDependence { index: usize, coefficients: String },
    #[error("not a mixed Hodge structure: {0}")]
    NotMixedHodge(String),
    #[error("subspaces do not form a direct sum decomposition: {0}")]
    NotDirectSum(String),
    #[error("incompatible filtrations: {0}")]
    IncompatibleFiltrations(String),
}
