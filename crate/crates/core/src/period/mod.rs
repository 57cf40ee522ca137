//! Nilpotent orbits `z ↦ exp(z·N) g(t) F`, their Hodge decompositions, Hodge
//! forms and the wedge-power Gram–Schmidt chain.

pub mod hodge;
pub mod orbit;
pub mod wedge_chain;

pub use hodge::{evaluate, hodge_decomposition, hodge_form, hodge_metric_matrix, is_positive_definite, HodgePoint};
pub use orbit::{gamma, lift_matrix, lift_vector, orbit_filtration, validate_orbit, Check, NilpotentOrbitData, RawOrbit, ValidationReport};
pub use wedge_chain::{k_flag, wedge_norm_chain, WedgeChainTerm};

use crate::linalg::LinalgError;
use crate::mixed_hodge::MixedHodgeError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PeriodError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    MixedHodge(#[from] MixedHodgeError),
    #[error("invalid orbit data:\n{0}")]
    Invalid(ValidationReport),
    #[error("expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("the holomorphic part needs exp(2 pi i z), which the exact backend cannot represent")]
    ExactPsi,
    #[error("value {0} is not representable in the chosen scalar field")]
    NotRepresentable(String),
    #[error("not a Hodge structure at this point: {0}")]
    NotHodgeStructure(String),
    #[error("the Hodge structure at this point is not polarized")]
    Unpolarized,
    #[error("Gram-Schmidt chain degenerates at index {0}")]
    DegenerateChain(usize),
    #[error("flag index {index} out of range 1..={len}")]
    FlagIndex { index: usize, len: usize },
}
