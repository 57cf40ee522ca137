//! Growth of Hodge norms on the region `Σ_n`: sampling, exponent fitting,
//! monomial bounds, curve restrictions and the reducedness sweep.

pub mod fit;
pub mod monomial;
pub mod region;
pub mod sweep;

pub use fit::{degree_sum, fit_exponents, hodge_norm, j_splitting, predicted_exponents, ExponentFit, RaySpec};
pub use monomial::{curve_restriction, monomial, roughly_monomial_check, CurveSpec, MonomialCheck};
pub use region::{imag_parts, real_parts, sample_sigma, SigmaRegion};
pub use sweep::{reducedness_sweep, reducedness_sweep_with, ShiftReport, SweepConfig, SweepReport, SweepRow};

use crate::mixed_hodge::MixedHodgeError;
use crate::period::PeriodError;
use crate::reduction::ReductionError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AsymptoticsError {
    #[error(transparent)]
    Period(#[from] PeriodError),
    #[error(transparent)]
    MixedHodge(#[from] MixedHodgeError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("invalid region: {0}")]
    BadRegion(String),
    #[error("invalid ray: {0}")]
    BadRay(String),
    #[error("the Hodge structure is not polarized at z = {0}")]
    Unpolarized(String),
    #[error("rays do not span {0} independent directions")]
    IllConditioned(usize),
    #[error("vector is not homogeneous for the splitting; decompose it first")]
    MixedVector,
    #[error("zero vector")]
    ZeroVector,
    #[error("expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("need samples with y <= {0}")]
    TooFewSamples(f64),
    #[error("no polarized grid point")]
    NoPolarizedPoint,
    #[error("invalid curve: {0}")]
    BadCurve(String),
}
