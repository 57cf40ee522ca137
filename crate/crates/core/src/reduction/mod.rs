//! Reduction theory for `SL_m` and the upper half-plane: Iwasawa
//! coordinates, Siegel sets, reduced forms, `SL_2(Z)` reduction, Hecke
//! correspondences and the chart at the cusp.

pub mod hecke;
pub mod iwasawa;
pub mod reduced;
pub mod siegel;
pub mod sl2;

pub use hecke::{hecke_points, HeckeElement, HeckePoint};
pub use iwasawa::{corner_coords, iwasawa, Iwasawa};
pub use reduced::{is_reduced, Reducedness};
pub use siegel::{siegel_contains, siegel_contains_point, siegel_intersectors, IntersectorReport, SiegelSetSpec};
pub use sl2::{bs_to_bb, reduce_sl2, reduce_sl2_f64, in_fundamental_set, Sl2};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReductionError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("entries must be positive: {0}")]
    NonPositive(String),
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("point {0} is not in the upper half-plane")]
    NotInUpperHalfPlane(String),
    #[error("Hecke element must have positive determinant")]
    NonPositiveDeterminant,
    #[error("invalid Siegel set: {0}")]
    BadSpec(String),
    #[error("t must be non-negative, got {0}")]
    NegativeT(f64),
    #[error("shape mismatch: {0}")]
    Shape(String),
}
