//! Exact and floating linear algebra: matrices, subspaces, filtrations,
//! exterior powers, nilpotent exponentials and Gram–Schmidt.

pub mod filtration;
pub mod float;
pub mod gram_schmidt;
pub mod matrix;
pub mod nilpotent;
pub mod scalar;
pub mod subspace;
pub mod wedge;

pub use filtration::{Direction, Filtration};
pub use gram_schmidt::{gram_matrix, gram_schmidt, GramSchmidt};
pub use matrix::{CMatrix, CRatMatrix, Matrix, RatMatrix};
pub use nilpotent::{cone_exp, is_nilpotent, nilpotency_index, nilpotent_exp};
pub use scalar::{primitive_integral, rat, rat_approx, rat_int, rat_to_f64, CRat, Rat, Scalar, C64, FLOAT_TOL};
pub use subspace::Subspace;
pub use wedge::{wedge_form, wedge_power, wedge_vectors};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    Shape { expected: (usize, usize), got: (usize, usize) },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("rows have different lengths")]
    Ragged,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("wedge degree {k} out of range 1..={dim}")]
    WedgeDegree { k: usize, dim: usize },
    #[error("form is degenerate on the partial flag ending at index {index}")]
    DegenerateFlag { index: usize },
    #[error("subspace is not contained in the given superspace")]
    NotNested,
    #[error("invalid filtration: {0}")]
    BadFiltration(String),
}
