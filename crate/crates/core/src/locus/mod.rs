//! Loci where a rational vector becomes a Hodge class along a nilpotent orbit:
//! the polynomial equations, their solutions near the cusp, the monodromy
//! compatibility and the algebraicity of the solutions in `q = exp(2 pi i z)`.

pub mod algebraicity;
pub mod poly;
pub mod solve;
pub mod system;

pub use algebraicity::{q_algebraicity_check, QAlgebraicity, QRelation};
pub use poly::Poly;
pub use solve::{locus_solve, LocusComponent, LocusPoint, LocusRegion, LocusReport};
pub use system::{hodge_vector_condition, transported_vector, LocusSystem};

use crate::linalg::{CRat, Rat};
use crate::period::orbit::monodromy;
use crate::period::{NilpotentOrbitData, PeriodError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LocusError {
    #[error(transparent)]
    Period(#[from] PeriodError),
    #[error("weight {0} is odd: there are no Hodge classes; use a tensor construction")]
    OddWeight(u32),
    #[error("orbits with a holomorphic part are not supported by the locus solver")]
    HolomorphicPart,
    #[error("zero vector")]
    ZeroVector,
    #[error("expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("a solution lies on the boundary Im z = y0: {0}")]
    Indeterminate(String),
    #[error("the solver handles at most two variables, got {0}")]
    TooManyVariables(usize),
    #[error("elimination failed")]
    Elimination,
}

/// For each `j`: the equations of `exp(N_j) v`, shifted by `z_j -> z_j + 1`,
/// equal those of `v` as polynomials; and every exact solution `z₀` of `v`
/// gives the solution `z₀ + e_j` of `exp(N_j) v`.
pub fn monodromy_shift_check(data: &NilpotentOrbitData, v: &[Rat], report: &LocusReport) -> Result<bool, LocusError> {
    let base = hodge_vector_condition(data, v)?;
    let n = data.vars();
    for j in 0..n {
        let mut shift = vec![0i64; n];
        shift[j] = 1;
        let t = monodromy(data, &shift)?;
        let moved = hodge_vector_condition(data, &t.mul_vec(v))?;
        let one = CRat::from_ints(1, 0);
        let same = moved.equations.len() == base.equations.len()
            && moved.equations.iter().zip(&base.equations).all(|(m, b)| m.shift(j, &one) == *b);
        if !same {
            return Ok(false);
        }
        for p in &report.points {
            if let Some(z) = &p.exact {
                let mut zs = z.clone();
                zs[j] = &zs[j] + &one;
                if !base.vanishes_at(z) || !moved.vanishes_at(&zs) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
