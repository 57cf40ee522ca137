use std::collections::BTreeMap;

use itertools::Itertools;

use crate::linalg::{Direction, Filtration, Rat, Subspace};

use super::{GradedSplitting, MixedHodgeError};

/// A rational splitting `V = ⊕ J^σ` with `W^j_s = ⊕_{σ_j <= s} J^σ` for every
/// input filtration `W^j`.
///
/// Multidegrees are visited in lexicographic order. With
/// `A_σ = ∩_j W^j_{σ_j}` and `L_σ = sum_j A_{σ - e_j}`, the piece `J^σ` is the
/// complement of `L_σ` in `A_σ` spanned by the leading echelon vectors of
/// `A_σ` not already in `L_σ`. The result is verified; failure is reported
/// rather than patched.
pub fn rational_splitting(ws: &[Filtration<Rat>]) -> Result<GradedSplitting<Rat>, MixedHodgeError> {
    let Some(first) = ws.first() else {
        return Err(MixedHodgeError::IncompatibleFiltrations("no filtrations".into()));
    };
    let d = first.ambient();
    for w in ws {
        if w.direction() != Direction::Increasing || w.ambient() != d {
            return Err(MixedHodgeError::IncompatibleFiltrations(
                "expected increasing filtrations on one space".into(),
            ));
        }
    }
    let ranges: Vec<Vec<i32>> = ws.iter().map(|w| (w.lo() + 1..=w.hi()).collect()).collect();
    let block = |sigma: &[i32]| -> Result<Subspace<Rat>, MixedHodgeError> {
        let mut a = Subspace::full(d);
        for (w, &s) in ws.iter().zip(sigma) {
            a = a.intersect(&w.level(s))?;
        }
        Ok(a)
    };
    let mut pieces = BTreeMap::new();
    for sigma in ranges.iter().map(|r| r.iter().copied()).multi_cartesian_product() {
        let a = block(&sigma)?;
        if a.is_zero() {
            continue;
        }
        let mut lower = Subspace::zero(d);
        for j in 0..sigma.len() {
            let mut below = sigma.clone();
            below[j] -= 1;
            lower = lower.sum(&block(&below)?)?;
        }
        let piece = lower.complement_in(&a)?;
        if !piece.is_zero() {
            pieces.insert(sigma, piece);
        }
    }
    let split = GradedSplitting::new(d, pieces)
        .map_err(|e| MixedHodgeError::IncompatibleFiltrations(format!("greedy pieces fail: {e}")))?;
    for (j, w) in ws.iter().enumerate() {
        for s in w.lo()..=w.hi() {
            if !split.sum_where(|k| k[j] <= s).same_as(&w.level(s)) {
                return Err(MixedHodgeError::IncompatibleFiltrations(format!(
                    "filtration {} level {s} is not recovered",
                    j + 1
                )));
            }
        }
    }
    Ok(split)
}
