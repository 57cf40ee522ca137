use crate::linalg::{wedge_form, wedge_vectors, CRat, Matrix, Scalar};
use crate::mixed_hodge::{deligne_splitting, weight_filtration};

use super::orbit::gamma;
use super::{NilpotentOrbitData, PeriodError};

/// Basis of the limit adapted to the Deligne bigrading of `(F, W(M_n))`,
/// each vector tagged with its Hodge index `p`, ordered by `p` descending.
pub fn k_flag(data: &NilpotentOrbitData) -> Result<Vec<(i32, Vec<CRat>)>, PeriodError> {
    let m = data.cone().partial_sum(data.vars()).to_crat();
    let w = weight_filtration(&m)?;
    let split = deligne_splitting(data.limit(), &w, data.weight() as i32)?;
    let mut flag = split.adapted_basis();
    flag.sort_by(|a, b| b.0[0].cmp(&a.0[0]).then(a.0[1].cmp(&b.0[1])));
    Ok(flag.into_iter().map(|(deg, v)| (deg[0], v)).collect())
}

/// Quantities attached to the `i`-th Gram–Schmidt vector `w̃_i` of the flag
/// `γ w_1, …, γ w_d` with respect to `B(u, v) = Q(u, conj v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WedgeChainTerm<T> {
    /// `B(w̃_i)`
    pub norm: T,
    /// `B(u, w̃_i)`
    pub with_u: T,
    /// `B(w̃_i, v)`
    pub with_v: T,
    /// `h(ũ_i, ṽ_i) = i^{2 p_i - k} B(u, w̃_i) B(w̃_i, v) / B(w̃_i)`
    pub h: T,
}

/// Ratio formulas on wedge powers:
/// `B(w̃_i) = B(γw_{K^i}) / B(γw_{K^{i-1}})`,
/// `B(u, w̃_i) = B(γw_{K^{i-1}} ∧ u, γw_{K^i}) / B(γw_{K^{i-1}})`,
/// `B(w̃_i, v) = B(γw_{K^i}, γw_{K^{i-1}} ∧ v) / B(γw_{K^{i-1}})`.
/// `index` is 1-based.
pub fn wedge_norm_chain<T: Scalar>(
    data: &NilpotentOrbitData,
    z: &[T],
    flag: &[(i32, Vec<T>)],
    index: usize,
    u: &[T],
    v: &[T],
) -> Result<WedgeChainTerm<T>, PeriodError> {
    if index == 0 || index > flag.len() {
        return Err(PeriodError::FlagIndex { index, len: flag.len() });
    }
    let d = data.rank();
    let g = gamma(data, z)?;
    let q: Matrix<T> = data.lattice().form().map(T::from_rat);
    let moved: Vec<Vec<T>> = flag[..index].iter().map(|(_, w)| g.mul_vec(w)).collect();
    let head = &moved[..index - 1];

    let pair = |a: &[Vec<T>], b: &[Vec<T>]| -> Result<T, PeriodError> {
        if a.is_empty() {
            return Ok(T::one());
        }
        let form = wedge_form(&q, a.len())?;
        Ok(form.sesquilinear(&wedge_vectors(a, d)?, &wedge_vectors(b, d)?))
    };
    let with = |x: &[T]| -> Vec<Vec<T>> {
        let mut out = head.to_vec();
        out.push(x.to_vec());
        out
    };

    let prev = pair(head, head)?;
    let full = pair(&moved, &moved)?;
    // the wedge norms can be many orders below the entry scale, so only a
    // genuine zero counts as degenerate
    let degenerate = |x: &T| x.is_zero_exact() || !x.magnitude().is_finite();
    if degenerate(&prev) {
        return Err(PeriodError::DegenerateChain(index - 1));
    }
    if degenerate(&full) {
        return Err(PeriodError::DegenerateChain(index));
    }
    let norm = full / prev.clone();
    let with_u = pair(&with(u), &moved)? / prev.clone();
    let with_v = pair(&moved, &with(v))? / prev;
    let phase = T::i_pow((2 * flag[index - 1].0 - data.weight() as i32) as i64);
    let h = phase * with_u.clone() * with_v.clone() / norm.clone();
    Ok(WedgeChainTerm { norm, with_u, with_v, h })
}
