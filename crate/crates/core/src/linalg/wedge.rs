//! Exterior powers on the lexicographic basis `e_I`, `I = (i_1 < ... < i_k)`.

use itertools::Itertools;

use super::matrix::Matrix;
use super::scalar::Scalar;
use super::LinalgError;

pub fn wedge_basis(dim: usize, k: usize) -> Vec<Vec<usize>> {
    (0..dim).combinations(k).collect()
}

/// Matrix of `Λ^k M`: entry `(I, J)` is the minor `det M[I, J]`.
pub fn wedge_power<T: Scalar>(m: &Matrix<T>, k: usize) -> Result<Matrix<T>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.rows(), m.cols()));
    }
    let d = m.rows();
    if k == 0 || k > d {
        return Err(LinalgError::WedgeDegree { k, dim: d });
    }
    let basis = wedge_basis(d, k);
    let mut out = Matrix::zeros(basis.len(), basis.len());
    for (a, rows) in basis.iter().enumerate() {
        for (b, cols) in basis.iter().enumerate() {
            out[(a, b)] = m.submatrix(rows, cols).det()?;
        }
    }
    Ok(out)
}

/// Gram matrix of the bilinear form induced by `q` on `Λ^k`:
/// `q(u_1∧…∧u_k, v_1∧…∧v_k) = det[q(u_a, v_b)]`.
pub fn wedge_form<T: Scalar>(q: &Matrix<T>, k: usize) -> Result<Matrix<T>, LinalgError> {
    // same minors as the operator case, read as a form
    wedge_power(q, k)
}

/// Coordinates of `v_1 ∧ … ∧ v_k` in the lexicographic basis.
pub fn wedge_vectors<T: Scalar>(vs: &[Vec<T>], dim: usize) -> Result<Vec<T>, LinalgError> {
    let k = vs.len();
    if k == 0 {
        return Ok(vec![T::one()]);
    }
    if k > dim {
        return Err(LinalgError::WedgeDegree { k, dim });
    }
    let m = Matrix::from_columns(dim, vs);
    let all_cols: Vec<usize> = (0..k).collect();
    wedge_basis(dim, k)
        .iter()
        .map(|rows| m.submatrix(rows, &all_cols).det())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{rat, Rat};

    #[test]
    fn degree_one_is_identity_map() {
        let m = Matrix::from_rows(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(4, 1)]]).unwrap();
        assert_eq!(wedge_power(&m, 1).unwrap(), m);
    }

    #[test]
    fn top_degree_is_determinant() {
        let m = Matrix::from_rows(vec![
            vec![rat(2, 1), rat(1, 1), rat(0, 1)],
            vec![rat(1, 1), rat(3, 1), rat(1, 1)],
            vec![rat(0, 1), rat(1, 1), rat(4, 1)],
        ])
        .unwrap();
        let top = wedge_power(&m, 3).unwrap();
        assert_eq!((top.rows(), top.cols()), (1, 1));
        assert_eq!(top[(0, 0)], m.det().unwrap());
    }

    #[test]
    fn diagonal_square() {
        let (a, b, c) = (rat(2, 1), rat(3, 1), rat(5, 7));
        let m = Matrix::diagonal(&[a.clone(), b.clone(), c.clone()]);
        let w = wedge_power(&m, 2).unwrap();
        assert_eq!(w, Matrix::diagonal(&[&a * &b, &a * &c, &b * &c]));
    }

    #[test]
    fn degree_out_of_range() {
        let m = Matrix::<Rat>::identity(2);
        assert!(wedge_power(&m, 0).is_err());
        assert!(wedge_power(&m, 3).is_err());
    }
}
