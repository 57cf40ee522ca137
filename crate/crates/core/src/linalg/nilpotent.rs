use super::matrix::Matrix;
use super::scalar::Scalar;
use super::LinalgError;

/// Smallest `m` with `N^m = 0`, or `None` if `N^d != 0` for `d = dim`.
pub fn nilpotency_index<T: Scalar>(n: &Matrix<T>) -> Option<usize> {
    if !n.is_square() {
        return None;
    }
    let d = n.rows();
    let mut p = Matrix::identity(d);
    for m in 0..=d {
        if p.is_zero() {
            return Some(m);
        }
        p = p.dot(n);
    }
    None
}

pub fn is_nilpotent<T: Scalar>(n: &Matrix<T>) -> bool {
    nilpotency_index(n).is_some()
}

/// `exp(zN) = sum_{m<d} (zN)^m / m!`, a finite sum because `N` is nilpotent.
pub fn nilpotent_exp<T: Scalar>(n: &Matrix<T>, z: &T) -> Result<Matrix<T>, LinalgError> {
    if !n.is_square() {
        return Err(LinalgError::NotSquare(n.rows(), n.cols()));
    }
    let idx = nilpotency_index(n).ok_or(LinalgError::NotNilpotent)?;
    exp_series(&n.scale(z), idx)
}

/// Exponential of a matrix known to satisfy `M^order = 0`.
pub(crate) fn exp_series<T: Scalar>(m: &Matrix<T>, order: usize) -> Result<Matrix<T>, LinalgError> {
    let d = m.rows();
    let mut out = Matrix::identity(d);
    let mut term = Matrix::identity(d);
    for k in 1..order.max(1) {
        term = term.dot(m).scale(&(T::one() / T::from_i64(k as i64)));
        out = out.add(&term)?;
    }
    Ok(out)
}

/// `exp(sum_j z_j N_j)` for commuting nilpotents.
pub fn cone_exp<T: Scalar>(ns: &[Matrix<T>], z: &[T]) -> Result<Matrix<T>, LinalgError> {
    let Some(first) = ns.first() else {
        return Err(LinalgError::BadFiltration("empty nilpotent list".into()));
    };
    if ns.len() != z.len() {
        return Err(LinalgError::Shape { expected: (ns.len(), 1), got: (z.len(), 1) });
    }
    let mut m = Matrix::zeros(first.rows(), first.cols());
    for (n, zj) in ns.iter().zip(z) {
        m = m.add(&n.scale(zj))?;
    }
    nilpotent_exp(&m, &T::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{CRat, Rat};

    fn cm(rows: &[&[i64]]) -> Matrix<CRat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| CRat::from_ints(x, 0)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn two_by_two_block() {
        let n = cm(&[&[0, 0], &[1, 0]]);
        let z: CRat = "3/2+i".parse().unwrap();
        let e = nilpotent_exp(&n, &z).unwrap();
        assert_eq!(e, Matrix::from_rows(vec![vec![CRat::one(), CRat::zero()], vec![z, CRat::one()]]).unwrap());
    }

    #[test]
    fn zero_gives_identity() {
        let n = Matrix::<Rat>::zeros(3, 3);
        assert_eq!(nilpotent_exp(&n, &Rat::from_i64(5)).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn three_by_three_chain() {
        // N f1 = 2 f2, N f2 = f3: exp(zN) f1 = f1 + 2z f2 + z^2 f3
        let n = cm(&[&[0, 0, 0], &[2, 0, 0], &[0, 1, 0]]);
        let z: CRat = "2-i".parse().unwrap();
        let e = nilpotent_exp(&n, &z).unwrap();
        let img = e.mul_vec(&[CRat::one(), CRat::zero(), CRat::zero()]);
        assert_eq!(img, vec![CRat::one(), &CRat::from_ints(2, 0) * &z, &z * &z]);
    }

    #[test]
    fn rejects_non_nilpotent() {
        let n = cm(&[&[1, 0], &[0, 0]]);
        assert!(matches!(nilpotent_exp(&n, &CRat::one()), Err(LinalgError::NotNilpotent)));
    }
}
