use nalgebra::DMatrix;

use super::ReductionError;

/// `g = n a k` with `n` unipotent upper triangular, `a` positive diagonal and
/// `k` orthogonal.
#[derive(Clone, Debug, PartialEq)]
pub struct Iwasawa {
    pub n: DMatrix<f64>,
    pub a: Vec<f64>,
    pub k: DMatrix<f64>,
}

impl Iwasawa {
    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.n * DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.a)) * &self.k
    }
}

/// Gram–Schmidt on the rows of `g`, starting from the last row, so that
/// `g = R k` with `R` upper triangular; then `R = n a`.
pub fn iwasawa(g: &DMatrix<f64>) -> Result<Iwasawa, ReductionError> {
    let (m, c) = g.shape();
    if m != c {
        return Err(ReductionError::NotSquare(m, c));
    }
    let scale = g.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 {
        return Err(ReductionError::Singular);
    }
    let mut k = DMatrix::<f64>::zeros(m, m);
    let mut r = DMatrix::<f64>::zeros(m, m);
    for i in (0..m).rev() {
        let mut v = g.row(i).clone_owned();
        // two passes keep the rows orthogonal to working precision
        for _ in 0..2 {
            for j in i + 1..m {
                let p = v.dot(&k.row(j));
                r[(i, j)] += p;
                v -= k.row(j) * p;
            }
        }
        let norm = v.norm();
        if norm <= 1e-14 * scale {
            return Err(ReductionError::Singular);
        }
        r[(i, i)] = norm;
        k.set_row(i, &(v / norm));
    }
    let a: Vec<f64> = (0..m).map(|i| r[(i, i)]).collect();
    let n = DMatrix::from_fn(m, m, |i, j| if j < i { 0.0 } else { r[(i, j)] / a[j] });
    Ok(Iwasawa { n, a, k })
}

/// `(a_{i+1} / a_i)_{i < m}`, the values `a^{-α_i}` at the simple roots
/// `α_i(a) = a_i / a_{i+1}`.
pub fn corner_coords(a: &[f64]) -> Result<Vec<f64>, ReductionError> {
    if let Some(bad) = a.iter().find(|&&x| !(x > 0.0)) {
        return Err(ReductionError::NonPositive(format!("diagonal entry {bad}")));
    }
    Ok(a.windows(2).map(|w| w[1] / w[0]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_input() {
        let (c, s) = (0.6, 0.8);
        let g = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
        let iw = iwasawa(&g).unwrap();
        assert!((iw.n.clone() - DMatrix::identity(2, 2)).norm() < 1e-14);
        assert!(iw.a.iter().all(|x| (x - 1.0).abs() < 1e-14));
        assert!((iw.k - g).norm() < 1e-14);
    }

    #[test]
    fn upper_triangular_closed_form() {
        let (x, y) = (0.3f64, 4.0f64);
        let g = DMatrix::from_row_slice(2, 2, &[y.sqrt(), x / y.sqrt(), 0.0, 1.0 / y.sqrt()]);
        let iw = iwasawa(&g).unwrap();
        assert!((iw.n[(0, 1)] - x).abs() < 1e-14);
        assert!((iw.a[0] - 2.0).abs() < 1e-14 && (iw.a[1] - 0.5).abs() < 1e-14);
        assert!((iw.k - DMatrix::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn corners() {
        assert_eq!(corner_coords(&[1.0, 1.0, 1.0]).unwrap(), vec![1.0, 1.0]);
        assert_eq!(corner_coords(&[3.0, 1.0 / 3.0]).unwrap(), vec![1.0 / 9.0]);
        assert!(corner_coords(&[1.0, 0.0]).is_err());
    }

    #[test]
    fn singular_rejected() {
        let g = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert_eq!(iwasawa(&g).unwrap_err(), ReductionError::Singular);
    }
}
