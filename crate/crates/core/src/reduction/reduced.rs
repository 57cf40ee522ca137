use nalgebra::DMatrix;

use super::ReductionError;

/// Outcome of the three-condition test for `(e, C)`-reducedness.
#[derive(Clone, Debug, PartialEq)]
pub struct Reducedness {
    pub reduced: bool,
    /// `max_{i,j} |b(e_i,e_j)| / b(e_i)`, `max_{i<=j} b(e_i) / b(e_j)`,
    /// `prod_i b(e_i) / det [b(e_i,e_j)]`.
    pub defects: [f64; 3],
}

impl Reducedness {
    pub fn max_defect(&self) -> f64 {
        self.defects.iter().cloned().fold(0.0, f64::max)
    }
}

/// Evaluates the three reduction conditions for the positive form `b` (in
/// standard coordinates) on the ordered basis `e`. Diagonal terms are included
/// in the first two maxima, so every defect is at least 1 and the conditions
/// hold iff all defects are `< c`.
pub fn is_reduced(b: &DMatrix<f64>, e: &[Vec<f64>], c: f64) -> Result<Reducedness, ReductionError> {
    let n = b.nrows();
    if b.ncols() != n || e.len() != n || e.iter().any(|v| v.len() != n) {
        return Err(ReductionError::Shape(format!("form is {}x{}, basis has {} vectors", b.nrows(), b.ncols(), e.len())));
    }
    let basis = DMatrix::from_fn(n, n, |i, j| e[j][i]);
    let gram = basis.transpose() * b * &basis;
    let sym = (&gram + gram.transpose()) * 0.5;
    if sym.clone().cholesky().is_none() {
        return Err(ReductionError::NotPositiveDefinite);
    }
    let diag: Vec<f64> = (0..n).map(|i| sym[(i, i)]).collect();
    let mut d1 = 0.0f64;
    let mut d2 = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            d1 = d1.max(sym[(i, j)].abs() / diag[i]);
            if i <= j {
                d2 = d2.max(diag[i] / diag[j]);
            }
        }
    }
    let det = sym.determinant();
    let d3 = diag.iter().product::<f64>() / det;
    let defects = [d1, d2, d3];
    Ok(Reducedness { reduced: defects.iter().all(|&d| d < c), defects })
}
