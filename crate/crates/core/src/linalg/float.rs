//! Float-only numerics delegated to `nalgebra`: SVD null vectors, least
//! squares and companion-matrix eigenvalues.

use nalgebra::{DMatrix, DVector};

use super::scalar::C64;

pub fn to_na(rows: &[Vec<C64>]) -> DMatrix<C64> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    DMatrix::from_fn(r, c, |i, j| rows[i][j])
}

/// Right singular vector of the smallest singular value, with
/// `(sigma_min, sigma_max)`. Rows are equations, columns unknowns.
pub fn smallest_singular(rows: &[Vec<C64>]) -> Option<(Vec<C64>, f64, f64)> {
    let a = to_na(rows);
    let (m, n) = a.shape();
    if n == 0 {
        return None;
    }
    // pad to at least n rows so the SVD exposes all n right singular vectors
    let a = if m < n { a.resize_vertically(n, C64::new(0.0, 0.0)) } else { a };
    let svd = a.svd(false, true);
    let vt = svd.v_t?;
    let (imin, smin) = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &s)| if s < acc.1 { (i, s) } else { acc });
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let v: Vec<C64> = vt.row(imin).iter().map(|x| x.conj()).collect();
    Some((v, smin, smax))
}

/// Real least squares `min |A x - b|` via SVD. Returns `None` when rank-deficient.
pub fn least_squares(a: &[Vec<f64>], b: &[f64], rcond: f64) -> Option<Vec<f64>> {
    let r = a.len();
    let c = a.first().map_or(0, Vec::len);
    let m = DMatrix::from_fn(r, c, |i, j| a[i][j]);
    let svd = m.svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    if svd.singular_values.iter().any(|&s| s <= rcond * smax) || r < c {
        return None;
    }
    let x = svd.solve(&DVector::from_column_slice(b), 0.0).ok()?;
    Some(x.iter().cloned().collect())
}

/// Roots of `sum_k coeffs[k] z^k` as eigenvalues of the companion matrix.
pub fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let mut comp = DMatrix::from_element(deg, deg, C64::new(0.0, 0.0));
    for i in 1..deg {
        comp[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -c[i] / lead;
    }
    let schur = comp.schur();
    let (_, t) = schur.unpack();
    (0..deg).map(|i| t[(i, i)]).map(|r| polish(&c, r)).collect()
}

fn polish(c: &[C64], mut z: C64) -> C64 {
    for _ in 0..3 {
        let (mut p, mut dp) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        for &a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        if !step.is_finite() {
            break;
        }
        z -= step;
    }
    z
}
