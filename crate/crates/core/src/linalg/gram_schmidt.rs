use super::matrix::Matrix;
use super::scalar::Scalar;
use super::LinalgError;

/// Result of orthogonalizing a flag `w_1, …, w_d` against the sesquilinear
/// form `B(u, v) = u^T G conj(v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramSchmidt<T> {
    /// `w̃_i`, pairwise `B`-orthogonal, with `span(w̃_1..w̃_i) = span(w_1..w_i)`.
    pub basis: Vec<Vec<T>>,
    /// `coeffs[i][j] = B(w_i, w̃_j) / B(w̃_j)` for `j < i`, so `w_i = w̃_i + Σ_j coeffs[i][j] w̃_j`.
    pub coeffs: Vec<Vec<T>>,
    /// `B(w̃_i, w̃_i)`.
    pub norms: Vec<T>,
}

/// Requires `G` hermitian or skew-hermitian for the output to be orthogonal in
/// both argument orders; fails at the first `i` with `B(w̃_i) = 0`.
pub fn gram_schmidt<T: Scalar>(form: &Matrix<T>, basis: &[Vec<T>]) -> Result<GramSchmidt<T>, LinalgError> {
    let scale_g = form.max_abs().max(f64::MIN_POSITIVE);
    let mut out: Vec<Vec<T>> = Vec::with_capacity(basis.len());
    let mut coeffs = Vec::with_capacity(basis.len());
    let mut norms: Vec<T> = Vec::with_capacity(basis.len());
    for (i, w) in basis.iter().enumerate() {
        if w.len() != form.rows() {
            return Err(LinalgError::AmbientMismatch(form.rows(), w.len()));
        }
        let mut v = w.clone();
        let mut row = Vec::with_capacity(i);
        for (wt, nrm) in out.iter().zip(&norms) {
            let mu = form.sesquilinear(w, wt) / nrm.clone();
            for (x, y) in v.iter_mut().zip(wt) {
                *x = x.clone() - mu.clone() * y.clone();
            }
            row.push(mu);
        }
        let n = form.sesquilinear(&v, &v);
        let vscale = v.iter().map(Scalar::magnitude).fold(0.0, f64::max);
        if n.negligible(scale_g * vscale * vscale) {
            return Err(LinalgError::DegenerateFlag { index: i });
        }
        out.push(v);
        coeffs.push(row);
        norms.push(n);
    }
    Ok(GramSchmidt { basis: out, coeffs, norms })
}

/// Gram matrix `[B(u_a, u_b)]`.
pub fn gram_matrix<T: Scalar>(form: &Matrix<T>, vs: &[Vec<T>]) -> Matrix<T> {
    Matrix::from_fn(vs.len(), vs.len(), |a, b| form.sesquilinear(&vs[a], &vs[b]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{rat, Rat};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn orthonormal_input_unchanged() {
        let g = Matrix::<Rat>::identity(3);
        let b = vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])];
        assert_eq!(gram_schmidt(&g, &b).unwrap().basis, b);
    }

    #[test]
    fn one_projection_step() {
        let g = Matrix::<Rat>::identity(2);
        let gs = gram_schmidt(&g, &[v(&[1, 0]), v(&[1, 1])]).unwrap();
        assert_eq!(gs.basis, vec![v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(gs.coeffs[1], vec![rat(1, 1)]);
    }

    #[test]
    fn degenerate_flag_reports_index() {
        // hyperbolic plane: e1 is isotropic
        let g = Matrix::from_rows(vec![v(&[0, 1]), v(&[1, 0])]).unwrap();
        let err = gram_schmidt(&g, &[v(&[1, 0]), v(&[0, 1])]).unwrap_err();
        assert_eq!(err, LinalgError::DegenerateFlag { index: 0 });
    }
}
