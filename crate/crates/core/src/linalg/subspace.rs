use super::matrix::Matrix;
use super::scalar::{Scalar, FLOAT_TOL};
use super::LinalgError;

/// Reduced row echelon form of the given row vectors.
///
/// Returns the nonzero rows (pivot entries equal to one, zeros above and below
/// every pivot) and the pivot column of each row. On the float backend rows
/// are first scaled to unit max-norm and entries below `FLOAT_TOL` count as
/// zero.
pub fn rref<T: Scalar>(rows: &[Vec<T>], width: usize) -> (Vec<Vec<T>>, Vec<usize>) {
    let mut a: Vec<Vec<T>> = rows
        .iter()
        .map(|r| {
            if T::EXACT {
                r.clone()
            } else {
                let m = r.iter().map(Scalar::magnitude).fold(0.0, f64::max);
                if m == 0.0 {
                    r.clone()
                } else {
                    let s = T::one() / T::from_f64(m);
                    r.iter().map(|x| x.clone() * s.clone()).collect()
                }
            }
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == a.len() {
            break;
        }
        let pick = if T::EXACT {
            (r..a.len()).find(|&i| !a[i][c].is_zero_exact())
        } else {
            let (best, mag) = (r..a.len())
                .map(|i| (i, a[i][c].magnitude()))
                .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            (mag > FLOAT_TOL).then_some(best)
        };
        let Some(p) = pick else { continue };
        a.swap(r, p);
        let pv = a[r][c].clone();
        let inv = T::one() / pv;
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        a[r][c] = T::one();
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero_exact() {
                continue;
            }
            let f = a[i][c].clone();
            for k in 0..width {
                let v = a[i][k].clone() - f.clone() * a[r][k].clone();
                a[i][k] = v;
            }
            a[i][c] = T::zero();
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    if !T::EXACT {
        // flush float noise so that normal forms compare cleanly
        for row in a.iter_mut() {
            for x in row.iter_mut() {
                if x.magnitude() <= FLOAT_TOL * 1e-2 {
                    *x = T::zero();
                }
            }
        }
    }
    (a, pivots)
}

/// Kernel (right null space) of a matrix given by its rows.
pub fn kernel_of_rows<T: Scalar>(rows: &[Vec<T>], width: usize) -> Vec<Vec<T>> {
    let (r, pivots) = rref(rows, width);
    let mut out = Vec::new();
    for f in (0..width).filter(|c| !pivots.contains(c)) {
        let mut v = vec![T::zero(); width];
        v[f] = T::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -row[f].clone();
        }
        out.push(v);
    }
    out
}

/// A linear subspace of `T^ambient`, stored by its reduced echelon basis.
///
/// Two exact subspaces are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Subspace<T> {
    pub fn span(ambient: usize, vectors: &[Vec<T>]) -> Result<Self, LinalgError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(LinalgError::AmbientMismatch(ambient, v.len()));
        }
        let (basis, pivots) = rref(vectors, ambient);
        Ok(Subspace { ambient, basis, pivots })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(ambient, i)).collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix<T> {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    fn check(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Residual of `v` after subtracting its pivot-coordinate projection.
    pub fn residual(&self, v: &[T]) -> Vec<T> {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if c.is_zero_exact() {
                continue;
            }
            for (x, b) in r.iter_mut().zip(row) {
                *x = x.clone() - c.clone() * b.clone();
            }
        }
        r
    }

    pub fn contains(&self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        let scale = v.iter().map(Scalar::magnitude).fold(0.0, f64::max).max(1e-300);
        self.residual(v).iter().all(|x| x.negligible(scale * 10.0))
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check(other)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &all)
    }

    /// Linear functionals vanishing on the subspace, as coefficient vectors for
    /// the plain (non-conjugated) pairing.
    pub fn annihilator(&self) -> Vec<Vec<T>> {
        kernel_of_rows(&self.basis, self.ambient)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        let mut ann = self.annihilator();
        ann.extend(other.annihilator());
        Subspace::span(self.ambient, &kernel_of_rows(&ann, self.ambient))
    }

    /// `(A + B, A ∩ B)` in normal form.
    pub fn sum_intersect(&self, other: &Self) -> Result<(Self, Self), LinalgError> {
        Ok((self.sum(other)?, self.intersect(other)?))
    }

    pub fn kernel(m: &Matrix<T>) -> Self {
        let rows: Vec<Vec<T>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        let k = kernel_of_rows(&rows, m.cols());
        Subspace::span(m.cols(), &k).expect("kernel vectors have matrix width")
    }

    pub fn image(m: &Matrix<T>) -> Self {
        Subspace::span(m.rows(), &m.columns()).expect("columns have matrix height")
    }

    /// `M · self`.
    pub fn apply(&self, m: &Matrix<T>) -> Result<Self, LinalgError> {
        if m.cols() != self.ambient || !m.is_square() {
            return Err(LinalgError::AmbientMismatch(self.ambient, m.cols()));
        }
        let imgs: Vec<Vec<T>> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(self.ambient, &imgs)
    }

    pub fn conj(&self) -> Self {
        let vs: Vec<Vec<T>> = self.basis.iter().map(|v| v.iter().map(T::conj).collect()).collect();
        Subspace::span(self.ambient, &vs).expect("same ambient")
    }

    /// Complement of `self` inside `sup`: the basis vectors of `sup` (in normal-form
    /// order) that are not already in the running span. Requires `self ⊆ sup`.
    pub fn complement_in(&self, sup: &Self) -> Result<Self, LinalgError> {
        self.check(sup)?;
        if !sup.contains_subspace(self) {
            return Err(LinalgError::NotNested);
        }
        let mut running = self.clone();
        let mut added = Vec::new();
        for v in &sup.basis {
            if running.dim() == sup.dim() {
                break;
            }
            if !running.contains(v) {
                added.push(v.clone());
                let mut all = running.basis.clone();
                all.push(v.clone());
                running = Subspace::span(self.ambient, &all)?;
            }
        }
        Subspace::span(self.ambient, &added)
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Subspace<U> {
        let vs: Vec<Vec<U>> = self.basis.iter().map(|v| v.iter().map(&f).collect()).collect();
        Subspace::span(self.ambient, &vs).expect("same ambient")
    }

    /// Equality up to the float tolerance (exact equality on exact fields).
    pub fn same_as(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && self.contains_subspace(other)
            && other.contains_subspace(self)
    }
}

pub fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{rat, Rat};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn complementary_lines() {
        let a = Subspace::span(2, &[v(&[1, 0])]).unwrap();
        let b = Subspace::span(2, &[v(&[0, 1])]).unwrap();
        let (s, i) = a.sum_intersect(&b).unwrap();
        assert_eq!(s, Subspace::full(2));
        assert_eq!(i, Subspace::zero(2));
    }

    #[test]
    fn idempotent() {
        let a = Subspace::span(3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]).unwrap();
        let (s, i) = a.sum_intersect(&a).unwrap();
        assert_eq!(s, a);
        assert_eq!(i, a);
    }

    #[test]
    fn line_and_plane_in_q3() {
        // rank of [[1,1,0],[0,1,0],[0,0,1]] is 3 by inspection of the triangular form
        let a = Subspace::span(3, &[v(&[1, 1, 0])]).unwrap();
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let (s, i) = a.sum_intersect(&b).unwrap();
        assert_eq!(s, Subspace::full(3));
        assert_eq!(i, Subspace::zero(3));
    }

    #[test]
    fn ambient_mismatch_is_error() {
        let a = Subspace::<Rat>::full(2);
        let b = Subspace::<Rat>::full(3);
        assert!(matches!(a.sum_intersect(&b), Err(LinalgError::AmbientMismatch(2, 3))));
    }

    #[test]
    fn normal_form_is_unique() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[1, -1, 2])]).unwrap();
        let b = Subspace::span(3, &[v(&[2, 0, 2]), v(&[0, 2, -2])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn complement_completion() {
        let sup = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let sub = Subspace::span(3, &[v(&[1, 1, 0])]).unwrap();
        let c = sub.complement_in(&sup).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(sub.sum(&c).unwrap(), sup);
        assert!(sup.complement_in(&sub).is_err());
    }
}
