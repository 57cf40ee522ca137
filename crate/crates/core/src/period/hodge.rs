use std::collections::BTreeMap;

use crate::linalg::{Filtration, Matrix, Scalar, Subspace};
use crate::mixed_hodge::{GradedSplitting, PolarizedLattice};

use super::orbit::orbit_filtration;
use super::{NilpotentOrbitData, PeriodError};

/// The Hodge structure carried by `F(z)`.
#[derive(Clone, Debug)]
pub struct HodgePoint<T> {
    pub z: Vec<T>,
    pub filtration: Filtration<T>,
    /// `H^{p,q}` keyed by `[p, q]`.
    pub pieces: GradedSplitting<T>,
    /// Multiplication by `i^{p-q}` on `H^{p,q}`.
    pub weil: Matrix<T>,
    pub polarized: bool,
    form: Matrix<T>,
}

/// Hermitian and positive definite (leading principal minors), exactly on
/// exact fields and up to `FLOAT_TOL` relative to the entry scale on floats.
pub fn is_positive_definite<T: Scalar>(g: &Matrix<T>) -> bool {
    let n = g.rows();
    if n == 0 {
        return true;
    }
    let scale = g.max_abs().max(f64::MIN_POSITIVE);
    for a in 0..n {
        for b in 0..n {
            if !(g[(a, b)].clone() - g[(b, a)].conj()).negligible(scale) {
                return false;
            }
        }
    }
    for k in 1..=n {
        let idx: Vec<usize> = (0..k).collect();
        let Ok(m) = g.submatrix(&idx, &idx).det() else { return false };
        let c = m.to_c64();
        if c.re <= 0.0 || m.negligible(scale.powi(k as i32)) {
            return false;
        }
    }
    true
}

/// `H^{p,k-p} = F^p ∩ conj F^{k-p}`, the Weil operator and the polarization test
/// `i^{p-q} Q(u, conj u) > 0` on every piece.
pub fn hodge_decomposition<T: Scalar>(
    f: &Filtration<T>,
    lattice: &PolarizedLattice,
    z: Vec<T>,
) -> Result<HodgePoint<T>, PeriodError> {
    if T::imag_unit().is_none() {
        return Err(PeriodError::NotRepresentable("i".into()));
    }
    let k = lattice.weight() as i32;
    let d = lattice.rank();
    let form = lattice.form().map(T::from_rat);
    let mut pieces = BTreeMap::new();
    for p in 0..=k {
        let h = f.level(p).intersect(&f.level(k - p).conj())?;
        if h.dim() != lattice.hodge_number(p) {
            return Err(PeriodError::NotHodgeStructure(format!(
                "dim H^{{{p},{}}} = {}, expected {}",
                k - p,
                h.dim(),
                lattice.hodge_number(p)
            )));
        }
        pieces.insert(vec![p, k - p], h);
    }
    let pieces = GradedSplitting::new(d, pieces).map_err(|e| PeriodError::NotHodgeStructure(e.to_string()))?;

    let mut polarized = true;
    let mut columns = Vec::with_capacity(d);
    let mut phases = Vec::with_capacity(d);
    for (deg, h) in pieces.pieces() {
        let phase = T::i_pow((deg[0] - deg[1]) as i64);
        let gram = Matrix::from_fn(h.dim(), h.dim(), |a, b| {
            phase.clone() * form.sesquilinear(&h.basis()[a], &h.basis()[b])
        });
        polarized &= is_positive_definite(&gram);
        for v in h.basis() {
            columns.push(v.clone());
            phases.push(phase.clone());
        }
    }
    let basis = Matrix::from_columns(d, &columns);
    let weil = basis.dot(&Matrix::diagonal(&phases)).dot(&basis.inverse()?);
    Ok(HodgePoint { z, filtration: f.clone(), pieces, weil, polarized, form })
}

impl<T: Scalar> HodgePoint<T> {
    /// `h(u, v) = Q(C u, conj v)`, without a polarization check.
    pub fn form(&self, u: &[T], v: &[T]) -> T {
        self.form.sesquilinear(&self.weil.mul_vec(u), v)
    }

    /// `B(u, v) = Q(u, conj v)`.
    pub fn b(&self, u: &[T], v: &[T]) -> T {
        self.form.sesquilinear(u, v)
    }

    pub fn polarization(&self) -> &Matrix<T> {
        &self.form
    }

    /// Gram matrix `[h(b_a, b_b)]`; errors at unpolarized points.
    pub fn metric(&self, basis: &[Vec<T>]) -> Result<Matrix<T>, PeriodError> {
        if !self.polarized {
            return Err(PeriodError::Unpolarized);
        }
        let cb: Vec<Vec<T>> = basis.iter().map(|v| self.weil.mul_vec(v)).collect();
        Ok(Matrix::from_fn(basis.len(), basis.len(), |a, b| self.form.sesquilinear(&cb[a], &basis[b])))
    }

    pub fn piece(&self, p: i32) -> Subspace<T> {
        let k = self.pieces.pieces().next().map(|(deg, _)| deg[0] + deg[1]).unwrap_or(0);
        self.pieces.piece(&[p, k - p])
    }
}

/// `F(z)` followed by its Hodge decomposition.
pub fn evaluate<T: Scalar>(data: &NilpotentOrbitData, z: &[T]) -> Result<HodgePoint<T>, PeriodError> {
    let f = orbit_filtration(data, z)?;
    hodge_decomposition(&f, data.lattice(), z.to_vec())
}

pub fn hodge_form<T: Scalar>(data: &NilpotentOrbitData, z: &[T], u: &[T], v: &[T]) -> Result<T, PeriodError> {
    let point = evaluate(data, z)?;
    if !point.polarized {
        return Err(PeriodError::Unpolarized);
    }
    Ok(point.form(u, v))
}

pub fn hodge_metric_matrix<T: Scalar>(
    data: &NilpotentOrbitData,
    z: &[T],
    basis: &[Vec<T>],
) -> Result<Matrix<T>, PeriodError> {
    evaluate(data, z)?.metric(basis)
}
