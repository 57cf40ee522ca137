use num_traits::Zero;

use crate::linalg::{CRat, Rat, Scalar};
use crate::period::NilpotentOrbitData;

use super::poly::Poly;
use super::LocusError;

/// Polynomial equations in `z_1..z_n` whose common zeros are the points where
/// `exp(-Σ z_j N_j) v ∈ F^{p₀}` for the limit filtration `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocusSystem {
    pub orbit: String,
    pub vars: usize,
    pub vector: Vec<Rat>,
    pub level: i32,
    pub equations: Vec<Poly>,
}

impl LocusSystem {
    /// Zero polynomials dropped.
    pub fn nonzero_equations(&self) -> impl Iterator<Item = &Poly> {
        self.equations.iter().filter(|p| !p.is_zero())
    }

    pub fn is_identically_zero(&self) -> bool {
        self.equations.iter().all(Poly::is_zero)
    }

    pub fn vanishes_at(&self, z: &[CRat]) -> bool {
        self.equations.iter().all(|p| p.eval(z).is_zero_exact())
    }

    /// Largest `|p(z)| / Σ|monomials of p at z|` over the equations.
    pub fn relative_residual(&self, z: &[crate::linalg::C64]) -> f64 {
        self.nonzero_equations()
            .map(|p| {
                let scale = p.eval_abs_c64(z).max(f64::MIN_POSITIVE);
                p.eval_c64(z).norm() / scale
            })
            .fold(0.0, f64::max)
    }
}

/// `exp(-Σ z_j N_j) v` as a vector of polynomials.
pub fn transported_vector(data: &NilpotentOrbitData, v: &[Rat]) -> Vec<Poly> {
    let n = data.vars();
    let d = data.rank();
    let mut total: Vec<Poly> = v.iter().map(|x| Poly::constant(n, CRat::real(x.clone()))).collect();
    let mut term = total.clone();
    for k in 1..=d {
        // term <- -(1/k) Σ_j z_j N_j term
        let mut next = vec![Poly::zero(n); d];
        for (j, nj) in data.nilpotents().iter().enumerate() {
            let zj = Poly::var(n, j);
            for (r, slot) in next.iter_mut().enumerate() {
                let mut acc = Poly::zero(n);
                for (c, t) in term.iter().enumerate() {
                    let a = &nj[(r, c)];
                    if !a.is_zero() {
                        acc = acc.add(&t.scale(&CRat::real(a.clone())));
                    }
                }
                *slot = slot.add(&acc.mul(&zj));
            }
        }
        let f = CRat::real(Rat::new((-1).into(), (k as i64).into()));
        term = next.iter().map(|p| p.scale(&f)).collect();
        if term.iter().all(Poly::is_zero) {
            break;
        }
        total = total.iter().zip(&term).map(|(a, b)| a.add(b)).collect();
    }
    total
}

/// The locus of `v` as a Hodge class: `p₀ = k/2`, one equation per coordinate
/// outside the pivots of the echelon basis of `F^{p₀}`.
pub fn hodge_vector_condition(data: &NilpotentOrbitData, v: &[Rat]) -> Result<LocusSystem, LocusError> {
    let k = data.weight();
    if k % 2 == 1 {
        return Err(LocusError::OddWeight(k));
    }
    if data.psi().is_some() {
        return Err(LocusError::HolomorphicPart);
    }
    if v.len() != data.rank() {
        return Err(LocusError::Arity { expected: data.rank(), got: v.len() });
    }
    if v.iter().all(Zero::is_zero) {
        return Err(LocusError::ZeroVector);
    }
    let level = (k / 2) as i32;
    let f = data.limit().level(level);
    let w = transported_vector(data, v);
    // residual after clearing the pivot coordinates, read off the free coordinates
    let mut res = w;
    for (row, &p) in f.basis().iter().zip(f.pivots()) {
        let c = res[p].clone();
        for (slot, b) in res.iter_mut().zip(row) {
            if !b.is_zero_exact() {
                *slot = slot.sub(&c.scale(b));
            }
        }
    }
    let equations = (0..data.rank()).filter(|i| !f.pivots().contains(i)).map(|i| res[i].clone()).collect();
    Ok(LocusSystem { orbit: data.name().to_string(), vars: data.vars(), vector: v.to_vec(), level, equations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets;
    use crate::linalg::rat;

    fn c(n: i64) -> CRat {
        CRat::from_ints(n, 0)
    }

    #[test]
    fn sym2_quadratic() {
        let s = hodge_vector_condition(&datasets::sym2e1(), &[rat(3, 1), rat(5, 1), rat(7, 1)]).unwrap();
        assert_eq!(s.equations.len(), 1);
        assert_eq!(s.equations[0].to_univariate(), vec![c(7), c(-5), c(3)]);
    }

    #[test]
    fn rejections() {
        let sym = datasets::sym2e1();
        assert_eq!(hodge_vector_condition(&sym, &vec![rat(0, 1); 3]), Err(LocusError::ZeroVector));
        assert_eq!(hodge_vector_condition(&datasets::e1(), &[rat(1, 1), rat(0, 1)]), Err(LocusError::OddWeight(1)));
        let f3 = hodge_vector_condition(&sym, &[rat(0, 1), rat(0, 1), rat(1, 1)]).unwrap();
        assert_eq!(f3.equations[0], Poly::constant(1, c(1)));
    }
}
