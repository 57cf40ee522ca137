use crate::linalg::{is_nilpotent, Rat, RatMatrix, Scalar};

use super::MixedHodgeError;

/// A rational lattice with a `(-1)^k`-symmetric nondegenerate form and
/// prescribed Hodge numbers `h^{p,k-p}`, indexed by `p = 0..=k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarizedLattice {
    rank: usize,
    weight: u32,
    form: RatMatrix,
    hodge_numbers: Vec<usize>,
}

impl PolarizedLattice {
    pub fn new(weight: u32, form: RatMatrix, hodge_numbers: Vec<usize>) -> Result<Self, MixedHodgeError> {
        let problems = Self::violations(weight, &form, &hodge_numbers);
        if !problems.is_empty() {
            return Err(MixedHodgeError::InvalidLattice(problems));
        }
        Ok(PolarizedLattice { rank: form.rows(), weight, form, hodge_numbers })
    }

    /// Every violated invariant, in a fixed order.
    pub fn violations(weight: u32, form: &RatMatrix, hodge_numbers: &[usize]) -> Vec<String> {
        let mut out = Vec::new();
        if !form.is_square() {
            out.push(format!("Q is not square ({}x{})", form.rows(), form.cols()));
            return out;
        }
        let sign = if weight % 2 == 0 { Rat::one() } else { -Rat::one() };
        if form.transpose() != form.scale(&sign) {
            let kind = if weight % 2 == 0 { "symmetric" } else { "antisymmetric" };
            out.push(format!("Q is not {kind} for weight {weight}"));
        }
        if form.det().map_or(true, |d| d.is_zero_exact()) {
            out.push("Q is singular".into());
        }
        if hodge_numbers.len() != weight as usize + 1 {
            out.push(format!("expected {} Hodge numbers, got {}", weight + 1, hodge_numbers.len()));
        } else {
            let total: usize = hodge_numbers.iter().sum();
            if total != form.rows() {
                out.push(format!("Hodge numbers sum to {total}, rank is {}", form.rows()));
            }
            let n = hodge_numbers.len();
            if (0..n).any(|p| hodge_numbers[p] != hodge_numbers[n - 1 - p]) {
                out.push("Hodge numbers are not symmetric".into());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn form(&self) -> &RatMatrix {
        &self.form
    }

    pub fn hodge_numbers(&self) -> &[usize] {
        &self.hodge_numbers
    }

    /// `h^{p,k-p}`, zero outside `0..=k`.
    pub fn hodge_number(&self, p: i32) -> usize {
        usize::try_from(p).ok().and_then(|p| self.hodge_numbers.get(p).copied()).unwrap_or(0)
    }

    /// Expected `dim F^p = sum_{p' >= p} h^{p', k-p'}`.
    pub fn f_dim(&self, p: i32) -> usize {
        (p.max(0)..=self.weight as i32).map(|q| self.hodge_number(q)).sum()
    }
}

/// Commuting nilpotent infinitesimal isometries of a polarized lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentCone {
    lattice: PolarizedLattice,
    generators: Vec<RatMatrix>,
}

impl NilpotentCone {
    pub fn new(lattice: PolarizedLattice, generators: Vec<RatMatrix>) -> Result<Self, MixedHodgeError> {
        let problems = Self::violations(&lattice, &generators);
        if !problems.is_empty() {
            return Err(MixedHodgeError::InvalidCone(problems));
        }
        Ok(NilpotentCone { lattice, generators })
    }

    /// Violations grouped by check name: `nilpotent`, `commuting`, `infinitesimal isometry`.
    pub fn violations(lattice: &PolarizedLattice, generators: &[RatMatrix]) -> Vec<String> {
        let mut out = Vec::new();
        if generators.is_empty() {
            out.push("no nilpotent generators".into());
        }
        let d = lattice.rank();
        for (i, n) in generators.iter().enumerate() {
            if n.rows() != d || n.cols() != d {
                out.push(format!("N_{} has shape {}x{}, expected {d}x{d}", i + 1, n.rows(), n.cols()));
                return out;
            }
        }
        for (i, n) in generators.iter().enumerate() {
            if !is_nilpotent(n) {
                out.push(format!("nilpotent: N_{} is not nilpotent", i + 1));
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                let (a, b) = (&generators[i], &generators[j]);
                if a.dot(b) != b.dot(a) {
                    out.push(format!("commuting: N_{} and N_{} do not commute", i + 1, j + 1));
                }
            }
        }
        let q = lattice.form();
        for (i, n) in generators.iter().enumerate() {
            // Q(Nu, v) + Q(u, Nv) = 0 for all u, v  <=>  N^T Q + Q N = 0
            let lhs = n.transpose().dot(q).add(&q.dot(n)).expect("square");
            if !lhs.is_zero() {
                out.push(format!("infinitesimal isometry: N_{} does not preserve Q", i + 1));
            }
        }
        out
    }

    pub fn lattice(&self) -> &PolarizedLattice {
        &self.lattice
    }

    pub fn generators(&self) -> &[RatMatrix] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `M_j = N_1 + … + N_j`, for `j` in `1..=n`.
    pub fn partial_sum(&self, j: usize) -> RatMatrix {
        let d = self.lattice.rank();
        self.generators[..j].iter().fold(RatMatrix::zeros(d, d), |acc, n| acc.add(n).expect("square"))
    }

    /// `sum_i c_i N_i`.
    pub fn combination(&self, coefficients: &[Rat]) -> RatMatrix {
        let d = self.lattice.rank();
        self.generators
            .iter()
            .zip(coefficients)
            .fold(RatMatrix::zeros(d, d), |acc, (n, c)| acc.add(&n.scale(c)).expect("square"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn rm(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()).unwrap()
    }

    #[test]
    fn weight_one_needs_antisymmetric_form() {
        assert!(PolarizedLattice::new(1, rm(&[&[0, 1], &[-1, 0]]), vec![1, 1]).is_ok());
        let err = PolarizedLattice::new(1, rm(&[&[1, 0], &[0, 1]]), vec![1, 1]).unwrap_err();
        assert!(err.to_string().contains("antisymmetric"));
    }

    #[test]
    fn singular_form_rejected() {
        let err = PolarizedLattice::new(0, rm(&[&[1, 1], &[1, 1]]), vec![2]).unwrap_err();
        assert!(err.to_string().contains("singular"));
    }

    #[test]
    fn non_isometry_detected() {
        let lat = PolarizedLattice::new(1, rm(&[&[0, 1], &[-1, 0]]), vec![1, 1]).unwrap();
        // upper-triangular N is still an isometry of a symplectic plane; a
        // nonzero trace-free diagonal is not nilpotent, so use a 4x4 example
        assert!(NilpotentCone::new(lat.clone(), vec![rm(&[&[0, 0], &[1, 0]])]).is_ok());
        let lat4 = PolarizedLattice::new(
            1,
            rm(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]),
            vec![2, 2],
        )
        .unwrap();
        let bad = rm(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0]]);
        let err = NilpotentCone::new(lat4, vec![bad]).unwrap_err();
        assert!(err.to_string().contains("infinitesimal isometry"));
    }
}
