use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{nilpotency_index, rat, Direction, Filtration, Matrix, Rat, Scalar, Subspace};

use super::{MixedHodgeError, NilpotentCone};

/// Monodromy weight filtration `W(N)` centered at 0, via
/// `W_k = sum_{j >= max(k,0)} ker N^{j+1} ∩ im N^{j-k}`.
///
/// Both defining properties are re-checked before returning.
pub fn weight_filtration<T: Scalar>(n: &Matrix<T>) -> Result<Filtration<T>, MixedHodgeError> {
    let idx = nilpotency_index(n).ok_or(MixedHodgeError::NotNilpotent)?;
    let d = n.rows();
    if d == 0 {
        return Err(MixedHodgeError::WeightAxiom("zero-dimensional space".into()));
    }
    // N^idx = 0, so weights live in [-(idx-1), idx-1]
    let top = idx as i32 - 1;
    let powers: Vec<Matrix<T>> = (0..=idx).map(|m| n.pow(m)).collect();
    let kernels: Vec<Subspace<T>> = powers.iter().map(Subspace::kernel).collect();
    let images: Vec<Subspace<T>> = powers.iter().map(Subspace::image).collect();
    let mut levels = vec![Subspace::zero(d)];
    for k in -top..=top {
        let mut wk = Subspace::zero(d);
        for j in k.max(0)..=top {
            let ker = &kernels[(j + 1) as usize];
            let im = &images[((j - k) as usize).min(idx)];
            wk = wk.sum(&ker.intersect(im)?)?;
        }
        levels.push(wk);
    }
    let w = Filtration::new(Direction::Increasing, -top - 1, levels)?.trimmed();
    verify_weight_axioms(n, &w).map_err(MixedHodgeError::WeightAxiom)?;
    Ok(w)
}

/// `N W_k ⊆ W_{k-2}` for all `k`, and for `l >= 1`
/// `N^l W_l + W_{-l-1} = W_{-l}` with `dim gr_l = dim gr_{-l}`, which together
/// make `N^l: gr_l -> gr_{-l}` an isomorphism.
pub fn verify_weight_axioms<T: Scalar>(n: &Matrix<T>, w: &Filtration<T>) -> Result<(), String> {
    let lo = w.lo() - 2;
    let hi = w.hi() + 2;
    for k in lo..=hi {
        let img = w.level(k).apply(n).map_err(|e| e.to_string())?;
        if !w.level(k - 2).contains_subspace(&img) {
            return Err(format!("N W_{k} is not contained in W_{}", k - 2));
        }
    }
    let span = hi.max(-lo);
    for l in 1..=span {
        if w.graded_dim(l) != w.graded_dim(-l) {
            return Err(format!("dim gr_{l} != dim gr_{}", -l));
        }
        let img = w.level(l).apply(&n.pow(l as usize)).map_err(|e| e.to_string())?;
        let lhs = img.sum(&w.level(-l - 1)).map_err(|e| e.to_string())?;
        if !lhs.same_as(&w.level(-l)) {
            return Err(format!("N^{l} does not map gr_{l} onto gr_{}", -l));
        }
    }
    Ok(())
}

/// `W(M_j)` for `M_j = N_1 + … + N_j`, `j = 1..=n`.
///
/// For each `j`, `samples` random positive rational combinations of
/// `N_1..N_j` are drawn and must give the same filtration.
pub fn cone_weight_filtrations(
    cone: &NilpotentCone,
    samples: usize,
    seed: u64,
) -> Result<Vec<Filtration<Rat>>, MixedHodgeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(cone.len());
    for j in 1..=cone.len() {
        let w = weight_filtration(&cone.partial_sum(j))?;
        for _ in 0..samples {
            let coeffs: Vec<Rat> =
                (0..j).map(|_| rat(rng.gen_range(1..=9), rng.gen_range(1..=9))).collect();
            let m = cone.combination(&coeffs);
            let wm = weight_filtration(&m)?;
            if !wm.same_as(&w) {
                let shown: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                return Err(MixedHodgeError::ConeDependence { index: j, coefficients: shown.join(",") });
            }
        }
        out.push(w);
    }
    Ok(out)
}

/// Smallest `k` with `v ∈ W_k`; `None` for the zero vector.
pub fn weight_of<T: Scalar>(w: &Filtration<T>, v: &[T]) -> Option<i32> {
    if v.iter().all(|x| x.negligible(1.0)) {
        return None;
    }
    (w.lo()..=w.hi()).find(|&k| w.level(k).contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RatMatrix;

    fn rm(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()).unwrap()
    }

    #[test]
    fn zero_nilpotent_is_trivial() {
        let w = weight_filtration(&RatMatrix::zeros(3, 3)).unwrap();
        assert!(w.level(-1).is_zero());
        assert!(w.level(0).is_full());
    }

    #[test]
    fn jordan_block_of_size_two() {
        let n = rm(&[&[0, 0], &[1, 0]]);
        let w = weight_filtration(&n).unwrap();
        let im = Subspace::image(&n);
        assert!(w.level(-2).is_zero());
        assert_eq!(w.level(-1), im);
        assert_eq!(w.level(0), im);
        assert!(w.level(1).is_full());
    }

    #[test]
    fn jordan_block_of_size_three() {
        let n = rm(&[&[0, 0, 0], &[2, 0, 0], &[0, 1, 0]]);
        let w = weight_filtration(&n).unwrap();
        assert_eq!(w.level(-2), Subspace::image(&n.pow(2)));
        assert_eq!(w.level(-1), Subspace::image(&n.pow(2)));
        assert_eq!(w.level(0), Subspace::image(&n));
        assert_eq!(w.level(1), Subspace::kernel(&n.pow(2)));
        assert!(w.level(2).is_full());
    }

    #[test]
    fn rejects_non_nilpotent() {
        assert_eq!(weight_filtration(&rm(&[&[1, 0], &[0, 0]])), Err(MixedHodgeError::NotNilpotent));
    }

    #[test]
    fn axiom_check_catches_wrong_filtration() {
        let n = rm(&[&[0, 0], &[1, 0]]);
        let w = Filtration::new(Direction::Increasing, -1, vec![Subspace::zero(2), Subspace::full(2)]).unwrap();
        assert!(verify_weight_axioms(&n, &w).is_err());
    }
}
