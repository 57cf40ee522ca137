use std::collections::BTreeMap;

use crate::linalg::{Direction, Filtration, Scalar, Subspace};

use super::{GradedSplitting, MixedHodgeError};

/// Deligne bigrading `I^{p,q}` of the pair `(F, W)`.
///
/// `w` is centered at 0; the mixed Hodge structure uses `W_m := w_{m - center}`.
/// Computes
/// `I^{p,q} = F^p ∩ W_{p+q} ∩ (conj F^q ∩ W_{p+q} + sum_{j>=1} conj F^{q-j} ∩ W_{p+q-j-1})`
/// and checks that the pieces rebuild every `F^s` and `W_m`.
pub fn deligne_splitting<T: Scalar>(
    f: &Filtration<T>,
    w: &Filtration<T>,
    center: i32,
) -> Result<GradedSplitting<T>, MixedHodgeError> {
    if f.direction() != Direction::Decreasing || w.direction() != Direction::Increasing {
        return Err(MixedHodgeError::NotMixedHodge("expected decreasing F and increasing W".into()));
    }
    let d = f.ambient();
    if w.ambient() != d {
        return Err(MixedHodgeError::NotMixedHodge("F and W live in different spaces".into()));
    }
    let wm = |m: i32| w.level(m - center);
    let w_bottom = w.lo() + center;
    let (plo, phi) = (f.lo(), f.hi());
    let conj_levels: BTreeMap<i32, Subspace<T>> = (plo..=phi).map(|q| (q, f.level(q).conj())).collect();
    let fbar = |q: i32| conj_levels[&q.clamp(plo, phi)].clone();

    let mut pieces = BTreeMap::new();
    for p in plo..phi {
        for q in plo..phi {
            let m = p + q;
            let left = f.level(p).intersect(&wm(m))?;
            if left.is_zero() {
                continue;
            }
            let mut right = fbar(q).intersect(&wm(m))?;
            let mut j = 1;
            while m - j - 1 >= w_bottom {
                right = right.sum(&fbar(q - j).intersect(&wm(m - j - 1))?)?;
                j += 1;
            }
            let piece = left.intersect(&right)?;
            if !piece.is_zero() {
                pieces.insert(vec![p, q], piece);
            }
        }
    }
    let split = GradedSplitting::new(d, pieces)
        .map_err(|e| MixedHodgeError::NotMixedHodge(format!("pieces are not a splitting ({e})")))?;
    for s in plo..=phi {
        if !split.sum_where(|k| k[0] >= s).same_as(&f.level(s)) {
            return Err(MixedHodgeError::NotMixedHodge(format!("F^{s} is not the sum of I^{{p,q}} with p >= {s}")));
        }
    }
    for m in w_bottom..=w.hi() + center {
        if !split.sum_where(|k| k[0] + k[1] <= m).same_as(&wm(m)) {
            return Err(MixedHodgeError::NotMixedHodge(format!("W_{m} is not the sum of I^{{p,q}} with p+q <= {m}")));
        }
    }
    Ok(split)
}
