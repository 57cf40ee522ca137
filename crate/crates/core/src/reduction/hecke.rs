use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{CRat, Rat};

use super::sl2::{reduce_sl2, Sl2};
use super::ReductionError;

/// A rational 2x2 matrix with positive determinant.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeElement {
    entries: [Rat; 4],
}

impl HeckeElement {
    /// Row-major `[[a, b], [c, d]]`.
    pub fn new(entries: [Rat; 4]) -> Result<Self, ReductionError> {
        let [a, b, c, d] = &entries;
        if !(a * d - b * c).is_positive() {
            return Err(ReductionError::NonPositiveDeterminant);
        }
        Ok(HeckeElement { entries })
    }

    /// `diag(1, p)`.
    pub fn diag(p: i64) -> Result<Self, ReductionError> {
        let r = |n: i64| Rat::from_integer(n.into());
        HeckeElement::new([r(1), r(0), r(0), r(p)])
    }

    pub fn entries(&self) -> &[Rat; 4] {
        &self.entries
    }

    /// The primitive integer multiple of `g` (same action on the upper half-plane).
    pub fn primitive(&self) -> [BigInt; 4] {
        let lcm = self.entries.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self.entries.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        [&ints[0] / &g, &ints[1] / &g, &ints[2] / &g, &ints[3] / &g]
    }

    /// Determinant of the primitive integer multiple, i.e. the second
    /// elementary divisor `m` of `Γ diag(1, m) Γ`.
    pub fn level(&self) -> BigInt {
        let [a, b, c, d] = self.primitive();
        a * d - b * c
    }
}

/// One point of a Hecke orbit: the coset representative `[[a, b], [0, d]]`,
/// the image `(a z + b) / d` and its reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckePoint {
    pub rep: (BigInt, BigInt, BigInt),
    pub image: CRat,
    pub reduced: CRat,
    pub gamma: Sl2,
}

/// Right coset representatives of `Γ \ Γ diag(1, m) Γ`: upper triangular
/// `[[a, b], [0, d]]` with `a d = m`, `0 <= b < d`, `gcd(a, b, d) = 1`.
pub fn coset_reps(m: &BigInt) -> Vec<(BigInt, BigInt, BigInt)> {
    let mut out = Vec::new();
    let mut a = BigInt::one();
    while &a <= m {
        if (m % &a).is_zero() {
            let d = m / &a;
            let mut b = BigInt::zero();
            while b < d {
                if a.gcd(&b).gcd(&d).is_one() {
                    out.push((a.clone(), b.clone(), d.clone()));
                }
                b += 1;
            }
        }
        a += 1;
    }
    out.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    out
}

/// The multiset of reduced points attached to `z` by the correspondence of `g`.
/// Its size is the index of `Γ ∩ g^{-1} Γ g` in `Γ`.
pub fn hecke_points(z: &CRat, g: &HeckeElement) -> Result<Vec<HeckePoint>, ReductionError> {
    let m = g.level();
    coset_reps(&m)
        .into_iter()
        .map(|(a, b, d)| {
            let r = |x: &BigInt| CRat::real(Rat::from_integer(x.clone()));
            let image = &(&(&r(&a) * z) + &r(&b)) / &r(&d);
            let (reduced, gamma) = reduce_sl2(&image)?;
            Ok(HeckePoint { rep: (a, b, d), image, reduced, gamma })
        })
        .collect()
}

/// Reduced points with multiplicities, most frequent first.
pub fn multiset(points: &[HeckePoint]) -> Vec<(CRat, usize)> {
    let mut out: Vec<(CRat, usize)> = Vec::new();
    for p in points {
        match out.iter_mut().find(|(z, _)| *z == p.reduced) {
            Some(entry) => entry.1 += 1,
            None => out.push((p.reduced.clone(), 1)),
        }
    }
    out.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.to_string().cmp(&b.0.to_string())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_degrees() {
        for p in [2i64, 3, 5, 7] {
            assert_eq!(coset_reps(&BigInt::from(p)).len() as i64, p + 1);
        }
        // psi(4) = 4 (1 + 1/2) = 6
        assert_eq!(coset_reps(&BigInt::from(4)).len(), 6);
    }

    #[test]
    fn scalar_multiples_act_alike() {
        let r = |n: i64, d: i64| Rat::new(n.into(), d.into());
        let g = HeckeElement::new([r(3, 2), r(0, 1), r(0, 1), r(3, 1)]).unwrap();
        assert_eq!(g.level(), BigInt::from(2));
        assert!(HeckeElement::new([r(0, 1), r(1, 1), r(1, 1), r(0, 1)]).is_err());
    }
}
