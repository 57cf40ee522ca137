use std::collections::BTreeMap;

use crate::linalg::{Scalar, Subspace};

use super::MixedHodgeError;

/// A direct sum decomposition of `T^ambient` indexed by integer multidegrees.
/// Zero pieces are not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSplitting<T> {
    ambient: usize,
    pieces: BTreeMap<Vec<i32>, Subspace<T>>,
}

impl<T: Scalar> GradedSplitting<T> {
    pub fn new(ambient: usize, pieces: BTreeMap<Vec<i32>, Subspace<T>>) -> Result<Self, MixedHodgeError> {
        let pieces: BTreeMap<_, _> = pieces.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        let mut total = 0;
        let mut span = Subspace::zero(ambient);
        for (deg, s) in &pieces {
            if s.ambient() != ambient {
                return Err(MixedHodgeError::NotDirectSum(format!("piece {deg:?} has wrong ambient")));
            }
            total += s.dim();
            span = span.sum(s)?;
            if span.dim() != total {
                return Err(MixedHodgeError::NotDirectSum(format!("piece {deg:?} meets the earlier pieces")));
            }
        }
        if total != ambient {
            return Err(MixedHodgeError::NotDirectSum(format!("pieces span dimension {total} of {ambient}")));
        }
        Ok(GradedSplitting { ambient, pieces })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// The piece of the given degree (zero if absent).
    pub fn piece(&self, degree: &[i32]) -> Subspace<T> {
        self.pieces.get(degree).cloned().unwrap_or_else(|| Subspace::zero(self.ambient))
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&Vec<i32>, &Subspace<T>)> {
        self.pieces.iter()
    }

    pub fn dims(&self) -> BTreeMap<Vec<i32>, usize> {
        self.pieces.iter().map(|(k, s)| (k.clone(), s.dim())).collect()
    }

    /// Sum of the pieces whose degree satisfies `pred`.
    pub fn sum_where(&self, pred: impl Fn(&[i32]) -> bool) -> Subspace<T> {
        self.pieces
            .iter()
            .filter(|(k, _)| pred(k))
            .fold(Subspace::zero(self.ambient), |acc, (_, s)| acc.sum(s).expect("same ambient"))
    }

    /// Degree of the unique piece containing `v`; `None` if `v` is zero or mixed.
    pub fn degree_of(&self, v: &[T]) -> Option<Vec<i32>> {
        if v.iter().all(|x| x.negligible(1.0)) {
            return None;
        }
        self.pieces.iter().find(|(_, s)| s.contains(v)).map(|(k, _)| k.clone())
    }

    /// The concatenated piece bases, each with its degree, in degree order.
    pub fn adapted_basis(&self) -> Vec<(Vec<i32>, Vec<T>)> {
        self.pieces
            .iter()
            .flat_map(|(k, s)| s.basis().iter().map(move |v| (k.clone(), v.clone())))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, Rat};

    #[test]
    fn rejects_overlap_and_gaps() {
        let a = Subspace::span(2, &[vec![rat(1, 1), rat(0, 1)]]).unwrap();
        let b = Subspace::span(2, &[vec![rat(1, 1), rat(0, 1)]]).unwrap();
        assert!(GradedSplitting::new(2, BTreeMap::from([(vec![0], a.clone()), (vec![1], b)])).is_err());
        assert!(GradedSplitting::new(2, BTreeMap::from([(vec![0], a)])).is_err());
    }

    #[test]
    fn degree_lookup() {
        let a = Subspace::span(2, &[vec![rat(1, 1), rat(0, 1)]]).unwrap();
        let b = Subspace::span(2, &[vec![rat(0, 1), rat(1, 1)]]).unwrap();
        let s = GradedSplitting::<Rat>::new(2, BTreeMap::from([(vec![3], a), (vec![-3], b)])).unwrap();
        assert_eq!(s.degree_of(&[rat(0, 1), rat(5, 1)]), Some(vec![-3]));
        assert_eq!(s.degree_of(&[rat(1, 1), rat(5, 1)]), None);
    }
}
