use std::collections::BTreeMap;

use super::subspace::Subspace;
use super::scalar::Scalar;
use super::LinalgError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// A finite exhaustive filtration indexed by a contiguous range of integers.
///
/// Increasing: `levels[0] = 0` at index `lo`, the last level is the whole space.
/// Decreasing: `levels[0]` is the whole space, the last level is `0`.
/// Queries outside the stored range clamp to the end values.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtration<T> {
    direction: Direction,
    lo: i32,
    levels: Vec<Subspace<T>>,
}

impl<T: Scalar> Filtration<T> {
    pub fn new(direction: Direction, lo: i32, levels: Vec<Subspace<T>>) -> Result<Self, LinalgError> {
        let Some(first) = levels.first() else {
            return Err(LinalgError::BadFiltration("no levels".into()));
        };
        let n = first.ambient();
        if levels.iter().any(|l| l.ambient() != n) {
            return Err(LinalgError::BadFiltration("levels live in different spaces".into()));
        }
        let (bottom, top) = match direction {
            Direction::Increasing => (first, levels.last().unwrap()),
            Direction::Decreasing => (levels.last().unwrap(), first),
        };
        if !bottom.is_zero() || !top.is_full() {
            return Err(LinalgError::BadFiltration("not exhaustive".into()));
        }
        for (k, pair) in levels.windows(2).enumerate() {
            let (small, big) = match direction {
                Direction::Increasing => (&pair[0], &pair[1]),
                Direction::Decreasing => (&pair[1], &pair[0]),
            };
            if !big.contains_subspace(small) {
                return Err(LinalgError::BadFiltration(format!(
                    "levels {} and {} are not nested",
                    lo + k as i32,
                    lo + k as i32 + 1
                )));
            }
        }
        Ok(Filtration { direction, lo, levels })
    }

    /// Increasing filtration from a map of levels; missing indices inherit from below.
    pub fn increasing_from_map(ambient: usize, map: &BTreeMap<i32, Subspace<T>>) -> Result<Self, LinalgError> {
        let lo = map.keys().next().copied().unwrap_or(0) - 1;
        let hi = map.keys().last().copied().unwrap_or(0) + 1;
        let mut levels = vec![Subspace::zero(ambient)];
        let mut cur = Subspace::zero(ambient);
        for k in lo + 1..hi {
            if let Some(s) = map.get(&k) {
                cur = s.clone();
            }
            levels.push(cur.clone());
        }
        levels.push(Subspace::full(ambient));
        Filtration::new(Direction::Increasing, lo, levels).map(|f| f.trimmed())
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn ambient(&self) -> usize {
        self.levels[0].ambient()
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.levels.len() as i32 - 1
    }

    pub fn level(&self, k: i32) -> Subspace<T> {
        let idx = (k - self.lo).clamp(0, self.levels.len() as i32 - 1) as usize;
        self.levels[idx].clone()
    }

    pub fn levels(&self) -> impl Iterator<Item = (i32, &Subspace<T>)> {
        self.levels.iter().enumerate().map(move |(i, s)| (self.lo + i as i32, s))
    }

    /// Drop redundant repeated end levels so that `lo`/`hi` are tight.
    pub fn trimmed(mut self) -> Self {
        let (is_bottom, is_top): (fn(&Subspace<T>) -> bool, fn(&Subspace<T>) -> bool) = match self.direction {
            Direction::Increasing => (Subspace::is_zero, Subspace::is_full),
            Direction::Decreasing => (Subspace::is_full, Subspace::is_zero),
        };
        while self.levels.len() > 2 && is_bottom(&self.levels[1]) {
            self.levels.remove(0);
            self.lo += 1;
        }
        while self.levels.len() > 2 && is_top(&self.levels[self.levels.len() - 2]) {
            self.levels.pop();
        }
        self
    }

    /// `dim W_k - dim W_{k-1}` (increasing) or `dim F^p - dim F^{p+1}` (decreasing).
    pub fn graded_dim(&self, k: i32) -> usize {
        match self.direction {
            Direction::Increasing => self.level(k).dim() - self.level(k - 1).dim(),
            Direction::Decreasing => self.level(k).dim() - self.level(k + 1).dim(),
        }
    }

    /// Every index with nonzero graded piece, with its dimension.
    pub fn graded_dims(&self) -> BTreeMap<i32, usize> {
        (self.lo - 1..=self.hi() + 1)
            .filter_map(|k| {
                let d = self.graded_dim(k);
                (d > 0).then_some((k, d))
            })
            .collect()
    }

    pub fn shifted(&self, by: i32) -> Self {
        Filtration { direction: self.direction, lo: self.lo + by, levels: self.levels.clone() }
    }

    pub fn map_levels(&self, f: impl Fn(&Subspace<T>) -> Subspace<T>) -> Result<Self, LinalgError> {
        Filtration::new(self.direction, self.lo, self.levels.iter().map(f).collect())
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> Filtration<U> {
        Filtration {
            direction: self.direction,
            lo: self.lo,
            levels: self.levels.iter().map(|l| l.map_scalar(f)).collect(),
        }
    }

    /// Level-by-level equality over all indices, insensitive to padding.
    pub fn same_as(&self, other: &Self) -> bool {
        if self.direction != other.direction || self.ambient() != other.ambient() {
            return false;
        }
        let lo = self.lo.min(other.lo) - 1;
        let hi = self.hi().max(other.hi()) + 1;
        (lo..=hi).all(|k| self.level(k).same_as(&other.level(k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{rat, Rat};

    #[test]
    fn rejects_non_nested() {
        let a = Subspace::span(2, &[vec![rat(1, 1), rat(0, 1)]]).unwrap();
        let b = Subspace::span(2, &[vec![rat(0, 1), rat(1, 1)]]).unwrap();
        let f = Filtration::new(
            Direction::Increasing,
            0,
            vec![Subspace::zero(2), a, b, Subspace::<Rat>::full(2)],
        );
        assert!(f.is_err());
    }

    #[test]
    fn rejects_non_exhaustive() {
        let f = Filtration::new(Direction::Increasing, 0, vec![Subspace::<Rat>::zero(2)]);
        assert!(f.is_err());
    }

    #[test]
    fn clamps_and_grades() {
        let a = Subspace::span(2, &[vec![rat(0, 1), rat(1, 1)]]).unwrap();
        let f = Filtration::new(Direction::Increasing, -2, vec![Subspace::zero(2), a.clone(), Subspace::full(2)])
            .unwrap();
        assert!(f.level(-10).is_zero());
        assert_eq!(f.level(-1), a);
        assert!(f.level(7).is_full());
        assert_eq!(f.graded_dims(), BTreeMap::from([(-1, 1), (0, 1)]));
    }
}
