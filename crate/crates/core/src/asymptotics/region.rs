use itertools::Itertools;
use num_traits::Zero;

use crate::linalg::{rat, rat_approx, rat_to_f64, CRat, Rat};

use super::AsymptoticsError;

/// The region `x_lo < x_i < x_hi`, `y_1 >= … >= y_n > y_floor`, sampled
/// between `y_lo` and `y_hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaRegion {
    n: usize,
    x_range: (Rat, Rat),
    y_floor: Rat,
    y_lo: f64,
    y_hi: f64,
}

impl SigmaRegion {
    /// `0 < x_i < 1`, `y_n > 1`, samples in `[2, 20]`.
    pub fn new(n: usize) -> Result<Self, AsymptoticsError> {
        Self::custom(n, (Rat::zero(), rat(1, 1)), rat(1, 1), 2.0, 20.0)
    }

    pub fn custom(
        n: usize,
        x_range: (Rat, Rat),
        y_floor: Rat,
        y_lo: f64,
        y_hi: f64,
    ) -> Result<Self, AsymptoticsError> {
        if n == 0 {
            return Err(AsymptoticsError::BadRegion("n = 0".into()));
        }
        if x_range.0 >= x_range.1 {
            return Err(AsymptoticsError::BadRegion(format!("empty x-range ({}, {})", x_range.0, x_range.1)));
        }
        if !(y_lo > rat_to_f64(&y_floor) && y_hi >= y_lo && y_hi.is_finite()) {
            return Err(AsymptoticsError::BadRegion(format!("sample range [{y_lo}, {y_hi}] not above y > {y_floor}")));
        }
        Ok(SigmaRegion { n, x_range, y_floor, y_lo, y_hi })
    }

    /// Same region with the sampling ceiling moved to `y_hi`.
    pub fn with_y_hi(&self, y_hi: f64) -> Result<Self, AsymptoticsError> {
        Self::custom(self.n, self.x_range.clone(), self.y_floor.clone(), self.y_lo, y_hi)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn y_lo(&self) -> f64 {
        self.y_lo
    }

    pub fn y_hi(&self) -> f64 {
        self.y_hi
    }

    pub fn contains(&self, z: &[CRat]) -> bool {
        z.len() == self.n
            && z.iter().all(|c| c.re > self.x_range.0 && c.re < self.x_range.1)
            && z.iter().tuple_windows().all(|(a, b)| a.im >= b.im)
            && z.last().is_some_and(|c| c.im > self.y_floor)
    }

    /// Closed variant allowing `x` on the boundary of the x-range.
    pub fn contains_closure_in_x(&self, z: &[CRat]) -> bool {
        z.len() == self.n
            && z.iter().all(|c| c.re >= self.x_range.0 && c.re <= self.x_range.1)
            && z.iter().tuple_windows().all(|(a, b)| a.im >= b.im)
            && z.last().is_some_and(|c| c.im > self.y_floor)
    }
}

/// Deterministic grid in `Σ_n`.
///
/// `density` midpoints `x = x_lo + (2a+1)/(2 density) (x_hi - x_lo)` shared by
/// all coordinates, crossed with every non-increasing tuple drawn from
/// `density` log-uniform values in `[y_lo, y_hi]` (rounded to denominators
/// at most 64). Order: by x, then by the y tuple.
pub fn sample_sigma(region: &SigmaRegion, density: usize) -> Result<Vec<Vec<CRat>>, AsymptoticsError> {
    if density == 0 {
        return Err(AsymptoticsError::BadRegion("density must be at least 1".into()));
    }
    let d = density as i64;
    let (lo, hi) = &region.x_range;
    let xs: Vec<Rat> = (0..d).map(|a| lo + rat(2 * a + 1, 2 * d) * (hi - lo)).collect();
    let ys = y_grid(region.y_lo, region.y_hi, density)?;
    let tuples: Vec<Vec<usize>> = (0..ys.len()).rev().combinations_with_replacement(region.n).collect();
    let mut out = Vec::with_capacity(xs.len() * tuples.len());
    for x in &xs {
        for t in &tuples {
            let z: Vec<CRat> = t.iter().map(|&i| CRat::new(x.clone(), ys[i].clone())).collect();
            debug_assert!(region.contains(&z));
            out.push(z);
        }
    }
    Ok(out)
}

fn y_grid(y_lo: f64, y_hi: f64, density: usize) -> Result<Vec<Rat>, AsymptoticsError> {
    let mut ys: Vec<Rat> = Vec::with_capacity(density);
    for k in 0..density {
        let y = if density == 1 {
            y_lo
        } else {
            y_lo * (y_hi / y_lo).powf(k as f64 / (density - 1) as f64)
        };
        let r = rat_approx(y, 64).ok_or_else(|| AsymptoticsError::BadRegion(format!("y = {y}")))?;
        if ys.last() != Some(&r) {
            ys.push(r);
        }
    }
    Ok(ys)
}

pub fn imag_parts(z: &[CRat]) -> Vec<f64> {
    z.iter().map(|c| rat_to_f64(&c.im)).collect()
}

pub fn real_parts(z: &[CRat]) -> Vec<f64> {
    z.iter().map(|c| rat_to_f64(&c.re)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_variable_density_two() {
        let pts = sample_sigma(&SigmaRegion::new(1).unwrap(), 2).unwrap();
        let got: Vec<(Rat, Rat)> = pts.iter().map(|z| (z[0].re.clone(), z[0].im.clone())).collect();
        let want = vec![
            (rat(1, 4), rat(20, 1)),
            (rat(1, 4), rat(2, 1)),
            (rat(3, 4), rat(20, 1)),
            (rat(3, 4), rat(2, 1)),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn rejects_empty_regions() {
        assert!(SigmaRegion::custom(1, (rat(1, 1), rat(0, 1)), rat(1, 1), 2.0, 20.0).is_err());
        assert!(SigmaRegion::custom(1, (rat(0, 1), rat(1, 1)), rat(3, 1), 2.0, 20.0).is_err());
        assert!(sample_sigma(&SigmaRegion::new(2).unwrap(), 0).is_err());
    }
}
