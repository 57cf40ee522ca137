//! Seeded generators for property checks: random nilpotents, unimodular
//! changes of basis and small rationals.

use rand::Rng;

use crate::linalg::{rat, CRat, RatMatrix, Rat};

/// `L U` with unit triangular `L`, `U` and small integer entries; det = 1.
pub fn unimodular<R: Rng>(rng: &mut R, d: usize) -> RatMatrix {
    let lower = RatMatrix::from_fn(d, d, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => rat(rng.gen_range(-2..=2), 1),
        std::cmp::Ordering::Equal => rat(1, 1),
        std::cmp::Ordering::Less => rat(0, 1),
    });
    let upper = RatMatrix::from_fn(d, d, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => rat(rng.gen_range(-2..=2), 1),
        std::cmp::Ordering::Equal => rat(1, 1),
        std::cmp::Ordering::Greater => rat(0, 1),
    });
    lower.dot(&upper)
}

/// Random Jordan type, conjugated by a random unimodular matrix and scaled by
/// a random positive rational. Dimension is uniform in `1..=max_dim`.
pub fn nilpotent<R: Rng>(rng: &mut R, max_dim: usize) -> RatMatrix {
    nilpotent_with_type(rng, max_dim).0
}

/// As [`nilpotent`], also returning the Jordan block sizes.
pub fn nilpotent_with_type<R: Rng>(rng: &mut R, max_dim: usize) -> (RatMatrix, Vec<usize>) {
    let d = rng.gen_range(1..=max_dim);
    let mut blocks = Vec::new();
    let mut left = d;
    while left > 0 {
        let b = rng.gen_range(1..=left);
        blocks.push(b);
        left -= b;
    }
    let mut jordan = RatMatrix::zeros(d, d);
    let mut start = 0;
    for &b in &blocks {
        for i in start..start + b - 1 {
            jordan[(i + 1, i)] = rat(1, 1);
        }
        start += b;
    }
    let p = unimodular(rng, d);
    let c = positive_rat(rng);
    (p.dot(&jordan).dot(&p.inverse().expect("unimodular")).scale(&c), blocks)
}

pub fn positive_rat<R: Rng>(rng: &mut R) -> Rat {
    rat(rng.gen_range(1..=9), rng.gen_range(1..=9))
}

pub fn small_rat<R: Rng>(rng: &mut R) -> Rat {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn small_crat<R: Rng>(rng: &mut R) -> CRat {
    CRat::new(small_rat(rng), small_rat(rng))
}
