use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use periodgeom::datasets;
use periodgeom::linalg::{rat, CRat, Rat, C64};
use periodgeom::period::hodge_metric_matrix;
use periodgeom::reduction::hecke::{coset_reps, multiset};
use periodgeom::reduction::{
    bs_to_bb, corner_coords, hecke_points, in_fundamental_set, is_reduced, iwasawa, reduce_sl2, siegel_contains,
    siegel_contains_point, siegel_intersectors, HeckeElement, SiegelSetSpec, Sl2,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `det` of the lower-right `j x j` block of `g g^T` equals `prod_{i >= m-j} a_i^2`.
fn a_from_minors(g: &DMatrix<f64>) -> Vec<f64> {
    let m = g.nrows();
    let s = g * g.transpose();
    let minor = |j: usize| if j == 0 { 1.0 } else { s.view((m - j, m - j), (j, j)).determinant() };
    (0..m).map(|i| (minor(m - i) / minor(m - i - 1)).sqrt()).collect()
}

proptest! {
    #[test]
    fn iwasawa_reconstructs(entries in prop::collection::vec(-3.0f64..3.0, 9)) {
        let g = DMatrix::from_row_slice(3, 3, &entries);
        prop_assume!(g.determinant().abs() > 1e-3);
        let iw = iwasawa(&g).unwrap();
        prop_assert!((iw.reconstruct() - &g).norm() <= 1e-12 * g.norm());
        prop_assert!((&iw.k * iw.k.transpose() - DMatrix::identity(3, 3)).norm() <= 1e-12);
        for i in 0..3 {
            prop_assert!(iw.n[(i, i)] == 1.0);
            for j in 0..i {
                prop_assert!(iw.n[(i, j)] == 0.0);
            }
        }
        let oracle = a_from_minors(&g);
        for (a, b) in iw.a.iter().zip(&oracle) {
            prop_assert!((a - b).abs() <= 1e-9 * b);
        }
    }

    #[test]
    fn reducedness_is_monotone_in_c(entries in prop::collection::vec(-2.0f64..2.0, 9), c in 1.0f64..20.0) {
        let m = DMatrix::from_row_slice(3, 3, &entries);
        let b = &m * m.transpose() + DMatrix::identity(3, 3) * 0.1;
        let e: Vec<Vec<f64>> = (0..3).map(|i| (0..3).map(|j| (i == j) as u8 as f64).collect()).collect();
        if is_reduced(&b, &e, c).unwrap().reduced {
            prop_assert!(is_reduced(&b, &e, c * 1.5).unwrap().reduced);
        }
    }
}

#[test]
fn corner_coordinates_decrease_deeper_in_the_cusp() {
    let mut prev = f64::INFINITY;
    for s in [1.0, 2.0, 5.0, 10.0] {
        let c = corner_coords(&[s, 1.0 / s]).unwrap()[0];
        assert!((c - 1.0 / (s * s)).abs() < 1e-15);
        assert!(c < prev || s == 1.0);
        prev = c;
    }
}

#[test]
fn sl3_siegel_example() {
    let a = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&[4.0, 1.0, 0.25]));
    assert!(siegel_contains(&SiegelSetSpec::new(3, rat(2, 1), rat(1, 2)).unwrap(), &a).unwrap());
    assert!(!siegel_contains(&SiegelSetSpec::new(3, rat(4, 1), rat(1, 2)).unwrap(), &a).unwrap());
    let s = SiegelSetSpec::standard_strip();
    assert!(siegel_contains_point(&s, &CRat::from_ints(0, 3)));
    assert!(!siegel_contains_point(&s, &CRat::new(rat(7, 10), rat(2, 1))));
}

#[test]
fn e1_metric_is_reduced_in_swapped_basis() {
    let data = datasets::e1();
    let basis = vec![vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)], vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]];
    for y in [1.5, 2.0, 10.0, 1000.0] {
        let m = hodge_metric_matrix(&data, &[C64::new(0.0, y)], &basis).unwrap();
        let b = DMatrix::from_fn(2, 2, |i, j| m[(i, j)].re);
        let r = is_reduced(&b, &[vec![0.0, 1.0], vec![1.0, 0.0]], 1.5).unwrap();
        for d in r.defects {
            assert!((d - 1.0).abs() < 1e-12, "{:?}", r.defects);
        }
    }
}

fn random_upper_half_rational(rng: &mut ChaCha8Rng) -> CRat {
    let den = rng.gen_range(1..=40);
    let x = rat(rng.gen_range(-200..=200), den);
    let y = rat(rng.gen_range(1..=60), rng.gen_range(1..=60));
    CRat::new(x, y)
}

#[test]
fn thousand_random_reductions_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..1000 {
        let z = random_upper_half_rational(&mut rng);
        let (w, g) = reduce_sl2(&z).unwrap();
        assert_eq!(g.det(), BigInt::from(1));
        assert_eq!(g.apply(&z), w);
        assert!(in_fundamental_set(&w), "{z} -> {w}");
    }
}

#[test]
fn spec_reduction_examples() {
    let (w, g) = reduce_sl2(&CRat::new(rat(0, 1), rat(1, 2))).unwrap();
    assert_eq!((w, g), (CRat::from_ints(0, 2), Sl2::s()));
    let (w, g) = reduce_sl2(&CRat::new(rat(1, 2), rat(1, 2))).unwrap();
    assert_eq!(w, CRat::i());
    assert!(g == Sl2::t(1).mul(&Sl2::s()) || g == Sl2::t(1).mul(&Sl2::s()).neg());
}

/// Brute-force count of right cosets `Γ α` among integer matrices of
/// determinant `p` with small entries: `Γα = Γβ` iff `α β^{-1}` is integral.
fn brute_force_degree(p: i64) -> usize {
    let mut reps: Vec<[i64; 4]> = Vec::new();
    let r = p;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    if a * d - b * c != p {
                        continue;
                    }
                    // α β^{-1} = α adj(β) / p
                    let same = reps.iter().any(|&[e, f, g, h]| {
                        let m = [a * h - b * g, -a * f + b * e, c * h - d * g, -c * f + d * e];
                        m.iter().all(|x| x % p == 0)
                    });
                    if !same {
                        reps.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    reps.len()
}

#[test]
fn hecke_degrees_for_small_primes() {
    for p in [2i64, 3, 5] {
        let pts = hecke_points(&CRat::i(), &HeckeElement::diag(p).unwrap()).unwrap();
        assert_eq!(pts.len(), brute_force_degree(p));
        assert_eq!(pts.len() as i64, p + 1);
        assert_eq!(coset_reps(&BigInt::from(p)).len() as i64, p + 1);
    }
}

#[test]
fn t2_of_i() {
    let pts = hecke_points(&CRat::i(), &HeckeElement::diag(2).unwrap()).unwrap();
    let ms = multiset(&pts);
    assert_eq!(ms, vec![(CRat::from_ints(0, 2), 2), (CRat::i(), 1)]);
    let id = hecke_points(&CRat::new(rat(3, 2), rat(1, 3)), &HeckeElement::diag(1).unwrap()).unwrap();
    assert_eq!(id.len(), 1);
    assert_eq!(id[0].reduced, reduce_sl2(&CRat::new(rat(3, 2), rat(1, 3))).unwrap().0);
}

#[test]
fn hecke_commutes_with_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let g = HeckeElement::diag(3).unwrap();
    for _ in 0..30 {
        let z = random_upper_half_rational(&mut rng);
        let gamma = Sl2::new(1, rng.gen_range(-3..=3), 0, 1).mul(&Sl2::s()).mul(&Sl2::new(1, rng.gen_range(-3..=3), 0, 1));
        let moved = gamma.apply(&z);
        let a: BTreeSet<String> = multiset(&hecke_points(&z, &g).unwrap()).iter().map(|(p, n)| format!("{p}x{n}")).collect();
        let b: BTreeSet<String> = multiset(&hecke_points(&moved, &g).unwrap()).iter().map(|(p, n)| format!("{p}x{n}")).collect();
        assert_eq!(a, b);
    }
}

/// Sampling oracle: γ meets if some grid point of `S_1` lands in `S_2`.
fn sampled_intersectors(s1: &SiegelSetSpec, s2: &SiegelSetSpec, bound: i64) -> BTreeSet<Sl2> {
    let mut out = BTreeSet::new();
    let xs: Vec<Rat> = (-20..=20).map(|k| &s1.u_bound * rat(k, 20)).collect();
    let ys: Vec<Rat> = (1..=60).map(|k| &s1.t + rat(k, 20)).collect();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    if a * d - b * c != 1 {
                        continue;
                    }
                    let g = Sl2::new(a, b, c, d);
                    let hit = xs.iter().any(|x| ys.iter().any(|y| siegel_contains_point(s2, &g.apply(&CRat::new(x.clone(), y.clone())))));
                    if hit {
                        out.insert(g);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn standard_strip_intersectors() {
    let s = SiegelSetSpec::standard_strip();
    let report = siegel_intersectors(&s, &s, 3).unwrap();
    let expected: BTreeSet<Sl2> = [
        Sl2::identity(),
        Sl2::identity().neg(),
        Sl2::t(1),
        Sl2::t(1).neg(),
        Sl2::t(-1),
        Sl2::t(-1).neg(),
    ]
    .into_iter()
    .collect();
    let found: BTreeSet<Sl2> = report.elements.iter().cloned().collect();
    assert_eq!(found, expected);
    assert!(report.stable && report.undecided.is_empty());
    assert_eq!(report.doubled_count, 6);
    assert!(!found.contains(&Sl2::new(1, 0, 1, 1)));
    assert_eq!(found, sampled_intersectors(&s, &s, 3));
}

#[test]
fn lower_strip_meets_inversions() {
    let s = SiegelSetSpec::strip(rat(1, 2), rat(1, 2)).unwrap();
    let report = siegel_intersectors(&s, &s, 3).unwrap();
    let found: BTreeSet<Sl2> = report.elements.iter().cloned().collect();
    assert!(found.contains(&Sl2::s()));
    let sampled = sampled_intersectors(&s, &s, 3);
    assert!(sampled.is_subset(&found), "sampling found {:?}", sampled.difference(&found).collect::<Vec<_>>());
    assert!(report.stable);
}

#[test]
fn cusp_chart_map() {
    let p = bs_to_bb(0.25, 1.0).unwrap();
    assert!((p[1] - C64::new(0.0, (-2.0 * std::f64::consts::PI).exp())).norm() <= 1e-12);
    for x in [0.1, 0.37, -0.8] {
        let a = bs_to_bb(x, 0.7).unwrap();
        let b = bs_to_bb(x + 1.0, 0.7).unwrap();
        assert!((a[1] - b[1]).norm() <= 1e-15);
        assert_eq!(bs_to_bb(x, 0.0).unwrap()[1], C64::new(0.0, 0.0));
        assert!(bs_to_bb(x, 1e-3).unwrap()[1].norm() < 1e-300);
    }
}
