use periodgeom::asymptotics::{
    curve_restriction, degree_sum, fit_exponents, hodge_norm, imag_parts, j_splitting, monomial,
    predicted_exponents, reducedness_sweep, reducedness_sweep_with, roughly_monomial_check, sample_sigma, CurveSpec,
    RaySpec, SigmaRegion, SweepConfig,
};
use periodgeom::datasets;
use periodgeom::linalg::{primitive_integral, rat, CRat, Rat, C64};
use proptest::prelude::*;

fn unit(n: usize, i: usize) -> Vec<Rat> {
    (0..n).map(|j| rat((i == j) as i64, 1)).collect()
}

#[test]
fn fitted_exponents_match_the_splitting() {
    for name in ["e1", "e2", "sym2e1"] {
        let data = datasets::builtin(name);
        let j = j_splitting(&data).unwrap();
        let rays = RaySpec::default_rays(data.vars());
        for (deg, v) in j.adapted_basis() {
            let fit = fit_exponents(&data, &v, &rays).unwrap();
            assert_eq!(fit.exponents, deg, "{name} {v:?}: slopes {:?}", fit.slopes);
            assert!(fit.residual < 0.05, "{name} {v:?}: residual {}", fit.residual);
        }
        assert!(degree_sum(&j).iter().all(|&s| s == 0), "{name}");
    }
}

#[test]
fn e1_matches_closed_form() {
    // h_{x+iy}(e1) = (x^2 + y^2) / y, h(e2) = 1 / y
    let e1 = datasets::e1();
    for (x, y) in [(rat(1, 4), rat(3, 1)), (rat(2, 3), rat(70, 1))] {
        let z = vec![CRat::new(x.clone(), y.clone())];
        let want = (&x * &x + &y * &y) / &y;
        let got = hodge_norm(&e1, &z, &unit(2, 0)).unwrap();
        assert!((got - periodgeom::linalg::rat_to_f64(&want)).abs() < 1e-12 * got);
        let got = hodge_norm(&e1, &z, &unit(2, 1)).unwrap();
        assert!((got * periodgeom::linalg::rat_to_f64(&y) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn e2_examples() {
    let e2 = datasets::e2();
    let rays = RaySpec::default_rays(2);
    assert_eq!(fit_exponents(&e2, &unit(4, 3), &rays).unwrap().exponents, vec![0, 1]);
    assert_eq!(fit_exponents(&e2, &unit(4, 1), &rays).unwrap().exponents, vec![1, 1]);
    let j = j_splitting(&e2).unwrap();
    assert_eq!(predicted_exponents(&j, &unit(4, 3)).unwrap(), vec![0, 1]);
    let mixed: Vec<Rat> = vec![rat(0, 1), rat(1, 1), rat(0, 1), rat(1, 1)];
    assert!(predicted_exponents(&j, &mixed).is_err());
}

#[test]
fn holomorphic_part_does_not_change_exponents() {
    let with = datasets::builtin("e1-psi");
    let without = with.without_psi();
    let rays = RaySpec::default_rays(1);
    for i in 0..2 {
        let a = fit_exponents(&with, &unit(2, i), &rays).unwrap();
        let b = fit_exponents(&without, &unit(2, i), &rays).unwrap();
        assert_eq!(a.exponents, b.exponents);
    }
}

/// The Hodge norm of every J-basis vector is roughly the predicted monomial
/// on the grid, and its product-form value matches for E2.
#[test]
fn hodge_norms_are_roughly_monomial() {
    for name in ["e1", "e2", "sym2e1"] {
        let data = datasets::builtin(name);
        let j = j_splitting(&data).unwrap();
        let region = SigmaRegion::new(data.vars()).unwrap().with_y_hi(1000.0).unwrap();
        let pts = sample_sigma(&region, 8).unwrap();
        for (deg, v) in j.adapted_basis() {
            let samples: Vec<(Vec<f64>, f64)> =
                pts.iter().map(|z| (imag_parts(z), hodge_norm(&data, z, &v).unwrap())).collect();
            let c = roughly_monomial_check(&samples, &deg).unwrap();
            assert!(c.roughly_monomial, "{name} {deg:?}: {c:?}");
        }
    }
    let e2 = datasets::e2();
    for z in sample_sigma(&SigmaRegion::new(2).unwrap(), 3).unwrap() {
        let ta = (z[0].clone() + z[1].clone()).to_c64();
        let got = hodge_norm(&e2, &z, &unit(4, 1)).unwrap();
        assert!((got - ta.norm_sqr() / ta.im).abs() < 1e-12 * got);
    }
}

#[test]
fn curve_bounds_agree_with_grid_bounds() {
    // h(e2) / y_1 on E2 along z_1 = 2w + 1, z_2 = w stays within the grid bound
    let e2 = datasets::e2();
    let region = SigmaRegion::new(2).unwrap().with_y_hi(1000.0).unwrap();
    let grid_bound = sample_sigma(&region, 6)
        .unwrap()
        .iter()
        .map(|z| {
            let r = hodge_norm(&e2, z, &unit(4, 1)).unwrap() / monomial(&[1, 1], &imag_parts(z));
            r.max(1.0 / r)
        })
        .fold(0.0f64, f64::max);
    let curve = CurveSpec::new(vec![rat(1, 2), rat(1, 1)], vec![-0.5, 0.0], vec![]).unwrap();
    let f = |z: &[C64]| {
        let zr: Vec<CRat> = z
            .iter()
            .map(|c| CRat::new(periodgeom::linalg::rat_approx(c.re, 1000).unwrap(), periodgeom::linalg::rat_approx(c.im, 1000).unwrap()))
            .collect();
        hodge_norm(&e2, &zr, &unit(4, 1)).unwrap() / monomial(&[1, 1], &imag_parts(&zr))
    };
    let g = curve_restriction(f, &curve);
    for y in [2.0, 20.0, 200.0, 400.0] {
        let r = g(C64::new(0.125, y));
        assert!(r.max(1.0 / r) <= grid_bound * 1.05, "{r} vs {grid_bound}");
    }
}

#[test]
fn sweeps_certify_bounded_defects() {
    let e1 = datasets::e1();
    let region1 = SigmaRegion::new(1).unwrap().with_y_hi(1000.0).unwrap();
    let rep = reducedness_sweep(&e1, &region1, 16).unwrap();
    assert!(rep.c_star <= 3.0 && rep.growth_ratio <= 1.05, "{} {}", rep.c_star, rep.growth_ratio);

    let e2 = datasets::e2();
    let region2 = SigmaRegion::new(2).unwrap().with_y_hi(1000.0).unwrap();
    let rep = reducedness_sweep(&e2, &region2, 16).unwrap();
    assert!(rep.c_star.is_finite() && rep.growth_ratio <= 1.05, "{} {}", rep.c_star, rep.growth_ratio);
    assert!(rep.degrees.iter().all(Option::is_some));
}

#[test]
fn mixed_basis_fails_the_sweep() {
    let e1 = datasets::e1();
    let region = SigmaRegion::new(1).unwrap().with_y_hi(1000.0).unwrap();
    let basis = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]];
    let cfg = SweepConfig { basis: Some(basis), shift_radius: 0 };
    let rep = reducedness_sweep_with(&e1, &region, 16, &cfg).unwrap();
    assert!(rep.growth_ratio > 2.0);
    assert!(rep.max_defects[2] > 100.0);
}

#[test]
fn primitive_vectors_are_integral() {
    let v = primitive_integral(&[rat(2, 3), rat(-4, 9), rat(0, 1)]);
    assert_eq!(v, vec![rat(3, 1), rat(-2, 1), rat(0, 1)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn grid_is_ordered_and_bounded(n in 1usize..4, d in 1usize..7) {
        let pts = sample_sigma(&SigmaRegion::new(n).unwrap(), d).unwrap();
        for z in &pts {
            let y = imag_parts(z);
            prop_assert!(y.windows(2).all(|w| w[0] >= w[1]));
            prop_assert!(y[n - 1] > 1.0);
        }
        if n == 2 {
            prop_assert!(pts.len() <= d * d * d);
            // oracle: count of non-increasing pairs times the x grid
            prop_assert_eq!(pts.len(), d * d * (d + 1) / 2);
        }
    }
}
