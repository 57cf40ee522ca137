use periodgeom::datasets;
use periodgeom::linalg::{gram_schmidt, rat, CRat, Matrix, Rat, RatMatrix, Subspace, C64};
use periodgeom::period::{
    evaluate, gamma, hodge_form, hodge_metric_matrix, k_flag, lift_vector, orbit_filtration, validate_orbit,
    wedge_norm_chain, HodgePoint, NilpotentOrbitData, PeriodError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cunit(d: usize, i: usize) -> Vec<CRat> {
    (0..d).map(|j| CRat::from_ints((i == j) as i64, 0)).collect()
}

fn funit(d: usize, i: usize) -> Vec<C64> {
    (0..d).map(|j| C64::new((i == j) as u8 as f64, 0.0)).collect()
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

#[test]
fn bundled_e1_validates() {
    let raw = datasets::raw("e1").unwrap().unwrap();
    let report = validate_orbit(&raw, true);
    assert!(report.passed(), "{report}");
    assert!(report.check("integrality").unwrap().passed);
}

#[test]
fn non_isometry_fails_its_check() {
    let mut raw = datasets::raw("e2").unwrap().unwrap();
    // N e1 = e3 breaks Q(Nu, v) + Q(u, Nv) = 0 but keeps nilpotency
    let mut bad = RatMatrix::zeros(4, 4);
    bad[(2, 0)] = rat(1, 1);
    raw.nilpotents = vec![bad.clone(), bad];
    let report = validate_orbit(&raw, false);
    assert!(!report.check("infinitesimal isometry").unwrap().passed);
    assert!(report.check("nilpotent").unwrap().passed);
}

#[test]
fn wrong_filtration_dimensions_fail() {
    let mut raw = datasets::raw("e2").unwrap().unwrap();
    raw.limit[1].pop();
    let report = validate_orbit(&raw, false);
    assert!(!report.check("filtration dimensions").unwrap().passed);
    assert!(matches!(NilpotentOrbitData::new(raw), Err(PeriodError::Invalid(_))));
}

#[test]
fn zero_nilpotent_keeps_the_filtration() {
    let mut raw = datasets::raw("e1").unwrap().unwrap();
    raw.nilpotents = vec![RatMatrix::zeros(2, 2)];
    let data = NilpotentOrbitData::new(raw).unwrap();
    let f = orbit_filtration(&data, &[CRat::new(rat(1, 3), rat(5, 2))]).unwrap();
    assert!(f.same_as(data.limit()));
}

#[test]
fn e1_orbit_is_exact() {
    let data = datasets::e1();
    let z = CRat::new(rat(1, 3), rat(7, 2));
    let f = orbit_filtration(&data, &[z.clone()]).unwrap();
    let expected = Subspace::span(2, &[vec![CRat::from_ints(1, 0), z]]).unwrap();
    assert_eq!(f.level(1), expected);
}

#[test]
fn psi_orbit_is_periodic_up_to_monodromy() {
    let data = datasets::builtin("e1-psi");
    let z = C64::new(0.3, 1.2);
    let f = orbit_filtration(&data, &[z]).unwrap();
    let shifted = orbit_filtration(&data, &[z + 1.0]).unwrap();
    let t = periodgeom::linalg::nilpotent_exp(&data.nilpotents()[0].to_c64(), &C64::new(1.0, 0.0)).unwrap();
    let moved = f.map_levels(|s| s.apply(&t).unwrap()).unwrap();
    assert!(moved.same_as(&shifted));
    // exact backend cannot evaluate exp(2 pi i z)
    assert_eq!(
        orbit_filtration(&data, &[CRat::from_ints(0, 1)]).unwrap_err(),
        PeriodError::ExactPsi
    );
}

#[test]
fn e1_at_i_is_polarized_with_expected_piece() {
    let data = datasets::e1();
    let p = evaluate(&data, &[CRat::i()]).unwrap();
    assert!(p.polarized);
    let u = vec![CRat::from_ints(1, 0), CRat::i()];
    assert_eq!(p.piece(1), Subspace::span(2, &[u.clone()]).unwrap());
    // Q(u, conj u) = -2i, times i^{1-0} gives 2 > 0
    assert_eq!(p.b(&u, &u), CRat::from_ints(0, -2));
}

#[test]
fn e1_at_minus_i_is_not_polarized() {
    let data = datasets::e1();
    let p = evaluate(&data, &[CRat::from_ints(0, -1)]).unwrap();
    assert!(!p.polarized);
    assert_eq!(p.metric(&[cunit(2, 0)]).unwrap_err(), PeriodError::Unpolarized);
    assert_eq!(hodge_form(&data, &[CRat::from_ints(0, -1)], &cunit(2, 0), &cunit(2, 0)).unwrap_err(), PeriodError::Unpolarized);
}

#[test]
fn weil_operator_squares_to_sign() {
    for name in ["e1", "e2", "sym2e1", "e2-tensor"] {
        let data = datasets::builtin(name);
        let z: Vec<CRat> = (0..data.vars()).map(|j| CRat::new(rat(1, 4 + j as i64), rat(5 - j as i64, 1))).collect();
        let p = evaluate(&data, &z).unwrap();
        let sign = if data.weight() % 2 == 0 { 1 } else { -1 };
        assert_eq!(p.weil.dot(&p.weil), Matrix::identity(data.rank()).scale(&CRat::from_ints(sign, 0)), "{name}");
    }
}

/// Closed form for E1 at z = x + iy on (e1, e2): [[|z|^2/y, -x/y], [-x/y, 1/y]].
fn e1_closed_form(x: &Rat, y: &Rat) -> Matrix<CRat> {
    let n = x * x + y * y;
    let r = |q: Rat| CRat::real(q);
    Matrix::from_rows(vec![vec![r(&n / y), r(-x / y)], vec![r(-x / y), r(Rat::from_integer(1.into()) / y)]]).unwrap()
}

#[test]
fn e1_metric_matches_closed_form_exactly() {
    let data = datasets::e1();
    let basis = vec![cunit(2, 0), cunit(2, 1)];
    for (xn, xd, y) in [(0, 1, 2), (1, 3, 10), (-2, 5, 100), (3, 7, 1000)] {
        let (x, y) = (rat(xn, xd), rat(y, 1));
        let m = hodge_metric_matrix(&data, &[CRat::new(x.clone(), y.clone())], &basis).unwrap();
        assert_eq!(m, e1_closed_form(&x, &y));
        assert_eq!(m.det().unwrap(), CRat::from_ints(1, 0));
    }
}

#[test]
fn e1_metric_float_backend() {
    let data = datasets::e1();
    let basis = vec![funit(2, 0), funit(2, 1)];
    for y in [2.0, 10.0, 100.0, 1000.0] {
        let m = hodge_metric_matrix(&data, &[C64::new(0.0, y)], &basis).unwrap();
        assert!(rel(m[(0, 0)], C64::new(y, 0.0)) <= 1e-12);
        assert!(rel(m[(1, 1)], C64::new(1.0 / y, 0.0)) <= 1e-12);
        assert!(m[(0, 1)].norm() <= 1e-12 * y);
    }
}

#[test]
fn hodge_form_is_positive_at_polarized_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in ["e1", "e2", "sym2e1", "e2-tensor"] {
        let data = datasets::builtin(name);
        for _ in 0..20 {
            let z: Vec<C64> = sample_sigma_point(&mut rng, data.vars());
            let p = evaluate(&data, &z).unwrap();
            assert!(p.polarized, "{name} at {z:?}");
            let u: Vec<C64> = (0..data.rank()).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let h = p.form(&u, &u);
            assert!(h.re > 0.0 && h.im.abs() <= 1e-9 * h.re, "{name}: {h}");
        }
    }
}

/// Random point with 0 < x < 1 and y_1 >= ... >= y_n >= 2.
fn sample_sigma_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    let mut ys: Vec<f64> = (0..n).map(|_| 2.0 * 10f64.powf(rng.gen_range(0.0..2.0))).collect();
    ys.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ys.into_iter().map(|y| C64::new(rng.gen_range(0.0..1.0), y)).collect()
}

#[test]
fn e2_is_a_product_of_two_e1_factors() {
    let data = datasets::e2();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let z = sample_sigma_point(&mut rng, 2);
        let p = evaluate(&data, &z).unwrap();
        let (ta, tb) = (z[0] + z[1], z[1]);
        // factor with modulus tau: h(e2) = |tau|^2 / Im tau, h(e1) = 1 / Im tau
        let h = |i| p.form(&funit(4, i), &funit(4, i));
        assert!(rel(h(1), C64::new(ta.norm_sqr() / ta.im, 0.0)) < 1e-12);
        assert!(rel(h(3), C64::new(tb.norm_sqr() / tb.im, 0.0)) < 1e-12);
        assert!(rel(h(0), C64::new(1.0 / ta.im, 0.0)) < 1e-12);
        assert!(rel(h(2), C64::new(1.0 / tb.im, 0.0)) < 1e-12);
    }
    let p = evaluate(&data, &[C64::new(0.0, 7.0), C64::new(0.0, 3.0)]).unwrap();
    assert!(rel(p.form(&funit(4, 1), &funit(4, 1)), C64::new(10.0, 0.0)) < 1e-12);
    assert!(rel(p.form(&funit(4, 3), &funit(4, 3)), C64::new(3.0, 0.0)) < 1e-12);
}

#[test]
fn polarized_above_height_two() {
    for name in ["e1", "e2", "sym2e1", "e2-tensor"] {
        let data = datasets::builtin(name);
        let grid: Vec<f64> = vec![2.0, 3.0, 10.0, 100.0, 1000.0];
        let xs = [0.0, 0.25, 0.5, 0.75];
        for &y1 in &grid {
            for &x in &xs {
                let z: Vec<C64> = if data.vars() == 1 {
                    vec![C64::new(x, y1)]
                } else {
                    vec![C64::new(x, y1), C64::new(1.0 - x, 2.0)]
                };
                assert!(evaluate(&data, &z).unwrap().polarized, "{name} {z:?}");
            }
        }
    }
}

#[test]
fn holomorphic_part_is_negligible_high_up() {
    for name in ["e1-psi", "e2-psi"] {
        let data = datasets::builtin(name);
        let bare = data.without_psi();
        let z: Vec<C64> = (0..data.vars()).map(|j| C64::new(0.3, 1000.0 / (j + 1) as f64)).collect();
        let with = evaluate(&data, &z).unwrap();
        let without = evaluate(&bare, &z).unwrap();
        let g = gamma(&data, &z).unwrap();
        let g0 = gamma(&bare, &z).unwrap();
        for i in 0..data.rank() {
            let u = funit(data.rank(), i);
            // h_z(gamma u) against h_z(exp(zN) u)
            let a = with.form(&g.mul_vec(&u), &g.mul_vec(&u)).re;
            let b = without.form(&g0.mul_vec(&u), &g0.mul_vec(&u)).re;
            assert!((a / b - 1.0).abs() < 0.05, "{name} e{}: {a} vs {b}", i + 1);
        }
    }
}

fn flag_c64(data: &NilpotentOrbitData) -> Vec<(i32, Vec<C64>)> {
    k_flag(data).unwrap().into_iter().map(|(p, v)| (p, lift_vector(&v).unwrap())).collect()
}

#[test]
fn chain_of_length_one_has_empty_denominator() {
    let data = datasets::e1();
    let flag = flag_c64(&data);
    let z = [C64::new(0.2, 3.0)];
    let g = gamma(&data, &z).unwrap();
    let gw = g.mul_vec(&flag[0].1);
    let q = data.lattice().form().to_c64();
    let t = wedge_norm_chain(&data, &z, &flag, 1, &gw, &gw).unwrap();
    assert!(rel(t.norm, q.sesquilinear(&gw, &gw)) < 1e-14);
}

#[test]
fn e1_second_step_matches_gram_schmidt_exactly() {
    let data = datasets::e1();
    let flag: Vec<(i32, Vec<CRat>)> = k_flag(&data).unwrap();
    assert_eq!(flag.iter().map(|f| f.0).collect::<Vec<_>>(), vec![1, 0]);
    for y in [2, 5, 40] {
        let z = [CRat::new(rat(1, 5), rat(y, 1))];
        let g = gamma(&data, &z).unwrap();
        let moved: Vec<Vec<CRat>> = flag.iter().map(|(_, w)| g.mul_vec(w)).collect();
        let gs = gram_schmidt(&data.lattice().form().to_crat(), &moved).unwrap();
        let u = vec![CRat::from_ints(2, 1), CRat::from_ints(-1, 3)];
        let t = wedge_norm_chain(&data, &z, &flag, 2, &u, &u).unwrap();
        assert_eq!(t.norm, gs.norms[1]);
        assert_eq!(t.with_u, data.lattice().form().to_crat().sesquilinear(&u, &gs.basis[1]));
    }
}

/// Direct orthogonalization oracle for all three chain quantities.
fn direct_terms(p: &HodgePoint<C64>, data: &NilpotentOrbitData, z: &[C64], flag: &[(i32, Vec<C64>)], u: &[C64], v: &[C64]) -> Vec<(C64, C64, C64, C64)> {
    let g = gamma(data, z).unwrap();
    let moved: Vec<Vec<C64>> = flag.iter().map(|(_, w)| g.mul_vec(w)).collect();
    let q = data.lattice().form().to_c64();
    let gs = gram_schmidt(&q, &moved).unwrap();
    gs.basis
        .iter()
        .zip(&gs.norms)
        .map(|(w, n)| {
            let bu = q.sesquilinear(u, w);
            let bv = q.sesquilinear(w, v);
            let h = p.form(u, w) * p.form(w, v) / p.form(w, w);
            (*n, bu, bv, h)
        })
        .collect()
}

#[test]
fn wedge_chain_agrees_with_direct_orthogonalization_on_e2() {
    let data = datasets::e2();
    let flag = flag_c64(&data);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    while checked < 100 {
        let z = sample_sigma_point(&mut rng, 2);
        let p = evaluate(&data, &z).unwrap();
        if !p.polarized {
            continue;
        }
        let rv = |rng: &mut ChaCha8Rng| -> Vec<C64> { (0..4).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect() };
        let (u, v) = (rv(&mut rng), rv(&mut rng));
        let direct = direct_terms(&p, &data, &z, &flag, &u, &v);
        let mut total = C64::new(0.0, 0.0);
        for i in 1..=4 {
            let t = wedge_norm_chain(&data, &z, &flag, i, &u, &v).unwrap();
            let (n, bu, bv, h) = direct[i - 1];
            assert!(rel(t.norm, n) <= 1e-9);
            assert!(rel(t.with_u, bu) <= 1e-9);
            assert!(rel(t.with_v, bv) <= 1e-9);
            assert!(rel(t.h, h) <= 1e-9);
            total += t.h;
        }
        assert!(rel(total, p.form(&u, &v)) <= 1e-9);
        checked += 1;
    }
}
