use num_traits::{ToPrimitive, Zero};

use crate::linalg::float::least_squares;
use crate::linalg::{rat, rat_approx, rat_to_f64, CRat, Rat, Scalar, C64};
use crate::mixed_hodge::{cone_weight_filtrations, rational_splitting, GradedSplitting};
use crate::period::{hodge_form, NilpotentOrbitData, PeriodError};

use super::monomial::log_coordinates;
use super::region::imag_parts;
use super::AsymptoticsError;

/// A family of points `x_i = x⁰_i`, `y_i = y⁰_i λ^{w_i}` for `λ` in a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct RaySpec {
    base: Vec<CRat>,
    weights: Vec<Rat>,
    scales: Vec<f64>,
}

impl RaySpec {
    /// Checks that every ray point lies in `0 < x < 1`, `y_1 >= … >= y_n > 1`.
    pub fn new(base: Vec<CRat>, weights: Vec<Rat>, scales: Vec<f64>) -> Result<Self, AsymptoticsError> {
        if base.len() != weights.len() || base.is_empty() {
            return Err(AsymptoticsError::BadRay("base point and weights differ in length".into()));
        }
        if weights.iter().any(|w| *w <= <Rat as Zero>::zero()) || weights.windows(2).any(|p| p[0] < p[1]) {
            return Err(AsymptoticsError::BadRay("weights must be positive and non-increasing".into()));
        }
        if scales.is_empty() || scales.windows(2).any(|p| p[0] >= p[1]) || scales[0] < 1.0 {
            return Err(AsymptoticsError::BadRay("scales must increase from at least 1".into()));
        }
        let ray = RaySpec { base, weights, scales };
        for p in ray.points()? {
            let ys = imag_parts(&p);
            let ordered = ys.windows(2).all(|w| w[0] >= w[1]);
            let xs_ok = p.iter().all(|c| c.re > <Rat as Zero>::zero() && c.re < rat(1, 1));
            if !ordered || !xs_ok || ys.last().is_some_and(|&y| y <= 1.0) {
                return Err(AsymptoticsError::BadRay(format!("point {p:?} leaves the region")));
            }
        }
        Ok(ray)
    }

    /// `n` rays with weights `w_i = 1` for `i <= k` and `1/4` beyond, based at
    /// `1/4 + 2i`, with `12` log-uniform scales in `[10, 500]`.
    pub fn default_rays(n: usize) -> Vec<RaySpec> {
        let scales: Vec<f64> = (0..12).map(|k| 10.0 * 50f64.powf(k as f64 / 11.0)).collect();
        (1..=n)
            .map(|k| {
                let weights = (0..n).map(|i| if i < k { rat(1, 1) } else { rat(1, 4) }).collect();
                let base = vec![CRat::new(rat(1, 4), rat(2, 1)); n];
                RaySpec::new(base, weights, scales.clone()).expect("default rays lie in the region")
            })
            .collect()
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    /// The ray points, with `y` rounded to denominators at most `1000`.
    pub fn points(&self) -> Result<Vec<Vec<CRat>>, AsymptoticsError> {
        self.scales
            .iter()
            .map(|&l| {
                self.base
                    .iter()
                    .zip(&self.weights)
                    .map(|(z0, w)| {
                        let y = rat_to_f64(&z0.im) * l.powf(rat_to_f64(w));
                        let y = rat_approx(y, 1000).ok_or_else(|| AsymptoticsError::BadRay(format!("y = {y}")))?;
                        Ok(CRat::new(z0.re.clone(), y))
                    })
                    .collect()
            })
            .collect()
    }
}

/// `h_z(u) = h_z(u, u)` with `u` real. Exact arithmetic unless the orbit has a
/// holomorphic part, which needs `exp(2 pi i z)` and so runs in floats.
pub fn hodge_norm(data: &NilpotentOrbitData, z: &[CRat], u: &[Rat]) -> Result<f64, AsymptoticsError> {
    let res = if data.psi().is_some() {
        let zc: Vec<C64> = z.iter().map(CRat::to_c64).collect();
        let uc: Vec<C64> = u.iter().map(C64::from_rat).collect();
        hodge_form(data, &zc, &uc, &uc).map(|h| h.re)
    } else {
        let uc: Vec<CRat> = u.iter().map(CRat::from_rat).collect();
        hodge_form(data, z, &uc, &uc).map(|h| rat_to_f64(&h.re))
    };
    match res {
        Err(PeriodError::Unpolarized) => Err(AsymptoticsError::Unpolarized(format!("{z:?}"))),
        other => Ok(other?),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExponentFit {
    /// Rounded exponents `(s_1, …, s_n)`.
    pub exponents: Vec<i32>,
    /// Unrounded least-squares slopes.
    pub slopes: Vec<f64>,
    /// Largest relative deviation `|h / (C m_s) - 1|` over the last decade of
    /// every ray, with `C` the geometric mean of `h / m_s` there.
    pub residual: f64,
}

/// Joint least squares of `log h_z(u)` against the log-coordinates
/// `log(y_1/y_2), …, log(y_{n-1}/y_n), log y_n`, with one intercept per ray.
pub fn fit_exponents(data: &NilpotentOrbitData, u: &[Rat], rays: &[RaySpec]) -> Result<ExponentFit, AsymptoticsError> {
    let n = data.vars();
    if u.len() != data.rank() {
        return Err(AsymptoticsError::Arity { expected: data.rank(), got: u.len() });
    }
    if u.iter().all(Zero::is_zero) {
        return Err(AsymptoticsError::ZeroVector);
    }
    if let Some(r) = rays.iter().find(|r| r.base.len() != n) {
        return Err(AsymptoticsError::Arity { expected: n, got: r.base.len() });
    }
    // per ray: (log-coordinates, log h) at each scale
    let mut samples: Vec<Vec<(Vec<f64>, f64)>> = Vec::with_capacity(rays.len());
    for ray in rays {
        let mut s = Vec::new();
        for z in ray.points()? {
            let h = hodge_norm(data, &z, u)?;
            s.push((log_coordinates(&imag_parts(&z)), h.ln()));
        }
        samples.push(s);
    }
    let cols = n + rays.len();
    let mut design = Vec::new();
    let mut rhs = Vec::new();
    for (r, s) in samples.iter().enumerate() {
        for (coords, lh) in s {
            let mut row = coords.clone();
            row.extend((0..rays.len()).map(|j| (j == r) as u8 as f64));
            design.push(row);
            rhs.push(*lh);
        }
    }
    debug_assert!(design.iter().all(|r| r.len() == cols));
    let sol = least_squares(&design, &rhs, 1e-9).ok_or(AsymptoticsError::IllConditioned(n))?;
    let slopes = sol[..n].to_vec();
    let exponents: Vec<i32> = slopes.iter().map(|s| s.round().to_i32().unwrap_or(i32::MAX)).collect();

    let mut residual = 0.0f64;
    for (ray, s) in rays.iter().zip(&samples) {
        let top = *ray.scales.last().expect("nonempty scales");
        let tail: Vec<f64> = ray
            .scales
            .iter()
            .zip(s)
            .filter(|(l, _)| **l >= top / 10.0)
            .map(|(_, (coords, lh))| lh - coords.iter().zip(&exponents).map(|(c, e)| c * *e as f64).sum::<f64>())
            .collect();
        let mean = tail.iter().sum::<f64>() / tail.len() as f64;
        for d in tail {
            residual = residual.max(((d - mean).exp() - 1.0).abs());
        }
    }
    Ok(ExponentFit { exponents, slopes, residual })
}

/// The splitting `J^σ` of the weight filtrations `W(N_1 + … + N_j)`.
pub fn j_splitting(data: &NilpotentOrbitData) -> Result<GradedSplitting<Rat>, AsymptoticsError> {
    let ws = cone_weight_filtrations(data.cone(), 4, 0)?;
    Ok(rational_splitting(&ws)?)
}

/// The multidegree `σ` with `u ∈ J^σ`.
pub fn predicted_exponents(j: &GradedSplitting<Rat>, u: &[Rat]) -> Result<Vec<i32>, AsymptoticsError> {
    if u.len() != j.ambient() {
        return Err(AsymptoticsError::Arity { expected: j.ambient(), got: u.len() });
    }
    if u.iter().all(Zero::is_zero) {
        return Err(AsymptoticsError::ZeroVector);
    }
    j.degree_of(u).ok_or(AsymptoticsError::MixedVector)
}

/// `Σ_σ dim J^σ · σ`, coordinatewise.
pub fn degree_sum(j: &GradedSplitting<Rat>) -> Vec<i32> {
    let mut acc: Vec<i32> = Vec::new();
    for (deg, dim) in j.dims() {
        if acc.is_empty() {
            acc = vec![0; deg.len()];
        }
        for (a, d) in acc.iter_mut().zip(&deg) {
            *a += d * dim as i32;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets;

    #[test]
    fn e1_closed_forms() {
        let e1 = datasets::e1();
        let rays = RaySpec::default_rays(1);
        let f = fit_exponents(&e1, &[rat(1, 1), rat(0, 1)], &rays).unwrap();
        assert_eq!(f.exponents, vec![1]);
        assert!(f.residual < 0.01, "{f:?}");
        let f = fit_exponents(&e1, &[rat(0, 1), rat(1, 1)], &rays).unwrap();
        assert_eq!(f.exponents, vec![-1]);
    }

    #[test]
    fn rays_must_stay_ordered() {
        let base = vec![CRat::new(rat(1, 4), rat(2, 1)); 2];
        assert!(RaySpec::new(base.clone(), vec![rat(1, 4), rat(1, 1)], vec![10.0]).is_err());
        assert!(RaySpec::new(base, vec![rat(1, 1), rat(1, 1)], vec![10.0, 5.0]).is_err());
    }

    #[test]
    fn a_single_ray_cannot_separate_two_exponents() {
        let e2 = datasets::e2();
        let rays = vec![RaySpec::default_rays(2).remove(1)];
        let u = vec![rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1)];
        assert_eq!(fit_exponents(&e2, &u, &rays).unwrap_err(), AsymptoticsError::IllConditioned(2));
    }

    #[test]
    fn mixed_vector_has_no_prediction() {
        let j = j_splitting(&datasets::e1()).unwrap();
        assert_eq!(predicted_exponents(&j, &[rat(1, 1), rat(1, 1)]), Err(AsymptoticsError::MixedVector));
        assert_eq!(predicted_exponents(&j, &[rat(0, 1), rat(1, 1)]), Ok(vec![-1]));
    }
}
