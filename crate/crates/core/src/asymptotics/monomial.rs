use num_traits::Zero;

use crate::linalg::{rat_to_f64, Rat, C64};

use super::AsymptoticsError;

/// Samples above this y-scale are ignored by the monomial check.
pub const UPPER_SCALE: f64 = 1e3;
/// The check compares against the samples up to this y-scale.
pub const LOWER_SCALE: f64 = 1e2;
/// Largest allowed growth of the bound between the two scales.
pub const GROWTH_LIMIT: f64 = 1.05;

/// `(log(y_1/y_2), …, log(y_{n-1}/y_n), log y_n)`.
pub(crate) fn log_coordinates(y: &[f64]) -> Vec<f64> {
    let n = y.len();
    (0..n).map(|j| if j + 1 < n { (y[j] / y[j + 1]).ln() } else { y[j].ln() }).collect()
}

/// `(y_1/y_2)^{s_1} ⋯ (y_{n-1}/y_n)^{s_{n-1}} y_n^{s_n}`.
pub fn monomial(sigma: &[i32], y: &[f64]) -> f64 {
    log_coordinates(y).iter().zip(sigma).map(|(l, &s)| l * s as f64).sum::<f64>().exp()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonomialCheck {
    pub roughly_monomial: bool,
    /// Smallest `C` with `1/C <= |f| / m_σ <= C` on the samples up to `UPPER_SCALE`.
    pub constant: f64,
    /// That bound divided by the same bound on samples up to `LOWER_SCALE`.
    pub growth: f64,
}

/// Boundedness proxy for `f ~ m_σ`: the two-sided ratio bound must not grow by
/// `GROWTH_LIMIT` or more between y-scales `LOWER_SCALE` and `UPPER_SCALE`.
/// Samples are `(y, f(z))`; the y-scale of a sample is `y_1`. A vanishing
/// value gives `false` with an infinite constant.
pub fn roughly_monomial_check(samples: &[(Vec<f64>, f64)], sigma: &[i32]) -> Result<MonomialCheck, AsymptoticsError> {
    if let Some((y, _)) = samples.iter().find(|(y, _)| y.len() != sigma.len()) {
        return Err(AsymptoticsError::Arity { expected: sigma.len(), got: y.len() });
    }
    let bound = |limit: f64| {
        samples
            .iter()
            .filter(|(y, _)| y[0] <= limit)
            .map(|(y, v)| {
                let r = v.abs() / monomial(sigma, y);
                if r == 0.0 {
                    f64::INFINITY
                } else {
                    r.max(1.0 / r)
                }
            })
            .fold(None, |acc: Option<f64>, q| Some(acc.map_or(q, |a| a.max(q))))
    };
    let lower = bound(LOWER_SCALE).ok_or(AsymptoticsError::TooFewSamples(LOWER_SCALE))?;
    let upper = bound(UPPER_SCALE).expect("lower-scale samples exist");
    if !upper.is_finite() {
        return Ok(MonomialCheck { roughly_monomial: false, constant: f64::INFINITY, growth: f64::INFINITY });
    }
    let growth = upper / lower;
    Ok(MonomialCheck { roughly_monomial: growth < GROWTH_LIMIT, constant: upper, growth })
}

/// The curve `α_1 z_1 + β_1 = … = α_{n₀} z_{n₀} + β_{n₀} = w`,
/// `z_j = ζ_j` for `j > n₀`, parametrized by `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec {
    alpha: Vec<Rat>,
    beta: Vec<f64>,
    tail: Vec<C64>,
}

impl CurveSpec {
    pub fn new(alpha: Vec<Rat>, beta: Vec<f64>, tail: Vec<C64>) -> Result<Self, AsymptoticsError> {
        if alpha.len() != beta.len() {
            return Err(AsymptoticsError::BadCurve(format!("{} alphas, {} betas", alpha.len(), beta.len())));
        }
        if alpha.iter().any(|a| *a <= Rat::zero()) {
            return Err(AsymptoticsError::BadCurve("alpha must be positive".into()));
        }
        if beta.iter().any(|b| !b.is_finite()) {
            return Err(AsymptoticsError::BadCurve("beta must be finite".into()));
        }
        Ok(CurveSpec { alpha, beta, tail })
    }

    pub fn vars(&self) -> usize {
        self.alpha.len() + self.tail.len()
    }

    /// The point of the curve at parameter `w`.
    pub fn point(&self, w: C64) -> Vec<C64> {
        self.alpha
            .iter()
            .zip(&self.beta)
            .map(|(a, b)| (w - b) / rat_to_f64(a))
            .chain(self.tail.iter().cloned())
            .collect()
    }
}

/// `w ↦ f(z(w))` along the curve.
pub fn curve_restriction<F>(f: F, curve: &CurveSpec) -> impl Fn(C64) -> f64
where
    F: Fn(&[C64]) -> f64,
{
    let curve = curve.clone();
    move |w| f(&curve.point(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn grid() -> Vec<Vec<f64>> {
        let ys: Vec<f64> = (0..16).map(|k| 2.0 * 500f64.powf(k as f64 / 15.0)).collect();
        let mut out = Vec::new();
        for (i, a) in ys.iter().enumerate() {
            for b in &ys[..=i] {
                out.push(vec![*a, *b]);
            }
        }
        out
    }

    #[test]
    fn sum_is_roughly_the_leading_variable() {
        let s: Vec<_> = grid().into_iter().map(|y| { let v = y[0] + y[1]; (y, v) }).collect();
        let c = roughly_monomial_check(&s, &[1, 1]).unwrap();
        assert!(c.roughly_monomial && c.constant <= 2.0 + 1e-12, "{c:?}");
    }

    #[test]
    fn difference_vanishes_on_the_diagonal() {
        let s: Vec<_> = grid().into_iter().map(|y| { let v = y[0] - y[1]; (y, v) }).collect();
        assert!(!roughly_monomial_check(&s, &[1, 1]).unwrap().roughly_monomial);
    }

    #[test]
    fn monomial_is_itself() {
        let s: Vec<_> = grid().into_iter().map(|y| { let v = monomial(&[2, -1], &y); (y, v) }).collect();
        let c = roughly_monomial_check(&s, &[2, -1]).unwrap();
        assert!(c.roughly_monomial && (c.constant - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unbounded_ratio_fails() {
        let s: Vec<_> = grid().into_iter().map(|y| { let v = y[0] * y[0].ln(); (y, v) }).collect();
        assert!(!roughly_monomial_check(&s, &[1, 1]).unwrap().roughly_monomial);
    }

    #[test]
    fn ratio_is_constant_on_a_linear_curve() {
        // z_1 = 2w + 1, z_2 = w
        let curve = CurveSpec::new(vec![rat(1, 2), rat(1, 1)], vec![-0.5, 0.0], vec![]).unwrap();
        let g = curve_restriction(|z: &[C64]| z[0].im / z[1].im, &curve);
        for y in [1.5, 10.0, 300.0] {
            assert!((g(C64::new(0.3, y)) - 2.0).abs() < 1e-12);
        }
        let fixed = CurveSpec::new(vec![], vec![], vec![C64::new(0.1, 3.0), C64::new(0.2, 2.0)]).unwrap();
        let g = curve_restriction(|z: &[C64]| z[0].im / z[1].im, &fixed);
        assert_eq!(g(C64::new(0.0, 5.0)), g(C64::new(0.5, 50.0)));
        assert!(CurveSpec::new(vec![rat(-1, 1)], vec![0.0], vec![]).is_err());
    }
}
