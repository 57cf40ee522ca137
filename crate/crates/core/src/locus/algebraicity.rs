use crate::linalg::float::smallest_singular;
use crate::linalg::C64;

use super::solve::LocusReport;

/// Validation threshold for fitted q-relations.
pub const RELATION_TOL: f64 = 1e-8;
/// Largest total degree tried for a relation between `q_1` and `q_2`.
pub const MAX_RELATION_DEGREE: u32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct QRelation {
    /// Exponents `(a, b)` of the monomials `q_1^a q_2^b`.
    pub monomials: Vec<(u32, u32)>,
    /// Coefficients, scaled so that the largest has modulus 1.
    pub coefficients: Vec<C64>,
    /// Largest relative residual on held-out samples.
    pub validation_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QAlgebraicity {
    pub algebraic: bool,
    pub whole_polydisk: bool,
    /// `q`-coordinates of isolated solutions.
    pub points: Vec<Vec<C64>>,
    /// Every isolated solution has `0 < |q_j| < 1`.
    pub in_punctured_disk: bool,
    /// One relation per curve component; `None` when no relation of degree at
    /// most `MAX_RELATION_DEGREE` validated.
    pub relations: Vec<Option<QRelation>>,
}

fn q_of(z: &[C64]) -> Vec<C64> {
    z.iter().map(|w| (C64::new(0.0, 2.0 * std::f64::consts::PI) * w).exp()).collect()
}

fn monomials(degree: u32) -> Vec<(u32, u32)> {
    (0..=degree).flat_map(|t| (0..=t).map(move |a| (a, t - a))).collect()
}

/// Fits a relation on the even-indexed samples and validates on the odd ones.
fn fit_relation(qs: &[Vec<C64>]) -> Option<QRelation> {
    for degree in 1..=MAX_RELATION_DEGREE {
        let monos = monomials(degree);
        let train: Vec<&Vec<C64>> = qs.iter().step_by(2).collect();
        let test: Vec<&Vec<C64>> = qs.iter().skip(1).step_by(2).collect();
        if train.len() < monos.len() || test.is_empty() {
            return None;
        }
        let eval = |q: &[C64], (a, b): (u32, u32)| q[0].powu(a) * q[1].powu(b);
        let rows: Vec<Vec<C64>> = train.iter().map(|q| monos.iter().map(|&m| eval(q, m)).collect()).collect();
        let norms: Vec<f64> = (0..monos.len())
            .map(|k| rows.iter().map(|r| r[k].norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE))
            .collect();
        let scaled: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().zip(&norms).map(|(x, n)| x / n).collect()).collect();
        let (v, _, _) = smallest_singular(&scaled)?;
        let mut coeffs: Vec<C64> = v.iter().zip(&norms).map(|(c, n)| c / n).collect();
        let top = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let lead = *coeffs.iter().find(|c| c.norm() == top)?;
        for c in coeffs.iter_mut() {
            *c /= lead;
        }
        let residual = test
            .iter()
            .map(|q| {
                let terms: Vec<C64> = monos.iter().zip(&coeffs).map(|(&m, c)| c * eval(q, m)).collect();
                let scale: f64 = terms.iter().map(|t| t.norm()).sum();
                terms.iter().sum::<C64>().norm() / scale.max(f64::MIN_POSITIVE)
            })
            .fold(0.0, f64::max);
        if residual <= RELATION_TOL {
            return Some(QRelation { monomials: monos, coefficients: coeffs, validation_residual: residual });
        }
    }
    None
}

/// Algebraicity of the solution set in `q`-coordinates: the whole region,
/// finitely many points, or curves carrying a validated polynomial relation.
pub fn q_algebraicity_check(report: &LocusReport) -> QAlgebraicity {
    let points: Vec<Vec<C64>> = report.points.iter().map(|p| q_of(&p.z)).collect();
    let in_punctured_disk = points.iter().flatten().all(|q| q.norm() > 0.0 && q.norm() < 1.0);
    let relations: Vec<Option<QRelation>> = report
        .components
        .iter()
        .map(|k| fit_relation(&k.certificate.iter().map(|z| q_of(z)).collect::<Vec<_>>()))
        .collect();
    let algebraic = report.whole || (in_punctured_disk && relations.iter().all(Option::is_some));
    QAlgebraicity { algebraic, whole_polydisk: report.whole, points, in_punctured_disk, relations }
}
