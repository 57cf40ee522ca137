use serde_json::{json, Value};

use crate::linalg::float::poly_roots;
use crate::linalg::{rat, rat_approx, rat_to_f64, CRat, Matrix, Rat, Scalar, C64};

use super::poly::{bdiv_exact, bgcd, udeg, ueval, usquarefree, Poly};
use super::system::LocusSystem;
use super::LocusError;

/// The search region `0 <= Re z_j < 1`, `Im z_j > y0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocusRegion {
    pub y0: Rat,
}

impl Default for LocusRegion {
    fn default() -> Self {
        LocusRegion { y0: rat(2, 1) }
    }
}

/// Distance below which a float root counts as lying on the boundary `Im z = y0`.
const BOUNDARY_TOL: f64 = 1e-9;
/// Largest denominator tried when recognizing a float root as a Gaussian rational.
const RECON_DEN: i64 = 10_000;

impl LocusRegion {
    pub fn new(y0: Rat) -> Self {
        LocusRegion { y0 }
    }

    fn contains_exact(&self, z: &CRat) -> Result<bool, LocusError> {
        if z.im == self.y0 {
            return Err(LocusError::Indeterminate(z.to_string()));
        }
        Ok(z.re >= Rat::from_integer(0.into()) && z.re < Rat::from_integer(1.into()) && z.im > self.y0)
    }

    fn contains_float(&self, z: C64) -> Result<bool, LocusError> {
        let y0 = rat_to_f64(&self.y0);
        if (z.im - y0).abs() < BOUNDARY_TOL {
            return Err(LocusError::Indeterminate(format!("{z}")));
        }
        Ok(z.re >= 0.0 && z.re < 1.0 && z.im > y0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocusPoint {
    pub z: Vec<C64>,
    /// Present when the point was recognized as Gaussian rational and checked exactly.
    pub exact: Option<Vec<CRat>>,
    pub residual: f64,
}

impl LocusPoint {
    pub fn q(&self) -> Vec<C64> {
        self.z.iter().map(|z| (C64::new(0.0, 2.0 * std::f64::consts::PI) * z).exp()).collect()
    }
}

/// A curve of solutions `{G = 0}` (two variables) with sampled points on it.
#[derive(Clone, Debug, PartialEq)]
pub struct LocusComponent {
    /// Squarefree common factor of all equations.
    pub equation: Poly,
    /// The variable solved for when sampling; the other one runs over a grid.
    pub solved_var: usize,
    pub certificate: Vec<Vec<C64>>,
    pub max_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocusReport {
    pub system: LocusSystem,
    pub region: LocusRegion,
    /// Every equation vanishes identically: the whole region.
    pub whole: bool,
    pub points: Vec<LocusPoint>,
    pub components: Vec<LocusComponent>,
}

impl LocusReport {
    pub fn is_empty(&self) -> bool {
        !self.whole && self.points.is_empty() && self.components.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let c = |z: &C64| json!([z.re, z.im]);
        json!({
            "orbit": self.system.orbit,
            "vector": self.system.vector.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "level": self.system.level,
            "y0": self.region.y0.to_string(),
            "equations": self.system.equations.iter().map(|p| {
                p.coefficient_list().into_iter().map(|(e, a)| json!({"exponents": e, "coefficient": a})).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "whole_region": self.whole,
            "points": self.points.iter().map(|p| json!({
                "z": p.z.iter().map(c).collect::<Vec<_>>(),
                "exact": p.exact.as_ref().map(|e| e.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                "q": p.q().iter().map(c).collect::<Vec<_>>(),
                "residual": p.residual,
            })).collect::<Vec<_>>(),
            "components": self.components.iter().map(|k| json!({
                "equation": k.equation.to_string(),
                "solved_var": k.solved_var + 1,
                "certificate_points": k.certificate.len(),
                "max_residual": k.max_residual,
            })).collect::<Vec<_>>(),
        })
    }
}

fn recognize(z: C64) -> Option<CRat> {
    Some(CRat::new(rat_approx(z.re, RECON_DEN)?, rat_approx(z.im, RECON_DEN)?))
}

/// Roots of a squarefree univariate polynomial, each recognized exactly when possible.
fn univariate_points(sq: &[CRat]) -> Vec<(C64, Option<CRat>)> {
    let coeffs: Vec<C64> = sq.iter().map(CRat::to_c64).collect();
    poly_roots(&coeffs)
        .into_iter()
        .map(|r| {
            let exact = recognize(r).filter(|e| ueval(sq, e).is_zero_exact());
            (exact.as_ref().map_or(r, CRat::to_c64), exact)
        })
        .collect()
}

/// Common zeros of the system in the region. One variable: roots of the gcd.
/// Two variables: the common factor gives curve components, sampled on a grid,
/// and the resultant of the remaining cofactors gives isolated points.
pub fn locus_solve(system: &LocusSystem, region: &LocusRegion) -> Result<LocusReport, LocusError> {
    let mut report = LocusReport {
        system: system.clone(),
        region: region.clone(),
        whole: false,
        points: Vec::new(),
        components: Vec::new(),
    };
    if system.is_identically_zero() {
        report.whole = true;
        return Ok(report);
    }
    match system.vars {
        1 => solve_one(system, region, &mut report)?,
        2 => solve_two(system, region, &mut report)?,
        n => return Err(LocusError::TooManyVariables(n)),
    }
    Ok(report)
}

fn solve_one(system: &LocusSystem, region: &LocusRegion, report: &mut LocusReport) -> Result<(), LocusError> {
    let g = system.nonzero_equations().fold(Vec::new(), |acc, p| super::poly::ugcd(&acc, &p.to_univariate()));
    if udeg(&g).unwrap_or(0) == 0 {
        return Ok(());
    }
    for (z, exact) in univariate_points(&usquarefree(&g)) {
        let inside = match &exact {
            Some(e) => region.contains_exact(e)?,
            None => region.contains_float(z)?,
        };
        if inside {
            let residual = system.relative_residual(&[z]);
            report.points.push(LocusPoint { z: vec![z], exact: exact.map(|e| vec![e]), residual });
        }
    }
    report.points.sort_by(|a, b| (a.z[0].re, a.z[0].im).partial_cmp(&(b.z[0].re, b.z[0].im)).expect("finite roots"));
    Ok(())
}

fn solve_two(system: &LocusSystem, region: &LocusRegion, report: &mut LocusReport) -> Result<(), LocusError> {
    let eqs: Vec<&Poly> = system.nonzero_equations().collect();
    // pick as main variable one that occurs, to keep the dense forms nondegenerate
    let main = if eqs.iter().any(|p| p.degree_in(0) > 0) { 0 } else { 1 };
    let dense: Vec<Vec<Vec<CRat>>> = eqs.iter().map(|p| p.to_bivariate(main)).collect();
    let g = dense.iter().skip(1).fold(dense[0].clone(), |acc, p| bgcd(&acc, p));
    let common = Poly::from_bivariate(&g, main);
    if !common.is_constant() {
        report.components.push(sample_component(system, &common, region)?);
    }
    // isolated points: cofactors have no common factor left
    let cof: Vec<Poly> = dense
        .iter()
        .map(|p| bdiv_exact(p, &g).map(|q| Poly::from_bivariate(&q, main)).ok_or(LocusError::Elimination))
        .collect::<Result<_, _>>()?;
    if cof.len() >= 2 && cof.iter().all(|p| !p.is_constant()) {
        for z in isolated_points(&cof, main, region)? {
            report.points.push(z);
        }
    }
    Ok(())
}

/// Res_{z_main}(f, g) as a polynomial in the other variable, by exact
/// evaluation of the Sylvester determinant and interpolation.
fn resultant(f: &Poly, g: &Poly, main: usize) -> Vec<CRat> {
    let other = 1 - main;
    let (m, n) = (f.degree_in(main) as usize, g.degree_in(main) as usize);
    let bound = m * g.degree_in(other) as usize + n * f.degree_in(other) as usize;
    let xs: Vec<CRat> = (0..=bound as i64).map(|k| CRat::from_ints(k, 0)).collect();
    let ys: Vec<CRat> = xs
        .iter()
        .map(|x| {
            let coeffs = |p: &Poly, d: usize| -> Vec<CRat> {
                (0..=d)
                    .map(|k| {
                        let mut out = CRat::from_ints(0, 0);
                        for (e, c) in p.terms() {
                            if e[main] as usize == k {
                                out = &out + &(c * &x.pow(e[other]));
                            }
                        }
                        out
                    })
                    .collect()
            };
            sylvester_det(&coeffs(f, m), &coeffs(g, n))
        })
        .collect();
    interpolate(&xs, &ys)
}

fn sylvester_det(a: &[CRat], b: &[CRat]) -> CRat {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return CRat::from_ints(1, 0);
    }
    let mat = Matrix::from_fn(size, size, |r, c| {
        let (src, shift, deg) = if r < n { (a, r, m) } else { (b, r - n, n) };
        // highest degree first along each row
        if c >= shift && c - shift <= deg {
            src[deg - (c - shift)].clone()
        } else {
            CRat::from_ints(0, 0)
        }
    });
    mat.det().expect("square")
}

/// Newton interpolation through `(xs, ys)`; dense coefficients, lowest first.
fn interpolate(xs: &[CRat], ys: &[CRat]) -> Vec<CRat> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = &(&dd[i] - &dd[i - 1]) / &(&xs[i] - &xs[i - j]);
        }
    }
    let mut poly: Vec<CRat> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // poly <- poly * (w - xs[i]) + dd[i]
        let mut next = vec![CRat::from_ints(0, 0); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = &next[k + 1] + c;
            next[k] = &next[k] - &(c * &xs[i]);
        }
        next[0] = &next[0] + &dd[i];
        poly = next;
    }
    super::poly::trim(&mut poly);
    poly
}

fn isolated_points(cof: &[Poly], main: usize, region: &LocusRegion) -> Result<Vec<LocusPoint>, LocusError> {
    let other = 1 - main;
    let r = resultant(&cof[0], &cof[1], main);
    if udeg(&r).is_none() {
        return Err(LocusError::Elimination);
    }
    let mut out = Vec::new();
    for (w, w_exact) in univariate_points(&usquarefree(&r)) {
        // roots of the first cofactor in the main variable at this w
        let d = cof[0].degree_in(main) as usize;
        let coeffs: Vec<C64> = (0..=d)
            .map(|k| {
                cof[0]
                    .terms()
                    .filter(|(e, _)| e[main] as usize == k)
                    .map(|(e, c)| c.to_c64() * w.powu(e[other]))
                    .sum()
            })
            .collect();
        for z in poly_roots(&coeffs) {
            let mut pt = vec![C64::new(0.0, 0.0); 2];
            pt[main] = z;
            pt[other] = w;
            let residual = cof.iter().map(|p| p.eval_c64(&pt).norm() / p.eval_abs_c64(&pt).max(f64::MIN_POSITIVE)).fold(0.0, f64::max);
            if residual > 1e-8 {
                continue;
            }
            let exact = match (recognize(z), &w_exact) {
                (Some(ze), Some(we)) => {
                    let mut e = vec![CRat::from_ints(0, 0); 2];
                    e[main] = ze;
                    e[other] = we.clone();
                    cof.iter().all(|p| p.eval(&e).is_zero_exact()).then_some(e)
                }
                _ => None,
            };
            let inside = match &exact {
                Some(e) => region.contains_exact(&e[0])? && region.contains_exact(&e[1])?,
                None => region.contains_float(pt[0])? && region.contains_float(pt[1])?,
            };
            if inside {
                out.push(LocusPoint { z: pt, exact, residual });
            }
        }
    }
    Ok(out)
}

/// Samples `{G = 0}` over a grid of the free variable (`x ∈ {k/8}`,
/// `y ∈ y0 + {1/8, 1/4, 1/2, 1}`), keeping the solutions inside the region.
fn sample_component(system: &LocusSystem, g: &Poly, region: &LocusRegion) -> Result<LocusComponent, LocusError> {
    let sq = squarefree_bivariate(g)?;
    let solved = if sq.degree_in(0) > 0 { 0 } else { 1 };
    let free = 1 - solved;
    let y0 = rat_to_f64(&region.y0);
    let mut certificate = Vec::new();
    let mut max_residual = 0.0f64;
    for dy in [0.125, 0.25, 0.5, 1.0] {
        for k in 0..8 {
            let w = C64::new(k as f64 / 8.0, y0 + dy);
            let d = sq.degree_in(solved) as usize;
            let coeffs: Vec<C64> = (0..=d)
                .map(|j| {
                    sq.terms().filter(|(e, _)| e[solved] as usize == j).map(|(e, c)| c.to_c64() * w.powu(e[free])).sum()
                })
                .collect();
            for z in poly_roots(&coeffs) {
                if !(z.re >= 0.0 && z.re < 1.0 && z.im > y0) {
                    continue;
                }
                let mut pt = vec![C64::new(0.0, 0.0); 2];
                pt[solved] = z;
                pt[free] = w;
                let res = system.relative_residual(&pt);
                max_residual = max_residual.max(res);
                certificate.push(pt);
            }
        }
    }
    Ok(LocusComponent { equation: sq, solved_var: solved, certificate, max_residual })
}

/// `G / gcd(G, ∂G)` in the variable of positive degree.
fn squarefree_bivariate(g: &Poly) -> Result<Poly, LocusError> {
    let main = if g.degree_in(0) > 0 { 0 } else { 1 };
    let dense = g.to_bivariate(main);
    let deriv: Vec<Vec<CRat>> =
        dense.iter().enumerate().skip(1).map(|(k, c)| c.iter().map(|x| x * &CRat::from_ints(k as i64, 0)).collect()).collect();
    let h = bgcd(&dense, &deriv);
    let q = bdiv_exact(&dense, &h).ok_or(LocusError::Elimination)?;
    Ok(Poly::from_bivariate(&q, main))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CRat {
        CRat::from_ints(n, 0)
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let xs: Vec<CRat> = (0..4).map(c).collect();
        let p = [c(1), CRat::i(), c(0), c(2)];
        let ys: Vec<CRat> = xs.iter().map(|x| ueval(&p, x)).collect();
        assert_eq!(interpolate(&xs, &ys), p.to_vec());
    }

    #[test]
    fn resultant_of_lines() {
        // z1 - z2 and z1 + z2 - 2: eliminating z1 leaves a multiple of z2 - 1
        let z1 = Poly::var(2, 0);
        let z2 = Poly::var(2, 1);
        let a = z1.sub(&z2);
        let b = z1.add(&z2).sub(&Poly::constant(2, c(2)));
        let r = resultant(&a, &b, 0);
        assert_eq!(udeg(&r), Some(1));
        assert!(ueval(&r, &c(1)).is_zero_exact());
    }
}
