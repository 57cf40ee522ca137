use std::fmt::Write as _;

use itertools::Itertools;
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{primitive_integral, rat_to_f64, CRat, Rat, Scalar, C64};
use crate::period::orbit::monodromy;
use crate::period::{hodge_metric_matrix, NilpotentOrbitData, PeriodError};
use crate::reduction::is_reduced;

use super::fit::j_splitting;
use super::region::{imag_parts, real_parts, sample_sigma, SigmaRegion};
use super::AsymptoticsError;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepConfig {
    /// Use this ordered basis as is instead of searching orderings of the
    /// J-adapted basis.
    pub basis: Option<Vec<Vec<Rat>>>,
    /// Also sweep the translates `z + m` for `m ∈ {-R..R}^n`, in the basis `T^m e`.
    pub shift_radius: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// `h_z(e_i)` in the chosen order.
    pub h: Vec<f64>,
    pub defects: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShiftReport {
    pub shift: Vec<i64>,
    pub c_star: f64,
    /// Largest relative gap between the Gram matrix of `T^m e` at `z + m` and
    /// that of `e` at `z`.
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub orbit: String,
    /// Ordered basis, entries as rational strings.
    pub basis: Vec<Vec<String>>,
    /// J-degree of each basis vector, when homogeneous.
    pub degrees: Vec<Option<Vec<i32>>>,
    /// Largest defect over the grid.
    pub c_star: f64,
    /// Largest defect over grid points with `y_1 <= y_hi / 10`.
    pub c_star_lower: f64,
    pub growth_ratio: f64,
    pub max_defects: [f64; 3],
    /// Grid points skipped because the Hodge structure was not polarized.
    pub skipped: usize,
    pub rows: Vec<SweepRow>,
    pub shifts: Vec<ShiftReport>,
}

impl SweepReport {
    /// Columns: `x_1..x_n, y_1..y_n, h_1..h_r, d1, d2, d3`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let Some(first) = self.rows.first() else { return out };
        let n = first.x.len();
        let r = first.h.len();
        let header: Vec<String> = (1..=n)
            .map(|i| format!("x{i}"))
            .chain((1..=n).map(|i| format!("y{i}")))
            .chain((1..=r).map(|i| format!("h{i}")))
            .chain(["d1", "d2", "d3"].map(String::from))
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> =
                row.x.iter().chain(&row.y).chain(&row.h).chain(&row.defects).map(|v| format!("{v:e}")).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// Gram matrix of `h_z` on `basis`, `None` at unpolarized points.
fn metric_at(data: &NilpotentOrbitData, z: &[CRat], basis: &[Vec<Rat>]) -> Result<Option<DMatrix<f64>>, PeriodError> {
    let r = basis.len();
    let res = if data.psi().is_some() {
        let zc: Vec<C64> = z.iter().map(CRat::to_c64).collect();
        let bc: Vec<Vec<C64>> = basis.iter().map(|v| v.iter().map(C64::from_rat).collect()).collect();
        hodge_metric_matrix(data, &zc, &bc).map(|m| DMatrix::from_fn(r, r, |i, j| m[(i, j)].re))
    } else {
        let bc: Vec<Vec<CRat>> = basis.iter().map(|v| v.iter().map(CRat::from_rat).collect()).collect();
        hodge_metric_matrix(data, z, &bc).map(|m| DMatrix::from_fn(r, r, |i, j| rat_to_f64(&m[(i, j)].re)))
    };
    match res {
        Ok(m) => Ok(Some(m)),
        Err(PeriodError::Unpolarized) => Ok(None),
        Err(e) => Err(e),
    }
}

fn units(order: &[usize]) -> Vec<Vec<f64>> {
    let n = order.len();
    order.iter().map(|&i| (0..n).map(|j| (i == j) as u8 as f64).collect()).collect()
}

fn defects(gram: &DMatrix<f64>, order: &[usize]) -> Result<[f64; 3], AsymptoticsError> {
    Ok(is_reduced(gram, &units(order), f64::INFINITY)?.defects)
}

fn c_star(rows: &[[f64; 3]]) -> f64 {
    rows.iter().flatten().cloned().fold(0.0, f64::max)
}

/// [`reducedness_sweep_with`] with the default configuration.
pub fn reducedness_sweep(
    data: &NilpotentOrbitData,
    region: &SigmaRegion,
    density: usize,
) -> Result<SweepReport, AsymptoticsError> {
    reducedness_sweep_with(data, region, density, &SweepConfig::default())
}

/// Evaluates the Hodge metric on the grid of `region`, picks the ordering of
/// the primitive J-adapted basis with the smallest `C*` (first in
/// lexicographic order on ties) and reports the defects.
pub fn reducedness_sweep_with(
    data: &NilpotentOrbitData,
    region: &SigmaRegion,
    density: usize,
    config: &SweepConfig,
) -> Result<SweepReport, AsymptoticsError> {
    if region.n() != data.vars() {
        return Err(AsymptoticsError::Arity { expected: data.vars(), got: region.n() });
    }
    let j = j_splitting(data)?;
    let (basis, search) = match &config.basis {
        Some(b) => {
            if let Some(v) = b.iter().find(|v| v.len() != data.rank()) {
                return Err(AsymptoticsError::Arity { expected: data.rank(), got: v.len() });
            }
            (b.clone(), false)
        }
        None => (j.adapted_basis().into_iter().map(|(_, v)| primitive_integral(&v)).collect::<Vec<_>>(), true),
    };
    let points = sample_sigma(region, density)?;
    let evaluated: Vec<Option<DMatrix<f64>>> =
        points.par_iter().map(|z| metric_at(data, z, &basis)).collect::<Result<_, _>>()?;
    let kept: Vec<(&Vec<CRat>, &DMatrix<f64>)> =
        points.iter().zip(&evaluated).filter_map(|(z, g)| g.as_ref().map(|g| (z, g))).collect();
    if kept.is_empty() {
        return Err(AsymptoticsError::NoPolarizedPoint);
    }
    let skipped = points.len() - kept.len();

    let r = basis.len();
    let order: Vec<usize> = if search {
        let scored: Vec<(Vec<usize>, f64)> = (0..r)
            .permutations(r)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|perm| {
                let mut worst = 0.0f64;
                for (_, g) in &kept {
                    worst = worst.max(defects(g, &perm)?.iter().cloned().fold(0.0, f64::max));
                }
                Ok((perm, worst))
            })
            .collect::<Result<_, AsymptoticsError>>()?;
        scored.into_iter().fold(None, |best: Option<(Vec<usize>, f64)>, cand| match best {
            Some(b) if b.1 <= cand.1 => Some(b),
            _ => Some(cand),
        })
        .expect("at least one ordering")
        .0
    } else {
        (0..r).collect()
    };

    let lower_limit = region.y_hi() / 10.0 * (1.0 + 1e-9);
    let mut rows = Vec::with_capacity(kept.len());
    let mut all = Vec::with_capacity(kept.len());
    let mut lower = Vec::new();
    for (z, g) in &kept {
        let d = defects(g, &order)?;
        let y = imag_parts(z);
        if y[0] <= lower_limit {
            lower.push(d);
        }
        all.push(d);
        rows.push(SweepRow { x: real_parts(z), y, h: order.iter().map(|&i| g[(i, i)]).collect(), defects: d });
    }
    let c_all = c_star(&all);
    let c_lower = c_star(&lower);
    let mut max_defects = [0.0f64; 3];
    for d in &all {
        for k in 0..3 {
            max_defects[k] = max_defects[k].max(d[k]);
        }
    }

    let ordered: Vec<Vec<Rat>> = order.iter().map(|&i| basis[i].clone()).collect();
    let shifts = shift_reports(data, &kept, &order, &ordered, config.shift_radius)?;
    Ok(SweepReport {
        orbit: data.name().to_string(),
        basis: ordered.iter().map(|v| v.iter().map(Rat::to_string).collect()).collect(),
        degrees: ordered.iter().map(|v| j.degree_of(v)).collect(),
        c_star: c_all,
        c_star_lower: c_lower,
        growth_ratio: if lower.is_empty() { f64::NAN } else { c_all / c_lower },
        max_defects,
        skipped,
        rows,
        shifts,
    })
}

/// Re-evaluates at `z + m` in the basis `T^m e`, where `T^m = exp(Σ m_j N_j)`.
fn shift_reports(
    data: &NilpotentOrbitData,
    kept: &[(&Vec<CRat>, &DMatrix<f64>)],
    order: &[usize],
    ordered: &[Vec<Rat>],
    radius: u32,
) -> Result<Vec<ShiftReport>, AsymptoticsError> {
    if radius == 0 {
        return Ok(Vec::new());
    }
    let n = data.vars();
    let rad = radius as i64;
    let mut out = Vec::new();
    for m in (0..n).map(|_| -rad..=rad).multi_cartesian_product() {
        let t = monodromy(data, &m)?;
        let moved: Vec<Vec<Rat>> = ordered.iter().map(|v| t.mul_vec(v)).collect();
        let results: Vec<Option<(f64, f64)>> = kept
            .par_iter()
            .map(|(z, g)| {
                let zs: Vec<CRat> = z.iter().zip(&m).map(|(c, &s)| c.clone() + CRat::from_i64(s)).collect();
                let Some(h) = metric_at(data, &zs, &moved)? else { return Ok(None) };
                let base = DMatrix::from_fn(order.len(), order.len(), |a, b| g[(order[a], order[b])]);
                let scale = base.iter().map(|x| x.abs()).fold(0.0, f64::max);
                let dev = (&h - &base).iter().map(|x| x.abs()).fold(0.0, f64::max) / scale;
                let identity: Vec<usize> = (0..order.len()).collect();
                let worst = defects(&h, &identity)?.iter().cloned().fold(0.0, f64::max);
                Ok(Some((worst, dev)))
            })
            .collect::<Result<_, AsymptoticsError>>()?;
        let (c, dev) = results.into_iter().flatten().fold((0.0f64, 0.0f64), |a, b| (a.0.max(b.0), a.1.max(b.1)));
        out.push(ShiftReport { shift: m, c_star: c, max_deviation: dev });
    }
    Ok(out)
}
