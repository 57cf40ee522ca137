use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::linalg::{rat, rat_to_f64, CRat, Rat};

use super::iwasawa::iwasawa;
use super::sl2::Sl2;
use super::ReductionError;

/// Siegel set for the Borel subgroup of `SL_m`: unipotent coordinates bounded
/// by `u_bound`, simple roots `a_i / a_{i+1} > t`, trivial compact part. For
/// `m = 2` this is the strip `|Re z| <= u_bound`, `Im z > t` in the upper
/// half-plane.
#[derive(Clone, Debug, PartialEq)]
pub struct SiegelSetSpec {
    pub rank: usize,
    pub t: Rat,
    pub u_bound: Rat,
}

impl SiegelSetSpec {
    pub fn new(rank: usize, t: Rat, u_bound: Rat) -> Result<Self, ReductionError> {
        if rank < 2 {
            return Err(ReductionError::BadSpec(format!("rank {rank} < 2")));
        }
        if !t.is_positive() {
            return Err(ReductionError::BadSpec(format!("t = {t} must be positive")));
        }
        if u_bound.is_negative() {
            return Err(ReductionError::BadSpec(format!("u bound {u_bound} is negative")));
        }
        Ok(SiegelSetSpec { rank, t, u_bound })
    }

    pub fn strip(t: Rat, u_bound: Rat) -> Result<Self, ReductionError> {
        SiegelSetSpec::new(2, t, u_bound)
    }

    /// `t = 1`, `u = 1/2`.
    pub fn standard_strip() -> Self {
        SiegelSetSpec::strip(Rat::one(), rat(1, 2)).expect("valid")
    }
}

/// Membership of `g` through its Iwasawa coordinates.
pub fn siegel_contains(spec: &SiegelSetSpec, g: &DMatrix<f64>) -> Result<bool, ReductionError> {
    if g.nrows() != spec.rank {
        return Err(ReductionError::Shape(format!("expected {0}x{0}", spec.rank)));
    }
    let iw = iwasawa(g)?;
    let u = rat_to_f64(&spec.u_bound);
    let t = rat_to_f64(&spec.t);
    let m = spec.rank;
    let unipotent_ok = (0..m).all(|i| (i + 1..m).all(|j| iw.n[(i, j)].abs() <= u));
    let roots_ok = iw.a.windows(2).all(|w| w[0] / w[1] > t);
    Ok(unipotent_ok && roots_ok)
}

/// Exact strip membership `|Re z| <= u`, `Im z > t`.
pub fn siegel_contains_point(spec: &SiegelSetSpec, z: &CRat) -> bool {
    z.re.abs() <= spec.u_bound && z.im > spec.t
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntersectorReport {
    pub bound: i64,
    /// All `γ` with entries bounded by `bound` and `γ S_1 ∩ S_2 ≠ ∅`, sorted.
    pub elements: Vec<Sl2>,
    /// Count with the bound doubled.
    pub doubled_count: usize,
    /// The two searches found the same set.
    pub stable: bool,
    /// Candidates the interval search could neither confirm nor exclude.
    pub undecided: Vec<Sl2>,
}

/// `{γ ∈ SL_2(Z) : γ S_1 ∩ S_2 ≠ ∅}` among matrices with entries in
/// `[-bound, bound]`, decided exactly, with a stability check at `2 * bound`.
pub fn siegel_intersectors(
    s1: &SiegelSetSpec,
    s2: &SiegelSetSpec,
    bound: i64,
) -> Result<IntersectorReport, ReductionError> {
    if s1.rank != 2 || s2.rank != 2 {
        return Err(ReductionError::BadSpec("intersectors are implemented for strips only".into()));
    }
    let (elements, mut undecided) = intersectors_at(s1, s2, bound);
    let (doubled, undecided2) = intersectors_at(s1, s2, 2 * bound);
    undecided.extend(undecided2);
    undecided.sort();
    undecided.dedup();
    let stable = doubled == elements;
    Ok(IntersectorReport { bound, doubled_count: doubled.len(), elements, stable, undecided })
}

fn intersectors_at(s1: &SiegelSetSpec, s2: &SiegelSetSpec, bound: i64) -> (Vec<Sl2>, Vec<Sl2>) {
    let results: Vec<(Sl2, Decision)> = (-bound..=bound)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut out = Vec::new();
            for d in -bound..=bound {
                for a in -bound..=bound {
                    let Some(b) = solve_b(a, c, d) else { continue };
                    if b.abs() > bound {
                        continue;
                    }
                    let g = Sl2::new(a, b, c, d);
                    out.push((g.clone(), decide(s1, s2, a, b, c, d)));
                }
            }
            out
        })
        .collect();
    let mut yes: Vec<Sl2> = results.iter().filter(|r| r.1 == Decision::Meets).map(|r| r.0.clone()).collect();
    yes.extend(translations(s1, s2, bound));
    let mut unknown: Vec<Sl2> = results.iter().filter(|r| r.1 == Decision::Undecided).map(|r| r.0.clone()).collect();
    yes.sort();
    unknown.sort();
    (yes, unknown)
}

/// `b` with `a d - b c = 1`, if integral.
fn solve_b(a: i64, c: i64, d: i64) -> Option<i64> {
    if c == 0 {
        // a d = 1 and b is free; enumerate it outside
        return None;
    }
    let num = a * d - 1;
    (num % c == 0).then_some(num / c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Decision {
    Meets,
    Misses,
    Undecided,
}

fn decide(s1: &SiegelSetSpec, s2: &SiegelSetSpec, a: i64, b: i64, c: i64, d: i64) -> Decision {
    debug_assert!(c != 0);
    // Im γz = y / |cz + d|^2 <= 1 / (c^2 y), so y < 1 / (c^2 t_2) is necessary
    let y_max = Rat::one() / (rat(c * c, 1) * &s2.t);
    if s1.t >= y_max {
        return Decision::Misses;
    }
    let problem = Feasibility { a: rat(a, 1), b: rat(b, 1), c: rat(c, 1), d: rat(d, 1), t2: s2.t.clone(), u2: s2.u_bound.clone() };
    let root = BoxXY {
        x: Interval::new(-s1.u_bound.clone(), s1.u_bound.clone()),
        y: Interval::new(s1.t.clone(), y_max),
    };
    let mut stack = vec![(root, 0u32)];
    let mut budget = 20_000;
    let mut undecided = false;
    while let Some((bx, depth)) = stack.pop() {
        budget -= 1;
        if budget == 0 {
            return Decision::Undecided;
        }
        if problem.excluded(&bx) {
            continue;
        }
        if problem.witness(&bx.x.mid(), &bx.y.mid()) {
            return Decision::Meets;
        }
        if depth >= 24 {
            undecided = true;
            continue;
        }
        let (l, r) = bx.split();
        stack.push((l, depth + 1));
        stack.push((r, depth + 1));
    }
    if undecided {
        Decision::Undecided
    } else {
        Decision::Misses
    }
}

#[derive(Clone, Debug)]
struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    fn new(lo: Rat, hi: Rat) -> Self {
        Interval { lo, hi }
    }

    fn point(x: Rat) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / rat(2, 1)
    }

    fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    fn sub(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    fn mul(&self, o: &Interval) -> Interval {
        let ps = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = ps.iter().min().expect("four").clone();
        let hi = ps.iter().max().expect("four").clone();
        Interval::new(lo, hi)
    }

    fn square(&self) -> Interval {
        let (a, b) = (&self.lo * &self.lo, &self.hi * &self.hi);
        let hi = a.clone().max(b.clone());
        let lo = if self.lo.is_negative() && self.hi.is_positive() { Rat::zero() } else { a.min(b) };
        Interval::new(lo, hi)
    }

    fn scale(&self, k: &Rat) -> Interval {
        Interval::point(k.clone()).mul(self)
    }
}

#[derive(Clone, Debug)]
struct BoxXY {
    x: Interval,
    y: Interval,
}

impl BoxXY {
    fn split(&self) -> (BoxXY, BoxXY) {
        if self.x.width() >= self.y.width() {
            let m = self.x.mid();
            (
                BoxXY { x: Interval::new(self.x.lo.clone(), m.clone()), y: self.y.clone() },
                BoxXY { x: Interval::new(m, self.x.hi.clone()), y: self.y.clone() },
            )
        } else {
            let m = self.y.mid();
            (
                BoxXY { x: self.x.clone(), y: Interval::new(self.y.lo.clone(), m.clone()) },
                BoxXY { x: self.x.clone(), y: Interval::new(m, self.y.hi.clone()) },
            )
        }
    }
}

/// With `|cz+d|^2 = (cx+d)^2 + c^2 y^2` and
/// `Re((az+b)(c z̄+d)) = (ax+b)(cx+d) + a c y^2`:
/// `Im γz > t_2  <=>  y - t_2 |cz+d|^2 > 0` and
/// `|Re γz| <= u_2  <=>  u_2 |cz+d|^2 ∓ Re(...) >= 0`.
struct Feasibility {
    a: Rat,
    b: Rat,
    c: Rat,
    d: Rat,
    t2: Rat,
    u2: Rat,
}

impl Feasibility {
    fn parts(&self, x: &Interval, y: &Interval) -> (Interval, Interval) {
        let cxd = x.scale(&self.c).add(&Interval::point(self.d.clone()));
        let axb = x.scale(&self.a).add(&Interval::point(self.b.clone()));
        let y2 = y.square();
        let denom = cxd.square().add(&y2.scale(&(&self.c * &self.c)));
        let numer = axb.mul(&cxd).add(&y2.scale(&(&self.a * &self.c)));
        (denom, numer)
    }

    fn excluded(&self, bx: &BoxXY) -> bool {
        let (denom, numer) = self.parts(&bx.x, &bx.y);
        let p1 = bx.y.sub(&denom.scale(&self.t2));
        let p2 = denom.scale(&self.u2).sub(&numer);
        let p3 = denom.scale(&self.u2).add(&numer);
        !p1.hi.is_positive() || p2.hi.is_negative() || p3.hi.is_negative()
    }

    fn witness(&self, x: &Rat, y: &Rat) -> bool {
        let (denom, numer) = self.parts(&Interval::point(x.clone()), &Interval::point(y.clone()));
        let (q, n) = (denom.lo, numer.lo);
        let p1 = y - &self.t2 * &q;
        let bound = &self.u2 * &q;
        p1.is_positive() && n.abs() <= bound
    }
}

/// Translations `±[[1, b], [0, 1]]` with `|b| <= u_1 + u_2` (the `c = 0` family).
fn translations(s1: &SiegelSetSpec, s2: &SiegelSetSpec, bound: i64) -> Vec<Sl2> {
    let reach = &s1.u_bound + &s2.u_bound;
    let mut out = Vec::new();
    for b in -bound..=bound {
        if rat(b.abs(), 1) <= reach {
            out.push(Sl2::new(1, b, 0, 1));
            out.push(Sl2::new(-1, -b, 0, -1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_membership() {
        let s = SiegelSetSpec::standard_strip();
        assert!(siegel_contains_point(&s, &CRat::from_ints(0, 3)));
        assert!(!siegel_contains_point(&s, &CRat::new(rat(7, 10), rat(2, 1))));
    }

    #[test]
    fn sl3_roots() {
        let spec = SiegelSetSpec::new(3, rat(2, 1), rat(1, 2)).unwrap();
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&[4.0, 1.0, 0.25]));
        assert!(siegel_contains(&spec, &a).unwrap());
        let spec5 = SiegelSetSpec::new(3, rat(5, 1), rat(1, 2)).unwrap();
        assert!(!siegel_contains(&spec5, &a).unwrap());
    }

    #[test]
    fn lower_unipotent_misses_standard_strip() {
        let s = SiegelSetSpec::standard_strip();
        assert_eq!(decide(&s, &s, 1, 0, 1, 1), Decision::Misses);
    }
}
