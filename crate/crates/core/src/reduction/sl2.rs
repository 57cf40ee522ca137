use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::{rat, CRat, Rat, C64};

use super::ReductionError;

/// An integer 2x2 matrix `[[a, b], [c, d]]` acting by Möbius transformations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Sl2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Sl2 { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        Sl2::new(1, 0, 0, 1)
    }

    /// `z ↦ -1/z`
    pub fn s() -> Self {
        Sl2::new(0, -1, 1, 0)
    }

    /// `z ↦ z + m`
    pub fn t(m: i64) -> Self {
        Sl2::new(1, m, 0, 1)
    }

    fn t_big(m: &BigInt) -> Self {
        Sl2 { a: BigInt::one(), b: m.clone(), c: BigInt::zero(), d: BigInt::one() }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn neg(&self) -> Self {
        Sl2 { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }

    pub fn mul(&self, o: &Sl2) -> Sl2 {
        Sl2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn apply(&self, z: &CRat) -> CRat {
        let r = |x: &BigInt| CRat::real(Rat::from_integer(x.clone()));
        let num = &(&r(&self.a) * z) + &r(&self.b);
        let den = &(&r(&self.c) * z) + &r(&self.d);
        &num / &den
    }

    pub fn apply_f64(&self, z: C64) -> C64 {
        let f = |x: &BigInt| x.to_string().parse::<f64>().expect("integer");
        (z * f(&self.a) + f(&self.b)) / (z * f(&self.c) + f(&self.d))
    }

    /// Entries as `i64`, when they fit.
    pub fn entries(&self) -> Option<[i64; 4]> {
        use num_traits::ToPrimitive;
        Some([self.a.to_i64()?, self.b.to_i64()?, self.c.to_i64()?, self.d.to_i64()?])
    }
}

impl fmt::Display for Sl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// `x ∈ (-1/2, 1/2]`, `|z| >= 1`, and `x >= 0` on the unit circle.
pub fn in_fundamental_set(z: &CRat) -> bool {
    let half = rat(1, 2);
    let x = &z.re;
    let n = z.norm_sqr();
    x > &-half.clone() && x <= &half && n >= Rat::one() && !(n == Rat::one() && x.is_negative())
}

fn ceil_rat(q: &Rat) -> BigInt {
    q.ceil().to_integer()
}

/// Exact reduction into the standard fundamental set. Returns `(z0, γ)` with
/// `γ z = z0`; boundary ties go to `x = +1/2` and to `x >= 0` on the arc.
pub fn reduce_sl2(z: &CRat) -> Result<(CRat, Sl2), ReductionError> {
    if !z.im.is_positive() {
        return Err(ReductionError::NotInUpperHalfPlane(z.to_string()));
    }
    let mut w = z.clone();
    let mut g = Sl2::identity();
    let half = rat(1, 2);
    loop {
        let shift = ceil_rat(&(&w.re - &half));
        if !shift.is_zero() {
            w = CRat::new(&w.re - Rat::from_integer(shift.clone()), w.im.clone());
            g = Sl2::t_big(&-shift).mul(&g);
        }
        let n = w.norm_sqr();
        if n < Rat::one() || (n == Rat::one() && w.re.is_negative()) {
            w = Sl2::s().apply(&w);
            g = Sl2::s().mul(&g);
            continue;
        }
        return Ok((w, g));
    }
}

/// Floating version of [`reduce_sl2`]; ties are decided by exact float comparisons.
pub fn reduce_sl2_f64(z: C64) -> Result<(C64, Sl2), ReductionError> {
    if !(z.im > 0.0) {
        return Err(ReductionError::NotInUpperHalfPlane(z.to_string()));
    }
    let mut w = z;
    let mut g = Sl2::identity();
    for _ in 0..10_000 {
        let shift = (w.re - 0.5).ceil();
        if shift != 0.0 {
            w.re -= shift;
            g = Sl2::t(-(shift as i64)).mul(&g);
        }
        let n = w.norm_sqr();
        if n < 1.0 || (n == 1.0 && w.re < 0.0) {
            w = -1.0 / w;
            g = Sl2::s().mul(&g);
            continue;
        }
        return Ok((w, g));
    }
    Err(ReductionError::NotInUpperHalfPlane(format!("{z} (no convergence)")))
}

/// `[1 : exp(2 pi i x) exp(-2 pi / t)]`; `t = 0` is the cusp `[1 : 0]`.
pub fn bs_to_bb(x: f64, t: f64) -> Result<[C64; 2], ReductionError> {
    if t < 0.0 || t.is_nan() {
        return Err(ReductionError::NegativeT(t));
    }
    let one = C64::new(1.0, 0.0);
    if t == 0.0 {
        return Ok([one, C64::new(0.0, 0.0)]);
    }
    let phase = C64::new(0.0, 2.0 * std::f64::consts::PI * x.rem_euclid(1.0)).exp();
    Ok([one, phase * (-2.0 * std::f64::consts::PI / t).exp()])
}
