//! Scalar fields used by the linear-algebra layer.
//!
//! Two backends live side by side: exact ones (`Rat`, and `CRat` for the
//! Gaussian rationals Q(i)) and the approximate `C64`. Every generic routine is
//! written against [`Scalar`]; which backend an operation runs on is decided by
//! the type parameter, so mixing the two is a type error rather than a runtime
//! surprise.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;
pub type C64 = Complex64;

/// Relative threshold below which a floating entry is treated as zero during
/// elimination. Rows are rescaled to unit max-norm before the test.
pub const FLOAT_TOL: f64 = 1e-10;

pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;
    /// `None` when the value does not live in this field (e.g. `i` in `Rat`).
    fn from_crat(c: &CRat) -> Option<Self>;
    fn conj(&self) -> Self;
    fn magnitude(&self) -> f64;
    fn to_c64(&self) -> C64;

    /// Exact zero test for exact fields; for floats, `magnitude <= FLOAT_TOL * scale`.
    fn negligible(&self, scale: f64) -> bool;

    /// The imaginary unit, when the field contains it.
    fn imag_unit() -> Option<Self>;

    /// `exp(2 pi i z)`; only available on the float backend.
    fn exp_2pi_i(&self) -> Option<Self> {
        None
    }

    fn from_f64(x: f64) -> Self {
        Self::from_rat(&Rat::from_float(x).expect("finite float"))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rat(&Rat::from_integer(BigInt::from(n)))
    }

    fn is_zero_exact(&self) -> bool {
        *self == Self::zero()
    }

    /// `i^m` for any integer `m`. Panics only if the field lacks `i` and `m` is odd.
    fn i_pow(m: i64) -> Self {
        match m.rem_euclid(4) {
            0 => Self::one(),
            2 => -Self::one(),
            1 => Self::imag_unit().expect("field does not contain i"),
            _ => -Self::imag_unit().expect("field does not contain i"),
        }
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn from_crat(c: &CRat) -> Option<Self> {
        c.im.is_zero().then(|| c.re.clone())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn magnitude(&self) -> f64 {
        rat_to_f64(self).abs()
    }
    fn to_c64(&self) -> C64 {
        C64::new(rat_to_f64(self), 0.0)
    }
    fn negligible(&self, _scale: f64) -> bool {
        Zero::is_zero(self)
    }
    fn imag_unit() -> Option<Self> {
        None
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn from_rat(r: &Rat) -> Self {
        C64::new(rat_to_f64(r), 0.0)
    }
    fn from_crat(c: &CRat) -> Option<Self> {
        Some(c.to_c64())
    }
    fn from_f64(x: f64) -> Self {
        C64::new(x, 0.0)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn negligible(&self, scale: f64) -> bool {
        self.norm() <= FLOAT_TOL * scale
    }
    fn imag_unit() -> Option<Self> {
        Some(C64::new(0.0, 1.0))
    }
    fn exp_2pi_i(&self) -> Option<Self> {
        Some((C64::new(0.0, 2.0 * std::f64::consts::PI) * self).exp())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator overflow f64 individually; divide as big floats
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The primitive integer vector on the line through `v` (zero stays zero).
pub fn primitive_integral(v: &[Rat]) -> Vec<Rat> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rat::from_integer(x / &g)).collect()
}

/// Best rational approximation with denominator at most `max_den` (continued fractions).
pub fn rat_approx(x: f64, max_den: i64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = v - a;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(Rat::new(BigInt::from(h1), BigInt::from(k1)))
}

/// A Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        CRat { re, im }
    }

    pub fn real(re: Rat) -> Self {
        CRat { re, im: Zero::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        CRat::new(rat_int(re), rat_int(im))
    }

    pub fn i() -> Self {
        CRat::from_ints(0, 1)
    }

    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn recip(&self) -> CRat {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero in Q(i)");
        CRat::new(&self.re / &n, -&self.im / &n)
    }

    pub fn to_c64(&self) -> C64 {
        C64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    pub fn pow(&self, e: u32) -> CRat {
        let mut acc = CRat::from_ints(1, 0);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl<'a> Add<&'a CRat> for &'a CRat {
    type Output = CRat;
    fn add(self, o: &CRat) -> CRat {
        CRat::new(&self.re + &o.re, &self.im + &o.im)
    }
}
impl<'a> Sub<&'a CRat> for &'a CRat {
    type Output = CRat;
    fn sub(self, o: &CRat) -> CRat {
        CRat::new(&self.re - &o.re, &self.im - &o.im)
    }
}
impl<'a> Mul<&'a CRat> for &'a CRat {
    type Output = CRat;
    fn mul(self, o: &CRat) -> CRat {
        if self.im.is_zero() && o.im.is_zero() {
            return CRat::real(&self.re * &o.re);
        }
        CRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}
impl<'a> Div<&'a CRat> for &'a CRat {
    type Output = CRat;
    fn div(self, o: &CRat) -> CRat {
        if o.im.is_zero() {
            assert!(!o.re.is_zero(), "division by zero in Q(i)");
            return CRat::new(&self.re / &o.re, &self.im / &o.re);
        }
        self * &o.recip()
    }
}
impl Add for CRat {
    type Output = CRat;
    fn add(self, o: CRat) -> CRat {
        &self + &o
    }
}
impl Sub for CRat {
    type Output = CRat;
    fn sub(self, o: CRat) -> CRat {
        &self - &o
    }
}
impl Mul for CRat {
    type Output = CRat;
    fn mul(self, o: CRat) -> CRat {
        &self * &o
    }
}
impl Div for CRat {
    type Output = CRat;
    fn div(self, o: CRat) -> CRat {
        &self / &o
    }
}
impl Neg for CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        CRat::new(-self.re, -self.im)
    }
}

impl Scalar for CRat {
    const EXACT: bool = true;

    fn zero() -> Self {
        CRat::default()
    }
    fn one() -> Self {
        CRat::from_ints(1, 0)
    }
    fn from_rat(r: &Rat) -> Self {
        CRat::real(r.clone())
    }
    fn from_crat(c: &CRat) -> Option<Self> {
        Some(c.clone())
    }
    fn conj(&self) -> Self {
        CRat::new(self.re.clone(), -self.im.clone())
    }
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }
    fn to_c64(&self) -> C64 {
        CRat::to_c64(self)
    }
    fn negligible(&self, _scale: f64) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn imag_unit() -> Option<Self> {
        Some(CRat::i())
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &Rat| -> String {
            if im.abs() == One::one() {
                "i".to_string()
            } else {
                format!("{}i", fmt_rat(&im.abs()))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => {
                let sign = if self.im.is_negative() { "-" } else { "" };
                write!(f, "{}{}", sign, im_part(&self.im))
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}", fmt_rat(&self.re), sign, im_part(&self.im))
            }
        }
    }
}

impl fmt::Debug for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {0:?} as a complex rational")]
pub struct ParseCRatError(pub String);

fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(Rat::from_integer),
    }
}

impl FromStr for CRat {
    type Err = ParseCRatError;

    /// Accepts `a`, `a/b`, `ci`, `c/di`, `a/b+c/di`, `a-i`, `i`, `-i`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = || ParseCRatError(input.to_string());
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        if !s.ends_with('i') {
            return parse_rat(&s).map(CRat::real).ok_or_else(err);
        }
        let body = &s[..s.len() - 1];
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re_str, im_str) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_str.is_empty() {
            Zero::zero()
        } else {
            parse_rat(re_str).ok_or_else(err)?
        };
        let im = match im_str {
            "" | "+" => One::one(),
            "-" => -<Rat as Scalar>::one(),
            other => parse_rat(other.strip_prefix('+').unwrap_or(other)).ok_or_else(err)?,
        };
        Ok(CRat::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let cases = [
            ("1", CRat::from_ints(1, 0)),
            ("-1/2", CRat::real(rat(-1, 2))),
            ("i", CRat::i()),
            ("-i", CRat::from_ints(0, -1)),
            ("2i", CRat::from_ints(0, 2)),
            ("1/2+3/4i", CRat::new(rat(1, 2), rat(3, 4))),
            ("1-i", CRat::from_ints(1, -1)),
            ("-3/2i", CRat::new(rat(0, 1), rat(-3, 2))),
            (" 1/2 + 1/2i ", CRat::new(rat(1, 2), rat(1, 2))),
        ];
        for (s, want) in cases {
            assert_eq!(s.parse::<CRat>().unwrap(), want, "{s}");
        }
        assert!("1/0".parse::<CRat>().is_err());
        assert!("abc".parse::<CRat>().is_err());
    }

    #[test]
    fn display_roundtrips() {
        for s in ["0", "2i", "i", "-i", "1/2+1/2i", "1/2-i", "-3", "7/3-5/2i"] {
            let c: CRat = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
    }

    #[test]
    fn gaussian_field_ops() {
        let a: CRat = "1+2i".parse().unwrap();
        let b: CRat = "3-i".parse().unwrap();
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a * &a.recip(), CRat::one());
        assert_eq!(CRat::i_pow(3), CRat::from_ints(0, -1));
        assert_eq!(CRat::i_pow(-1), CRat::from_ints(0, -1));
    }

    #[test]
    fn continued_fraction_approx() {
        assert_eq!(rat_approx(0.75, 100).unwrap(), rat(3, 4));
        assert_eq!(rat_approx(-1.0 / 3.0, 100).unwrap(), rat(-1, 3));
    }
}
