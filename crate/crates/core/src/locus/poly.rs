//! Polynomials over the Gaussian rationals: a sparse multivariate type for the
//! locus equations and dense helpers for the one- and two-variable eliminations.

use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::{CRat, Scalar, C64};

fn czero() -> CRat {
    CRat::from_ints(0, 0)
}

fn cone() -> CRat {
    CRat::from_ints(1, 0)
}

/// A polynomial in `vars` variables, stored as exponent vector ↦ nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, CRat>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: CRat) -> Self {
        let mut p = Poly::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    /// The coordinate function `z_i`.
    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        let mut p = Poly::zero(vars);
        p.add_term(e, cone());
        p
    }

    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, CRat)>) -> Self {
        let mut p = Poly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: CRat) {
        if c.is_zero_exact() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero_exact() {
            self.terms.insert(e, sum);
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CRat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&CRat::from_ints(-1, 0)))
    }

    pub fn scale(&self, c: &CRat) -> Poly {
        let mut p = Poly::zero(self.vars);
        for (e, a) in &self.terms {
            p.add_term(e.clone(), a * c);
        }
        p
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::zero(self.vars);
        for (e1, a) in &self.terms {
            for (e2, b) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                p.add_term(e, a * b);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::constant(self.vars, cone()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, z: &[CRat]) -> CRat {
        assert_eq!(z.len(), self.vars, "point arity");
        self.terms.iter().fold(czero(), |acc, (e, c)| {
            let m = e.iter().zip(z).fold(c.clone(), |m, (&k, x)| &m * &x.pow(k));
            &acc + &m
        })
    }

    pub fn eval_c64(&self, z: &[C64]) -> C64 {
        assert_eq!(z.len(), self.vars, "point arity");
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(z).fold(c.to_c64(), |m, (&k, x)| m * x.powu(k)))
            .sum()
    }

    /// Sum of the absolute values of the monomials at `z`, for relative residuals.
    pub fn eval_abs_c64(&self, z: &[C64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(z).fold(c.to_c64().norm(), |m, (&k, x)| m * x.norm().powi(k as i32)))
            .sum()
    }

    /// Substitute `z_i -> z_i + c`.
    pub fn shift(&self, i: usize, c: &CRat) -> Poly {
        let shifted = Poly::var(self.vars, i).add(&Poly::constant(self.vars, c.clone()));
        let mut out = Poly::zero(self.vars);
        for (e, a) in &self.terms {
            let mut rest = e.clone();
            rest[i] = 0;
            let mono = Poly::from_terms(self.vars, [(rest, a.clone())]);
            out = out.add(&mono.mul(&shifted.pow(e[i])));
        }
        out
    }

    /// Dense coefficient list in `z_0` (lowest degree first); requires one variable.
    pub fn to_univariate(&self) -> Vec<CRat> {
        assert_eq!(self.vars, 1, "univariate conversion");
        let mut c = vec![czero(); self.degree_in(0) as usize + 1];
        for (e, a) in &self.terms {
            c[e[0] as usize] = a.clone();
        }
        trim(&mut c);
        c
    }

    pub fn from_univariate(c: &[CRat]) -> Poly {
        Poly::from_terms(1, c.iter().enumerate().map(|(k, a)| (vec![k as u32], a.clone())))
    }

    /// Dense form in the main variable `main` with dense coefficients in the
    /// other variable; requires two variables.
    pub(crate) fn to_bivariate(&self, main: usize) -> Vec<Vec<CRat>> {
        assert_eq!(self.vars, 2, "bivariate conversion");
        let other = 1 - main;
        let dm = self.degree_in(main) as usize;
        let doth = self.degree_in(other) as usize;
        let mut out = vec![vec![czero(); doth + 1]; dm + 1];
        for (e, a) in &self.terms {
            out[e[main] as usize][e[other] as usize] = a.clone();
        }
        for c in out.iter_mut() {
            trim(c);
        }
        btrim(&mut out);
        out
    }

    pub(crate) fn from_bivariate(b: &[Vec<CRat>], main: usize) -> Poly {
        let mut p = Poly::zero(2);
        for (i, c) in b.iter().enumerate() {
            for (j, a) in c.iter().enumerate() {
                let mut e = vec![0u32; 2];
                e[main] = i as u32;
                e[1 - main] = j as u32;
                p.add_term(e, a.clone());
            }
        }
        p
    }

    /// Coefficient lists `[(exponents, "a/b+c/di")]`, for reports.
    pub fn coefficient_list(&self) -> Vec<(Vec<u32>, String)> {
        self.terms.iter().map(|(e, c)| (e.clone(), c.to_string())).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("z{}", i + 1) } else { format!("z{}^{k}", i + 1) })
                .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else if *c == cone() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// dense univariate helpers, lowest degree first, no trailing zeros

pub(crate) fn trim(c: &mut Vec<CRat>) {
    while c.last().is_some_and(|x| x.is_zero_exact()) {
        c.pop();
    }
}

/// Degree, `None` for the zero polynomial.
pub(crate) fn udeg(c: &[CRat]) -> Option<usize> {
    c.iter().rposition(|x| !x.is_zero_exact())
}

pub(crate) fn usub(a: &[CRat], b: &[CRat]) -> Vec<CRat> {
    let n = a.len().max(b.len());
    let mut out: Vec<CRat> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(czero);
            let y = b.get(i).cloned().unwrap_or_else(czero);
            &x - &y
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn umul(a: &[CRat], b: &[CRat]) -> Vec<CRat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![czero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero_exact() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(&mut out);
    out
}

/// Division with remainder over Q(i). Panics on a zero divisor.
pub(crate) fn udivrem(a: &[CRat], b: &[CRat]) -> (Vec<CRat>, Vec<CRat>) {
    let db = udeg(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r = a.to_vec();
    trim(&mut r);
    let mut q = vec![czero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = udeg(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] / &lead;
        let shift = dr - db;
        for (k, bk) in b.iter().enumerate().take(db + 1) {
            r[shift + k] = &r[shift + k] - &(&f * bk);
        }
        q[shift] = f;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn umonic(a: &[CRat]) -> Vec<CRat> {
    match udeg(a) {
        None => Vec::new(),
        Some(d) => {
            let l = a[d].clone();
            a[..=d].iter().map(|x| x / &l).collect()
        }
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub(crate) fn ugcd(a: &[CRat], b: &[CRat]) -> Vec<CRat> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while udeg(&y).is_some() {
        let (_, r) = udivrem(&x, &y);
        x = y;
        y = r;
    }
    umonic(&x)
}

pub(crate) fn uderiv(a: &[CRat]) -> Vec<CRat> {
    let mut out: Vec<CRat> = a.iter().enumerate().skip(1).map(|(k, x)| x * &CRat::from_ints(k as i64, 0)).collect();
    trim(&mut out);
    out
}

/// `a / gcd(a, a')`, monic.
pub(crate) fn usquarefree(a: &[CRat]) -> Vec<CRat> {
    let g = ugcd(a, &uderiv(a));
    if udeg(&g).unwrap_or(0) == 0 {
        return umonic(a);
    }
    umonic(&udivrem(a, &g).0)
}

pub(crate) fn ueval(a: &[CRat], z: &CRat) -> CRat {
    a.iter().rev().fold(czero(), |acc, c| &(&acc * z) + c)
}

// dense bivariate helpers: coefficients (in the main variable) are dense
// univariate polynomials in the other variable

pub(crate) fn btrim(b: &mut Vec<Vec<CRat>>) {
    while b.last().is_some_and(|c| udeg(c).is_none()) {
        b.pop();
    }
}

fn bcontent(b: &[Vec<CRat>]) -> Vec<CRat> {
    b.iter().fold(Vec::new(), |acc, c| ugcd(&acc, c))
}

fn bdiv_coeff(b: &[Vec<CRat>], d: &[CRat]) -> Vec<Vec<CRat>> {
    b.iter()
        .map(|c| {
            let (q, r) = udivrem(c, d);
            debug_assert!(udeg(&r).is_none(), "inexact content division");
            q
        })
        .collect()
}

fn bprimitive(b: &[Vec<CRat>]) -> Vec<Vec<CRat>> {
    let c = bcontent(b);
    if udeg(&c).is_none() {
        return b.to_vec();
    }
    let mut out = bdiv_coeff(b, &c);
    btrim(&mut out);
    out
}

/// Pseudo-remainder of `a` by `b` in the main variable.
fn bprem(a: &[Vec<CRat>], b: &[Vec<CRat>]) -> Vec<Vec<CRat>> {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut r = a.to_vec();
    btrim(&mut r);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let f = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Vec<CRat>> = r.iter().map(|c| umul(c, &lead)).collect();
        for (k, bk) in b.iter().enumerate() {
            next[shift + k] = usub(&next[shift + k], &umul(&f, bk));
        }
        btrim(&mut next);
        r = next;
    }
    r
}

/// Gcd in Q(i)[w][z] by the primitive remainder sequence, made monic in the
/// leading coefficient's leading term.
pub(crate) fn bgcd(a: &[Vec<CRat>], b: &[Vec<CRat>]) -> Vec<Vec<CRat>> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    btrim(&mut x);
    btrim(&mut y);
    if x.is_empty() {
        return normalize(&y);
    }
    if y.is_empty() {
        return normalize(&x);
    }
    let content = ugcd(&bcontent(&x), &bcontent(&y));
    x = bprimitive(&x);
    y = bprimitive(&y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = bprem(&x, &y);
        x = y;
        y = bprimitive(&r);
    }
    let g: Vec<Vec<CRat>> = x.iter().map(|c| umul(c, &content)).collect();
    normalize(&g)
}

fn normalize(b: &[Vec<CRat>]) -> Vec<Vec<CRat>> {
    let mut b = b.to_vec();
    btrim(&mut b);
    let Some(top) = b.last() else { return b };
    let l = top[udeg(top).expect("trimmed")].clone();
    b.iter().map(|c| c.iter().map(|x| x / &l).collect()).collect()
}

/// Exact quotient `a / g` for a divisor `g` of `a` (main-variable long
/// division with exact coefficient division).
pub(crate) fn bdiv_exact(a: &[Vec<CRat>], g: &[Vec<CRat>]) -> Option<Vec<Vec<CRat>>> {
    let mut r = a.to_vec();
    btrim(&mut r);
    let dg = g.len().checked_sub(1)?;
    let lead = &g[dg];
    let mut q = vec![Vec::new(); r.len().saturating_sub(dg).max(1)];
    while r.len() > dg && !r.is_empty() {
        let dr = r.len() - 1;
        let (f, rem) = udivrem(&r[dr], lead);
        if udeg(&rem).is_some() {
            return None;
        }
        let shift = dr - dg;
        for (k, gk) in g.iter().enumerate() {
            r[shift + k] = usub(&r[shift + k], &umul(&f, gk));
        }
        q[shift] = f;
        btrim(&mut r);
    }
    if !r.is_empty() {
        return None;
    }
    btrim(&mut q);
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn c(n: i64) -> CRat {
        CRat::from_ints(n, 0)
    }

    #[test]
    fn univariate_gcd_and_squarefree() {
        // (z - 1)^2 (z + i) and (z - 1)(z - 2)
        let a = umul(&umul(&[c(-1), c(1)], &[c(-1), c(1)]), &[CRat::i(), c(1)]);
        let b = umul(&[c(-1), c(1)], &[c(-2), c(1)]);
        assert_eq!(ugcd(&a, &b), vec![c(-1), c(1)]);
        assert_eq!(usquarefree(&a), umonic(&umul(&[c(-1), c(1)], &[CRat::i(), c(1)])));
    }

    #[test]
    fn shift_matches_substitution() {
        let z = Poly::var(1, 0);
        let p = z.mul(&z).add(&Poly::constant(1, c(1)));
        let s = p.shift(0, &c(-1));
        // (z-1)^2 + 1 = z^2 - 2z + 2
        assert_eq!(s.to_univariate(), vec![c(2), c(-2), c(1)]);
        assert_eq!(p.eval(&[CRat::i()]), c(0));
        assert_eq!(s.eval(&[CRat::new(rat(1, 1), rat(1, 1))]), c(0));
    }

    #[test]
    fn bivariate_gcd_finds_common_line() {
        let z1 = Poly::var(2, 0);
        let z2 = Poly::var(2, 1);
        let line = z1.sub(&z2);
        let a = line.mul(&z1.add(&Poly::constant(2, c(3))));
        let b = line.mul(&z2.mul(&z2).add(&Poly::constant(2, c(1))));
        let g = Poly::from_bivariate(&bgcd(&a.to_bivariate(0), &b.to_bivariate(0)), 0);
        assert_eq!(g, line);
        let q = bdiv_exact(&a.to_bivariate(0), &line.to_bivariate(0)).unwrap();
        assert_eq!(Poly::from_bivariate(&q, 0), z1.add(&Poly::constant(2, c(3))));
    }

    #[test]
    fn display_is_readable() {
        let z = Poly::var(1, 0);
        let p = z.mul(&z).sub(&Poly::constant(1, c(1)));
        assert_eq!(p.to_string(), "z1^2 + (-1)");
    }
}
