//! Truncated Laurent series with tracked absolute precision.
//!
//! A `Series` knows every coefficient up to and including `s^prec`;
//! nothing beyond is claimed. Products and inverses derive their precision
//! from the operands' valuations, so a coefficient read through
//! [`Series::coeff`] is either exact or reported as unknown.

use super::poly::Poly;
use super::ring::Ring;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Precision of an exact (finite) series.
pub const EXACT: i32 = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    fn of_exp(e: i32) -> Parity {
        if e.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn times(self, o: Parity) -> Parity {
        match (self, o) {
            (Parity::Mixed, _) | (_, Parity::Mixed) => Parity::Mixed,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        }
    }

    fn plus(self, o: Parity) -> Parity {
        if self == o {
            self
        } else {
            Parity::Mixed
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series<E> {
    /// exponent of `c[0]`; after normalization `c[0]` is nonzero
    pub val: i32,
    pub c: Vec<E>,
    pub prec: i32,
    pub parity: Parity,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("germ {0} needs a vanishing constant term")]
    NeedsZeroConstant(&'static str),
    #[error("leading coefficient is not a unit")]
    NonUnit,
    #[error("series is zero to its precision")]
    Zero,
    #[error("coefficient of s^{0} requested beyond precision {1}")]
    Truncated(i32, i32),
}

/// Named analytic germs for [`Series::map_germ`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Germ {
    /// ln(1+x)
    Log1p,
    /// artanh(x)
    Artanh,
    /// 1/x, for a series with unit constant term
    Inverse,
    /// sqrt(1+x)
    Sqrt1p,
}

fn cap(a: i32) -> i32 {
    a.min(EXACT)
}

fn padd(a: i32, b: i32) -> i32 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        a + b
    }
}

impl<E: Clone + PartialEq> Series<E> {
    pub fn zero(prec: i32) -> Self {
        Series {
            val: cap(prec.saturating_add(1)),
            c: Vec::new(),
            prec: cap(prec),
            parity: Parity::Even,
        }
    }

    /// Build and normalize: strip leading zeros, drop anything past `prec`.
    pub fn new<R: Ring<Elem = E>>(r: &R, val: i32, mut c: Vec<E>, prec: i32) -> Self {
        let prec = cap(prec);
        let keep = (prec as i64 - val as i64 + 1).max(0) as usize;
        if c.len() > keep {
            c.truncate(keep);
        }
        while c.last().is_some_and(|x| r.is_zero(x)) {
            c.pop();
        }
        let lead = c.iter().position(|x| !r.is_zero(x));
        match lead {
            None => Self::zero(prec),
            Some(k) => {
                c.drain(..k);
                let val = val + k as i32;
                let parity = Self::detect_parity(r, val, &c);
                Series {
                    val,
                    c,
                    prec,
                    parity,
                }
            }
        }
    }

    fn detect_parity<R: Ring<Elem = E>>(r: &R, val: i32, c: &[E]) -> Parity {
        let mut p: Option<Parity> = None;
        for (i, x) in c.iter().enumerate() {
            if !r.is_zero(x) {
                let q = Parity::of_exp(val + i as i32);
                p = Some(match p {
                    None => q,
                    Some(p) => p.plus(q),
                });
            }
        }
        p.unwrap_or(Parity::Even)
    }

    pub fn monomial<R: Ring<Elem = E>>(r: &R, a: E, e: i32) -> Self {
        Self::new(r, e, vec![a], EXACT)
    }

    pub fn from_poly<R: Ring<Elem = E>>(r: &R, p: &Poly<E>) -> Self {
        Self::new(r, 0, p.c.clone(), EXACT)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` if the exponent lies beyond the known precision.
    pub fn coeff<R: Ring<Elem = E>>(&self, r: &R, e: i32) -> Option<E> {
        if e > self.prec {
            return None;
        }
        if e < self.val {
            return Some(r.zero());
        }
        Some(
            self.c
                .get((e - self.val) as usize)
                .cloned()
                .unwrap_or_else(|| r.zero()),
        )
    }

    pub fn try_coeff<R: Ring<Elem = E>>(&self, r: &R, e: i32) -> Result<E, SeriesError> {
        self.coeff(r, e).ok_or(SeriesError::Truncated(e, self.prec))
    }

    pub fn truncate<R: Ring<Elem = E>>(&self, r: &R, prec: i32) -> Self {
        Self::new(r, self.val, self.c.clone(), self.prec.min(prec))
    }

    pub fn add<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        if self.is_zero() {
            return o.truncate(r, prec);
        }
        if o.is_zero() {
            return self.truncate(r, prec);
        }
        let lo = self.val.min(o.val);
        let hi = (self.val + self.c.len() as i32 - 1)
            .max(o.val + o.c.len() as i32 - 1)
            .min(prec);
        if hi < lo {
            return Self::zero(prec);
        }
        let mut c = vec![r.zero(); (hi - lo + 1) as usize];
        for (i, x) in self.c.iter().enumerate() {
            let e = self.val + i as i32;
            if e <= hi {
                r.add_assign(&mut c[(e - lo) as usize], x);
            }
        }
        for (i, x) in o.c.iter().enumerate() {
            let e = o.val + i as i32;
            if e <= hi {
                r.add_assign(&mut c[(e - lo) as usize], x);
            }
        }
        Self::new(r, lo, c, prec)
    }

    pub fn neg<R: Ring<Elem = E>>(&self, r: &R) -> Self {
        Series {
            val: self.val,
            c: self.c.iter().map(|x| r.neg(x)).collect(),
            prec: self.prec,
            parity: self.parity,
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        self.add(r, &o.neg(r))
    }

    pub fn scale<R: Ring<Elem = E>>(&self, r: &R, a: &E) -> Self {
        Self::new(
            r,
            self.val,
            self.c.iter().map(|x| r.mul(x, a)).collect(),
            self.prec,
        )
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i32) -> Self {
        let mut s = self.clone();
        s.val += k;
        s.prec = padd(s.prec, k);
        if k % 2 != 0 && s.parity != Parity::Mixed {
            s.parity = s.parity.times(Parity::Odd);
        }
        s
    }

    pub fn mul<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        let prec = padd(self.prec, o.val).min(padd(o.prec, self.val));
        if self.is_zero() || o.is_zero() {
            return Self::zero(prec);
        }
        let val = self.val + o.val;
        let natural = val + (self.c.len() + o.c.len()) as i32 - 2;
        let hi = natural.min(prec);
        if hi < val {
            return Self::zero(prec);
        }
        let n = (hi - val + 1) as usize;
        let mut c = vec![r.zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            if i >= n || r.is_zero(x) {
                continue;
            }
            for (j, y) in o.c.iter().enumerate().take(n - i) {
                if r.is_zero(y) {
                    continue;
                }
                let t = r.mul(x, y);
                r.add_assign(&mut c[i + j], &t);
            }
        }
        let mut s = Self::new(r, val, c, prec);
        if !s.is_zero() {
            s.parity = self.parity.times(o.parity);
        }
        s
    }

    /// Multiplicative inverse; the leading coefficient must be a unit and
    /// the precision finite unless the series is a monomial.
    pub fn inv<R: Ring<Elem = E>>(&self, r: &R) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::Zero);
        }
        let v = self.val;
        let c0i = r.inv(&self.c[0]).ok_or(SeriesError::NonUnit)?;
        if self.c.len() == 1 && self.prec >= EXACT {
            return Ok(Series::new(r, -v, vec![c0i], EXACT));
        }
        assert!(
            self.prec < EXACT,
            "inverse of an exact non-monomial series needs a truncation"
        );
        let prec = self.prec - 2 * v;
        let n = (self.prec - v + 1) as usize;
        let mut b: Vec<E> = Vec::with_capacity(n);
        b.push(c0i.clone());
        for k in 1..n {
            let mut acc = r.zero();
            for j in 1..=k.min(self.c.len() - 1) {
                let t = r.mul(&self.c[j], &b[k - j]);
                r.add_assign(&mut acc, &t);
            }
            b.push(r.neg(&r.mul(&acc, &c0i)));
        }
        let mut s = Self::new(r, -v, b, prec);
        s.parity = self.parity;
        Ok(s)
    }

    pub fn derivative<R: Ring<Elem = E>>(&self, r: &R) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, x)| r.mul_int(x, (self.val + i as i32) as i64))
            .collect();
        let mut s = Self::new(
            r,
            self.val - 1,
            c,
            if self.prec >= EXACT {
                EXACT
            } else {
                self.prec - 1
            },
        );
        if !s.is_zero() && self.parity != Parity::Mixed {
            s.parity = self.parity.times(Parity::Odd);
        }
        s
    }

    /// `s ↦ λ s`
    pub fn subst_scale<R: Ring<Elem = E>>(&self, r: &R, lambda: &E) -> Self {
        let mut pw = r.pow(lambda, self.val.unsigned_abs());
        if self.val < 0 {
            pw = r.inv(&pw).expect("scaling by a unit");
        }
        let mut c = Vec::with_capacity(self.c.len());
        for x in &self.c {
            c.push(r.mul(x, &pw));
            pw = r.mul(&pw, lambda);
        }
        let mut s = Self::new(r, self.val, c, self.prec);
        s.parity = self.parity;
        s
    }

    /// `s ↦ −s`
    pub fn reflect<R: Ring<Elem = E>>(&self, r: &R) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if (self.val + i as i32) % 2 == 0 {
                    x.clone()
                } else {
                    r.neg(x)
                }
            })
            .collect();
        Series {
            val: self.val,
            c,
            prec: self.prec,
            parity: self.parity,
        }
    }

    /// `f(self)` for a polynomial `f`.
    pub fn compose_poly<R: Ring<Elem = E>>(&self, r: &R, f: &Poly<E>) -> Self {
        let mut acc = Series::zero(EXACT);
        for a in f.c.iter().rev() {
            acc = acc.mul(r, self).add(r, &Series::monomial(r, a.clone(), 0));
        }
        acc
    }

    /// `f(self)` where `f` is a power series; `self` must vanish at 0.
    pub fn compose<R: Ring<Elem = E>>(&self, r: &R, f: &Self) -> Result<Self, SeriesError> {
        if f.val < 0 {
            return Err(SeriesError::NeedsZeroConstant("compose"));
        }
        if self.is_zero() {
            let c0 = f.coeff(r, 0).ok_or(SeriesError::Truncated(0, f.prec))?;
            return Ok(Series::new(r, 0, vec![c0], self.prec.min(EXACT)));
        }
        if self.val < 1 {
            return Err(SeriesError::NeedsZeroConstant("compose"));
        }
        let vh = self.val;
        // unknown f-coefficients start at f.prec+1 and enter at order (f.prec+1)·vh
        let from_f = if f.prec >= EXACT {
            EXACT
        } else {
            (f.prec + 1) * vh - 1
        };
        let target = self.prec.min(from_f);
        let kmax = if f.prec >= EXACT {
            f.c.len() as i32 + f.val - 1
        } else {
            f.prec
        };
        let kmax = kmax.min(if target >= EXACT { kmax } else { target / vh });
        let mut acc = Series::zero(EXACT);
        let mut pw = Series::monomial(r, r.one(), 0);
        for k in 0..=kmax {
            if k > 0 {
                pw = pw.mul(r, self);
            }
            let fk = f.coeff(r, k).unwrap();
            if !r.is_zero(&fk) {
                acc = acc.add(r, &pw.scale(r, &fk));
            }
        }
        Ok(acc.truncate(r, target))
    }

    pub fn map_germ<R: Ring<Elem = E>>(&self, r: &R, g: Germ) -> Result<Self, SeriesError> {
        if g == Germ::Inverse {
            if self.val != 0 {
                return Err(SeriesError::NonUnit);
            }
            return self.inv(r);
        }
        let name = match g {
            Germ::Log1p => "log1p",
            Germ::Artanh => "artanh",
            Germ::Sqrt1p => "sqrt1p",
            Germ::Inverse => unreachable!(),
        };
        if !self.is_zero() && self.val < 1 {
            return Err(SeriesError::NeedsZeroConstant(name));
        }
        if self.is_zero() {
            let c0 = if g == Germ::Sqrt1p { r.one() } else { r.zero() };
            return Ok(Series::new(r, 0, vec![c0], self.prec));
        }
        let kmax = if self.prec >= EXACT {
            panic!("germ of an exact series needs a truncation")
        } else {
            (self.prec / self.val).max(0)
        };
        let coeffs: Vec<E> = (0..=kmax)
            .map(|k| r.from_rational(&germ_coeff(g, k as u32)))
            .collect();
        let f = Series::new(r, 0, coeffs, kmax);
        let f = Series { prec: EXACT, ..f };
        let mut out = self.compose(r, &f)?;
        out.parity = match (g, self.parity) {
            (Germ::Artanh, Parity::Odd) => Parity::Odd,
            (_, Parity::Even) => Parity::Even,
            _ => out.parity,
        };
        Ok(out)
    }
}

/// k-th Taylor coefficient at 0 of a germ.
fn germ_coeff(g: Germ, k: u32) -> BigRational {
    let int = |n: i64| BigRational::from_integer(BigInt::from(n));
    match g {
        Germ::Log1p => {
            if k == 0 {
                int(0)
            } else {
                let s = if k % 2 == 1 { 1 } else { -1 };
                BigRational::new(BigInt::from(s), BigInt::from(k))
            }
        }
        Germ::Artanh => {
            if k % 2 == 1 {
                BigRational::new(BigInt::from(1), BigInt::from(k))
            } else {
                int(0)
            }
        }
        Germ::Sqrt1p => {
            // binom(1/2, k)
            let mut c = int(1);
            for j in 0..k {
                c = c * (BigRational::new(1.into(), 2.into()) - int(j as i64)) / int(j as i64 + 1);
            }
            c
        }
        Germ::Inverse => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{q, qi, QQ};

    fn s(c: &[i64], val: i32, prec: i32) -> Series<BigRational> {
        Series::new(&QQ, val, c.iter().map(|&x| qi(x)).collect(), prec)
    }

    #[test]
    fn artanh_classical() {
        let t = s(&[1], 1, 5);
        let a = t.map_germ(&QQ, Germ::Artanh).unwrap();
        assert_eq!(a.prec, 5);
        assert_eq!(a.coeff(&QQ, 1), Some(qi(1)));
        assert_eq!(a.coeff(&QQ, 3), Some(q(1, 3)));
        assert_eq!(a.coeff(&QQ, 5), Some(q(1, 5)));
        assert_eq!(a.coeff(&QQ, 6), None);
        assert_eq!(a.parity, Parity::Odd);
    }

    #[test]
    fn inverse_of_one_plus_t() {
        let x = s(&[1, 1], 0, 3);
        let i = x.map_germ(&QQ, Germ::Inverse).unwrap();
        assert_eq!(i.c, vec![qi(1), qi(-1), qi(1), qi(-1)]);
    }

    #[test]
    fn sqrt1p_squares_back() {
        let x = s(&[2, 1], 1, 6);
        let r = x.map_germ(&QQ, Germ::Sqrt1p).unwrap();
        let sq = r.mul(&QQ, &r);
        let one_plus = x.add(&QQ, &Series::monomial(&QQ, qi(1), 0));
        assert_eq!(sq, one_plus.truncate(&QQ, sq.prec));
        assert_eq!(r.truncate(&QQ, 3).c, vec![qi(1), qi(1)]);
    }

    #[test]
    fn log1p_rejects_constant() {
        let x = s(&[1, 1], 0, 4);
        assert_eq!(
            x.map_germ(&QQ, Germ::Log1p),
            Err(SeriesError::NeedsZeroConstant("log1p"))
        );
    }

    #[test]
    fn precision_of_laurent_product() {
        // (s^-2 + O(s^3)) · (s + O(s^4)) is known to s^2
        let a = s(&[1], -2, 3);
        let b = s(&[1], 1, 4);
        let p = a.mul(&QQ, &b);
        assert_eq!(p.prec, 2);
        assert_eq!(p.coeff(&QQ, -1), Some(qi(1)));
    }

    #[test]
    fn inverse_precision() {
        // s^2(1 + s + O(s^6)) inverts to s^-2(...) known to s^2
        let a = s(&[1, 1], 2, 6);
        let i = a.inv(&QQ).unwrap();
        assert_eq!(i.val, -2);
        assert_eq!(i.prec, 2);
        let one = a.mul(&QQ, &i);
        assert_eq!(one.c, vec![qi(1)]);
    }
}
