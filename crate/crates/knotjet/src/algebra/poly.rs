//! Dense univariate polynomials over a ring object.

use super::ring::{qi, Ring, QQ};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Ascending coefficients, no trailing zeros. The zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    pub c: Vec<E>,
}

pub type QPoly = Poly<BigRational>;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("zero polynomial")]
    Zero,
    #[error("degree {0} exceeds the supported bound 4")]
    DegreeTooLarge(usize),
    #[error("polynomial has a repeated factor")]
    NotSquarefree,
    #[error("division by a non-unit leading coefficient")]
    NonUnit,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn new<R: Ring<Elem = E>>(r: &R, mut c: Vec<E>) -> Self {
        while c.last().is_some_and(|x| r.is_zero(x)) {
            c.pop();
        }
        Poly { c }
    }

    pub fn constant<R: Ring<Elem = E>>(r: &R, a: E) -> Self {
        Self::new(r, vec![a])
    }

    /// `x − a`
    pub fn linear<R: Ring<Elem = E>>(r: &R, a: &E) -> Self {
        Poly {
            c: vec![r.neg(a), r.one()],
        }
    }

    pub fn x<R: Ring<Elem = E>>(r: &R) -> Self {
        Poly {
            c: vec![r.zero(), r.one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&E> {
        self.c.last()
    }

    pub fn coeff<R: Ring<Elem = E>>(&self, r: &R, i: usize) -> E {
        self.c.get(i).cloned().unwrap_or_else(|| r.zero())
    }

    pub fn add<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => r.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(r, c)
    }

    pub fn neg<R: Ring<Elem = E>>(&self, r: &R) -> Self {
        Poly {
            c: self.c.iter().map(|a| r.neg(a)).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        self.add(r, &o.neg(r))
    }

    pub fn scale<R: Ring<Elem = E>>(&self, r: &R, s: &E) -> Self {
        Self::new(r, self.c.iter().map(|a| r.mul(a, s)).collect())
    }

    pub fn mul<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![r.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                let t = r.mul(a, b);
                r.add_assign(&mut c[i + j], &t);
            }
        }
        Self::new(r, c)
    }

    pub fn pow<R: Ring<Elem = E>>(&self, r: &R, e: u32) -> Self {
        let mut acc = Self::constant(r, r.one());
        for _ in 0..e {
            acc = acc.mul(r, self);
        }
        acc
    }

    pub fn eval<R: Ring<Elem = E>>(&self, r: &R, x: &E) -> E {
        let mut acc = r.zero();
        for a in self.c.iter().rev() {
            acc = r.add(&r.mul(&acc, x), a);
        }
        acc
    }

    pub fn derivative<R: Ring<Elem = E>>(&self, r: &R) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| r.mul_int(a, i as i64))
            .collect();
        Self::new(r, c)
    }

    /// `self(q(x))`
    pub fn compose<R: Ring<Elem = E>>(&self, r: &R, q: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(r, q).add(r, &Self::constant(r, a.clone()));
        }
        acc
    }

    /// Euclidean division by a polynomial whose leading coefficient is a unit.
    pub fn divrem<R: Ring<Elem = E>>(&self, r: &R, d: &Self) -> Result<(Self, Self), PolyError> {
        let dl = d.lead().ok_or(PolyError::Zero)?;
        let li = r.inv(dl).ok_or(PolyError::NonUnit)?;
        let dd = d.c.len() - 1;
        let mut rem = self.c.clone();
        if rem.len() < d.c.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quo = vec![r.zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let t = r.mul(&rem[k + dd], &li);
            if r.is_zero(&t) {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                rem[k + j] = r.sub(&rem[k + j], &r.mul(&t, b));
            }
            quo[k] = t;
        }
        rem.truncate(dd);
        Ok((Self::new(r, quo), Self::new(r, rem)))
    }

    /// Exact quotient, `None` if the division leaves a remainder.
    pub fn div_exact<R: Ring<Elem = E>>(&self, r: &R, d: &Self) -> Option<Self> {
        let (q, rem) = self.divrem(r, d).ok()?;
        rem.is_zero().then_some(q)
    }

    /// Apply a coefficient map into another ring.
    pub fn map<F: Clone + PartialEq, S: Ring<Elem = F>>(
        &self,
        s: &S,
        f: impl Fn(&E) -> F,
    ) -> Poly<F> {
        Poly::new(s, self.c.iter().map(f).collect())
    }

    /// `x^deg · p(1/x)`
    pub fn reversed(&self) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        Poly { c }
    }
}

impl QPoly {
    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(&QQ, c.iter().map(|&x| qi(x)).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Poly::new(
            &QQ,
            c.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let li = l.recip();
                self.scale(&QQ, &li)
            }
        }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&QQ, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Content-free integer polynomial with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for a in &self.c {
            den = den.lcm(a.denom());
        }
        let ints: Vec<BigInt> = self
            .c
            .iter()
            .map(|a| (a * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for a in &ints {
            g = g.gcd(a);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        QPoly::from_bigints(&ints.iter().map(|a| a / &g).collect::<Vec<_>>())
    }

    pub fn is_palindromic(&self) -> bool {
        let mut r = self.c.clone();
        r.reverse();
        r == self.c
    }

    /// Rational roots via the rational root theorem.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let p = self.primitive();
        if p.is_zero() {
            return vec![];
        }
        // strip x^k
        let mut out = Vec::new();
        let k = p.c.iter().position(|a| !a.is_zero()).unwrap();
        if k > 0 {
            out.push(BigRational::zero());
        }
        let c: Vec<BigInt> = p.c[k..].iter().map(|a| a.to_integer()).collect();
        if c.len() == 1 {
            return out;
        }
        let a0 = c[0].abs();
        let an = c.last().unwrap().abs();
        let small = |n: &BigInt| n.to_u64().filter(|&v| v < 1 << 40);
        let (Some(a0), Some(an)) = (small(&a0), small(&an)) else {
            return out;
        };
        let trimmed = Poly {
            c: p.c[k..].to_vec(),
        };
        for num in divisors(a0) {
            for den in divisors(an) {
                for s in [1i64, -1] {
                    let r =
                        BigRational::new(BigInt::from(s) * BigInt::from(num), BigInt::from(den));
                    if trimmed.eval(&QQ, &r).is_zero() && !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Square root of a polynomial that is a perfect square, up to sign.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d = self.degree().unwrap();
        if d % 2 == 1 {
            return None;
        }
        let lead = self.lead().unwrap();
        let lr = rational_sqrt(lead)?;
        let m = d / 2;
        // coefficients of the root from the top down
        let mut root = vec![BigRational::zero(); m + 1];
        root[m] = lr;
        for k in (0..m).rev() {
            // coefficient of x^{m+k} in root² equals self[m+k]
            let mut s = BigRational::zero();
            for i in (k + 1)..=m {
                let j = m + k - i;
                if j > k && j <= m {
                    s += &root[i] * &root[j];
                }
            }
            let target = self.coeff(&QQ, m + k);
            root[k] = (target - s) / (BigRational::from_integer(2.into()) * &root[m]);
        }
        let r = Poly::new(&QQ, root);
        (r.mul(&QQ, &r) == *self).then_some(r)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.c.iter().map(|a| a.to_string()).collect()
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut v = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            v.push(i);
            if i * i != n {
                v.push(n / i);
            }
        }
        i += 1;
    }
    v
}

pub fn rational_sqrt(a: &BigRational) -> Option<BigRational> {
    if a.is_negative() {
        return None;
    }
    let n = a.numer().sqrt();
    let d = a.denom().sqrt();
    (&n * &n == *a.numer() && &d * &d == *a.denom()).then(|| BigRational::new(n, d))
}

/// Squarefree part of an integer, sign kept: `-60 → -15`.
pub fn squarefree_int(n: &BigInt) -> BigInt {
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out *= m;
    if n.is_negative() {
        -out
    } else {
        out
    }
}

/// Radical `p / gcd(p, p')`, made primitive.
pub fn radical(p: &QPoly) -> Result<QPoly, PolyError> {
    if p.is_zero() {
        return Err(PolyError::Zero);
    }
    let g = p.gcd(&p.derivative(&QQ));
    let (q, _) = p.divrem(&QQ, &g)?;
    Ok(q.primitive())
}

/// Yun's decomposition `p = c · Π f_i^i` with squarefree, pairwise coprime,
/// monic `f_i`; entry `i-1` holds `f_i`.
pub fn squarefree_decomposition(p: &QPoly) -> Result<Vec<QPoly>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::Zero);
    }
    let mut out = Vec::new();
    let dp = p.derivative(&QQ);
    let mut a = p.gcd(&dp);
    let mut b = p.div_exact(&QQ, &a).unwrap().monic();
    let mut c = dp
        .div_exact(&QQ, &a)
        .unwrap()
        .scale(&QQ, &p.lead().unwrap().recip());
    let mut d = c.sub(&QQ, &b.derivative(&QQ));
    while b.degree() > Some(0) {
        a = b.gcd(&d);
        out.push(a.clone());
        b = b.div_exact(&QQ, &a).unwrap();
        c = d.div_exact(&QQ, &a).unwrap();
        d = c.sub(&QQ, &b.derivative(&QQ));
    }
    Ok(out)
}

/// The part of `p` left after removing the largest square factor:
/// the product of its factors of odd multiplicity, made primitive.
pub fn squarefree_part(p: &QPoly) -> Result<QPoly, PolyError> {
    let parts = squarefree_decomposition(p)?;
    let mut acc = QPoly::from_ints(&[1]);
    for (i, f) in parts.iter().enumerate() {
        if i % 2 == 0 {
            acc = acc.mul(&QQ, f);
        }
    }
    Ok(acc.primitive())
}

/// Irreducible factors over Q of a squarefree polynomial of degree ≤ 4,
/// each primitive, sorted by degree then coefficients.
pub fn factor_rational(p: &QPoly) -> Result<Vec<QPoly>, PolyError> {
    let d = p.degree().ok_or(PolyError::Zero)?;
    if d > 4 {
        return Err(PolyError::DegreeTooLarge(d));
    }
    if p.gcd(&p.derivative(&QQ)).degree() != Some(0) {
        return Err(PolyError::NotSquarefree);
    }
    let mut out = Vec::new();
    let mut rest = p.primitive();
    for r in rest.rational_roots() {
        let lin = Poly::linear(&QQ, &r).primitive();
        rest = rest.div_exact(&QQ, &lin).expect("root divides");
        out.push(lin);
    }
    match rest.degree() {
        Some(4) => out.extend(split_quartic(&rest)),
        Some(0) | None => {}
        _ => out.push(rest.primitive()),
    }
    out.sort_by(|a, b| (a.c.len(), &a.c).cmp(&(b.c.len(), &b.c)));
    Ok(out)
}

/// Split a quartic without rational roots into two quadratics if possible.
///
/// The monic quartic x⁴+bx³+cx²+dx+e splits as (x²+ux+v)(x²−ux... ) exactly
/// when the resolvent cubic has a rational root making the remaining
/// quadratic system rational.
fn split_quartic(p: &QPoly) -> Vec<QPoly> {
    let m = p.monic();
    let (b, c, d, e) = (
        m.coeff(&QQ, 3),
        m.coeff(&QQ, 2),
        m.coeff(&QQ, 1),
        m.coeff(&QQ, 0),
    );
    // (x²+ux+v)(x²+u'x+v'): v+v' = y is a root of the resolvent
    // y³ − c y² + (bd − 4e) y − (b²e − 4ce + d²) = 0
    let one = BigRational::one();
    let res = Poly::new(
        &QQ,
        vec![
            -(&b * &b * &e - BigRational::from_integer(4.into()) * &c * &e + &d * &d),
            &b * &d - BigRational::from_integer(4.into()) * &e,
            -c.clone(),
            one.clone(),
        ],
    );
    let two = BigRational::from_integer(2.into());
    for y in res.rational_roots() {
        // v, v' roots of t² − y t + e
        let disc_v = &y * &y - BigRational::from_integer(4.into()) * &e;
        // u, u' roots of t² − b t + (c − y)
        let disc_u = &b * &b - BigRational::from_integer(4.into()) * (&c - &y);
        let (Some(sv), Some(su)) = (rational_sqrt(&disc_v), rational_sqrt(&disc_u)) else {
            continue;
        };
        for (su, sv) in [(su.clone(), sv.clone()), (su.clone(), -sv.clone())] {
            let u = (&b + &su) / &two;
            let up = (&b - &su) / &two;
            let v = (&y + &sv) / &two;
            let vp = (&y - &sv) / &two;
            let f1 = Poly::new(&QQ, vec![v.clone(), u.clone(), one.clone()]);
            let f2 = Poly::new(&QQ, vec![vp.clone(), up.clone(), one.clone()]);
            if f1.mul(&QQ, &f2) == m {
                return vec![f1.primitive(), f2.primitive()];
            }
        }
    }
    vec![p.primitive()]
}

impl fmt::Display for Poly<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(f, self, "X")
    }
}

pub fn fmt_poly(f: &mut fmt::Formatter<'_>, p: &QPoly, var: &str) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, a) in p.c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let neg = a.is_negative();
        let abs = a.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let show_coeff = !abs.is_one() || i == 0;
        if show_coeff {
            write!(f, "{abs}")?;
        }
        match i {
            0 => {}
            1 => write!(f, "{}{var}", if show_coeff { "*" } else { "" })?,
            _ => write!(f, "{}{var}^{i}", if show_coeff { "*" } else { "" })?,
        }
    }
    Ok(())
}

/// Display adaptor with a custom variable name.
pub struct PolyIn<'a>(pub &'a QPoly, pub &'a str);

impl fmt::Display for PolyIn<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(f, self.0, self.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_fig8_discriminant() {
        let s = QPoly::from_ints(&[1, -2, -1, -2, 1]);
        let sq = QPoly::from_ints(&[-1, 0, 1]);
        let p = sq.mul(&QQ, &sq).mul(&QQ, &s);
        assert_eq!(squarefree_part(&p).unwrap(), s);
    }

    #[test]
    fn radical_collapses_x2() {
        assert_eq!(
            radical(&QPoly::from_ints(&[0, 0, 1])).unwrap(),
            QPoly::from_ints(&[0, 1])
        );
        // a full square has trivial square-free part
        assert_eq!(
            squarefree_part(&QPoly::from_ints(&[0, 0, 1])).unwrap(),
            QPoly::from_ints(&[1])
        );
        assert_eq!(squarefree_part(&QPoly::zero()), Err(PolyError::Zero));
    }

    #[test]
    fn yun_multiplicities() {
        // (x−1)(x+2)²(x−3)³
        let l = |a: i64| QPoly::from_ints(&[-a, 1]);
        let p = l(1)
            .mul(&QQ, &l(-2).pow(&QQ, 2))
            .mul(&QQ, &l(3).pow(&QQ, 3))
            .scale(&QQ, &qi(5));
        let d = squarefree_decomposition(&p).unwrap();
        assert_eq!(d, vec![l(1), l(-2), l(3)]);
        assert_eq!(squarefree_part(&p).unwrap(), l(1).mul(&QQ, &l(3)));
    }

    #[test]
    fn l2r_quartic_already_squarefree() {
        let s = QPoly::from_ints(&[1, -2, -5, -2, 1]);
        assert_eq!(squarefree_part(&s).unwrap(), s);
    }

    #[test]
    fn factor_fig8_quartic() {
        let f = factor_rational(&QPoly::from_ints(&[1, -2, -1, -2, 1])).unwrap();
        assert_eq!(
            f,
            vec![QPoly::from_ints(&[1, -3, 1]), QPoly::from_ints(&[1, 1, 1])]
        );
    }

    #[test]
    fn factor_small_cases() {
        assert_eq!(
            factor_rational(&QPoly::from_ints(&[1, 0, 1])).unwrap(),
            vec![QPoly::from_ints(&[1, 0, 1])]
        );
        assert_eq!(
            factor_rational(&QPoly::from_ints(&[-1, 0, 1])).unwrap(),
            vec![QPoly::from_ints(&[-1, 1]), QPoly::from_ints(&[1, 1])]
        );
        // L2R quartic is irreducible
        let s = QPoly::from_ints(&[1, -2, -5, -2, 1]);
        assert_eq!(factor_rational(&s).unwrap(), vec![s]);
        assert!(matches!(
            factor_rational(&QPoly::from_ints(&[1, 0, 0, 0, 0, 1])),
            Err(PolyError::DegreeTooLarge(5))
        ));
    }

    #[test]
    fn factor_x4_plus_4() {
        // Sophie Germain: x⁴+4 = (x²+2x+2)(x²−2x+2)
        let f = factor_rational(&QPoly::from_ints(&[4, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn poly_sqrt() {
        let a = QPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(a.mul(&QQ, &a).sqrt().map(|r| r.primitive()), Some(a));
        assert!(QPoly::from_ints(&[1, 0, 0, 1]).sqrt().is_none());
    }

    #[test]
    fn squarefree_integers() {
        assert_eq!(squarefree_int(&BigInt::from(-60)), BigInt::from(-15));
        assert_eq!(squarefree_int(&BigInt::from(64)), BigInt::from(1));
    }
}
