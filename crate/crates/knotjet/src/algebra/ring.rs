//! Ring objects.
//!
//! Elements do not carry their ring; every operation goes through a ring
//! value, so an extension ring can hold its defining data (radicands,
//! moduli) once instead of in each element.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;

/// Commutative ring with identity, exposed through a ring object.
// constructors take `&self`: a prime field needs its modulus
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` when `a` is not a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn from_frac(&self, n: i64, d: i64) -> Self::Elem {
        self.from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn mul_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(a, &self.from_int(n))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QQ;

impl Ring for QQ {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_rational(&self, q: &BigRational) -> BigRational {
        q.clone()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_zero() || b.is_zero() {
            return BigRational::zero();
        }
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add_assign(&self, a: &mut BigRational, b: &BigRational) {
        if !b.is_zero() {
            *a += b;
        }
    }
}

/// Integers modulo a prime below 2^62.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 62), "modulus out of range");
        Fp { p }
    }

    pub fn pow_u64(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulm(acc, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        acc
    }

    #[inline]
    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = n.mod_floor(&m);
        r.to_u64().unwrap()
    }

    /// Residue of `q` or `None` when its denominator vanishes mod p.
    pub fn try_rational(&self, q: &BigRational) -> Option<u64> {
        let d = self.reduce_int(q.denom());
        if d == 0 {
            return None;
        }
        Some(self.mulm(self.reduce_int(q.numer()), self.pow_u64(d, self.p - 2)))
    }
}

impl Ring for Fp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_rational(&self, q: &BigRational) -> u64 {
        self.try_rational(q)
            .unwrap_or_else(|| panic!("denominator of {q} vanishes mod {}", self.p))
    }
    fn from_int(&self, n: i64) -> u64 {
        let r = (n as i128).rem_euclid(self.p as i128);
        r as u64
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulm(*a, *b)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow_u64(*a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// `R[y]/(y² − r)`. Not necessarily a field: elements are invertible
/// exactly when their norm `a² − b²r` is a unit of `R`.
#[derive(Clone, Debug)]
pub struct Quad<R: Ring> {
    pub base: R,
    pub r: R::Elem,
}

impl<R: Ring> Quad<R> {
    pub fn new(base: R, r: R::Elem) -> Self {
        Quad { base, r }
    }

    pub fn gen(&self) -> (R::Elem, R::Elem) {
        (self.base.zero(), self.base.one())
    }

    pub fn embed(&self, a: R::Elem) -> (R::Elem, R::Elem) {
        (a, self.base.zero())
    }

    /// The automorphism `y ↦ −y`.
    pub fn conj(&self, x: &(R::Elem, R::Elem)) -> (R::Elem, R::Elem) {
        (x.0.clone(), self.base.neg(&x.1))
    }

    pub fn norm(&self, x: &(R::Elem, R::Elem)) -> R::Elem {
        let b = &self.base;
        b.sub(&b.mul(&x.0, &x.0), &b.mul(&b.mul(&x.1, &x.1), &self.r))
    }

    /// Lift a base-ring map to a map of this ring fixing `y`.
    pub fn map_coeffs(
        &self,
        x: &(R::Elem, R::Elem),
        f: impl Fn(&R::Elem) -> R::Elem,
    ) -> (R::Elem, R::Elem) {
        (f(&x.0), f(&x.1))
    }
}

impl<R: Ring> Ring for Quad<R> {
    type Elem = (R::Elem, R::Elem);

    fn zero(&self) -> Self::Elem {
        (self.base.zero(), self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        (self.base.one(), self.base.zero())
    }
    fn from_rational(&self, q: &BigRational) -> Self::Elem {
        (self.base.from_rational(q), self.base.zero())
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        (self.base.from_int(n), self.base.zero())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.sub(&a.0, &b.0), self.base.sub(&a.1, &b.1))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.base;
        let a1z = k.is_zero(&a.1);
        let b1z = k.is_zero(&b.1);
        if a1z && b1z {
            return (k.mul(&a.0, &b.0), k.zero());
        }
        if a1z {
            return (k.mul(&a.0, &b.0), k.mul(&a.0, &b.1));
        }
        if b1z {
            return (k.mul(&a.0, &b.0), k.mul(&a.1, &b.0));
        }
        // Karatsuba: three products plus one by the radicand
        let ac = k.mul(&a.0, &b.0);
        let bd = k.mul(&a.1, &b.1);
        let cross = k.mul(&k.add(&a.0, &a.1), &k.add(&b.0, &b.1));
        let mid = k.sub(&k.sub(&cross, &ac), &bd);
        (k.add(&ac, &k.mul(&bd, &self.r)), mid)
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let n = self.base.inv(&self.norm(a))?;
        let c = self.conj(a);
        Some((self.base.mul(&c.0, &n), self.base.mul(&c.1, &n)))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.0) && self.base.is_zero(&a.1)
    }
    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        self.base.add_assign(&mut a.0, &b.0);
        self.base.add_assign(&mut a.1, &b.1);
    }
}

/// Rational from an integer pair; panics on a zero denominator.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational reconstruction of `a mod m` (Wang): the unique `n/d` with
/// `|n|, d ≤ sqrt(m/2)` congruent to `a`, if any.
pub fn rational_reconstruct(a: &BigUint, m: &BigUint) -> Option<BigRational> {
    let m = BigInt::from(m.clone());
    let bound = (&m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), BigInt::from(a.clone()));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        let t2 = &t0 - &qt * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if r1.gcd(&t1) != BigInt::one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_roundtrip() {
        let f = Fp::new(4611686018427387847);
        let x = f.from_frac(-7, 12);
        assert_eq!(f.mul(&x, &f.from_int(12)), f.from_int(-7));
    }

    #[test]
    fn quad_inverse_of_unit_in_split_ring() {
        // Q[t]/(t²−64) ≅ Q×Q; 1 + t is a unit, t − 8 is not
        let k = Quad::new(QQ, qi(64));
        let u = (qi(1), qi(1));
        let ui = k.inv(&u).unwrap();
        assert_eq!(k.mul(&u, &ui), k.one());
        assert!(k.inv(&(qi(-8), qi(1))).is_none());
    }

    #[test]
    fn reconstruct_small_fraction() {
        let p = BigUint::from(4611686018427387847u64);
        let f = Fp::new(4611686018427387847);
        let a = f.from_frac(-256, 10125);
        let r = rational_reconstruct(&BigUint::from(a), &p).unwrap();
        assert_eq!(r, q(-256, 10125));
    }
}
