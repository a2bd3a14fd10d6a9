//! Quotient algebras `B[α]/(f(α))` and traces over the roots of `f`.
//!
//! Nesting gives the pair algebra `B[α][β]/(f(α), f(β)/(β−α))`, whose
//! elements are functions of an ordered pair of distinct roots.

use super::poly::{Poly, QPoly};
use super::ring::{Ring, QQ};
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct RootAlgebra<R: Ring> {
    pub base: R,
    /// monic defining polynomial
    pub f: Poly<R::Elem>,
    /// which factor the generator is a root of
    pub tag: String,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("defining polynomial must be monic of degree ≥ 1")]
    BadModulus,
    #[error("representative of length {0} is not reduced (degree bound {1})")]
    NotReduced(usize, usize),
    #[error("element is not a unit")]
    NotUnit,
}

impl<R: Ring> RootAlgebra<R> {
    pub fn new(base: R, f: Poly<R::Elem>, tag: impl Into<String>) -> Result<Self, AlgebraError> {
        match f.lead() {
            Some(l) if base.is_one(l) && f.degree() >= Some(1) => Ok(RootAlgebra {
                base,
                f,
                tag: tag.into(),
            }),
            _ => Err(AlgebraError::BadModulus),
        }
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap()
    }

    /// The generator α.
    pub fn gen(&self) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        if self.degree() == 1 {
            v[0] = self.base.neg(&self.f.c[0]);
        } else {
            v[1] = self.base.one();
        }
        v
    }

    pub fn embed(&self, a: R::Elem) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        v[0] = a;
        v
    }

    /// Reduce an arbitrary polynomial in α.
    pub fn reduce(&self, p: &Poly<R::Elem>) -> Vec<R::Elem> {
        let (_, rem) = p.divrem(&self.base, &self.f).expect("monic modulus");
        let mut v = rem.c;
        v.resize(self.degree(), self.base.zero());
        v
    }

    pub fn from_poly(&self, p: &Poly<R::Elem>) -> Vec<R::Elem> {
        self.reduce(p)
    }

    pub fn check_reduced(&self, e: &[R::Elem]) -> Result<(), AlgebraError> {
        if e.len() != self.degree() {
            return Err(AlgebraError::NotReduced(e.len(), self.degree()));
        }
        Ok(())
    }

    /// Power sums p_k = Σ a^k over the roots of `f`, k < n.
    pub fn power_sums(&self, n: usize) -> Vec<R::Elem> {
        let b = &self.base;
        let d = self.degree();
        let c = |i: usize| self.f.coeff(b, i);
        let mut p: Vec<R::Elem> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                p.push(b.from_int(d as i64));
                continue;
            }
            let mut acc = b.zero();
            for j in 1..k.min(d + 1) {
                // c_{d−j} p_{k−j}
                acc = b.add(&acc, &b.mul(&c(d - j), &p[k - j]));
            }
            if k <= d {
                acc = b.add(&acc, &b.mul_int(&c(d - k), k as i64));
            } else {
                acc = b.add(&acc, &b.mul(&c(0), &p[k - d]));
            }
            p.push(b.neg(&acc));
        }
        p
    }

    /// Σ_{f(a)=0} e(a) in the base ring.
    pub fn trace(&self, e: &[R::Elem]) -> Result<R::Elem, AlgebraError> {
        self.check_reduced(e)?;
        let b = &self.base;
        let ps = self.power_sums(self.degree());
        let mut acc = b.zero();
        for (x, p) in e.iter().zip(&ps) {
            acc = b.add(&acc, &b.mul(x, p));
        }
        Ok(acc)
    }

    /// Algebra of ordered pairs of distinct roots: adjoin β with
    /// `f(β)/(β − α)` over this algebra.
    pub fn pair(&self) -> RootAlgebra<RootAlgebra<R>> {
        let a = self.gen();
        let fa: Poly<Vec<R::Elem>> = self.f.map(self, |c| self.embed(c.clone()));
        let lin = Poly::linear(self, &a);
        let (g, rem) = fa.divrem(self, &lin).expect("monic");
        debug_assert!(rem.is_zero());
        RootAlgebra {
            base: self.clone(),
            f: g,
            tag: format!("{}×{}", self.tag, self.tag),
        }
    }
}

impl<R: Ring> Ring for RootAlgebra<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.embed(self.base.one())
    }
    fn from_rational(&self, q: &BigRational) -> Self::Elem {
        self.embed(self.base.from_rational(q))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let pa = Poly::new(&self.base, a.clone());
        let pb = Poly::new(&self.base, b.clone());
        self.reduce(&pa.mul(&self.base, &pb))
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        // extended Euclid: find u with u·a ≡ 1 mod f
        let b = &self.base;
        let mut r0 = self.f.clone();
        let mut r1 = Poly::new(b, a.clone());
        let mut s0: Poly<R::Elem> = Poly::zero();
        let mut s1 = Poly::constant(b, b.one());
        while r1.degree()? > 0 {
            let (q, r) = r0.divrem(b, &r1).ok()?;
            let s = s0.sub(b, &q.mul(b, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let c = b.inv(&r1.c[0])?;
        Some(self.reduce(&s1.scale(b, &c)))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }
}

/// The field Q(X) of rational functions, kept as reduced `num/den`
/// with monic denominator.
#[derive(Clone, Copy, Debug, Default)]
pub struct RatFuncs;

impl RatFuncs {
    pub fn make(&self, num: QPoly, den: QPoly) -> (QPoly, QPoly) {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return (num, QPoly::from_ints(&[1]));
        }
        let g = num.gcd(&den);
        let n = num.div_exact(&QQ, &g).unwrap();
        let d = den.div_exact(&QQ, &g).unwrap();
        let l = d.lead().unwrap().clone();
        (n.scale(&QQ, &l.recip()), d.scale(&QQ, &l.recip()))
    }

    pub fn poly(&self, p: QPoly) -> (QPoly, QPoly) {
        (p, QPoly::from_ints(&[1]))
    }
}

impl Ring for RatFuncs {
    type Elem = (QPoly, QPoly);

    fn zero(&self) -> Self::Elem {
        (QPoly::zero(), QPoly::from_ints(&[1]))
    }
    fn one(&self) -> Self::Elem {
        (QPoly::from_ints(&[1]), QPoly::from_ints(&[1]))
    }
    fn from_rational(&self, q: &BigRational) -> Self::Elem {
        (Poly::new(&QQ, vec![q.clone()]), QPoly::from_ints(&[1]))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.make(
            a.0.mul(&QQ, &b.1).add(&QQ, &b.0.mul(&QQ, &a.1)),
            a.1.mul(&QQ, &b.1),
        )
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        (a.0.neg(&QQ), a.1.clone())
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.make(a.0.mul(&QQ, &b.0), a.1.mul(&QQ, &b.1))
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.0.is_zero() {
            None
        } else {
            Some(self.make(a.1.clone(), a.0.clone()))
        }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.0.is_zero()
    }
}

/// Convenience: the rational root algebra of an irreducible factor.
pub fn rational_root_algebra(f: &QPoly, tag: &str) -> Result<RootAlgebra<QQ>, AlgebraError> {
    let m = f.monic();
    RootAlgebra::new(QQ, m, tag)
}

/// Trace of a rational constant over a degree-d factor: d·c.
pub fn trace_constant(alg: &RootAlgebra<QQ>, c: &BigRational) -> BigRational {
    alg.trace(&alg.embed(c.clone())).unwrap()
}

pub fn is_rational_elem(e: &[BigRational]) -> bool {
    e.iter().skip(1).all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::qi;

    #[test]
    fn trace_of_generator() {
        let a = rational_root_algebra(&QPoly::from_ints(&[1, -3, 1]), "q").unwrap();
        assert_eq!(a.trace(&a.gen()).unwrap(), qi(3));
    }

    #[test]
    fn trace_of_square_fig8() {
        let a = rational_root_algebra(&QPoly::from_ints(&[1, -2, -1, -2, 1]), "S").unwrap();
        let g = a.gen();
        assert_eq!(a.trace(&a.mul(&g, &g)).unwrap(), qi(6));
        assert_eq!(trace_constant(&a, &qi(5)), qi(20));
    }

    #[test]
    fn trace_log_derivative() {
        // Σ_a 1/(X − a) = S'(X)/S(X)
        let s = QPoly::from_ints(&[1, -2, -1, -2, 1]);
        let k = RatFuncs;
        let f = s.map(&k, |c| k.from_rational(c));
        let alg = RootAlgebra::new(k, f, "S").unwrap();
        let x = alg.embed(k.poly(QPoly::from_ints(&[0, 1])));
        let e = alg.inv(&alg.sub(&x, &alg.gen())).unwrap();
        let t = alg.trace(&e).unwrap();
        let expect = k.make(s.derivative(&QQ), s.clone());
        assert_eq!(t, expect);
    }

    #[test]
    fn rejects_unreduced() {
        let a = rational_root_algebra(&QPoly::from_ints(&[1, -3, 1]), "q").unwrap();
        assert_eq!(
            a.trace(&[qi(1), qi(2), qi(3)]),
            Err(AlgebraError::NotReduced(3, 2))
        );
    }

    #[test]
    fn pair_trace_counts_ordered_pairs() {
        let a = rational_root_algebra(&QPoly::from_ints(&[1, -2, -1, -2, 1]), "S").unwrap();
        let p = a.pair();
        let one = p.one();
        let inner = p.trace(&one).unwrap();
        assert_eq!(a.trace(&inner).unwrap(), qi(12));
        // Σ_{i≠j} a_i a_j = e1² − p2 = 4 − 6
        let alpha = p.embed(a.gen());
        let beta = p.gen();
        let ab = p.mul(&alpha, &beta);
        assert_eq!(a.trace(&p.trace(&ab).unwrap()).unwrap(), qi(-2));
    }

    #[test]
    fn pair_difference_is_unit() {
        let a = rational_root_algebra(&QPoly::from_ints(&[1, -2, -5, -2, 1]), "S").unwrap();
        let p = a.pair();
        let d = p.sub(&p.embed(a.gen()), &p.gen());
        let di = p.inv(&d).expect("roots are distinct");
        assert_eq!(p.mul(&d, &di), p.one());
    }
}
