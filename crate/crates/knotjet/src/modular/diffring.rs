//! The differential ring `Z[t₂, t₄, e₂]` with the Serre-type derivation.
//!
//! `D` has coefficients in `Z/3`; the code works with `3D`, which is integral.

use crate::algebra::ring::Ring;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Exponents of `(t₂, t₄, e₂)`.
pub type Mono = [u32; 3];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly3 {
    pub terms: BTreeMap<Mono, BigInt>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Poly3::default()
    }

    pub fn from_terms(ts: &[(i64, Mono)]) -> Self {
        let mut p = Poly3::zero();
        for &(c, m) in ts {
            p.add_term(m, BigInt::from(c));
        }
        p
    }

    pub fn var(i: usize) -> Self {
        let mut m = [0; 3];
        m[i] = 1;
        Poly3::from_terms(&[(1, m)])
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        let e = self.terms.entry(m).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut r = Poly3::zero();
        for (m, c) in &self.terms {
            r.add_term(*m, c * s);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Poly3::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term([m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]], c1 * c2);
            }
        }
        r
    }

    fn partial(&self, i: usize) -> Self {
        let mut r = Poly3::zero();
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut m2 = *m;
                m2[i] -= 1;
                r.add_term(m2, c * BigInt::from(m[i]));
            }
        }
        r
    }

    /// `3D`, with `3Dt₂ = 4t₂(−t₂−2t₄−e₂)`, `3Dt₄ = 4t₄(2t₂+t₄−e₂)`,
    /// `3De₂ = 2(t₂²+t₄²+t₂t₄−e₂²)`.
    pub fn derive3(&self) -> Self {
        let images = [
            Poly3::from_terms(&[(-4, [2, 0, 0]), (-8, [1, 1, 0]), (-4, [1, 0, 1])]),
            Poly3::from_terms(&[(8, [1, 1, 0]), (4, [0, 2, 0]), (-4, [0, 1, 1])]),
            Poly3::from_terms(&[
                (2, [2, 0, 0]),
                (2, [0, 2, 0]),
                (2, [1, 1, 0]),
                (-2, [0, 0, 2]),
            ]),
        ];
        (0..3).fold(Poly3::zero(), |acc, i| {
            acc.add(&self.partial(i).mul(&images[i]))
        })
    }

    /// Drop every term containing `e₂`.
    pub fn at_e2_zero(&self) -> Self {
        Poly3 {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m[2] == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn eval<R: Ring>(&self, r: &R, t2: &R::Elem, t4: &R::Elem, e2: &R::Elem) -> R::Elem {
        let mut acc = r.zero();
        for (m, c) in &self.terms {
            let mono = r.mul(&r.mul(&r.pow(t2, m[0]), &r.pow(t4, m[1])), &r.pow(e2, m[2]));
            let c = r.from_rational(&BigRational::from_integer(c.clone()));
            acc = r.add(&acc, &r.mul(&c, &mono));
        }
        acc
    }
}

/// `3·Dθᵢ/θᵢ` for `i ∈ {2, 3, 4}`.
pub fn first_log_derivative(i: usize) -> Poly3 {
    match i {
        2 => Poly3::from_terms(&[(-1, [1, 0, 0]), (-2, [0, 1, 0]), (-1, [0, 0, 1])]),
        3 => Poly3::from_terms(&[(-1, [1, 0, 0]), (1, [0, 1, 0]), (-1, [0, 0, 1])]),
        4 => Poly3::from_terms(&[(2, [1, 0, 0]), (1, [0, 1, 0]), (-1, [0, 0, 1])]),
        _ => panic!("theta index {i} not in 2..=4"),
    }
}

/// `P_0 … P_{d_max}` with `P_d = 3^d Dᵈθᵢ/θᵢ`, still depending on `e₂`.
pub fn p_polys(i: usize, d_max: usize) -> Vec<Poly3> {
    let p1 = first_log_derivative(i);
    let mut out = vec![Poly3::from_terms(&[(1, [0, 0, 0])])];
    for d in 0..d_max {
        let next = out[d].derive3().add(&out[d].mul(&p1));
        out.push(next);
    }
    out
}

/// `Ẽ₄ = t₂² + t₄² + t₂t₄`
pub fn e4() -> Poly3 {
    Poly3::from_terms(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (1, [1, 1, 0])])
}

/// `2Ẽ₆ = −2t₂³ − 3t₂²t₄ + 3t₂t₄² + 2t₄³`
pub fn e6_twice() -> Poly3 {
    Poly3::from_terms(&[
        (-2, [3, 0, 0]),
        (-3, [2, 1, 0]),
        (3, [1, 2, 0]),
        (2, [0, 3, 0]),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramanujan_type_relations() {
        // 3DẼ₄ = 8(Ẽ₆ − e₂Ẽ₄) = 4·(2Ẽ₆) − 8e₂Ẽ₄
        let e2 = Poly3::var(2);
        let lhs = e4().derive3();
        let rhs = e6_twice()
            .scale(&BigInt::from(4))
            .sub(&e2.mul(&e4()).scale(&BigInt::from(8)));
        assert_eq!(lhs, rhs);
        // 3D(2Ẽ₆) = 24(Ẽ₄² − e₂Ẽ₆)
        let lhs = e6_twice().derive3();
        let rhs = e4()
            .mul(&e4())
            .scale(&BigInt::from(24))
            .sub(&e2.mul(&e6_twice()).scale(&BigInt::from(12)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn p1_is_the_first_derivative() {
        for i in 2..=4 {
            let p = p_polys(i, 1);
            assert_eq!(p[1], first_log_derivative(i));
        }
    }
}
