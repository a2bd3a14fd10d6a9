//! Splitting ring of the quartic `S` holding all four ramification points.
//!
//! With `σ(w) = 4w² + βw + γ`, `t² = β² − 16γ` gives `w± = (−β ± t)/8`,
//! and `y₁² = w₊² − 1`, `y₂² = w₋² − 1` give the roots `w± ± y`.

use crate::algebra::poly::QPoly;
use crate::algebra::ring::{q, Quad, Ring, QQ};

pub type Tower<F> = Quad<Quad<Quad<F>>>;
pub type TowerElem<F> = <Tower<F> as Ring>::Elem;

#[derive(Clone, Debug)]
pub struct Splitting<F: Ring> {
    pub ring: Tower<F>,
    /// roots of `S`, ordered `w₊+y₁, w₊−y₁, w₋+y₂, w₋−y₂`
    pub roots: [TowerElem<F>; 4],
    /// `roots[iota[i]] = 1/roots[i]`
    pub iota: [usize; 4],
}

impl<F: Ring> Splitting<F> {
    /// `sigma` must have leading coefficient 4 (monic palindromic `S`).
    pub fn new(base: F, sigma: &QPoly) -> Self {
        assert_eq!(sigma.degree(), Some(2));
        assert_eq!(sigma.coeff(&QQ, 2), q(4, 1));
        let beta = sigma.coeff(&QQ, 1);
        let gamma = sigma.coeff(&QQ, 0);
        let disc = &beta * &beta - q(16, 1) * &gamma;
        let k0 = Quad::new(base.clone(), base.from_rational(&disc));
        let w0 = base.from_rational(&(-&beta / q(8, 1)));
        let eighth = base.from_rational(&q(1, 8));
        let wp = (w0.clone(), eighth.clone());
        let wm = (w0, base.neg(&eighth));
        let r1 = k0.sub(&k0.mul(&wp, &wp), &k0.one());
        let r2 = k0.sub(&k0.mul(&wm, &wm), &k0.one());
        let k1 = Quad::new(k0.clone(), r1);
        let k2 = Quad::new(k1.clone(), k1.embed(r2));
        let wp1 = k1.embed(wp);
        let wm2 = k2.embed(k1.embed(wm));
        let roots = [
            k2.embed(k1.add(&wp1, &k1.gen())),
            k2.embed(k1.sub(&wp1, &k1.gen())),
            k2.add(&wm2, &k2.gen()),
            k2.sub(&wm2, &k2.gen()),
        ];
        Splitting {
            ring: k2,
            roots,
            iota: [1, 0, 3, 2],
        }
    }

    pub fn embed(&self, a: F::Elem) -> TowerElem<F> {
        let k1 = &self.ring.base;
        let k0 = &k1.base;
        self.ring.embed(k1.embed(k0.embed(a)))
    }

    pub fn from_rational(&self, x: &num_rational::BigRational) -> TowerElem<F> {
        self.ring.from_rational(x)
    }

    /// The base-field component, when every other coordinate vanishes.
    pub fn to_base(&self, x: &TowerElem<F>) -> Option<F::Elem> {
        let b = &self.ring.base.base.base;
        let z = |e: &F::Elem| b.is_zero(e);
        let (((a, t), (y1a, y1b)), ((y2a, y2b), (y12a, y12b))) = x.clone();
        let rest = [t, y1a, y1b, y2a, y2b, y12a, y12b];
        rest.iter().all(z).then_some(a)
    }

    /// Evaluate a rational polynomial at a tower element.
    pub fn eval(&self, p: &QPoly, x: &TowerElem<F>) -> TowerElem<F> {
        let r = &self.ring;
        p.c.iter().rev().fold(r.zero(), |acc, c| {
            r.add(&r.mul(&acc, x), &r.from_rational(c))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Fp;
    use crate::curve::preset;

    fn check<F: Ring>(base: F, name: &str) {
        let c = preset(name).unwrap();
        let sp = Splitting::new(base, &c.sigma);
        let r = &sp.ring;
        for (i, a) in sp.roots.iter().enumerate() {
            assert!(r.is_zero(&sp.eval(&c.s, a)), "root {i} of {name}");
            assert_eq!(r.mul(a, &sp.roots[sp.iota[i]]), r.one());
        }
        // pairwise differences are units
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!(r.inv(&r.sub(&sp.roots[i], &sp.roots[j])).is_some());
                }
            }
        }
        let sum = sp.roots.iter().fold(r.zero(), |s, a| r.add(&s, a));
        assert_eq!(
            sp.to_base(&sum),
            Some(sp.ring.base.base.base.from_rational(&-c.s.coeff(&QQ, 3)))
        );
    }

    #[test]
    fn rational_tower_splits_presets() {
        check(QQ, "4_1");
        check(QQ, "L2R");
    }

    #[test]
    fn modular_tower_splits_presets() {
        let p = crate::algebra::primes::large_primes(1)[0];
        check(Fp::new(p), "4_1");
        check(Fp::new(p), "L2R");
    }
}
