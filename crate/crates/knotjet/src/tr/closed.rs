//! Closed forms the recursion must reproduce, checked in the local coordinate `s`.

use super::engine::{Context, FormTable};
use super::wp::laurent_series;
use crate::algebra::ring::Ring;
use crate::algebra::series::Series;
use crate::curve::splitting::TowerElem;

impl<F: Ring> Context<F> {
    /// `2/d₂ = 8α P₁(α) / (S'(α)² P₂(α))`, the coefficient of `Π ℘(zⱼ − z_α)` in `ω₃⁰`.
    pub fn omega30_coefficient(&self, a: usize) -> TowerElem<F> {
        let r = self.ring();
        let al = &self.sp.roots[a];
        let ds = self.polys.ds.eval(r, al);
        let num = r.mul_int(&r.mul(al, &self.polys.p1.eval(r, al)), 8);
        let den = r.mul(&r.mul(&ds, &ds), &self.polys.p2.eval(r, al));
        r.mul(&num, &r.inv(&den).expect("simple ramification"))
    }

    /// `ω₃⁰` has exactly the four diagonal monomials with the closed-form coefficients,
    /// and the same coefficient is `2/d₂` read off the frame.
    pub fn omega30_matches(&self, om: &FormTable<TowerElem<F>>) -> bool {
        let r = self.ring();
        let Some(f) = om.get(&(3, 0)) else {
            return false;
        };
        if f.terms.len() != 4 {
            return false;
        }
        (0..4).all(|a| {
            let k = vec![(a as u8, 0u8); 3];
            let (d2, _) = self.d_coefficients(a);
            let from_frame = r.mul(&r.from_int(2), &r.inv(&d2).expect("unit"));
            f.terms.get(&k) == Some(&self.omega30_coefficient(a))
                && from_frame == self.omega30_coefficient(a)
        })
    }

    /// `(d₂, d₄)` with `(v(s) − v(−s)) du/ds = d₂s² + d₄s⁴ + …`, from the odd parts
    /// `v_odd = v₁s + v₃s³`, `du/ds = u₁s + u₃s³`.
    pub fn d_coefficients(&self, a: usize) -> (TowerElem<F>, TowerElem<F>) {
        let r = self.ring();
        let fr = &self.frames[a];
        let c = |s: &Series<TowerElem<F>>, e| s.coeff(r, e).expect("frame order ≥ 4");
        let (v1, v3, u1, u3) = (c(&fr.v_odd, 1), c(&fr.v_odd, 3), c(&fr.du, 1), c(&fr.du, 3));
        let d2 = r.mul_int(&r.mul(&v1, &u1), 2);
        let d4 = r.mul_int(&r.add(&r.mul(&v1, &u3), &r.mul(&v3, &u1)), 2);
        (d2, d4)
    }

    /// `[s⁰] B(z, z̄)` at center `a`; zero in the coordinate `s`.
    pub fn s_b(&self) -> TowerElem<F> {
        let r = self.ring();
        let b = laurent_series(r, &self.laurent, 0, 2).subst_scale(r, &r.from_int(2));
        b.coeff(r, 0).expect("known through s²")
    }

    /// `ω₁¹ = Σ_α [(S_B/d₂ − d₄/(4d₂²))℘(z − z_α) + ℘''(z − z_α)/(24d₂)]`.
    pub fn omega11_matches(&self, om: &FormTable<TowerElem<F>>) -> bool {
        let r = self.ring();
        let Some(f) = om.get(&(1, 1)) else {
            return false;
        };
        let sb = self.s_b();
        let mut want = std::collections::BTreeMap::new();
        for a in 0..4 {
            let (d2, d4) = self.d_coefficients(a);
            let i2 = r.inv(&d2).expect("unit");
            let c0 = r.sub(
                &r.mul(&sb, &i2),
                &r.mul(&d4, &r.mul(&r.mul(&i2, &i2), &r.from_frac(1, 4))),
            );
            let c2 = r.mul(&i2, &r.from_frac(1, 24));
            for (p, c) in [(0u8, c0), (2, c2)] {
                if !r.is_zero(&c) {
                    want.insert(vec![(a as u8, p)], c);
                }
            }
        }
        f.terms == want
    }

    /// `S'(X)²/(16S(X)) − S''(X)/12 = ℘(2s)` along every frame.
    pub fn qc_identity_holds(&self) -> bool {
        let r = self.ring();
        self.frames.iter().all(|fr| {
            let x = &fr.x;
            let ds = x.compose_poly(r, &self.polys.ds);
            let Ok(sinv) = x.compose_poly(r, &self.polys.s).inv(r) else {
                return false;
            };
            let lhs = ds
                .mul(r, &ds)
                .mul(r, &sinv)
                .scale(r, &r.from_frac(1, 16))
                .sub(
                    r,
                    &x.compose_poly(r, &self.polys.dds)
                        .scale(r, &r.from_frac(1, 12)),
                );
            let rhs =
                laurent_series(r, &self.laurent, 0, self.order).subst_scale(r, &r.from_int(2));
            let diff = lhs.sub(r, &rhs);
            diff.is_zero() && diff.prec >= 4
        })
    }

    /// Checks `℘(z₁ − ιz₂) = ¼(Y₁−Y₂)²/(X₁−X₂)² − (S'(X₁)−S'(X₂))/(12(X₁−X₂)) + tail·(X₁−X₂)²`
    /// on `z₁ = z_α + 2s`, `z₂ = z_α − s`, so that `z₁ − ιz₂ = s`.
    pub fn addition_tail_holds(&self, tail: &TowerElem<F>) -> bool {
        let r = self.ring();
        self.frames.iter().all(|fr| {
            let two = r.from_int(2);
            let (x1, x2) = (fr.x.subst_scale(r, &two), fr.x.clone());
            let (y1, y2) = (fr.sqrt_s.subst_scale(r, &two), fr.sqrt_s.reflect(r));
            let dx = x1.sub(r, &x2);
            let Ok(dxi) = dx.inv(r) else { return false };
            let dy = y1.sub(r, &y2).mul(r, &dxi);
            let dsp = x1
                .compose_poly(r, &self.polys.ds)
                .sub(r, &x2.compose_poly(r, &self.polys.ds))
                .mul(r, &dxi);
            let rhs = dy
                .mul(r, &dy)
                .scale(r, &r.from_frac(1, 4))
                .sub(r, &dsp.scale(r, &r.from_frac(1, 12)))
                .add(r, &dx.mul(r, &dx).scale(r, tail));
            let diff = rhs.sub(r, &laurent_series(r, &self.laurent, 0, self.order));
            diff.is_zero() && diff.prec >= 2
        })
    }

    /// The tail constant `c₄/12` with `c₄` the leading coefficient of `S`.
    pub fn addition_tail(&self) -> TowerElem<F> {
        let r = self.ring();
        let c4 = self.polys.s.lead().cloned().unwrap_or_else(|| r.zero());
        r.mul(&c4, &r.from_frac(1, 12))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Fp;

    #[test]
    fn closed_forms_at_every_center() {
        for name in ["4_1", "L2R"] {
            let c = crate::curve::preset(name).unwrap();
            let ctx = Context::rational(&c, 12).unwrap();
            let om = ctx.run(1).unwrap();
            assert!(ctx.omega30_matches(&om), "{name} ω₃⁰");
            assert!(ctx.omega11_matches(&om), "{name} ω₁¹");
            assert!(ctx.qc_identity_holds(), "{name} QC");
            let r = ctx.ring();
            assert!(r.is_zero(&ctx.s_b()));
        }
    }

    #[test]
    fn addition_tail_constant() {
        let c = crate::curve::preset("4_1").unwrap();
        let p = crate::algebra::primes::large_primes(1)[0];
        let ctx = Context::new(Fp::new(p), &c, 12, 4).unwrap();
        assert!(ctx.addition_tail_holds(&ctx.addition_tail()));
        let r = ctx.ring();
        assert!(!ctx.addition_tail_holds(&r.zero()));
        assert!(!ctx.addition_tail_holds(&r.from_frac(1, 6)));
    }
}
