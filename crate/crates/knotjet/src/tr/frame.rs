//! Local frames at ramification points in the coordinate `z = z_α + s`.

use super::wp::laurent_series;
use crate::algebra::poly::Poly;
use crate::algebra::ring::Ring;
use crate::algebra::series::{Germ, Series, SeriesError};

/// Series data at one ramification point. `X` is even in `s`,
/// `√S = dX/ds` and `v_odd` are odd.
#[derive(Clone, Debug)]
pub struct LocalFrame<E> {
    pub center: usize,
    pub x: Series<E>,
    pub sqrt_s: Series<E>,
    /// `du/ds` with `u = ½ ln X`
    pub du: Series<E>,
    /// odd part of `v = ln l`: `artanh(P₂√S/P₁)`
    pub v_odd: Series<E>,
    /// `(v(s) − v(−s))·du/ds`, even with valuation 2
    pub d: Series<E>,
}

/// Polynomials of the curve, already mapped into the coefficient ring.
#[derive(Clone, Debug)]
pub struct CurvePolys<E> {
    pub s: Poly<E>,
    pub ds: Poly<E>,
    pub dds: Poly<E>,
    pub p1: Poly<E>,
    pub p2: Poly<E>,
}

impl<E: Clone + PartialEq> CurvePolys<E> {
    pub fn new<R: Ring<Elem = E>>(r: &R, s: Poly<E>, p1: Poly<E>, p2: Poly<E>) -> Self {
        let ds = s.derivative(r);
        let dds = ds.derivative(r);
        CurvePolys { s, ds, dds, p1, p2 }
    }
}

/// Frame at the root `alpha`; `d` is known through `s^{order+3}`.
pub fn local_frame<R: Ring>(
    r: &R,
    polys: &CurvePolys<R::Elem>,
    laurent: &[R::Elem],
    center: usize,
    alpha: &R::Elem,
    order: i32,
) -> Result<LocalFrame<R::Elem>, SeriesError> {
    assert!(order >= 4, "frame order must be at least 4");
    let wp = laurent_series(r, laurent, 0, order);
    let shift = r.mul(&polys.dds.eval(r, alpha), &r.from_frac(1, 24));
    let q = wp.sub(r, &Series::monomial(r, shift, 0));
    let k = r.mul(&polys.ds.eval(r, alpha), &r.from_frac(1, 4));
    let x = q
        .inv(r)?
        .scale(r, &k)
        .add(r, &Series::monomial(r, alpha.clone(), 0));
    let sqrt_s = x.derivative(r);
    let du = sqrt_s.mul(r, &x.scale(r, &r.from_int(2)).inv(r)?);
    let arg = x
        .compose_poly(r, &polys.p2)
        .mul(r, &sqrt_s)
        .mul(r, &x.compose_poly(r, &polys.p1).inv(r)?);
    let v_odd = arg.map_germ(r, Germ::Artanh)?;
    let d = v_odd.scale(r, &r.from_int(2)).mul(r, &du);
    Ok(LocalFrame {
        center,
        x,
        sqrt_s,
        du,
        v_odd,
        d,
    })
}

impl<E: Clone + PartialEq> LocalFrame<E> {
    /// `(√S)² − S(X)`, which must vanish through its precision.
    pub fn ode_residual<R: Ring<Elem = E>>(&self, r: &R, s: &Poly<E>) -> Series<E> {
        self.sqrt_s
            .mul(r, &self.sqrt_s)
            .sub(r, &self.x.compose_poly(r, s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::series::Parity;
    use crate::tr::Context;

    #[test]
    fn frames_are_consistent() {
        for name in ["4_1", "L2R"] {
            let ctx = Context::rational(&crate::curve::preset(name).unwrap(), 12).unwrap();
            let r = &ctx.sp.ring;
            for f in &ctx.frames {
                let res = f.ode_residual(r, &ctx.polys.s);
                assert!(res.is_zero() && res.prec >= 12, "{name}: residual {res:?}");
                assert_eq!(f.x.parity, Parity::Even);
                assert_eq!(f.sqrt_s.parity, Parity::Odd);
                assert_eq!(f.v_odd.parity, Parity::Odd);
                assert_eq!(f.v_odd.val, 1);
                assert_eq!(f.d.val, 2);
                // X = α + (S'(α)/4)s² + …
                let a = &ctx.sp.roots[f.center];
                assert_eq!(f.x.coeff(r, 0).unwrap(), *a);
                let k = r.mul(&ctx.polys.ds.eval(r, a), &r.from_frac(1, 4));
                assert_eq!(f.x.coeff(r, 2).unwrap(), k);
            }
        }
    }
}
