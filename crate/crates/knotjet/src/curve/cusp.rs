//! Cusp polynomial at the node of the A-polynomial over `X = 1`.

use super::ASpectralCurve;
use crate::algebra::poly::{squarefree_int, QPoly};
use crate::algebra::ring::{qi, QQ};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct CuspData {
    /// longitude value at the singular point
    pub l_c: BigRational,
    /// primitive integer polynomial `C(γ)`, `γ = (l − l_c)/(m − m_c)`, `m_c = −1`
    pub poly: QPoly,
    /// squarefree `d` with cusp field `Q[√d]`; `1` when `C` splits over Q
    pub field_disc: BigInt,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("no singular point over X = 1")]
pub struct NoCusp;

/// Tangent cone of `A` at `(X, l) = (1, l_c)`, written in `γ`.
pub fn cusp_polynomial(curve: &ASpectralCurve) -> Result<CuspData, NoCusp> {
    let (a, b, c) = curve.component.polys();
    let one = BigRational::one();
    let ev = |p: &QPoly| p.eval(&QQ, &one);
    let (a0, b0, c0) = (ev(&a), ev(&b), ev(&c));
    if a0.is_zero() {
        return Err(NoCusp);
    }
    let l_c = -&b0 / (&a0 * qi(2));
    // double root in l and vanishing X-derivative
    if !(&b0 * &b0 - qi(4) * &a0 * &c0).is_zero() {
        return Err(NoCusp);
    }
    let (da, db, dc) = (a.derivative(&QQ), b.derivative(&QQ), c.derivative(&QQ));
    let a_x = ev(&da) * &l_c * &l_c + ev(&db) * &l_c + ev(&dc);
    if !a_x.is_zero() {
        return Err(NoCusp);
    }
    let (dda, ddb, ddc) = (da.derivative(&QQ), db.derivative(&QQ), dc.derivative(&QQ));
    let a_ll = &a0 * qi(2);
    let a_lx = qi(2) * ev(&da) * &l_c + ev(&db);
    let a_xx = ev(&dda) * &l_c * &l_c + ev(&ddb) * &l_c + ev(&ddc);
    // ξ = X − 1 ≈ 2m_c(m − m_c), η = γ(m − m_c)
    let m_c = qi(-1);
    let quad = QPoly::new(
        &QQ,
        vec![
            qi(2) * &m_c * &m_c * &a_xx,
            qi(2) * &m_c * &a_lx,
            a_ll / qi(2),
        ],
    );
    if quad.is_zero() {
        return Err(NoCusp);
    }
    let poly = quad.primitive();
    let field_disc = match poly.degree() {
        Some(2) => {
            let (c0, c1, c2) = (poly.coeff(&QQ, 0), poly.coeff(&QQ, 1), poly.coeff(&QQ, 2));
            let disc = &c1 * &c1 - qi(4) * c0 * c2;
            squarefree_int(&disc.to_integer())
        }
        _ => BigInt::one(),
    };
    Ok(CuspData {
        l_c,
        poly,
        field_disc,
    })
}

impl CuspData {
    pub fn field_name(&self) -> String {
        if self.field_disc.is_one() {
            "Q".to_string()
        } else {
            format!("Q[sqrt({})]", self.field_disc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{curve_from_a, preset};

    #[test]
    fn fig8_cusp_field() {
        let c = preset("4_1").unwrap();
        let d = cusp_polynomial(&c).unwrap();
        assert_eq!(d.l_c, qi(-1));
        assert_eq!(d.poly, QPoly::from_ints(&[12, 0, 1]));
        assert_eq!(d.field_disc, BigInt::from(-3));
    }

    #[test]
    fn l2r_cusp_field() {
        let c = preset("L2R").unwrap();
        let d = cusp_polynomial(&c).unwrap();
        assert_eq!(d.field_disc, BigInt::from(-7));
    }

    #[test]
    fn regular_at_one_is_rejected() {
        // discriminant X⁴ + 6X² + 1, nonzero at X = 1
        let comp = crate::curve::APolyComponent::new(&[1], &[1, 0, 1], &[0, 0, -1], "reg");
        let c = curve_from_a(&comp).unwrap();
        assert_eq!(cusp_polynomial(&c).unwrap_err(), NoCusp);
    }
}
