//! Elliptic invariants, theta fourth powers and Serre-derivative tables.
//!
//! The `tᵢ = θ̃ᵢ⁴/(2ϖ_A)²` are differences of the roots `e_a, e_b, e_c` of
//! `4x³ − g₂x − g₃` (classical invariants): `t₂ = e_b − e_c`,
//! `t₃ = e_a − e_c`, `t₄ = e_a − e_b`.

pub mod diffring;

use crate::algebra::graded::Graded;
use crate::algebra::poly::{squarefree_int, QPoly};
use crate::algebra::ring::{q, qi, Quad, Ring, QQ};
use crate::algebra::rootalg::RootAlgebra;
use crate::curve::presets::{ClosedForm, Radicand, ThetaShape};
use crate::numerics::roots::poly_roots;
use diffring::{e4, e6_twice, p_polys};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ModularError {
    #[error("quartic is not a squarefree degree-4 polynomial")]
    BadQuartic,
    #[error("singular cubic (Δ = 0)")]
    Singular,
}

/// `(g₂, g₃)` as tabulated, plus the classical pair driving ℘.
///
/// The tabulated pair is the negative of the classical quartic invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticInvariants {
    pub g2: BigRational,
    pub g3: BigRational,
    pub g2_classical: BigRational,
    pub g3_classical: BigRational,
    /// `g₂³ − 27g₃²` on the classical pair
    pub delta_model: BigRational,
}

impl EllipticInvariants {
    pub fn from_classical(g2c: BigRational, g3c: BigRational) -> Self {
        let delta = &g2c * &g2c * &g2c - qi(27) * &g3c * &g3c;
        EllipticInvariants {
            g2: -&g2c,
            g3: -&g3c,
            g2_classical: g2c,
            g3_classical: g3c,
            delta_model: delta,
        }
    }

    /// From a minimal model `[a₁, a₂, a₃, a₄, a₆]`: `g₂ = c₄/12`, `g₃ = c₆/216`.
    pub fn from_ainvs(a: [i64; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a.map(BigInt::from);
        let b2 = &a1 * &a1 + BigInt::from(4) * &a2;
        let b4 = BigInt::from(2) * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + BigInt::from(4) * &a6;
        let c4 = &b2 * &b2 - BigInt::from(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + BigInt::from(36) * &b2 * &b4 - BigInt::from(216) * &b6;
        EllipticInvariants::from_classical(
            BigRational::new(c4, BigInt::from(12)),
            BigRational::new(c6, BigInt::from(216)),
        )
    }
}

/// Invariants of `y² = S(X)` for a squarefree quartic.
pub fn elliptic_invariants(s: &QPoly) -> Result<EllipticInvariants, ModularError> {
    if s.degree() != Some(4) || s.gcd(&s.derivative(&QQ)).degree() != Some(0) {
        return Err(ModularError::BadQuartic);
    }
    // S = aX⁴ + 4bX³ + 6cX² + 4dX + e
    let a = s.coeff(&QQ, 4);
    let b = s.coeff(&QQ, 3) / qi(4);
    let c = s.coeff(&QQ, 2) / qi(6);
    let d = s.coeff(&QQ, 1) / qi(4);
    let e = s.coeff(&QQ, 0);
    let g2 = &a * &e - qi(4) * &b * &d + qi(3) * &c * &c;
    let g3 = &a * &c * &e + qi(2) * &b * &c * &d - &a * &d * &d - &b * &b * &e - &c * &c * &c;
    Ok(EllipticInvariants::from_classical(g2, g3))
}

/// An element of the field holding the `tᵢ`.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgNum {
    /// `a + b√d`
    Quad(BigRational, BigRational),
    /// pair-algebra coordinates over the 2-torsion cubic
    Pair(Vec<Vec<BigRational>>),
}

#[derive(Clone, Debug)]
pub enum ThetaField {
    /// one root of the cubic is rational
    Quadratic { d: BigInt, ring: Quad<QQ> },
    /// irreducible cubic: ordered pairs of roots `(e_c, e_a)`
    Cubic {
        ring: RootAlgebra<RootAlgebra<QQ>>,
        e_c: Complex64,
        e_a: Complex64,
    },
}

#[derive(Clone, Debug)]
pub struct ThetaQuartics {
    pub inv: EllipticInvariants,
    pub field: ThetaField,
    /// `[t₂, t₃, t₄]`
    pub t: [AlgNum; 3],
    /// selected index in `2..=4`
    pub i0: usize,
}

/// Signed permutations of `(t₂, t₃, t₄)` mapping solutions to solutions.
pub const ORBIT: [[(i8, usize); 3]; 6] = [
    [(1, 0), (1, 1), (1, 2)],
    [(-1, 2), (-1, 1), (-1, 0)],
    [(-1, 0), (1, 2), (1, 1)],
    [(-1, 1), (-1, 2), (1, 0)],
    [(1, 2), (-1, 0), (-1, 1)],
    [(1, 1), (1, 0), (-1, 2)],
];

macro_rules! with_field {
    ($tq:expr, |$r:ident, $wrap:ident, $un:ident| $body:expr) => {
        match &$tq.field {
            ThetaField::Quadratic { ring: $r, .. } => {
                let $wrap = |x: (BigRational, BigRational)| AlgNum::Quad(x.0, x.1);
                let $un = |x: &AlgNum| match x {
                    AlgNum::Quad(a, b) => (a.clone(), b.clone()),
                    _ => unreachable!(),
                };
                $body
            }
            ThetaField::Cubic { ring: $r, .. } => {
                let $wrap = AlgNum::Pair;
                let $un = |x: &AlgNum| match x {
                    AlgNum::Pair(v) => v.clone(),
                    _ => unreachable!(),
                };
                $body
            }
        }
    };
}

fn relations<R: Ring>(r: &R, t: &[R::Elem; 3], g2c: &BigRational, g3c: &BigRational) -> bool {
    let jacobi = r.sub(&r.add(&t[0], &t[2]), &t[1]);
    let e4v = e4().eval(r, &t[0], &t[2], &r.zero());
    let e6v = e6_twice().eval(r, &t[0], &t[2], &r.zero());
    r.is_zero(&jacobi)
        && e4v == r.from_rational(&(q(3, 4) * g2c))
        && e6v == r.from_rational(&(q(27, 4) * g3c))
}

/// Solve for the `tᵢ`.
pub fn theta_quartics(inv: &EllipticInvariants) -> Result<ThetaQuartics, ModularError> {
    if inv.delta_model.is_zero() {
        return Err(ModularError::Singular);
    }
    let (g2, g3) = (&inv.g2_classical, &inv.g3_classical);
    let cubic = QPoly::new(&QQ, vec![-g3.clone(), -g2.clone(), qi(0), qi(4)]);
    if let Some(r) = cubic.rational_roots().into_iter().next() {
        // other roots: −r/2 ± √(g₂ − 3r²)/2
        let disc = g2 - qi(3) * &r * &r;
        let nd = disc.numer() * disc.denom();
        let d = squarefree_int(&nd);
        let f = crate::algebra::poly::rational_sqrt(&BigRational::from_integer(&nd / &d))
            .expect("square cofactor");
        let coef = f / (BigRational::from_integer(disc.denom().clone()) * qi(2));
        let ring = Quad::new(QQ, BigRational::from_integer(d.clone()));
        let e_c = ring.embed(r.clone());
        let half = -&r / qi(2);
        let e_a = (half.clone(), -&coef);
        let e_b = (half, coef);
        let t = [
            ring.sub(&e_b, &e_c),
            ring.sub(&e_a, &e_c),
            ring.sub(&e_a, &e_b),
        ];
        let t = t.map(|(a, b)| AlgNum::Quad(a, b));
        return Ok(ThetaQuartics {
            inv: inv.clone(),
            field: ThetaField::Quadratic { d, ring },
            t,
            i0: 4,
        });
    }
    let base = RootAlgebra::new(QQ, cubic.monic(), "e").expect("monic cubic");
    let ring = base.pair();
    let alpha = ring.embed(base.gen());
    let beta = ring.gen();
    let (e_c, e_a) = numeric_cubic_roots(g2, g3);
    let e_b = ring.neg(&ring.add(&alpha, &beta));
    let t = [
        ring.sub(&e_b, &alpha),
        ring.sub(&beta, &alpha),
        ring.sub(&beta, &e_b),
    ];
    Ok(ThetaQuartics {
        inv: inv.clone(),
        field: ThetaField::Cubic { ring, e_c, e_a },
        t: t.map(AlgNum::Pair),
        i0: 4,
    })
}

/// Real root first, then the root of negative imaginary part (or the smaller real one).
fn numeric_cubic_roots(g2: &BigRational, g3: &BigRational) -> (Complex64, Complex64) {
    let c = |x: f64| Complex64::new(x, 0.0);
    let (g2f, g3f) = (g2.to_f64().unwrap(), g3.to_f64().unwrap());
    let coeffs = [c(-g3f), c(-g2f), c(0.0), c(4.0)];
    let mut roots = poly_roots(&coeffs);
    // Newton polish
    for z in roots.iter_mut() {
        for _ in 0..4 {
            let f = ((*z * 4.0) * *z - g2f) * *z - g3f;
            let df = *z * *z * 12.0 - g2f;
            *z -= f / df;
        }
    }
    roots.sort_by(|a, b| a.im.abs().total_cmp(&b.im.abs()));
    let e_c = c(roots[0].re);
    let mut rest = [roots[1], roots[2]];
    rest.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
    (e_c, rest[0])
}

impl ThetaQuartics {
    pub fn relations_hold(&self, t: &[AlgNum; 3]) -> bool {
        let (g2, g3) = (&self.inv.g2_classical, &self.inv.g3_classical);
        with_field!(self, |r, _w, un| relations(
            r,
            &[un(&t[0]), un(&t[1]), un(&t[2])],
            g2,
            g3
        ))
    }

    /// The six images of `t` under the orbit action.
    pub fn orbit(&self) -> Vec<[AlgNum; 3]> {
        with_field!(self, |r, w, un| {
            let t = [un(&self.t[0]), un(&self.t[1]), un(&self.t[2])];
            ORBIT
                .iter()
                .map(|g| g.map(|(s, i)| w(if s > 0 { t[i].clone() } else { r.neg(&t[i]) })))
                .collect()
        })
    }

    /// `(t₂t₃t₄)² = Δ/16`
    pub fn discriminant_check(&self, t: &[AlgNum; 3]) -> bool {
        let delta = &self.inv.delta_model / qi(16);
        with_field!(self, |r, _w, un| {
            let p = r.mul(&r.mul(&un(&t[0]), &un(&t[1])), &un(&t[2]));
            r.mul(&p, &p) == r.from_rational(&delta)
        })
    }

    pub fn add(&self, a: &AlgNum, b: &AlgNum) -> AlgNum {
        with_field!(self, |r, w, un| w(r.add(&un(a), &un(b))))
    }

    pub fn from_rational(&self, x: &BigRational) -> AlgNum {
        with_field!(self, |r, w, _un| w(r.from_rational(x)))
    }

    pub fn to_complex(&self, x: &AlgNum) -> Complex64 {
        let f = |v: &BigRational| v.to_f64().unwrap();
        match (&self.field, x) {
            (ThetaField::Quadratic { d, .. }, AlgNum::Quad(a, b)) => {
                let df = d.to_f64().unwrap();
                let sq = if df < 0.0 {
                    Complex64::new(0.0, (-df).sqrt())
                } else {
                    Complex64::new(df.sqrt(), 0.0)
                };
                sq * f(b) + f(a)
            }
            (ThetaField::Cubic { e_c, e_a, .. }, AlgNum::Pair(v)) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, inner) in v.iter().enumerate() {
                    let ia: Complex64 = inner
                        .iter()
                        .enumerate()
                        .map(|(i, c)| e_c.powu(i as u32) * f(c))
                        .sum();
                    acc += ia * e_a.powu(j as u32);
                }
                acc
            }
            _ => unreachable!("element from another field"),
        }
    }

    /// `x` as a rational number if it has no irrational part.
    pub fn as_rational(&self, x: &AlgNum) -> Option<BigRational> {
        match x {
            AlgNum::Quad(a, b) => b.is_zero().then(|| a.clone()),
            AlgNum::Pair(v) => {
                let rest_zero = v.iter().skip(1).all(|c| c.iter().all(Zero::is_zero));
                let first = v.first()?;
                (rest_zero && first.iter().skip(1).all(Zero::is_zero))
                    .then(|| first.first().cloned().unwrap_or_else(BigRational::zero))
            }
        }
    }

    /// `d` with `tᵢ ∈ Q[√d]`, when the field is quadratic.
    pub fn quadratic_disc(&self) -> Option<&BigInt> {
        match &self.field {
            ThetaField::Quadratic { d, .. } => Some(d),
            ThetaField::Cubic { .. } => None,
        }
    }

    pub fn t_i0(&self) -> &AlgNum {
        &self.t[self.i0 - 2]
    }
}

/// `T_{2d;i}` for `d ≤ d_max`, `i ∈ {2, 3, 4}`, in units `(2ϖ_A)^{2d}`.
#[derive(Clone, Debug)]
pub struct SerreTable {
    pub i0: usize,
    /// `rows[d][i − 2]`
    pub rows: Vec<[AlgNum; 3]>,
}

pub fn serre_table(tq: &ThetaQuartics, d_max: usize) -> SerreTable {
    let polys: Vec<Vec<_>> = (2..=4).map(|i| p_polys(i, d_max)).collect();
    let rows = (0..=d_max)
        .map(|d| {
            let scale = BigRational::new(BigInt::one(), BigInt::from(3).pow(d as u32));
            [0, 1, 2].map(|k| {
                let p = polys[k][d].at_e2_zero();
                with_field!(tq, |r, w, un| {
                    let v = p.eval(r, &un(&tq.t[0]), &un(&tq.t[2]), &r.zero());
                    w(r.mul(&v, &r.from_rational(&scale)))
                })
            })
        })
        .collect();
    SerreTable { i0: tq.i0, rows }
}

impl SerreTable {
    pub fn value(&self, d: usize, i: usize) -> &AlgNum {
        &self.rows[d][i - 2]
    }

    pub fn graded(&self, d: usize, i: usize) -> Graded<AlgNum> {
        Graded::new(self.value(d, i).clone(), 2 * d as i32)
    }

    /// `[T₀, T₂, T₄, …]` at `i₀`, when all are rational.
    pub fn rational_column(&self, tq: &ThetaQuartics) -> Option<Vec<BigRational>> {
        self.rows
            .iter()
            .map(|row| tq.as_rational(&row[self.i0 - 2]))
            .collect()
    }
}

fn radicand_value(r: &Radicand) -> f64 {
    (r.p as f64 + r.q as f64 * (r.r as f64).sqrt()) / r.den as f64
}

/// Evaluate a tabulated closed form for `t_{i₀}`.
pub fn closed_form_value(shape: ThetaShape, r: &Radicand) -> Complex64 {
    let alpha = radicand_value(r).cbrt();
    let (sa, isa) = (alpha.sqrt(), 1.0 / alpha.sqrt());
    match shape {
        ThetaShape::Plus => Complex64::new(0.0, 2.0 / 6f64.sqrt() * (sa + isa)),
        ThetaShape::Minus => Complex64::new(0.0, 1.0 / 3f64.sqrt() * (sa - isa)),
    }
}

#[derive(Clone, Debug)]
pub struct ClosedFormReport {
    pub t_i0: Complex64,
    pub stated: Complex64,
    pub corrected: Complex64,
    /// distance to `±t_{i₀}` (the sign is an orbit action)
    pub stated_err: f64,
    pub corrected_err: f64,
}

pub fn closed_form_check(tq: &ThetaQuartics, cf: &ClosedForm) -> ClosedFormReport {
    let t = tq.to_complex(tq.t_i0());
    let dist = |z: Complex64| (z - t).norm().min((z + t).norm());
    let stated = closed_form_value(cf.shape, &cf.stated);
    let corrected = closed_form_value(cf.shape, &cf.corrected);
    ClosedFormReport {
        t_i0: t,
        stated,
        corrected,
        stated_err: dist(stated),
        corrected_err: dist(corrected),
    }
}

/// Exactly one `tᵢ` purely imaginary and the other two conjugate (Δ < 0).
pub fn conjugation_structure_holds(tq: &ThetaQuartics) -> bool {
    let z: Vec<Complex64> = tq.t.iter().map(|x| tq.to_complex(x)).collect();
    let tol = 1e-10;
    let imag: Vec<usize> = (0..3)
        .filter(|&i| z[i].re.abs() < tol && z[i].im.abs() > tol)
        .collect();
    if !tq.inv.delta_model.is_negative() {
        return z.iter().all(|x| x.im.abs() < tol);
    }
    if imag.len() != 1 {
        return false;
    }
    let others: Vec<usize> = (0..3).filter(|i| *i != imag[0]).collect();
    (z[others[0]] - z[others[1]].conj()).norm() < tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::preset;
    use crate::curve::presets::ELLIPTIC_PRESETS;

    fn quad(x: &AlgNum) -> (BigRational, BigRational) {
        match x {
            AlgNum::Quad(a, b) => (a.clone(), b.clone()),
            _ => panic!(),
        }
    }

    #[test]
    fn invariants_of_presets() {
        let inv = elliptic_invariants(&preset("4_1").unwrap().s).unwrap();
        assert_eq!((inv.g2.clone(), inv.g3.clone()), (q(-1, 12), q(161, 216)));
        assert_eq!(inv.delta_model, qi(-15));
        let inv = elliptic_invariants(&preset("L2R").unwrap().s).unwrap();
        assert_eq!((inv.g2.clone(), inv.g3.clone()), (q(-25, 12), q(253, 216)));
        assert_eq!(inv.delta_model, qi(-28));
    }

    #[test]
    fn x4_plus_1_has_g3_zero() {
        let inv = elliptic_invariants(&QPoly::from_ints(&[1, 0, 0, 0, 1])).unwrap();
        assert!(inv.g3.is_zero());
        assert!(!inv.delta_model.is_zero());
        assert_eq!(
            elliptic_invariants(&QPoly::from_ints(&[0, 0, 1, 0, 1])),
            Err(ModularError::BadQuartic)
        );
    }

    #[test]
    fn minimal_models_match() {
        for e in ELLIPTIC_PRESETS {
            let inv = EllipticInvariants::from_ainvs(e.ainvs);
            assert_eq!(inv.delta_model, qi(e.delta), "{}", e.label);
            if let Some(name) = e.a_curve {
                assert_eq!(elliptic_invariants(&preset(name).unwrap().s).unwrap(), inv);
            }
        }
    }

    #[test]
    fn fig8_theta_quartics() {
        let tq = theta_quartics(&elliptic_invariants(&preset("4_1").unwrap().s).unwrap()).unwrap();
        assert_eq!(tq.quadratic_disc(), Some(&BigInt::from(-15)));
        assert_eq!(quad(&tq.t[0]), (q(7, 8), q(1, 8)));
        assert_eq!(quad(&tq.t[1]), (q(7, 8), q(-1, 8)));
        assert_eq!(quad(&tq.t[2]), (qi(0), q(-1, 4)));
        assert!(tq.relations_hold(&tq.t));
        assert!(tq.discriminant_check(&tq.t));
    }

    #[test]
    fn orbit_and_discriminant_on_every_curve() {
        for e in ELLIPTIC_PRESETS {
            let tq = theta_quartics(&EllipticInvariants::from_ainvs(e.ainvs)).unwrap();
            for t in tq.orbit() {
                assert!(tq.relations_hold(&t), "{}", e.label);
                assert!(tq.discriminant_check(&t), "{}", e.label);
            }
            assert!(conjugation_structure_holds(&tq), "{}", e.label);
            let mut bad = tq.t.clone();
            bad[0] = tq.add(&bad[0], &tq.from_rational(&qi(1)));
            assert!(!tq.discriminant_check(&bad));
        }
    }

    #[test]
    fn serre_columns() {
        let cases = [
            ("4_1", [q(7, 12), q(-47, 48), q(-301, 576), q(-28285, 6912)]),
            ("L2R", [q(11, 12), q(-71, 48), q(319, 576), q(-16333, 6912)]),
        ];
        for (name, want) in cases {
            let tq =
                theta_quartics(&elliptic_invariants(&preset(name).unwrap().s).unwrap()).unwrap();
            let tab = serre_table(&tq, 4);
            let col = tab.rational_column(&tq).unwrap();
            assert_eq!(col[0], qi(1));
            assert_eq!(&col[1..], &want[..], "{name}");
        }
    }

    #[test]
    fn cm_closed_forms() {
        for e in ELLIPTIC_PRESETS.iter().filter(|e| e.closed_form.is_some()) {
            let tq = theta_quartics(&EllipticInvariants::from_ainvs(e.ainvs)).unwrap();
            let rep = closed_form_check(&tq, e.closed_form.as_ref().unwrap());
            assert!(rep.corrected_err < 1e-12, "{} {:?}", e.label, rep);
            assert!(rep.stated_err > 1e-3, "{}", e.label);
        }
    }
}
