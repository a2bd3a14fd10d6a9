//! A-polynomial components quadratic in `l` and their hyperelliptic model.
//!
//! A component `A = a(X)l² + b(X)l + c(X)` with `X = m²` is reduced to
//! `l = (P₁ + P₂√S)/R` with `S` a monic palindromic square-free quartic.

mod cusp;
pub mod presets;
pub mod splitting;
mod tame;

pub use cusp::{cusp_polynomial, CuspData};
pub use presets::{elliptic_preset, preset, resolve, EllipticPreset, PRESET_NAMES};
pub use splitting::Splitting;
pub use tame::{punctures, tame_symbol, Place, TameReport};

use crate::algebra::poly::{factor_rational, squarefree_part, Poly, QPoly};
use crate::algebra::ring::{qi, QQ};
use crate::algebra::rootalg::{rational_root_algebra, RootAlgebra};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// `A(m, l) = a(X)l² + b(X)l + c(X)`, `X = m²`, integer coefficients ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct APolyComponent {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    #[serde(default)]
    pub label: String,
}

/// On-disk curve description. Either `a`/`b`/`c`, or `l_coeffs` listing the
/// coefficient of `l^k` at index `k`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveFile {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub a: Option<Vec<i64>>,
    #[serde(default)]
    pub b: Option<Vec<i64>>,
    #[serde(default)]
    pub c: Option<Vec<i64>>,
    #[serde(default)]
    pub l_coeffs: Option<Vec<Vec<i64>>>,
    /// declared torsion order ς of {m, l}
    #[serde(default)]
    pub torsion: Option<u32>,
}

#[derive(Debug, thiserror::Error)]
pub enum CurveError {
    #[error("class violation: {0}")]
    Class(#[from] ClassViolation),
    #[error("malformed curve file: {0}")]
    Malformed(String),
    #[error("unknown curve reference {0:?}")]
    Unknown(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Ways a component can fall outside the genus-1, ι* = −id class.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ClassViolation {
    #[error("leading coefficient a(X) vanishes identically")]
    ZeroLeading,
    #[error("component has degree {0} in l; only quadratic components are supported")]
    LDegree(usize),
    #[error("discriminant b²−4ac is a square: the quadratic in l is reducible")]
    Reducible,
    #[error("square-free part of the discriminant is not palindromic")]
    NotPalindromic,
    #[error("square-free part of the discriminant has degree {0}, expected 4")]
    NotQuartic(usize),
    #[error("quartic has a repeated root")]
    NotSquarefree,
    #[error("discriminant divided by the quartic is not a perfect square")]
    SquarePart,
    #[error("dv vanishes to higher order at a ramification point (P₁ or P₂ vanishes there)")]
    DegenerateRamification,
}

/// Reduced model `l = (P₁ + P₂√S)/R` of one component.
#[derive(Clone, Debug)]
pub struct ASpectralCurve {
    pub component: APolyComponent,
    pub s: QPoly,
    pub p1: QPoly,
    pub p2: QPoly,
    pub r: QPoly,
    /// `S(X)/X² = σ((X + 1/X)/2)`, a polynomial in `w`
    pub sigma: QPoly,
    /// irreducible factors of `S` over Q
    pub factors: Vec<QPoly>,
    /// declared torsion order ς, if known
    pub torsion: Option<u32>,
}

/// Ramification points grouped by irreducible factor of `S`.
#[derive(Clone, Debug)]
pub struct RamificationSet {
    pub algebras: Vec<RootAlgebra<QQ>>,
    /// index of the factor containing 1/a for roots of factor i
    pub pairing: Vec<usize>,
    pub count: usize,
}

fn poly(c: &[i64]) -> QPoly {
    QPoly::from_ints(c)
}

impl APolyComponent {
    pub fn new(a: &[i64], b: &[i64], c: &[i64], label: &str) -> Self {
        APolyComponent {
            a: a.to_vec(),
            b: b.to_vec(),
            c: c.to_vec(),
            label: label.to_string(),
        }
    }

    pub fn polys(&self) -> (QPoly, QPoly, QPoly) {
        (poly(&self.a), poly(&self.b), poly(&self.c))
    }

    /// `b² − 4ac`
    pub fn discriminant(&self) -> QPoly {
        let (a, b, c) = self.polys();
        b.mul(&QQ, &b).sub(&QQ, &a.mul(&QQ, &c).scale(&QQ, &qi(4)))
    }
}

impl CurveFile {
    pub fn component(&self) -> Result<(APolyComponent, Option<u32>), ClassViolation> {
        let label = self.name.clone().unwrap_or_default();
        let (a, b, c) = match (&self.l_coeffs, &self.a, &self.b, &self.c) {
            (Some(ls), _, _, _) => {
                let deg = ls
                    .iter()
                    .rposition(|p| p.iter().any(|&x| x != 0))
                    .unwrap_or(0);
                if deg != 2 {
                    return Err(ClassViolation::LDegree(deg));
                }
                (ls[2].clone(), ls[1].clone(), ls[0].clone())
            }
            (None, Some(a), Some(b), Some(c)) => (a.clone(), b.clone(), c.clone()),
            _ => return Err(ClassViolation::ZeroLeading),
        };
        Ok((APolyComponent::new(&a, &b, &c, &label), self.torsion))
    }
}

/// Reduce a component to its hyperelliptic model, validating the class.
pub fn curve_from_a(comp: &APolyComponent) -> Result<ASpectralCurve, ClassViolation> {
    let (a, b, _c) = comp.polys();
    if a.is_zero() {
        return Err(ClassViolation::ZeroLeading);
    }
    let disc = comp.discriminant();
    if disc.is_zero() {
        return Err(ClassViolation::Reducible);
    }
    let sf = squarefree_part(&disc).map_err(|_| ClassViolation::Reducible)?;
    if sf.degree() == Some(0) {
        return Err(ClassViolation::Reducible);
    }
    if !sf.is_palindromic() && !sf.neg(&QQ).is_palindromic() {
        return Err(ClassViolation::NotPalindromic);
    }
    let d = sf.degree().unwrap();
    if d != 4 {
        return Err(ClassViolation::NotQuartic(d));
    }
    let s = sf.monic();
    if s.gcd(&s.derivative(&QQ)).degree() != Some(0) {
        return Err(ClassViolation::NotSquarefree);
    }
    let quot = disc.div_exact(&QQ, &s).ok_or(ClassViolation::SquarePart)?;
    let mut p2 = quot.sqrt().ok_or(ClassViolation::SquarePart)?;
    if p2.lead().is_some_and(|l| l < &BigRational::zero()) {
        p2 = p2.neg(&QQ);
    }
    let curve = ASpectralCurve {
        component: comp.clone(),
        sigma: sigma_from_s(&s),
        factors: factor_rational(&s).map_err(|_| ClassViolation::NotSquarefree)?,
        s,
        p1: b.neg(&QQ),
        p2,
        r: a.scale(&QQ, &qi(2)),
        torsion: None,
    };
    // simple zero of dv at every ramification point: P₁P₂ coprime to S
    if curve.s.gcd(&curve.p1.mul(&QQ, &curve.p2)).degree() != Some(0) {
        return Err(ClassViolation::DegenerateRamification);
    }
    Ok(curve)
}

/// σ for a monic palindromic quartic `X⁴ + c₃X³ + c₂X² + c₃X + 1`.
fn sigma_from_s(s: &QPoly) -> QPoly {
    let c3 = s.coeff(&QQ, 3);
    let c2 = s.coeff(&QQ, 2);
    Poly::new(&QQ, vec![c2 - qi(2), c3 * qi(2), qi(4)])
}

impl ASpectralCurve {
    pub fn label(&self) -> &str {
        &self.component.label
    }

    /// σ(w), checked by back-substitution `X²σ((X²+1)/(2X)) = S(X)`.
    pub fn sigma_of_w(&self) -> QPoly {
        debug_assert!(self.sigma_identity_holds());
        self.sigma.clone()
    }

    pub fn sigma_identity_holds(&self) -> bool {
        // X^2 · Σ σ_k ((X²+1)/(2X))^k, k ≤ 2
        let x2p1 = poly(&[1, 0, 1]);
        let mut acc = QPoly::zero();
        for (k, sk) in self.sigma.c.iter().enumerate() {
            let num = x2p1.pow(&QQ, k as u32);
            let xpow = QPoly::x(&QQ).pow(&QQ, (2 - k) as u32);
            let den = BigRational::from_integer(BigInt::from(1u64 << k));
            acc = acc.add(&QQ, &num.mul(&QQ, &xpow).scale(&QQ, &(sk / den)));
        }
        acc == self.s
    }

    pub fn s_is_palindromic(&self) -> bool {
        self.s.is_palindromic()
    }

    /// `a l² + b l + c = 0` for `l = (P₁ + P₂√S)/R`, as the two polynomial
    /// identities in the rational and √S parts.
    pub fn l_identity_holds(&self) -> bool {
        let (a, b, c) = self.component.polys();
        let r2 = self.r.mul(&QQ, &self.r);
        // a(P₁² + P₂²S) + bP₁R + cR² = 0  and  2aP₁P₂ + bP₂R = 0
        let rat = a
            .mul(
                &QQ,
                &self
                    .p1
                    .mul(&QQ, &self.p1)
                    .add(&QQ, &self.p2.mul(&QQ, &self.p2).mul(&QQ, &self.s)),
            )
            .add(&QQ, &b.mul(&QQ, &self.p1).mul(&QQ, &self.r))
            .add(&QQ, &c.mul(&QQ, &r2));
        let irr = a
            .mul(&QQ, &self.p1)
            .mul(&QQ, &self.p2)
            .scale(&QQ, &qi(2))
            .add(&QQ, &b.mul(&QQ, &self.p2).mul(&QQ, &self.r));
        rat.is_zero() && irr.is_zero()
    }

    /// Component rebuilt from the model: `R l² − 2P₁ l + (P₁² − P₂²S)·R/… `,
    /// scaled back to integer coefficients.
    pub fn reconstructed_component(&self) -> APolyComponent {
        // l satisfies (R l − P₁)² = P₂² S, i.e. R² l² − 2RP₁ l + P₁² − P₂²S = 0
        let a = self.r.mul(&QQ, &self.r);
        let b = self.r.mul(&QQ, &self.p1).scale(&QQ, &qi(-2));
        let c = self
            .p1
            .mul(&QQ, &self.p1)
            .sub(&QQ, &self.p2.mul(&QQ, &self.p2).mul(&QQ, &self.s));
        // common content
        let all = [a.clone(), b.clone(), c.clone()];
        let g = all.iter().fold(QPoly::zero(), |g, p| {
            if g.is_zero() {
                p.clone()
            } else {
                g.gcd(p)
            }
        });
        let scale_to_int = |p: &QPoly| -> Vec<i64> {
            let q = p.div_exact(&QQ, &g).unwrap();
            q.c.iter()
                .map(|x| num_traits::ToPrimitive::to_i64(&x.to_integer()).unwrap())
                .collect()
        };
        let mut out = APolyComponent::new(
            &scale_to_int(&a),
            &scale_to_int(&b),
            &scale_to_int(&c),
            &self.component.label,
        );
        // fix the overall rational content
        let content = content_of(&[&out.a, &out.b, &out.c]);
        if content > 1 {
            for v in [&mut out.a, &mut out.b, &mut out.c] {
                for x in v.iter_mut() {
                    *x /= content;
                }
            }
        }
        out
    }

    pub fn ramification(&self) -> RamificationSet {
        let algebras: Vec<_> = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| rational_root_algebra(f, &format!("f{i}")).unwrap())
            .collect();
        // 1/a is a root of the reversed factor
        let pairing = self
            .factors
            .iter()
            .map(|f| {
                let rev = f.reversed().primitive();
                self.factors
                    .iter()
                    .position(|g| g.primitive() == rev)
                    .expect("palindromic S")
            })
            .collect();
        RamificationSet {
            count: self.factors.iter().map(|f| f.degree().unwrap()).sum(),
            algebras,
            pairing,
        }
    }

    /// Cusp field discriminant `σ(1)`: the field is `Q[√σ(1)]`.
    pub fn sigma_at_one(&self) -> BigRational {
        self.sigma.eval(&QQ, &BigRational::one())
    }
}

fn content_of(vs: &[&Vec<i64>]) -> i64 {
    let mut g = 0i64;
    for v in vs {
        for &x in v.iter() {
            g = num_integer::gcd(g, x);
        }
    }
    g.abs()
}

/// Load a curve file (JSON).
pub fn load_curve_file(path: &Path) -> Result<ASpectralCurve, CurveError> {
    let text = std::fs::read_to_string(path)?;
    let file: CurveFile =
        serde_json::from_str(&text).map_err(|e| CurveError::Malformed(e.to_string()))?;
    let (mut comp, torsion) = file.component()?;
    if comp.label.is_empty() {
        comp.label = path.display().to_string();
    }
    let mut curve = curve_from_a(&comp)?;
    curve.torsion = torsion;
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig8() -> APolyComponent {
        APolyComponent::new(&[0, 0, 1], &[-1, 1, 2, 1, -1], &[0, 0, 1], "4_1")
    }

    fn l2r() -> APolyComponent {
        APolyComponent::new(&[0, 0, 1], &[-1, 2, 2, -1], &[0, 1], "L2R")
    }

    #[test]
    fn fig8_model() {
        let c = curve_from_a(&fig8()).unwrap();
        assert_eq!(c.s, poly(&[1, -2, -1, -2, 1]));
        assert_eq!(c.p1, poly(&[1, -1, -2, -1, 1]));
        assert_eq!(c.p2, poly(&[-1, 0, 1]));
        assert_eq!(c.r, poly(&[0, 0, 2]));
        assert_eq!(c.sigma_of_w(), poly(&[-3, -4, 4]));
        assert!(c.l_identity_holds());
        assert!(c.sigma_identity_holds());
    }

    #[test]
    fn l2r_model() {
        let c = curve_from_a(&l2r()).unwrap();
        assert_eq!(c.s, poly(&[1, -2, -5, -2, 1]));
        assert_eq!(c.p1, poly(&[1, -2, -2, 1]));
        assert_eq!(c.p2, poly(&[-1, 1]));
        assert_eq!(c.r, poly(&[0, 0, 2]));
        assert_eq!(c.sigma_of_w(), poly(&[-7, -4, 4]));
        assert!(c.l_identity_holds());
    }

    #[test]
    fn non_palindromic_rejected() {
        let bad = APolyComponent::new(&[1], &[1, 0, 0, 1], &[1], "bad");
        assert_eq!(
            curve_from_a(&bad).unwrap_err(),
            ClassViolation::NotPalindromic
        );
    }

    #[test]
    fn other_rejections() {
        assert_eq!(
            curve_from_a(&APolyComponent::new(&[0], &[1], &[1], "")).unwrap_err(),
            ClassViolation::ZeroLeading
        );
        // (l − 1)(l − X): reducible
        let red = APolyComponent::new(&[1], &[-1, -1], &[0, 1], "");
        assert_eq!(curve_from_a(&red).unwrap_err(), ClassViolation::Reducible);
        // disc = X² + 1 · 4 ... palindromic quadratic: not a quartic
        let quad = APolyComponent::new(&[1], &[0], &[-1, 0, -1], "");
        assert_eq!(
            curve_from_a(&quad).unwrap_err(),
            ClassViolation::NotQuartic(2)
        );
    }

    #[test]
    fn sigma_of_x4_plus_1() {
        let s = poly(&[1, 0, 0, 0, 1]);
        let sig = sigma_from_s(&s);
        assert_eq!(sig, poly(&[-2, 0, 4]));
    }

    #[test]
    fn ramification_pairing() {
        let c = curve_from_a(&fig8()).unwrap();
        let r = c.ramification();
        assert_eq!(r.count, 4);
        // each factor is self-reciprocal for 4_1
        assert_eq!(r.pairing, vec![0, 1]);
    }

    #[test]
    fn reconstruction_is_idempotent() {
        for comp in [fig8(), l2r()] {
            let c = curve_from_a(&comp).unwrap();
            let again = curve_from_a(&c.reconstructed_component()).unwrap();
            assert_eq!(again.s, c.s);
            assert_eq!(again.sigma, c.sigma);
        }
    }

    #[test]
    fn curve_file_rejects_cubic_in_l() {
        let f = CurveFile {
            name: None,
            a: None,
            b: None,
            c: None,
            l_coeffs: Some(vec![vec![1], vec![0], vec![0], vec![1]]),
            torsion: None,
        };
        assert_eq!(f.component().unwrap_err(), ClassViolation::LDegree(3));
    }
}
