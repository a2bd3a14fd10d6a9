//! Assembly of the jet coefficients `ĵ_χ` from amplitudes and Serre tensors.

use crate::algebra::poly::QPoly;
use crate::algebra::ring::{Ring, QQ};
use crate::curve::ASpectralCurve;
use crate::modular::{elliptic_invariants, serre_table, theta_quartics};
use crate::tr::{exact_amplitudes, AmplitudeTable, TrError};
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, thiserror::Error)]
pub enum JetError {
    #[error("amplitude G_{0}^{{{1},({2})}} missing")]
    Missing(usize, usize, usize),
    #[error("term of ϖ-grade {0} in ĵ_{1}")]
    Grade(i64, usize),
    #[error("σ-exponent {0}/2 does not fit σ^{{-{1}/2}}Q[w]")]
    SigmaExponent(i64, i64),
    #[error("Serre column at i₀ is not rational")]
    IrrationalSerre,
    #[error("σ vanishes at the evaluation point")]
    Branchpoint,
    #[error("χ = {0} is beyond the supported range 1..=3")]
    Chi(usize),
    #[error(transparent)]
    Tr(#[from] TrError),
    #[error("{0}")]
    Curve(String),
}

/// `num(w)·σ(w)^{−r/2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaPoly {
    pub num: QPoly,
    pub r: i64,
}

impl SigmaPoly {
    pub fn constant(c: BigRational) -> Self {
        SigmaPoly {
            num: QPoly::new(&QQ, vec![c]),
            r: 0,
        }
    }

    pub fn from_coeffs(c: &[BigRational], r: i64) -> Self {
        SigmaPoly {
            num: QPoly::new(&QQ, c.to_vec()),
            r,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, o: &Self) -> Self {
        SigmaPoly {
            num: self.num.mul(&QQ, &o.num),
            r: self.r + o.r,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        SigmaPoly {
            num: self.num.scale(&QQ, c),
            r: self.r,
        }
    }

    /// Rewrite over `σ^{target/2}`, multiplying or dividing by whole powers of `σ`.
    pub fn with_r(&self, target: i64, sigma: &QPoly) -> Result<Self, JetError> {
        if self.is_zero() {
            return Ok(SigmaPoly {
                num: QPoly::zero(),
                r: target,
            });
        }
        if (target - self.r) % 2 != 0 {
            return Err(JetError::SigmaExponent(self.r, target));
        }
        let mut num = self.num.clone();
        if target >= self.r {
            num = num.mul(&QQ, &sigma.pow(&QQ, ((target - self.r) / 2) as u32));
        } else {
            for _ in 0..(self.r - target) / 2 {
                num = num
                    .div_exact(&QQ, sigma)
                    .ok_or(JetError::SigmaExponent(self.r, target))?;
            }
        }
        Ok(SigmaPoly { num, r: target })
    }

    pub fn add(&self, o: &Self, sigma: &QPoly) -> Result<Self, JetError> {
        let r = self.r.max(o.r);
        let (a, b) = (self.with_r(r, sigma)?, o.with_r(r, sigma)?);
        Ok(SigmaPoly {
            num: a.num.add(&QQ, &b.num),
            r,
        })
    }

    /// `(num(w₀), σ(w₀))`.
    pub fn eval_parts(&self, w0: &BigRational, sigma: &QPoly) -> (BigRational, BigRational) {
        (self.num.eval(&QQ, w0), sigma.eval(&QQ, w0))
    }
}

/// `ĵ_χ = num(w)/σ^{3χ/2}`, of ϖ-grade 0.
#[derive(Clone, Debug, PartialEq)]
pub struct JetCoefficient {
    pub chi: usize,
    pub value: SigmaPoly,
    pub grade: i64,
}

/// `coeff · sigma^{half_exp/2}` with `sigma^{1/2}` the principal root.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialValue {
    pub coeff: BigRational,
    pub sigma: BigRational,
    pub half_exp: i64,
}

impl SpecialValue {
    pub fn to_complex(&self) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        let s = num_complex::Complex64::new(self.sigma.to_f64().unwrap_or(f64::NAN), 0.0);
        s.sqrt().powi(self.half_exp as i32) * self.coeff.to_f64().unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Debug)]
struct Term {
    val: SigmaPoly,
    grade: i64,
}

impl Term {
    fn mul(&self, o: &Term) -> Term {
        Term {
            val: self.val.mul(&o.val),
            grade: self.grade + o.grade,
        }
    }

    fn scale(&self, c: &BigRational) -> Term {
        Term {
            val: self.val.scale(c),
            grade: self.grade,
        }
    }
}

struct Inputs<'a> {
    amps: &'a AmplitudeTable,
    t: &'a [BigRational],
}

impl Inputs<'_> {
    fn g(&self, n: usize, h: usize, d: usize) -> Result<Term, JetError> {
        let a = self
            .amps
            .get(&(n, h, d))
            .ok_or(JetError::Missing(n, h, d))?;
        Ok(Term {
            val: SigmaPoly::from_coeffs(&a.num, a.r),
            grade: a.grade,
        })
    }

    /// `T_{2d}`
    fn t(&self, d: usize) -> Term {
        let v = self.t.get(d).cloned().unwrap_or_else(BigRational::zero);
        Term {
            val: SigmaPoly::constant(v),
            grade: 2 * d as i64,
        }
    }

    fn tt(&self, d: &[usize]) -> Term {
        d.iter().fold(
            Term {
                val: SigmaPoly::constant(BigRational::one()),
                grade: 0,
            },
            |acc, &k| acc.mul(&self.t(k)),
        )
    }

    fn lin(&self, parts: &[(i64, &[usize])]) -> Term {
        // Σ c·Π T, all of one grade
        let mut v = BigRational::zero();
        let mut grade = 0;
        for (c, ds) in parts {
            let t = self.tt(ds);
            grade = t.grade;
            v += BigRational::from_integer((*c).into()) * t.val.num.coeff(&QQ, 0);
        }
        Term {
            val: SigmaPoly::constant(v),
            grade,
        }
    }
}

/// The summands of `2ĵ_χ`, each of ϖ-grade 0.
pub fn jet_terms(
    amps: &AmplitudeTable,
    t: &[BigRational],
    chi: usize,
) -> Result<Vec<SigmaPoly>, JetError> {
    let x = Inputs { amps, t };
    let g = |n, h, d| x.g(n, h, d);
    let half = BigRational::new(1.into(), 2.into());
    let terms: Vec<Term> = match chi {
        1 => vec![g(1, 1, 0)?, g(3, 0, 0)?, x.t(1).mul(&g(1, 0, 2)?)],
        2 => {
            let g1 = g(1, 0, 2)?;
            vec![
                g(2, 1, 0)?,
                g(4, 0, 0)?,
                x.t(1).mul(&g(2, 0, 2)?),
                x.lin(&[(1, &[2]), (-1, &[1, 1])])
                    .mul(&g1)
                    .mul(&g1)
                    .scale(&half),
            ]
        }
        3 => {
            let g1 = g(1, 0, 2)?;
            let v22 = x.lin(&[(1, &[2]), (-1, &[1, 1])]);
            let v24 = x.lin(&[(1, &[3]), (-1, &[1, 2])]);
            let v222 = x.lin(&[(1, &[3]), (-3, &[1, 2]), (2, &[1, 1, 1])]);
            vec![
                g(1, 2, 0)?,
                g(3, 1, 0)?,
                x.t(1).mul(&g(1, 1, 2)?),
                g(5, 0, 0)?,
                x.t(1).mul(&g(3, 0, 2)?),
                x.t(2).mul(&g(1, 0, 4)?),
                v22.mul(&g1).mul(&g(0, 1, 2)?),
                v22.mul(&g1).mul(&g(2, 0, 2)?),
                v24.mul(&g1).mul(&g(0, 0, 4)?),
                v222.mul(&g1)
                    .mul(&g1)
                    .mul(&g1)
                    .scale(&BigRational::new(1.into(), 6.into())),
            ]
        }
        _ => return Err(JetError::Chi(chi)),
    };
    terms
        .into_iter()
        .map(|t| {
            if t.grade == 0 || t.val.is_zero() {
                Ok(t.val)
            } else {
                Err(JetError::Grade(t.grade, chi))
            }
        })
        .collect()
}

/// `ĵ₁ … ĵ_{χ_max}` from an amplitude table and `[T₀, T₂, T₄, …]`.
pub fn assemble_jets(
    amps: &AmplitudeTable,
    t: &[BigRational],
    sigma: &QPoly,
    chi_max: usize,
) -> Result<Vec<JetCoefficient>, JetError> {
    let half = BigRational::new(1.into(), 2.into());
    (1..=chi_max)
        .map(|chi| {
            let target = 3 * chi as i64;
            let mut acc = SigmaPoly {
                num: QPoly::zero(),
                r: target,
            };
            for term in jet_terms(amps, t, chi)? {
                acc = acc.add(&term, sigma)?;
            }
            let value = acc.scale(&half).with_r(target, sigma)?;
            Ok(JetCoefficient {
                chi,
                value,
                grade: 0,
            })
        })
        .collect()
}

/// Serre column `[T₀, T₂, …, T_{2 d_max}]` of a curve, when rational.
pub fn serre_column(curve: &ASpectralCurve, d_max: usize) -> Result<Vec<BigRational>, JetError> {
    let inv = elliptic_invariants(&curve.s).map_err(|e| JetError::Curve(e.to_string()))?;
    let tq = theta_quartics(&inv).map_err(|e| JetError::Curve(e.to_string()))?;
    serre_table(&tq, d_max)
        .rational_column(&tq)
        .ok_or(JetError::IrrationalSerre)
}

/// Full pipeline: amplitudes through level `χ_max`, Serre column, assembly.
pub fn jets_for_curve(
    curve: &ASpectralCurve,
    chi_max: usize,
) -> Result<Vec<JetCoefficient>, JetError> {
    if chi_max == 0 {
        return Ok(Vec::new());
    }
    let amps = exact_amplitudes(curve, chi_max)?;
    let t = serre_column(curve, 3)?;
    assemble_jets(&amps, &t, &curve.sigma, chi_max)
}

pub fn evaluate_jet(
    jet: &JetCoefficient,
    w0: &BigRational,
    sigma: &QPoly,
) -> Result<SpecialValue, JetError> {
    let (coeff, s) = jet.value.eval_parts(w0, sigma);
    if s.is_zero() {
        return Err(JetError::Branchpoint);
    }
    Ok(SpecialValue {
        coeff,
        sigma: s,
        half_exp: -jet.value.r,
    })
}

/// Coefficients `c_χ` of `ε_N^χ`, `ε_N = iπ/(σ(1)^{3/2}N)`, so that `ĵ_χ(1)ℏ^χ = c_χ ε_N^χ` at `ℏ = iπ/N`.
#[derive(Clone, Debug, PartialEq)]
pub struct KashaevExpansion {
    pub sigma_one: BigRational,
    pub coeffs: Vec<BigRational>,
}

pub fn kashaev_expansion(
    jets: &[JetCoefficient],
    sigma: &QPoly,
) -> Result<KashaevExpansion, JetError> {
    let one = BigRational::one();
    let mut coeffs = Vec::with_capacity(jets.len());
    for j in jets {
        let v = evaluate_jet(j, &one, sigma)?;
        debug_assert_eq!(v.half_exp, -3 * j.chi as i64);
        coeffs.push(v.coeff);
    }
    Ok(KashaevExpansion {
        sigma_one: sigma.eval(&QQ, &one),
        coeffs,
    })
}

/// `ĵ₂ + c` where `C_ℏ = 1 + cℏ² + o(ℏ²)` normalizes against a Hikami-type integral.
pub fn hikami_j2(
    j2: &JetCoefficient,
    c: &BigRational,
    sigma: &QPoly,
) -> Result<SigmaPoly, JetError> {
    j2.value.add(&SigmaPoly::constant(c.clone()), sigma)
}

/// `Σ` of rational term values at `w₀` when every σ-exponent is even.
pub fn rational_terms_at(
    terms: &[SigmaPoly],
    w0: &BigRational,
    sigma: &QPoly,
) -> Option<Vec<BigRational>> {
    terms
        .iter()
        .map(|t| {
            if t.r % 2 != 0 {
                return None;
            }
            let (n, s) = t.eval_parts(w0, sigma);
            let sp = QQ.pow(&s, t.r.unsigned_abs() as u32 / 2);
            if t.r >= 0 {
                QQ.div(&n, &sp)
            } else {
                Some(n * sp)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::q;

    fn ints(c: &[i64], den: i64) -> QPoly {
        QPoly::new(&QQ, c.iter().rev().map(|&x| q(x, den)).collect())
    }

    #[test]
    fn figure_eight_jets() {
        let c = crate::curve::preset("4_1").unwrap();
        let j = jets_for_curve(&c, 3).unwrap();
        assert_eq!(j[0].value.num, ints(&[8, -4, -10, 17], -12));
        assert_eq!(j[1].value.num, ints(&[16, -8, -20, 14], 1));
        assert_eq!(
            j[2].value.num,
            ints(
                &[256, -512, -8704, 2048, 29792, -46928, 1272, 49164, -27469],
                90
            )
        );
        let k = kashaev_expansion(&j, &c.sigma).unwrap();
        assert_eq!(k.sigma_one, q(-3, 1));
        assert_eq!(k.coeffs, vec![q(-11, 12), q(2, 1), q(-1081, 90)]);
    }

    #[test]
    fn bare_combination_without_tensors() {
        let c = crate::curve::preset("4_1").unwrap();
        let amps = exact_amplitudes(&c, 1).unwrap();
        let j = assemble_jets(&amps, &[], &c.sigma, 1).unwrap();
        let a = &amps[&(1, 1, 0)];
        let b = &amps[&(3, 0, 0)];
        let bare = SigmaPoly::from_coeffs(&a.num, a.r)
            .add(&SigmaPoly::from_coeffs(&b.num, b.r), &c.sigma)
            .unwrap();
        assert_eq!(j[0].value, bare.scale(&q(1, 2)));
        assert!(jets_for_curve(&c, 0).unwrap().is_empty());
    }

    #[test]
    fn l2r_jets_and_hikami_shift() {
        let c = crate::curve::preset("L2R").unwrap();
        let j = jets_for_curve(&c, 2).unwrap();
        // the displayed ĵ₁ has denominator 24, i.e. it is 2ĵ₁
        assert_eq!(j[0].value.num, ints(&[-40, 44, -14, -127], 48));
        assert_eq!(
            j[1].value.num,
            ints(&[-64, 192, 1168, 3488, -2300, -2996, 2071], 128)
        );
        let h = hikami_j2(&j[1], &q(1, 128), &c.sigma).unwrap();
        let shift = c.sigma.pow(&QQ, 3).scale(&QQ, &q(1, 128));
        assert_eq!(h.num, j[1].value.num.add(&QQ, &shift));
        let v = evaluate_jet(&j[1], &q(1, 1), &c.sigma).unwrap();
        assert_eq!((v.sigma.clone(), v.half_exp), (q(-7, 1), -6));
    }
}
