//! Running the recursion over word-size primes and lifting the amplitudes to Q.

use super::engine::{Context, FormTable};
use super::integrate::Amplitude;
use super::TrError;
use crate::algebra::primes::large_primes;
use crate::algebra::ring::{rational_reconstruct, Fp, Ring, QQ};
use crate::curve::splitting::TowerElem;
use crate::curve::ASpectralCurve;
use num_bigint::BigUint;
use num_rational::BigRational;
use std::collections::BTreeMap;

pub type AmplitudeTable = BTreeMap<(usize, usize, usize), Amplitude<BigRational>>;

const MAX_ORDER: i32 = 256;
const MAX_PRIMES: usize = 64;

/// Run the recursion, doubling the working order until nothing is truncated.
pub fn run_forms<F: Ring>(
    base: F,
    curve: &ASpectralCurve,
    max_level: usize,
) -> Result<(Context<F>, FormTable<TowerElem<F>>), TrError> {
    let pmax = (2 * max_level + 2) as u8;
    let mut order = 2 * max_level as i32 + 6;
    loop {
        let attempt = Context::new(base.clone(), curve, order, pmax).and_then(|ctx| {
            let om = ctx.run(max_level)?;
            Ok((ctx, om))
        });
        match attempt {
            Err(e) if e.is_truncation() && order < MAX_ORDER => order *= 2,
            other => return other,
        }
    }
}

/// Exact amplitudes computed over Q directly.
pub fn rational_amplitudes(
    curve: &ASpectralCurve,
    max_level: usize,
) -> Result<AmplitudeTable, TrError> {
    let (ctx, om) = run_forms(QQ, curve, max_level)?;
    Ok(ctx
        .amplitudes(&om, max_level)?
        .into_iter()
        .map(|a| ((a.n, a.h, a.d), a))
        .collect())
}

fn modular_amplitudes(
    p: u64,
    curve: &ASpectralCurve,
    max_level: usize,
) -> Result<Vec<Amplitude<u64>>, TrError> {
    let (ctx, om) = run_forms(Fp::new(p), curve, max_level)?;
    ctx.amplitudes(&om, max_level)
}

fn shape(a: &Amplitude<u64>) -> (usize, usize, usize, i64, usize) {
    (a.n, a.h, a.d, a.r, a.num.len())
}

/// Exact amplitudes by Chinese remaindering and rational reconstruction;
/// each candidate is checked against one further prime before it is accepted.
pub fn exact_amplitudes(
    curve: &ASpectralCurve,
    max_level: usize,
) -> Result<AmplitudeTable, TrError> {
    let primes = large_primes(MAX_PRIMES);
    let first = modular_amplitudes(primes[0], curve, max_level)?;
    let mut modulus = BigUint::from(primes[0]);
    let mut residues: Vec<Vec<BigUint>> = first
        .iter()
        .map(|a| a.num.iter().map(|&x| BigUint::from(x)).collect())
        .collect();
    for &p in &primes[1..] {
        let next = modular_amplitudes(p, curve, max_level)?;
        if next.len() != first.len() || next.iter().zip(&first).any(|(a, b)| shape(a) != shape(b)) {
            return Err(TrError::Reconstruction);
        }
        let f = Fp::new(p);
        if let Some(cand) = reconstruct(&first, &residues, &modulus) {
            let agrees = cand.iter().zip(&next).all(|(c, m)| {
                c.num
                    .iter()
                    .zip(&m.num)
                    .all(|(q, &x)| f.try_rational(q) == Some(x))
            });
            if agrees {
                return Ok(cand.into_iter().map(|a| ((a.n, a.h, a.d), a)).collect());
            }
        }
        // fold the new prime in
        let m_mod_p = f.reduce_int(&modulus.clone().into());
        let m_inv = f.inv(&m_mod_p).expect("distinct primes");
        for (res, amp) in residues.iter_mut().zip(&next) {
            for (x, &b) in res.iter_mut().zip(&amp.num) {
                let a_mod_p = f.reduce_int(&x.clone().into());
                let t = f.mul(&f.sub(&b, &a_mod_p), &m_inv);
                *x = &*x + &modulus * BigUint::from(t);
            }
        }
        modulus *= BigUint::from(p);
    }
    Err(TrError::Reconstruction)
}

fn reconstruct(
    shapes: &[Amplitude<u64>],
    residues: &[Vec<BigUint>],
    m: &BigUint,
) -> Option<Vec<Amplitude<BigRational>>> {
    shapes
        .iter()
        .zip(residues)
        .map(|(a, res)| {
            let num = res
                .iter()
                .map(|x| rational_reconstruct(x, m))
                .collect::<Option<Vec<_>>>()?;
            Some(Amplitude {
                n: a.n,
                h: a.h,
                d: a.d,
                r: a.r,
                num,
                grade: a.grade,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_lift_agrees_with_rational_run() {
        for name in ["4_1", "L2R"] {
            let c = crate::curve::preset(name).unwrap();
            assert_eq!(
                exact_amplitudes(&c, 2).unwrap(),
                rational_amplitudes(&c, 2).unwrap(),
                "{name}"
            );
        }
    }
}
