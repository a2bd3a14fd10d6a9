//! Weierstrass ℘ data: Laurent expansion at 0 and Taylor towers at half-periods.

use crate::algebra::ring::Ring;
use crate::algebra::series::Series;

/// `c_k` with `℘(s) = s⁻² + Σ_{k≥1} c_k s^{2k}`; index 0 is unused.
pub fn laurent_coeffs<R: Ring>(r: &R, g2: &R::Elem, g3: &R::Elem, kmax: usize) -> Vec<R::Elem> {
    let mut c = vec![r.zero(); kmax.max(2) + 1];
    c[1] = r.mul(g2, &r.from_frac(1, 20));
    c[2] = r.mul(g3, &r.from_frac(1, 28));
    for k in 3..=kmax {
        let mut acc = r.zero();
        for m in 1..=k - 2 {
            acc = r.add(&acc, &r.mul(&c[m], &c[k - 1 - m]));
        }
        let den = ((2 * k + 3) * (k - 2)) as i64;
        c[k] = r.mul(&acc, &r.from_frac(3, den));
    }
    c.truncate(kmax + 1);
    c
}

/// `℘^{(p)}(s)` as a Laurent series known through `s^prec`.
pub fn laurent_series<R: Ring>(r: &R, c: &[R::Elem], p: u32, prec: i32) -> Series<R::Elem> {
    // s⁻² term, then c_k s^{2k}
    let lo = -2 - p as i32;
    let len = (prec - lo + 1).max(0) as usize;
    let mut out = vec![r.zero(); len];
    let mut put = |e: i32, coeff: R::Elem| {
        if e <= prec && e >= lo {
            out[(e - lo) as usize] = coeff;
        }
    };
    // d^p/ds^p s^e = e(e−1)…(e−p+1) s^{e−p}
    let falling = |e: i32| -> i64 { (0..p as i32).map(|j| (e - j) as i64).product() };
    put(-2 - p as i32, r.from_int(falling(-2)));
    for (k, ck) in c.iter().enumerate().skip(1) {
        let e = 2 * k as i32;
        if e < p as i32 {
            continue;
        }
        if e - p as i32 > prec {
            break;
        }
        put(e - p as i32, r.mul_int(ck, falling(e)));
    }
    assert!(
        2 * (c.len() as i32 - 1) - p as i32 >= prec,
        "Laurent table too short for precision {prec}"
    );
    Series::new(r, lo, out, prec)
}

/// Taylor coefficients `a_k` of `℘(ω + t)` at a half-period with `℘(ω) = e`.
pub fn halfperiod_taylor<R: Ring>(r: &R, e: &R::Elem, g2: &R::Elem, kmax: usize) -> Vec<R::Elem> {
    let mut a = vec![e.clone(), r.zero()];
    let half_g2 = r.mul(g2, &r.from_frac(1, 2));
    let mut k = 0;
    while a.len() <= kmax {
        let mut acc = r.zero();
        for i in 0..=k {
            acc = r.add(&acc, &r.mul(&a[i], &a[k - i]));
        }
        acc = r.mul_int(&acc, 6);
        if k == 0 {
            acc = r.sub(&acc, &half_g2);
        }
        a.push(r.mul(&acc, &r.from_frac(1, ((k + 2) * (k + 1)) as i64)));
        k += 1;
    }
    a.truncate(kmax + 1);
    a
}

/// `℘^{(2k)}(ω)` for `k ≤ kmax`.
pub fn halfperiod_even_derivatives<R: Ring>(
    r: &R,
    e: &R::Elem,
    g2: &R::Elem,
    kmax: usize,
) -> Vec<R::Elem> {
    let a = halfperiod_taylor(r, e, g2, 2 * kmax);
    let mut fact = r.one();
    let mut out = Vec::new();
    for (j, aj) in a.iter().enumerate() {
        if j > 0 {
            fact = r.mul_int(&fact, j as i64);
        }
        if j % 2 == 0 {
            out.push(r.mul(aj, &fact));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{q, qi, QQ};

    #[test]
    fn ode_residual_vanishes() {
        // (℘')² − 4℘³ + g₂℘ + g₃ = 0 to precision
        let (g2, g3) = (q(1, 12), q(-161, 216));
        let c = laurent_coeffs(&QQ, &g2, &g3, 20);
        let p = laurent_series(&QQ, &c, 0, 30);
        let dp = laurent_series(&QQ, &c, 1, 29);
        let lhs = dp.mul(&QQ, &dp);
        let p3 = p.mul(&QQ, &p).mul(&QQ, &p).scale(&QQ, &qi(4));
        let res = lhs
            .sub(&QQ, &p3)
            .add(&QQ, &p.scale(&QQ, &g2))
            .add(&QQ, &Series::monomial(&QQ, g3, 0));
        assert!(res.prec >= 20);
        for e in res.val..=res.prec {
            assert_eq!(res.coeff(&QQ, e), Some(qi(0)), "s^{e}");
        }
        // ℘'' = 6℘² − g₂/2
        let d2 = laurent_series(&QQ, &c, 2, 20);
        let rhs = p
            .mul(&QQ, &p)
            .scale(&QQ, &qi(6))
            .sub(&QQ, &Series::monomial(&QQ, q(1, 24), 0));
        let diff = d2.sub(&QQ, &rhs);
        for e in diff.val..=diff.prec {
            assert_eq!(diff.coeff(&QQ, e), Some(qi(0)));
        }
    }

    #[test]
    fn fourth_derivative_at_half_period() {
        let (g2, g3, e) = (q(1, 12), q(-161, 216), q(-7, 12));
        let d = halfperiod_even_derivatives(&QQ, &e, &g2, 2);
        assert_eq!(d[1], qi(6) * &e * &e - &g2 / qi(2));
        let want = qi(12) * (qi(4) * &e * &e * &e - &g2 * &e - &g3)
            + qi(12) * &e * (qi(6) * &e * &e - &g2 / qi(2));
        // e is a root of 4x³ − g₂x − g₃, so the first term vanishes
        assert_eq!(d[2], want);
    }
}
