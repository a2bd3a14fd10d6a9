//! Dilogarithm, Bloch–Wigner and Lobachevsky functions in double precision.

use super::NumericError;
use num_complex::Complex64;
use std::f64::consts::PI;

// B_n/(n+1)! for n = 1, 2, 4, 6, …
const BF: [f64; 11] = [
    -1.0 / 4.0,
    1.0 / 36.0,
    -1.0 / 3600.0,
    1.0 / 211680.0,
    -1.0 / 10886400.0,
    1.0 / 526901760.0,
    -4.064761645144226e-11,
    8.921691020456453e-13,
    -1.993929586072108e-14,
    4.518980029619918e-16,
    -1.035651761218125e-17,
];

/// `Σ B_n uⁿ⁺¹/(n+1)!`, the dilogarithm in the variable `u = −ln(1−z)`.
fn bernoulli_series(u: Complex64) -> Complex64 {
    let u2 = u * u;
    let mut acc = Complex64::new(0.0, 0.0);
    for &b in BF[2..].iter().rev() {
        acc = acc * u2 + b;
    }
    u + u2 * (BF[0] + u * (BF[1] + u2 * acc))
}

/// Principal branch of `Li₂`, cut along `[1, ∞)`.
pub fn li2(z: Complex64) -> Complex64 {
    let zeta2 = PI * PI / 6.0;
    let one = Complex64::new(1.0, 0.0);
    if z == one {
        return Complex64::new(zeta2, 0.0);
    }
    let nz = z.norm_sqr();
    if nz < 1e-30 {
        return z;
    }
    if z.re <= 0.5 {
        if nz > 1.0 {
            let l = (-z).ln();
            -bernoulli_series(-(one - one / z).ln()) - 0.5 * l * l - zeta2
        } else {
            bernoulli_series(-(one - z).ln())
        }
    } else if nz <= 2.0 * z.re {
        // |1 − z| ≤ 1
        let l = z.ln();
        -bernoulli_series(-l) - l * (one - z).ln() + zeta2
    } else {
        let l = (-z).ln();
        -bernoulli_series(-(one - one / z).ln()) - 0.5 * l * l - zeta2
    }
}

/// `D(z) = Im Li₂(z) + arg(1 − z) ln|z|`.
pub fn bloch_wigner(z: Complex64) -> Result<f64, NumericError> {
    if z.norm() < 1e-300 || (z - 1.0).norm() < 1e-300 {
        return Err(NumericError::Singular(format!("D({z})")));
    }
    Ok(li2(z).im + (1.0 - z).arg() * z.norm().ln())
}

/// `Λ(x) = −∫₀ˣ ln|2 sin t| dt = ½ Im Li₂(e^{2ix})`.
pub fn lobachevsky(x: f64) -> f64 {
    0.5 * li2(Complex64::from_polar(1.0, 2.0 * x)).im
}

/// `D(z) + D(z′) + D(1 − zz′) + D((1−z)/(1−zz′)) + D((1−z′)/(1−zz′))`.
pub fn five_term_residual(z: Complex64, zp: Complex64) -> Result<f64, NumericError> {
    let p = 1.0 - z * zp;
    let terms = [z, zp, p, (1.0 - z) / p, (1.0 - zp) / p];
    terms.iter().map(|&t| bloch_wigner(t)).sum()
}

/// Volume of the figure-eight complement with cusp parameter `u = iθ`,
/// `2[Λ(θ + β/2) − Λ(θ − β/2)]`, `β = arccos(cos 2θ − 1/2)`.
pub fn figure_eight_volume(theta: f64) -> Result<f64, NumericError> {
    let c = (2.0 * theta).cos() - 0.5;
    if c.abs() > 1.0 {
        return Err(NumericError::Singular(format!(
            "no hyperbolic structure at θ = {theta}"
        )));
    }
    let b = c.acos();
    Ok(2.0 * (lobachevsky(theta + b / 2.0) - lobachevsky(theta - b / 2.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dilog_special_values() {
        let z2 = PI * PI / 6.0;
        assert!((li2(c(-1.0, 0.0)).re + z2 / 2.0).abs() < 1e-15);
        assert!((li2(c(0.5, 0.0)).re - (z2 / 2.0 - 0.5 * 2f64.ln().powi(2))).abs() < 1e-15);
        // Li₂(2) = π²/4 − iπ ln 2 on the principal branch (approached from below)
        let v = li2(c(2.0, -1e-300));
        assert!((v.re - PI * PI / 4.0).abs() < 1e-14);
        // Li₂(i) = −π²/48 + iG
        let g = 0.915_965_594_177_219;
        let v = li2(c(0.0, 1.0));
        assert!((v.re + PI * PI / 48.0).abs() < 1e-15 && (v.im - g).abs() < 1e-15);
    }

    #[test]
    fn bloch_wigner_values() {
        let d = bloch_wigner(Complex64::from_polar(1.0, PI / 3.0)).unwrap();
        assert!((d - 1.014_941_606_409_653_6).abs() < 1e-14);
        assert_eq!(bloch_wigner(c(0.3, 0.0)).unwrap(), 0.0);
        assert!(bloch_wigner(c(1.0, 0.0)).is_err());
        assert!(bloch_wigner(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn lobachevsky_values() {
        assert_eq!(lobachevsky(0.0), 0.0);
        assert!((lobachevsky(PI / 6.0) - 0.507_470_803_204_826_8).abs() < 1e-14);
        assert!((4.0 * lobachevsky(PI / 6.0) - 2.029_883_212_819_307).abs() < 1e-14);
        assert!((figure_eight_volume(PI).unwrap() - 2.029_883_212_819_307).abs() < 1e-13);
        assert!(figure_eight_volume(PI / 3.0).unwrap().abs() < 1e-13);
    }
}
