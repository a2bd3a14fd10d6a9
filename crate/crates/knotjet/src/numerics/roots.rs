//! Complex polynomial roots (Aberth–Ehrlich).

use num_complex::Complex64;

pub fn horner(c: &[Complex64], x: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a)
}

fn derivative(c: &[Complex64]) -> Vec<Complex64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &a)| a * i as f64)
        .collect()
}

/// All roots of `Σ cᵢ xⁱ` (ascending, leading coefficient nonzero).
pub fn poly_roots(c: &[Complex64]) -> Vec<Complex64> {
    let mut c = c.to_vec();
    while c.last().is_some_and(|a| a.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return vec![];
    }
    let lead = c[n];
    let c: Vec<_> = c.iter().map(|&a| a / lead).collect();
    if n == 1 {
        return vec![-c[0]];
    }
    let dc = derivative(&c);
    // Cauchy bound for the initial circle
    let radius = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius * 0.5,
                0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64,
            )
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let p = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / horner(&dc, z[i]);
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let step = ratio / (1.0 - ratio * s);
            z[i] -= step;
            moved = moved.max(step.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_roots() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let r = poly_roots(&[one, one, one]);
        for z in r {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!((z * z * z - one).norm() < 1e-12);
        }
        let r = poly_roots(&[-one * 2.0, zero, one]);
        let mut re: Vec<f64> = r.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + 2f64.sqrt()).abs() < 1e-12 && (re[1] - 2f64.sqrt()).abs() < 1e-12);
    }
}
