//! Tame symbols `T_p({m, l})` at the zeros and poles of `m` and `l`.

use super::ASpectralCurve;
use crate::algebra::poly::QPoly;
use crate::numerics::roots::{horner, poly_roots};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;

const TOL: f64 = 1e-9;

/// Local data at one place: orders and leading coefficients of `m`, `l`.
#[derive(Clone, Debug)]
pub struct Place {
    pub over: String,
    pub ord_m: i64,
    pub m0: Complex64,
    pub ord_l: i64,
    pub l0: Complex64,
}

#[derive(Clone, Debug)]
pub struct TameReport {
    pub places: Vec<(Place, Complex64)>,
    pub product: Complex64,
}

impl TameReport {
    pub fn all_unimodular(&self) -> bool {
        self.places
            .iter()
            .all(|(_, t)| (t.norm() - 1.0).abs() < TOL)
    }

    pub fn product_is_one(&self) -> bool {
        (self.product - 1.0).norm() < TOL
    }
}

/// `(−1)^{ord m · ord l} m₀^{ord l} l₀^{−ord m}`
pub fn tame_symbol(p: &Place) -> Complex64 {
    let sign = if (p.ord_m * p.ord_l).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    p.m0.powi(p.ord_l as i32) * p.l0.powi(-p.ord_m as i32) * sign
}

fn to_c(p: &QPoly) -> Vec<Complex64> {
    p.c.iter()
        .map(|x| Complex64::new(x.to_f64().unwrap(), 0.0))
        .collect()
}

/// One Newton-polygon vertex: `(l-degree j, order ν, leading coefficient)`.
type Vertex = (i64, i64, Complex64);

/// Branches `l ≈ κ t^q` read off the lower hull; returns `(u, v, κ)` with `q = u/v`.
fn branches(verts: &[Vertex]) -> Vec<(i64, i64, Complex64)> {
    let mut hull: Vec<Vertex> = Vec::new();
    for &p in verts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or above segment a→p
            if (b.1 - a.1) * (p.0 - a.0) >= (p.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::new();
    for w in hull.windows(2) {
        let ((j1, n1, _), (j2, n2, _)) = (w[0], w[1]);
        let (num, den) = (n1 - n2, j2 - j1);
        let g = num.gcd(&den);
        let (u, v) = (num / g, den / g);
        // edge polynomial over every vertex on the segment
        let mut e = vec![Complex64::new(0.0, 0.0); (j2 - j1) as usize + 1];
        for &(j, n, lc) in verts {
            if j >= j1 && j <= j2 && (n - n1) * den == (n2 - n1) * (j - j1) {
                e[(j - j1) as usize] = lc;
            }
        }
        for kappa in poly_roots(&e) {
            out.push((u, v, kappa));
        }
    }
    out
}

/// Keep one representative per place: `v` conjugate branches share `κ^v`.
fn dedupe(
    places: Vec<(Place, Complex64)>,
    v_of: impl Fn(&Place) -> i64,
) -> Vec<(Place, Complex64)> {
    let mut kept: Vec<(Place, Complex64, i64)> = Vec::new();
    for (p, t) in places {
        let v = v_of(&p);
        if let Some(k) = kept
            .iter_mut()
            .find(|(q, s, n)| q.over == p.over && (*s - t).norm() < 1e-7 && *n < v)
        {
            k.2 += 1;
            continue;
        }
        kept.push((p, t, 1));
    }
    kept.into_iter().map(|(p, t, _)| (p, t)).collect()
}

fn valuation_at(c: &[Complex64], x0: Complex64) -> Option<(i64, Complex64)> {
    // Taylor coefficients at x0 until one is nonzero
    let mut d = c.to_vec();
    let scale = c.iter().map(|a| a.norm()).fold(1.0, f64::max);
    let mut fact = 1.0;
    for k in 0..c.len() {
        let val = horner(&d, x0) / fact;
        if val.norm() > 1e-8 * scale {
            return Some((k as i64, val));
        }
        d = d
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| a * i as f64)
            .collect();
        fact *= (k + 1) as f64;
    }
    None
}

/// Tame symbols at every place where `m` or `l` has a zero or a pole.
pub fn punctures(curve: &ASpectralCurve) -> TameReport {
    let (a, b, c) = curve.component.polys();
    let coefs = [to_c(&c), to_c(&b), to_c(&a)];
    let mut places: Vec<(Place, Complex64)> = Vec::new();
    let one = Complex64::new(1.0, 0.0);

    // m → 0: orders in m are twice the X-valuations
    let mut verts = Vec::new();
    for (j, p) in coefs.iter().enumerate() {
        if let Some((nu, lc)) = valuation_at(p, Complex64::new(0.0, 0.0)) {
            verts.push((j as i64, 2 * nu, lc));
        }
    }
    for (u, v, kappa) in branches(&verts) {
        let p = Place {
            over: "m=0".into(),
            ord_m: v,
            m0: one,
            ord_l: u,
            l0: kappa,
        };
        let t = tame_symbol(&p);
        places.push((p, t));
    }

    // m → ∞ in the parameter 1/m
    let mut verts = Vec::new();
    for (j, p) in coefs.iter().enumerate() {
        if !p.is_empty() {
            verts.push((j as i64, -2 * (p.len() as i64 - 1), *p.last().unwrap()));
        }
    }
    for (u, v, kappa) in branches(&verts) {
        let p = Place {
            over: "m=inf".into(),
            ord_m: -v,
            m0: one,
            ord_l: u,
            l0: kappa,
        };
        let t = tame_symbol(&p);
        places.push((p, t));
    }

    // finite X₀ ≠ 0 with a(X₀) = 0 or c(X₀) = 0
    let mut xs: Vec<Complex64> = Vec::new();
    for p in [&coefs[0], &coefs[2]] {
        for r in poly_roots(p) {
            if r.norm() > 1e-9 && !xs.iter().any(|x| (x - r).norm() < 1e-6) {
                xs.push(r);
            }
        }
    }
    for x0 in xs {
        let mut verts = Vec::new();
        for (j, p) in coefs.iter().enumerate() {
            if let Some((nu, lc)) = valuation_at(p, x0) {
                verts.push((j as i64, nu, lc));
            }
        }
        for (u, _v, _kappa) in branches(&verts) {
            if u == 0 {
                continue;
            }
            for sgn in [1.0, -1.0] {
                let m0 = x0.sqrt() * sgn;
                let p = Place {
                    over: format!("X={x0:.6}, m={m0:.6}"),
                    ord_m: 0,
                    m0,
                    ord_l: u,
                    l0: one,
                };
                let t = tame_symbol(&p);
                places.push((p, t));
            }
        }
    }

    let places = dedupe(places, |p| p.ord_m.abs().max(1));
    let product = places.iter().fold(one, |acc, (_, t)| acc * t);
    TameReport { places, product }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::preset;

    #[test]
    fn trivial_orders_give_one() {
        let p = Place {
            over: "generic".into(),
            ord_m: 0,
            m0: Complex64::new(0.3, 2.0),
            ord_l: 0,
            l0: Complex64::new(-1.5, 0.1),
        };
        assert!((tame_symbol(&p) - 1.0).norm() < 1e-15);
    }

    #[test]
    fn steinberg_away_from_support() {
        // {f, 1 − f} at a point where f ∉ {0, 1, ∞}: both orders vanish
        let f = Complex64::new(0.25, 0.7);
        let p = Place {
            over: "x".into(),
            ord_m: 0,
            m0: f,
            ord_l: 0,
            l0: 1.0 - f,
        };
        assert!((tame_symbol(&p) - 1.0).norm() < 1e-15);
    }

    #[test]
    fn fig8_punctures() {
        let r = punctures(&preset("4_1").unwrap());
        assert_eq!(r.places.len(), 4);
        assert!(r.all_unimodular());
        assert!(r.product_is_one());
    }

    #[test]
    fn l2r_punctures() {
        let r = punctures(&preset("L2R").unwrap());
        assert!(r.all_unimodular());
        assert!(r.product_is_one());
    }
}
