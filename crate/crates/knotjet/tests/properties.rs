use knotjet::algebra::poly::QPoly;
use knotjet::algebra::ring::{q, QQ};
use knotjet::algebra::series::Series;
use knotjet::numerics::{bloch_wigner, five_term_residual, li2, lobachevsky};
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use std::f64::consts::PI;

fn rat() -> impl Strategy<Value = BigRational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
}

fn qpoly(max_len: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(rat(), 0..max_len).prop_map(|c| QPoly::new(&QQ, c))
}

// stay away from the singular points 0, 1, ∞ of D
fn generic_point() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, -3.0f64..3.0)
        .prop_map(|(x, y)| Complex64::new(x, y))
        .prop_filter("near 0 or 1", |z| {
            z.norm() > 1e-2 && (z - 1.0).norm() > 1e-2
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn product_evaluates_to_product(a in qpoly(6), b in qpoly(6), x in rat()) {
        let ab = a.mul(&QQ, &b);
        prop_assert_eq!(ab.eval(&QQ, &x), a.eval(&QQ, &x) * b.eval(&QQ, &x));
    }

    #[test]
    fn leibniz_rule(a in qpoly(6), b in qpoly(6)) {
        let lhs = a.mul(&QQ, &b).derivative(&QQ);
        let rhs = a.derivative(&QQ).mul(&QQ, &b).add(&QQ, &a.mul(&QQ, &b.derivative(&QQ)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn division_with_remainder(a in qpoly(8), b in qpoly(5)) {
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.divrem(&QQ, &b).unwrap();
        prop_assert_eq!(quo.mul(&QQ, &b).add(&QQ, &rem), a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn series_inverse(c in prop::collection::vec(rat(), 1..8), lead in 1i64..9, val in -3i32..3) {
        let mut c = c;
        c[0] = q(lead, 1);
        let s = Series::new(&QQ, val, c, val + 10);
        let one = s.mul(&QQ, &s.inv(&QQ).unwrap());
        prop_assert_eq!(one.coeff(&QQ, 0), Some(q(1, 1)));
        for e in 1..=one.prec {
            prop_assert_eq!(one.coeff(&QQ, e), Some(q(0, 1)));
        }
    }

    #[test]
    fn five_term_relation(z in generic_point(), w in generic_point()) {
        let p = 1.0 - z * w;
        prop_assume!(p.norm() > 1e-2 && (1.0 - z).norm() / p.norm() < 1e2 && (1.0 - w).norm() / p.norm() < 1e2);
        prop_assert!(five_term_residual(z, w).unwrap().abs() < 1e-9);
    }

    #[test]
    fn bloch_wigner_symmetries(z in generic_point()) {
        let d = bloch_wigner(z).unwrap();
        prop_assert!((bloch_wigner(z.conj()).unwrap() + d).abs() < 1e-12);
        prop_assert!((bloch_wigner(1.0 - z).unwrap() + d).abs() < 1e-12);
        prop_assert!((bloch_wigner(1.0 / z).unwrap() + d).abs() < 1e-12);
    }

    #[test]
    fn dilog_reflection(z in generic_point()) {
        // Li₂(z) + Li₂(1 − z) = π²/6 − ln z ln(1 − z) off the cuts
        prop_assume!(z.im.abs() > 1e-3);
        let lhs = li2(z) + li2(1.0 - z);
        let rhs = PI * PI / 6.0 - z.ln() * (1.0 - z).ln();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn lobachevsky_is_odd_periodic_and_duplicates(x in -4.0f64..4.0) {
        let l = lobachevsky(x);
        prop_assert!((lobachevsky(x + PI) - l).abs() < 1e-13);
        prop_assert!((lobachevsky(-x) + l).abs() < 1e-13);
        // Λ(2x) = 2Λ(x) + 2Λ(x + π/2)
        prop_assert!((lobachevsky(2.0 * x) - 2.0 * l - 2.0 * lobachevsky(x + PI / 2.0)).abs() < 1e-12);
    }
}
