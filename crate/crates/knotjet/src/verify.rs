//! The golden suite: reference values of the shipped presets, closed-form
//! recursion checks, property suites and numeric validators.
//!
//! Each [`Criterion`] aggregates several sub-checks; `notes` records every
//! mismatch and any informational finding.

use crate::algebra::poly::QPoly;
use crate::algebra::primes::large_primes;
use crate::algebra::ring::{q, qi, Fp, QQ};
use crate::algebra::series::Series;
use crate::curve::presets::ELLIPTIC_PRESETS;
use crate::curve::{preset, ASpectralCurve};
use crate::golden::{self, GoldenCurve};
use crate::jets::{
    assemble_jets, evaluate_jet, hikami_j2, jet_terms, kashaev_expansion, rational_terms_at,
    serre_column, JetCoefficient,
};
use crate::modular::diffring::{e4, e6_twice, first_log_derivative, p_polys, Poly3};
use crate::modular::{
    closed_form_check, elliptic_invariants, theta_quartics, AlgNum, EllipticInvariants,
};
use crate::numerics::{
    bloch_wigner, five_term_residual, geometric_leading_order, lobachevsky, period_checks,
    standard_cycles, volume_path, NumericConfig, Sheet,
};
use crate::tr::wp::{laurent_coeffs, laurent_series};
use crate::tr::{exact_amplitudes, run_forms, to_w, Amplitude, AmplitudeTable, Context, TrError};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: &'static str,
    pub title: String,
    pub pass: bool,
    /// the failure is a documented misprint in the reference values
    pub erratum: bool,
    pub notes: Vec<String>,
}

impl Criterion {
    fn new(id: &'static str, title: impl Into<String>) -> Self {
        Criterion {
            id,
            title: title.into(),
            pass: true,
            erratum: false,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        if !ok {
            self.pass = false;
            self.notes.push(format!("mismatch: {}", what()));
        }
        ok
    }

    fn info(&mut self, s: impl Into<String>) {
        self.notes.push(format!("info: {}", s.into()));
    }

    fn fail_with<E: std::fmt::Display>(&mut self, what: &str, e: E) {
        self.pass = false;
        self.notes.push(format!("error: {what}: {e}"));
    }
}

fn qq(p: (i64, i64)) -> BigRational {
    q(p.0, p.1)
}

fn show(c: &[BigRational]) -> String {
    let v: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(", "))
}

/// Golden amplitudes as an engine table.
pub fn golden_table(g: &[golden::GoldenAmplitude]) -> AmplitudeTable {
    g.iter()
        .map(|a| {
            (
                (a.n, a.h, a.d),
                Amplitude {
                    n: a.n,
                    h: a.h,
                    d: a.d,
                    r: a.r,
                    num: a.num(),
                    grade: -(a.d as i64),
                },
            )
        })
        .collect()
}

/// Everything computed once per preset.
pub struct CurveData {
    pub curve: ASpectralCurve,
    pub golden: Option<&'static GoldenCurve>,
    pub level: usize,
    pub amps: Result<AmplitudeTable, String>,
    pub jets: Result<Vec<JetCoefficient>, String>,
}

impl CurveData {
    /// Amplitudes through the deepest tabulated level (3 when there is no table).
    pub fn new(curve: ASpectralCurve) -> Self {
        let golden = golden::curve(curve.label());
        let level = golden
            .map(|g| {
                g.amplitudes
                    .iter()
                    .map(|a| 2 * a.h + a.n + a.d - 2)
                    .max()
                    .unwrap_or(1)
            })
            .unwrap_or(3);
        let amps = exact_amplitudes(&curve, level).map_err(|e| e.to_string());
        let jets = match (&amps, serre_column(&curve, 3)) {
            (Ok(a), Ok(t)) => assemble_jets(a, &t, &curve.sigma, level).map_err(|e| e.to_string()),
            (Err(e), _) => Err(e.clone()),
            (_, Err(e)) => Err(e.to_string()),
        };
        CurveData {
            curve,
            golden,
            level,
            amps,
            jets,
        }
    }

    pub fn preset(name: &str) -> Self {
        Self::new(preset(name).expect("shipped preset"))
    }

    fn name(&self) -> &str {
        self.curve.label()
    }
}

fn goldens<'a>(
    data: &'a [&'a CurveData],
) -> impl Iterator<Item = (&'a CurveData, &'static GoldenCurve)> + 'a {
    data.iter().filter_map(|d| d.golden.map(|g| (*d, g)))
}

pub fn invariants(data: &[&CurveData]) -> Criterion {
    let mut c = Criterion::new("invariants", "Elliptic invariants (g₂, g₃)");
    for (d, g) in goldens(data) {
        match elliptic_invariants(&d.curve.s) {
            Ok(inv) => {
                let want = (qq(g.g2), qq(g.g3));
                c.check((inv.g2.clone(), inv.g3.clone()) == want, || {
                    format!(
                        "{}: ({}, {}) vs ({}, {})",
                        g.name, inv.g2, inv.g3, want.0, want.1
                    )
                });
            }
            Err(e) => c.fail_with(g.name, e),
        }
    }
    c
}

pub fn theta(data: &[&CurveData]) -> Criterion {
    let mut c = Criterion::new("theta", "Theta quartics up to the orbit action");
    for (d, g) in goldens(data) {
        let tq = match elliptic_invariants(&d.curve.s)
            .map_err(|e| e.to_string())
            .and_then(|i| theta_quartics(&i).map_err(|e| e.to_string()))
        {
            Ok(t) => t,
            Err(e) => {
                c.fail_with(g.name, e);
                continue;
            }
        };
        c.check(
            tq.quadratic_disc() == Some(&BigInt::from(g.theta_disc)),
            || format!("{}: theta field", g.name),
        );
        let want: Vec<AlgNum> = g
            .theta
            .iter()
            .map(|&(a, b)| AlgNum::Quad(qq(a), qq(b)))
            .collect();
        let hit = tq.orbit().iter().position(|t| t[..] == want[..]);
        c.check(hit.is_some(), || {
            format!("{}: no orbit image equals the tabulated triple", g.name)
        });
    }
    c
}

pub fn serre(data: &[&CurveData]) -> Criterion {
    let mut c = Criterion::new("serre", "Serre tables at i₀ (units (2ϖ_A)^{2d})");
    for (d, g) in goldens(data) {
        match serre_column(&d.curve, 4) {
            Ok(col) => {
                let want: Vec<BigRational> = std::iter::once(BigRational::one())
                    .chain(g.serre.iter().map(|&p| qq(p)))
                    .collect();
                c.check(col == want, || {
                    format!("{}: {} vs {}", g.name, show(&col), show(&want))
                });
            }
            Err(e) => c.fail_with(g.name, e),
        }
    }
    c
}

pub fn cm_closed_forms() -> Criterion {
    let mut c = Criterion::new(
        "cm-closed-forms",
        "Closed forms for t_{i₀} on 19A3, 11A3, 43A1 (to 1e-12)",
    );
    c.erratum = true;
    for e in ELLIPTIC_PRESETS.iter().filter(|e| e.closed_form.is_some()) {
        let tq = match theta_quartics(&EllipticInvariants::from_ainvs(e.ainvs)) {
            Ok(t) => t,
            Err(err) => {
                c.fail_with(e.label, err);
                continue;
            }
        };
        let cf = e.closed_form.as_ref().unwrap();
        let rep = closed_form_check(&tq, cf);
        c.check(rep.stated_err < 1e-12, || {
            format!(
                "{}: stated form misses ±t_i0 by {:.3e}",
                e.label, rep.stated_err
            )
        });
        c.info(format!(
            "{}: radicand divided by {} matches to {:.1e}",
            e.label,
            cf.corrected.den / cf.stated.den,
            rep.corrected_err
        ));
    }
    c
}

pub fn amplitudes(d: &CurveData) -> Criterion {
    let name = d.name().to_string();
    let mut c = Criterion::new(
        "amplitudes",
        format!("Amplitudes, {name}: every tabulated G exact"),
    );
    let Some(g) = d.golden else {
        c.fail_with(&name, "no reference table");
        return c;
    };
    let table = match &d.amps {
        Ok(t) => t,
        Err(e) => {
            c.fail_with(&name, e);
            return c;
        }
    };
    for a in g.amplitudes {
        let ok = table
            .get(&(a.n, a.h, a.d))
            .is_some_and(|x| x.r == a.r && x.num == a.num() && x.grade == -(a.d as i64));
        c.check(ok, || {
            format!(
                "{name} {}: {:?}",
                a.label(),
                table.get(&(a.n, a.h, a.d)).map(|x| (x.r, show(&x.num)))
            )
        });
    }
    // nothing non-vanishing beyond the table
    let extra: Vec<_> = table
        .iter()
        .filter(|(k, x)| !x.num.is_empty() && !g.amplitudes.iter().any(|a| (a.n, a.h, a.d) == **k))
        .map(|(k, _)| *k)
        .collect();
    c.check(extra.is_empty(), || {
        format!("{name}: untabulated non-zero amplitudes {extra:?}")
    });
    c.info(format!(
        "{name}: {} amplitudes through level {}",
        g.amplitudes.len(),
        d.level
    ));
    c
}

fn jets_ok<'a>(c: &mut Criterion, d: &'a CurveData) -> Option<&'a [JetCoefficient]> {
    match &d.jets {
        Ok(j) => Some(j),
        Err(e) => {
            c.fail_with(d.name(), e);
            None
        }
    }
}

pub fn jets_figure_eight(d: &CurveData) -> Criterion {
    let mut c = Criterion::new(
        "jets-4_1",
        "Jets, 4₁: ĵ₁, ĵ₂, ĵ₃, values at w = 1, ε_N coefficients",
    );
    let Some(jets) = jets_ok(&mut c, d) else {
        return c;
    };
    let sigma = &d.curve.sigma;
    for (j, g) in jets.iter().zip(golden::FIGURE_EIGHT_JETS) {
        c.check(
            j.value.num == g.poly() && j.value.r == g.r && j.grade == 0,
            || format!("ĵ{}", g.chi),
        );
    }
    c.check(jets.len() == 3, || format!("{} jets computed", jets.len()));
    for (j, &want) in jets.iter().zip(&golden::FIGURE_EIGHT_AT_ONE) {
        match evaluate_jet(j, &BigRational::one(), sigma) {
            Ok(v) => {
                let ok =
                    v.coeff == qq(want) && v.sigma == qi(-3) && v.half_exp == -3 * j.chi as i64;
                c.check(ok, || {
                    format!(
                        "ĵ{}(1) = {}·({})^({}/2)",
                        j.chi, v.coeff, v.sigma, v.half_exp
                    )
                });
            }
            Err(e) => c.fail_with("evaluation", e),
        }
    }
    match kashaev_expansion(jets, sigma) {
        Ok(k) => {
            let want: Vec<BigRational> = golden::KASHAEV_STATED.iter().map(|&p| qq(p)).collect();
            for (i, (got, w)) in k.coeffs.iter().zip(&want).enumerate() {
                if got != w {
                    c.erratum = true;
                }
                c.check(got == w, || {
                    format!("ε_N^{} coefficient {} vs stated {}", i + 1, got, w)
                });
            }
            c.info(format!("ε_N coefficients from ĵ_χ(1): {}", show(&k.coeffs)));
            c.info(
                "−(11/12)ε_N = 11π/(36√3 N), the known first correction to the Kashaev asymptotics",
            );
        }
        Err(e) => c.fail_with("Kashaev expansion", e),
    }
    c
}

pub fn jets_l2r(d: &CurveData) -> Criterion {
    let mut c = Criterion::new(
        "jets-L2R",
        "Jets, L2R: ĵ₁, ĵ₂ exact; ĵ₂ + 1/128 Hikami relation",
    );
    let Some(jets) = jets_ok(&mut c, d) else {
        return c;
    };
    let sigma = &d.curve.sigma;
    for (j, g) in jets.iter().zip(golden::L2R_JETS) {
        let ok = j.value.num == g.poly() && j.value.r == g.r && j.grade == 0;
        if !ok && g.chi == 1 && j.value.num.scale(&QQ, &qi(2)) == g.poly() {
            c.erratum = true;
            c.info("the displayed ĵ₁ equals 2ĵ₁ exactly");
        }
        c.check(ok, || {
            format!(
                "ĵ{}: engine numerator {} over σ^{}/2",
                g.chi, j.value.num, j.value.r
            )
        });
    }
    if let Some(j2) = jets.get(1) {
        match hikami_j2(j2, &qq(golden::L2R_HIKAMI_SHIFT), sigma) {
            Ok(h) => {
                let shift = sigma.pow(&QQ, 3).scale(&QQ, &qq(golden::L2R_HIKAMI_SHIFT));
                c.check(
                    h.num == golden::L2R_JETS[1].poly().add(&QQ, &shift) && h.r == 6,
                    || "Hikami-shifted ĵ₂".into(),
                );
            }
            Err(e) => c.fail_with("Hikami shift", e),
        }
        if let Ok(v) = evaluate_jet(j2, &BigRational::one(), sigma) {
            c.info(format!(
                "ĵ₂(1) = {}·({})^({}/2)",
                v.coeff, v.sigma, v.half_exp
            ));
        }
    }
    c
}

pub fn oracle() -> Criterion {
    let mut c = Criterion::new(
        "oracle",
        "Independent assembly: 2ĵ₂(1) for 4₁ from tabulated G and T equals −4/27",
    );
    let g = golden::curve("4_1").expect("4_1 reference");
    let table = golden_table(g.amplitudes);
    let t: Vec<BigRational> = std::iter::once(BigRational::one())
        .chain(g.serre[..3].iter().map(|&p| qq(p)))
        .collect();
    let sigma = preset("4_1").expect("preset").sigma;
    match jet_terms(&table, &t, 2) {
        Ok(terms) => {
            let vals = rational_terms_at(&terms, &BigRational::one(), &sigma);
            let Some(mut vals) = vals else {
                c.fail_with("terms", "irrational term at w = 1");
                return c;
            };
            vals.retain(|x| !x.is_zero());
            let total: BigRational = vals.iter().sum();
            let mut want: Vec<BigRational> = golden::FIGURE_EIGHT_TWO_J2_TERMS
                .iter()
                .map(|&p| qq(p))
                .collect();
            let (mut a, mut b) = (vals.clone(), want.clone());
            a.sort();
            b.sort();
            c.check(a == b, || {
                format!("terms {} vs {}", show(&vals), show(&want))
            });
            c.check(total == q(-4, 27), || format!("sum {total}"));
            want.clear();
        }
        Err(e) => c.fail_with("assembly", e),
    }
    c
}

pub fn recursion_closed_forms(data: &[&CurveData]) -> Criterion {
    let mut c = Criterion::new(
        "closed-forms",
        "Recursion ω₃⁰ and ω₁¹ equal their closed forms at all four centers",
    );
    for d in data {
        let name = d.name();
        let ctx = match Context::rational(&d.curve, 12) {
            Ok(x) => x,
            Err(e) => {
                c.fail_with(name, e);
                continue;
            }
        };
        match ctx.run(1) {
            Ok(om) => {
                c.check(ctx.omega30_matches(&om), || format!("{name}: ω₃⁰"));
                c.check(ctx.omega11_matches(&om), || format!("{name}: ω₁¹"));
                c.check(ctx.qc_identity_holds(), || {
                    format!("{name}: ℘(2s) identity")
                });
                c.check(ctx.addition_tail_holds(&ctx.addition_tail()), || {
                    format!("{name}: addition tail c₄/12")
                });
            }
            Err(e) => c.fail_with(name, e),
        }
    }
    c
}

/// Deterministic points spread over a box, from an additive recurrence.
fn samples(n: usize, lo: f64, hi: f64) -> Vec<Complex64> {
    let (a1, a2) = (0.754_877_666_246_692_7, 0.569_840_290_998_053_2);
    (1..=n)
        .map(|k| {
            let (x, y) = ((k as f64 * a1).fract(), (k as f64 * a2).fract());
            Complex64::new(lo + (hi - lo) * x, lo + (hi - lo) * y)
        })
        .collect()
}

fn ramanujan_relations() -> bool {
    let e2 = Poly3::var(2);
    let r1 = e4().derive3()
        == e6_twice()
            .scale(&BigInt::from(4))
            .sub(&e2.mul(&e4()).scale(&BigInt::from(8)));
    let r2 = e6_twice().derive3()
        == e4()
            .mul(&e4())
            .scale(&BigInt::from(24))
            .sub(&e2.mul(&e6_twice()).scale(&BigInt::from(12)));
    let p1 = (2..=4).all(|i| p_polys(i, 1)[1] == first_log_derivative(i));
    r1 && r2 && p1
}

fn wp_ode_residual_vanishes(inv: &EllipticInvariants) -> bool {
    let (g2, g3) = (&inv.g2_classical, &inv.g3_classical);
    let c = laurent_coeffs(&QQ, g2, g3, 20);
    let p = laurent_series(&QQ, &c, 0, 30);
    let dp = laurent_series(&QQ, &c, 1, 29);
    let res = dp
        .mul(&QQ, &dp)
        .sub(&QQ, &p.mul(&QQ, &p).mul(&QQ, &p).scale(&QQ, &qi(4)))
        .add(&QQ, &p.scale(&QQ, g2))
        .add(&QQ, &Series::monomial(&QQ, g3.clone(), 0));
    res.prec >= 20 && res.is_zero()
}

pub fn properties(data: &[&CurveData]) -> Criterion {
    let mut c = Criterion::new("properties", "Property suites");
    let p = large_primes(1)[0];
    for d in data {
        let name = d.name();
        match run_forms(Fp::new(p), &d.curve, d.level) {
            Ok((ctx, om)) => {
                c.check(om.values().all(|f| f.is_symmetric()), || {
                    format!("{name}: slot symmetry")
                });
                c.check(om.values().all(|f| f.all_even()), || {
                    format!("{name}: even derivative orders")
                });
                for &(nd, h) in om.keys() {
                    for dd in (1..=nd).step_by(2) {
                        let ok =
                            matches!(ctx.amplitude(&om, nd - dd, h, dd), Ok(a) if a.num.is_empty());
                        c.check(ok, || {
                            format!("{name}: G_{}^{{{h},({dd})}} should vanish", nd - dd)
                        });
                    }
                }
                let r = ctx.ring();
                let sres = ctx
                    .frames
                    .iter()
                    .all(|f| f.ode_residual(r, &ctx.polys.s).is_zero());
                c.check(sres, || format!("{name}: (√S)² − S(X) along the frames"));
            }
            Err(e) => c.fail_with(name, e),
        }
        if let Ok(jets) = &d.jets {
            c.check(jets.iter().all(|j| j.grade == 0), || {
                format!("{name}: ϖ-grade of ĵ_χ")
            });
        }
        if let Ok(t) = &d.amps {
            // σ^{−r/2}Q[w] with r ≡ n (mod 2)
            let ok = t
                .values()
                .all(|a| a.num.is_empty() || (a.r - a.n as i64).rem_euclid(2) == 0);
            c.check(ok, || format!("{name}: σ-exponent parity"));
        }
        match elliptic_invariants(&d.curve.s) {
            Ok(inv) => {
                c.check(wp_ode_residual_vanishes(&inv), || {
                    format!("{name}: Weierstrass ODE residual")
                });
            }
            Err(e) => c.fail_with(name, e),
        }
    }
    // the rewrite rejects a Laurent polynomial that is not ι-invariant
    let sigma = QPoly::from_ints(&[-3, -4, 4]);
    let lopsided = [qi(1), qi(0), qi(2)];
    c.check(
        matches!(to_w(&QQ, &lopsided, -1, &sigma), Err(TrError::Remainder)),
        || "non-invariant rewrite accepted".into(),
    );
    for e in ELLIPTIC_PRESETS {
        match theta_quartics(&EllipticInvariants::from_ainvs(e.ainvs)) {
            Ok(tq) => {
                let ok = tq
                    .orbit()
                    .iter()
                    .all(|t| tq.relations_hold(t) && tq.discriminant_check(t));
                c.check(ok, || format!("{}: theta orbit", e.label));
            }
            Err(err) => c.fail_with(e.label, err),
        }
    }
    c.check(ramanujan_relations(), || {
        "differential ring relations".into()
    });
    let mut worst: f64 = 0.0;
    let pts = samples(200, -2.5, 2.5);
    for w in pts.windows(2) {
        if let Ok(r) = five_term_residual(w[0], w[1]) {
            worst = worst.max(r.abs());
        }
    }
    c.check(worst < 1e-10, || format!("five-term residual {worst:.2e}"));
    c.info(format!("five-term residual over 199 pairs: {worst:.2e}"));
    let mut sym: f64 = 0.0;
    for z in samples(100, -3.0, 3.0) {
        if let (Ok(a), Ok(b)) = (bloch_wigner(z), bloch_wigner(z.conj())) {
            sym = sym.max((a + b).abs());
        }
        let x = z.re;
        sym = sym
            .max((lobachevsky(x + PI) - lobachevsky(x)).abs())
            .max((lobachevsky(-x) + lobachevsky(x)).abs());
    }
    c.check(sym < 1e-12, || {
        format!("D(z̄) = −D(z), Λ periodic and odd: {sym:.2e}")
    });
    c
}

pub fn numeric_volume(data: &[&CurveData], cfg: &NumericConfig) -> Criterion {
    let mut c = Criterion::new(
        "volume",
        "Numeric volume and Boutroux/quantization residuals (1e-9)",
    );
    for d in data {
        let name = d.name();
        if name == "4_1" {
            let u = Complex64::new(0.0, PI);
            match volume_path(&d.curve, u).and_then(|p| geometric_leading_order(&d.curve, &p, cfg))
            {
                Ok(j) => {
                    let err = (j.im - golden::FIGURE_EIGHT_HALF_VOLUME).abs();
                    c.check(err < 1e-9, || format!("Im ĵ₋₁(iπ) = {:.12}", j.im));
                    c.info(format!(
                        "Im ĵ₋₁(iπ) = {:.12}, 2Λ(π/6) = {:.12}",
                        j.im,
                        2.0 * lobachevsky(PI / 6.0)
                    ));
                }
                Err(e) => c.fail_with("volume", e),
            }
        }
        let mut worst: (f64, f64) = (0.0, 0.0);
        for (label, cyc) in standard_cycles(&d.curve) {
            for sheet in [Sheet::Plus, Sheet::Minus] {
                match period_checks(&d.curve, &label, &cyc, sheet, cfg) {
                    Ok(r) => worst = (worst.0.max(r.boutroux), worst.1.max(r.quantization)),
                    Err(e) => c.fail_with(&format!("{name} {label}"), e),
                }
            }
        }
        c.check(worst.0 < 1e-9 && worst.1 < 1e-9, || {
            format!("{name}: residuals {:.2e}, {:.2e}", worst.0, worst.1)
        });
        c.info(format!(
            "{name}: max Boutroux residual {:.2e}, max quantization residual {:.2e}",
            worst.0, worst.1
        ));
    }
    c
}

/// Every criterion, over both shipped presets.
pub fn acceptance_suite() -> Vec<Criterion> {
    let fig8 = CurveData::preset("4_1");
    let l2r = CurveData::preset("L2R");
    let both = [&fig8, &l2r];
    vec![
        invariants(&both),
        theta(&both),
        serre(&both),
        cm_closed_forms(),
        amplitudes(&fig8),
        amplitudes(&l2r),
        jets_figure_eight(&fig8),
        jets_l2r(&l2r),
        oracle(),
        recursion_closed_forms(&both),
        properties(&both),
        numeric_volume(&both, &NumericConfig::default()),
    ]
}

/// The checks that concern one curve. Curves without reference tables get
/// the structural and numeric checks only.
pub fn curve_suite(curve: ASpectralCurve, cfg: &NumericConfig) -> Vec<Criterion> {
    let d = CurveData::new(curve);
    let one = [&d];
    let mut out = Vec::new();
    if d.golden.is_some() {
        out.extend([invariants(&one), theta(&one), serre(&one), amplitudes(&d)]);
        match d.name() {
            "4_1" => out.extend([jets_figure_eight(&d), oracle()]),
            "L2R" => out.push(jets_l2r(&d)),
            _ => {}
        }
    }
    out.extend([
        recursion_closed_forms(&one),
        properties(&one),
        numeric_volume(&one, cfg),
    ]);
    out
}
