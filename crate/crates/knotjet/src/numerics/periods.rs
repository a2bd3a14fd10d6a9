//! Path integrals of `v du = ln l · d ln m` with branch tracking.
//!
//! Points of the curve are followed through `y = √S(X)`, `X = e^{2u}`, and
//! `l = (P₁ + P₂y)/R`. Between waypoints the path is a straight segment in `u`.

use super::quad::gauss_kronrod;
use super::roots::{horner, poly_roots};
use super::{NumericConfig, NumericError};
use crate::curve::ASpectralCurve;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use std::f64::consts::PI;

/// Choice of `±√S` at the first tracked point, relative to the principal root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sheet {
    Plus,
    Minus,
}

impl Sheet {
    fn sign(self) -> f64 {
        match self {
            Sheet::Plus => 1.0,
            Sheet::Minus => -1.0,
        }
    }
}

/// Floating-point copy of the reduced model.
#[derive(Clone, Debug)]
pub struct NumericCurve {
    s: Vec<Complex64>,
    p1: Vec<Complex64>,
    p2: Vec<Complex64>,
    r: Vec<Complex64>,
    /// zeros of `S` in the `X`-plane
    pub branch_x: Vec<Complex64>,
    pub torsion: u32,
}

fn to_c(p: &crate::algebra::poly::QPoly) -> Vec<Complex64> {
    p.c.iter()
        .map(|x| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect()
}

impl NumericCurve {
    pub fn new(curve: &ASpectralCurve) -> Self {
        let s = to_c(&curve.s);
        NumericCurve {
            branch_x: poly_roots(&s),
            s,
            p1: to_c(&curve.p1),
            p2: to_c(&curve.p2),
            r: to_c(&curve.r),
            torsion: curve.torsion.unwrap_or(1),
        }
    }

    /// Branchpoints in the `u`-plane on the principal strip `|Im u| ≤ π/2`.
    pub fn branch_u(&self) -> Vec<Complex64> {
        self.branch_x.iter().map(|x| 0.5 * x.ln()).collect()
    }

    fn scale(&self, x: Complex64) -> f64 {
        1.0 + x.norm().powi(self.s.len() as i32 - 1)
    }

    fn at_branch(&self, x: Complex64) -> bool {
        horner(&self.s, x).norm() < 1e-11 * self.scale(x)
    }

    fn l(&self, x: Complex64, y: Complex64) -> Complex64 {
        (horner(&self.p1, x) + horner(&self.p2, x) * y) / horner(&self.r, x)
    }
}

fn nearest(y: Complex64, target: Complex64) -> Complex64 {
    if (y - target).norm() <= (y + target).norm() {
        y
    } else {
        -y
    }
}

/// `ln l` on the branch closest to `target`.
fn log_near(l: Complex64, target: Complex64) -> Complex64 {
    let v = l.ln();
    let k = ((target.im - v.im) / (2.0 * PI)).round();
    v + Complex64::new(0.0, 2.0 * PI * k)
}

#[derive(Clone, Copy, Debug)]
enum Shape {
    Linear,
    SqrtStart,
    SqrtEnd,
}

#[derive(Clone, Copy, Debug)]
struct State {
    t: f64,
    y: Complex64,
    v: Complex64,
}

struct Piece {
    a: State,
    b: State,
    shape: Shape,
}

impl Piece {
    fn y_guess(&self, t: f64) -> Complex64 {
        let f = (t - self.a.t) / (self.b.t - self.a.t);
        match self.shape {
            Shape::Linear => self.a.y + (self.b.y - self.a.y) * f,
            Shape::SqrtStart => self.b.y * f.max(0.0).sqrt(),
            Shape::SqrtEnd => self.a.y * (1.0 - f).max(0.0).sqrt(),
        }
    }

    fn v_guess(&self, t: f64) -> Complex64 {
        let f = (t - self.a.t) / (self.b.t - self.a.t);
        self.a.v + (self.b.v - self.a.v) * f
    }
}

struct Segment<'a> {
    c: &'a NumericCurve,
    ua: Complex64,
    ub: Complex64,
}

impl Segment<'_> {
    fn x(&self, t: f64) -> Complex64 {
        (2.0 * (self.ua + (self.ub - self.ua) * t)).exp()
    }

    fn root(&self, t: f64) -> Complex64 {
        horner(&self.c.s, self.x(t)).sqrt()
    }

    fn state(&self, t: f64, y: Complex64, v_target: Complex64) -> State {
        let v = log_near(self.c.l(self.x(t), y), v_target);
        State { t, y, v }
    }

    /// Break `[0, 1]` into pieces on which the sheet and the log branch can be
    /// read off by interpolation.
    fn walk(
        &self,
        start: State,
        start_at_branch: bool,
        sheet: Sheet,
    ) -> Result<Vec<Piece>, NumericError> {
        let end_at_branch = self.c.at_branch(self.x(1.0));
        let mut pieces = Vec::new();
        let mut cur = start;
        let mut at_branch = start_at_branch;
        let mut h: f64 = if at_branch { 1.0 / 256.0 } else { 1.0 / 32.0 };
        while cur.t < 1.0 {
            let t1 = (cur.t + h).min(1.0);
            let last = t1 >= 1.0;
            let y1 = if last && end_at_branch {
                Complex64::new(0.0, 0.0)
            } else if at_branch {
                self.root(t1) * sheet.sign()
            } else {
                nearest(self.root(t1), cur.y)
            };
            let next = self.state(t1, y1, cur.v);
            let shape = if at_branch {
                Shape::SqrtStart
            } else if last && end_at_branch {
                Shape::SqrtEnd
            } else {
                Shape::Linear
            };
            let piece = Piece {
                a: cur,
                b: next,
                shape,
            };
            let tm = 0.5 * (cur.t + t1);
            let gm = piece.y_guess(tm);
            let ym = nearest(self.root(tm), gm);
            let vm = log_near(self.c.l(self.x(tm), ym), piece.v_guess(tm));
            let ok_y = (ym - gm).norm() <= 0.2 * ym.norm() + 1e-300;
            let jumped = matches!(shape, Shape::Linear)
                && (next.y - cur.y).norm() > 0.5 * next.y.norm().max(cur.y.norm());
            let ok_v = (vm - piece.v_guess(tm)).norm() < 1.0;
            if ok_y && ok_v && !jumped {
                pieces.push(piece);
                cur = next;
                at_branch = false;
                h = (2.0 * h).min(1.0 / 16.0);
            } else {
                h /= 2.0;
                if h < 1e-11 {
                    return Err(NumericError::BranchPoint {
                        at: self.ua + (self.ub - self.ua) * cur.t,
                    });
                }
            }
        }
        Ok(pieces)
    }
}

/// Result of integrating along a waypoint path.
#[derive(Clone, Copy, Debug)]
pub struct PathIntegral {
    pub value: Complex64,
    /// `√S` and `ln l` at the first and last point
    pub start: (Complex64, Complex64),
    pub end: (Complex64, Complex64),
}

/// `∫ v du` along the piecewise-linear `u`-path, continuing `√S` and `ln l`.
/// A path may start or end at a branchpoint, but not pass through one.
pub fn integrate_path(
    c: &NumericCurve,
    path: &[Complex64],
    sheet: Sheet,
    cfg: &NumericConfig,
) -> Result<PathIntegral, NumericError> {
    let zero = Complex64::new(0.0, 0.0);
    if path.len() < 2 {
        return Ok(PathIntegral {
            value: zero,
            start: (zero, zero),
            end: (zero, zero),
        });
    }
    let x0 = (2.0 * path[0]).exp();
    let start_at_branch = c.at_branch(x0);
    let y0 = if start_at_branch {
        zero
    } else {
        horner(&c.s, x0).sqrt() * sheet.sign()
    };
    let l0 = c.l(x0, y0);
    if !l0.is_finite() || l0.norm() == 0.0 {
        return Err(NumericError::Singular(format!("l at u = {}", path[0])));
    }
    let mut state = State {
        t: 0.0,
        y: y0,
        v: l0.ln(),
    };
    let first = (state.y, state.v);
    let mut at_branch = start_at_branch;
    let mut total = zero;
    let nseg = path.len() - 1;
    for w in path.windows(2) {
        let seg = Segment {
            c,
            ua: w[0],
            ub: w[1],
        };
        if w[0] == w[1] {
            continue;
        }
        let pieces = seg.walk(State { t: 0.0, ..state }, at_branch, sheet)?;
        let du = w[1] - w[0];
        let tol = cfg.tol / (nseg * pieces.len()) as f64;
        for p in &pieces {
            let f = |t: f64| {
                let y = nearest(seg.root(t), p.y_guess(t));
                let l = c.l(seg.x(t), y);
                log_near(l, p.v_guess(t)) * du
            };
            total += gauss_kronrod(f, p.a.t, p.b.t, tol, cfg.max_evals)?;
        }
        state = pieces.last().map(|p| p.b).unwrap_or(state);
        at_branch = false;
        if !total.is_finite() {
            return Err(NumericError::Singular(format!(
                "integrand on [{}, {}]",
                w[0], w[1]
            )));
        }
    }
    Ok(PathIntegral {
        value: total,
        start: first,
        end: (state.y, state.v),
    })
}

/// `ĵ₋₁` at the end of `path`, starting on `sheet`.
pub fn leading_order(
    curve: &ASpectralCurve,
    path: &[Complex64],
    sheet: Sheet,
    cfg: &NumericConfig,
) -> Result<Complex64, NumericError> {
    Ok(integrate_path(&NumericCurve::new(curve), path, sheet, cfg)?.value)
}

/// `ĵ₋₁` on the sheet where its imaginary part (half the volume) is non-negative.
pub fn geometric_leading_order(
    curve: &ASpectralCurve,
    path: &[Complex64],
    cfg: &NumericConfig,
) -> Result<Complex64, NumericError> {
    let a = leading_order(curve, path, Sheet::Plus, cfg)?;
    let b = leading_order(curve, path, Sheet::Minus, cfg)?;
    Ok(if a.im >= b.im { a } else { b })
}

/// The branchpoint on the imaginary `u`-axis (`|X| = 1`) closest to `target`,
/// ties going to the smaller imaginary part.
pub fn unit_branchpoint(
    curve: &ASpectralCurve,
    target: Complex64,
) -> Result<Complex64, NumericError> {
    let c = NumericCurve::new(curve);
    let k0 = (target.im / PI).floor() as i64;
    c.branch_u()
        .into_iter()
        .filter(|u| u.re.abs() < 1e-9)
        .flat_map(|u| (k0 - 1..=k0 + 1).map(move |k| Complex64::new(0.0, u.im + PI * k as f64)))
        .min_by(|a, b| {
            ((a - target).norm(), a.im)
                .partial_cmp(&((b - target).norm(), b.im))
                .unwrap()
        })
        .ok_or(NumericError::NoBranchpoint)
}

/// Straight path from [`unit_branchpoint`] to `u`.
pub fn volume_path(curve: &ASpectralCurve, u: Complex64) -> Result<Vec<Complex64>, NumericError> {
    Ok(vec![unit_branchpoint(curve, u)?, u])
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct PeriodReport {
    pub label: String,
    pub re: f64,
    pub im: f64,
    /// `|Im ∮ v du|`
    pub boutroux: f64,
    /// distance of `Re ∮ v du` to `(2π²/ς)Z`
    pub quantization: f64,
    pub quantum: f64,
}

/// `∮ v du` around a waypoint loop, closed up to `u ↦ u + 2πik`, starting on `sheet`.
pub fn period_checks(
    curve: &ASpectralCurve,
    label: &str,
    cycle: &[Complex64],
    sheet: Sheet,
    cfg: &NumericConfig,
) -> Result<PeriodReport, NumericError> {
    // closed in m = e^u
    let shift = (cycle[cycle.len().max(1) - 1] - cycle[0]) / Complex64::new(0.0, 2.0 * PI);
    if cycle.len() < 2 || (shift - Complex64::new(shift.re.round(), 0.0)).norm() > 1e-12 {
        return Err(NumericError::NotClosed);
    }
    let c = NumericCurve::new(curve);
    let p = integrate_path(&c, cycle, sheet, cfg)?;
    if (p.start.0 - p.end.0).norm() > 1e-6 * (1.0 + p.start.0.norm()) {
        return Err(NumericError::NotClosed);
    }
    let quantum = 2.0 * PI * PI / c.torsion as f64;
    let re = p.value.re;
    Ok(PeriodReport {
        label: label.to_string(),
        re,
        im: p.value.im,
        boutroux: p.value.im.abs(),
        quantization: (re - quantum * (re / quantum).round()).abs(),
        quantum,
    })
}

fn circle(center: Complex64, radius: f64, phase: f64, n: usize) -> impl Iterator<Item = Complex64> {
    (0..=n).map(move |k| {
        center + Complex64::from_polar(radius, phase + 2.0 * PI * k as f64 / n as f64)
    })
}

/// Loops based at `u = 0` going once around each pair of branchpoints.
pub fn standard_cycles(curve: &ASpectralCurve) -> Vec<(String, Vec<Complex64>)> {
    let c = NumericCurve::new(curve);
    let bu = c.branch_u();
    let base = Complex64::new(0.0, 0.0);
    // everything a loop must stay away from, including iπ-translates
    let mut avoid: Vec<Complex64> = vec![base];
    for &u in &bu {
        for k in -1..=1 {
            avoid.push(u + Complex64::new(0.0, PI * k as f64));
        }
    }
    let lobe = |u: Complex64| -> Vec<Complex64> {
        let rho = 0.4
            * avoid
                .iter()
                .filter(|&&p| (p - u).norm() > 1e-9)
                .map(|&p| (p - u).norm())
                .fold(f64::INFINITY, f64::min);
        let phase = (base - u).arg();
        let mut pts = vec![base];
        pts.extend(circle(u, rho, phase, 32));
        pts.push(base);
        pts
    };
    let mut out = Vec::new();
    for i in 0..bu.len() {
        for j in i + 1..bu.len() {
            let mut path = lobe(bu[i]);
            path.extend(lobe(bu[j]).into_iter().skip(1));
            out.push((format!("a{i}a{j}"), path));
        }
    }
    // once around X = 0 and X = ∞, i.e. u ↦ u + 2πi beyond every branchpoint
    let reach = bu.iter().map(|u| u.re.abs()).fold(0.0, f64::max) + 0.5;
    for (label, re) in [("cusp0", -reach), ("cusp_inf", reach)] {
        // diagonal legs pass between the real and the unit-circle branchpoints
        let mut path = vec![base];
        path.extend((0..=16).map(|k| Complex64::new(re, PI / 2.0 + PI * k as f64 / 8.0)));
        path.push(Complex64::new(0.0, 2.0 * PI));
        out.push((label.to_string(), path));
    }
    out
}

/// A small loop around a regular point.
pub fn contractible_cycle(center: Complex64, radius: f64) -> Vec<Complex64> {
    let mut p = vec![center + radius];
    p.extend(circle(center, radius, 0.0, 16).skip(1));
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::preset;

    fn i(y: f64) -> Complex64 {
        Complex64::new(0.0, y)
    }

    #[test]
    fn figure_eight_half_volume() {
        let c = preset("4_1").unwrap();
        let cfg = NumericConfig::default();
        let path = volume_path(&c, i(PI)).unwrap();
        assert!((path[0] - i(2.0 * PI / 3.0)).norm() < 1e-12);
        let j = geometric_leading_order(&c, &path, &cfg).unwrap();
        assert!((j.im - 1.014_941_606_409_653_6).abs() < 1e-10, "{j}");
        // the other sheet gives minus the volume
        let plus = leading_order(&c, &path, Sheet::Plus, &cfg).unwrap();
        let minus = leading_order(&c, &path, Sheet::Minus, &cfg).unwrap();
        assert!((plus.im + minus.im).abs() < 1e-10);
    }

    #[test]
    fn volume_matches_lobachevsky_formula_along_the_cusp() {
        let c = preset("4_1").unwrap();
        let cfg = NumericConfig::default();
        for th in [0.7 * PI, 0.8 * PI, 0.95 * PI] {
            let j = geometric_leading_order(&c, &volume_path(&c, i(th)).unwrap(), &cfg).unwrap();
            let vol = super::super::dilog::figure_eight_volume(th).unwrap();
            assert!(
                (2.0 * j.im - vol).abs() < 1e-9,
                "θ = {th}: {} vs {vol}",
                2.0 * j.im
            );
        }
    }

    #[test]
    fn imaginary_part_is_path_independent() {
        let c = preset("4_1").unwrap();
        let cfg = NumericConfig::default();
        let start = unit_branchpoint(&c, i(PI)).unwrap();
        let straight = vec![start, i(PI)];
        let bent = vec![
            start,
            Complex64::new(0.15, 0.6 * PI),
            Complex64::new(-0.1, 0.85 * PI),
            i(PI),
        ];
        let a = geometric_leading_order(&c, &straight, &cfg).unwrap();
        let b = geometric_leading_order(&c, &bent, &cfg).unwrap();
        assert!((a.im - b.im).abs() < 1e-10);
    }

    #[test]
    fn trivial_paths_vanish() {
        let c = preset("L2R").unwrap();
        let cfg = NumericConfig::default();
        let p = Complex64::new(0.1, 0.2);
        assert_eq!(
            leading_order(&c, &[p, p], Sheet::Plus, &cfg).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        let r =
            period_checks(&c, "small", &contractible_cycle(p, 0.05), Sheet::Plus, &cfg).unwrap();
        assert!(r.re.abs() < 1e-12 && r.im.abs() < 1e-12);
    }

    #[test]
    fn boutroux_and_quantization() {
        let cfg = NumericConfig::default();
        for name in ["4_1", "L2R"] {
            let c = preset(name).unwrap();
            let cycles = standard_cycles(&c);
            assert_eq!(cycles.len(), 8);
            for (label, cyc) in &cycles {
                for sheet in [Sheet::Plus, Sheet::Minus] {
                    let r = period_checks(&c, label, cyc, sheet, &cfg).unwrap();
                    assert!(
                        r.boutroux < 1e-9 && r.quantization < 1e-9,
                        "{name} {label}: {r:?}"
                    );
                }
            }
        }
    }
}
