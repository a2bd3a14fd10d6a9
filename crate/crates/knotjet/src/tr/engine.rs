//! Residue recursion in the ℘-monomial basis.

use super::frame::{local_frame, CurvePolys, LocalFrame};
use super::wp::{halfperiod_taylor, laurent_coeffs, laurent_series};
use super::TrError;
use crate::algebra::poly::Poly;
use crate::algebra::ring::{Ring, QQ};
use crate::algebra::series::{Series, SeriesError};
use crate::curve::splitting::{Splitting, TowerElem};
use crate::curve::ASpectralCurve;
use crate::modular::elliptic_invariants;
use std::collections::{BTreeMap, HashMap};

/// `(center, p)`: the factor `℘^{(p)}(z_j − z_center)` in slot `j`.
pub type Slot = (u8, u8);
pub type Key = Vec<Slot>;

/// `ωₙʰ = Σ c·Πⱼ ℘^{(pⱼ)}(zⱼ − z_{aⱼ}) dzⱼ`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassForm<E> {
    pub n: usize,
    pub h: usize,
    pub terms: BTreeMap<Key, E>,
}

impl<E: Clone + PartialEq> WeierstrassForm<E> {
    pub fn level(&self) -> i64 {
        2 * self.h as i64 - 2 + self.n as i64
    }

    pub fn all_even(&self) -> bool {
        self.terms
            .keys()
            .all(|k| k.iter().all(|&(_, p)| p % 2 == 0))
    }

    /// Invariance under adjacent transpositions of slots.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(k, c)| {
            (0..k.len().saturating_sub(1)).all(|i| {
                let mut k2 = k.clone();
                k2.swap(i, i + 1);
                self.terms.get(&k2) == Some(c)
            })
        })
    }
}

pub type FormTable<E> = BTreeMap<(usize, usize), WeierstrassForm<E>>;

/// `(n, h)` pairs at level `2h − 2 + n = χ`, `n ≥ 1`.
pub fn level_pairs(chi: usize) -> Vec<(usize, usize)> {
    (0..=chi / 2 + 1)
        .filter(|&h| chi + 2 > 2 * h)
        .map(|h| (chi + 2 - 2 * h, h))
        .collect()
}

type Dict<E> = HashMap<Key, Series<E>>;

/// Curve data over the splitting tower of a base field `F`.
#[derive(Clone, Debug)]
pub struct Context<F: Ring> {
    pub sp: Splitting<F>,
    pub polys: CurvePolys<TowerElem<F>>,
    /// `σ(w)` over the base field
    pub sigma: Poly<F::Elem>,
    pub g2: TowerElem<F>,
    pub g3: TowerElem<F>,
    pub laurent: Vec<TowerElem<F>>,
    /// `hp[a][b]`: Taylor coefficients of `℘(z_a − z_b + t)`; empty on the diagonal
    pub hp: Vec<Vec<Vec<TowerElem<F>>>>,
    pub frames: Vec<LocalFrame<TowerElem<F>>>,
    pub dinv: Vec<Series<TowerElem<F>>>,
    /// every expansion is kept through `s^order`
    pub order: i32,
    pmax: u8,
}

impl Context<QQ> {
    pub fn rational(curve: &ASpectralCurve, order: i32) -> Result<Self, TrError> {
        Context::new(QQ, curve, order, 8)
    }
}

impl<F: Ring> Context<F> {
    /// `pmax` bounds the derivative orders that will be expanded.
    pub fn new(base: F, curve: &ASpectralCurve, order: i32, pmax: u8) -> Result<Self, TrError> {
        let sigma = curve.sigma.map(&base, |c| base.from_rational(c));
        let sp = Splitting::new(base, &curve.sigma);
        let r = sp.ring.clone();
        let lift = |p: &crate::algebra::poly::QPoly| -> Poly<TowerElem<F>> {
            p.map(&r, |c| r.from_rational(c))
        };
        let polys = CurvePolys::new(&r, lift(&curve.s), lift(&curve.p1), lift(&curve.p2));
        let inv = elliptic_invariants(&curve.s).map_err(|e| TrError::Curve(e.to_string()))?;
        let g2 = r.from_rational(&inv.g2_classical);
        let g3 = r.from_rational(&inv.g3_classical);
        let kmax = ((order + pmax as i32 + 2) / 2 + 2) as usize;
        let laurent = laurent_coeffs(&r, &g2, &g3, kmax);
        let mut hp = vec![vec![Vec::new(); 4]; 4];
        #[allow(clippy::needless_range_loop)]
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    let e = halfperiod_value(&r, &polys, &sp.roots[a], &sp.roots[b]);
                    hp[a][b] =
                        halfperiod_taylor(&r, &e, &g2, order.max(0) as usize + pmax as usize + 1);
                }
            }
        }
        let mut frames = Vec::with_capacity(4);
        let mut dinv = Vec::with_capacity(4);
        for (i, a) in sp.roots.iter().enumerate() {
            let f = local_frame(&r, &polys, &laurent, i, a, order + 1)?;
            dinv.push(f.d.inv(&r)?);
            frames.push(f);
        }
        Ok(Context {
            sp,
            polys,
            sigma,
            g2,
            g3,
            laurent,
            hp,
            frames,
            dinv,
            order,
            pmax,
        })
    }

    pub fn ring(&self) -> &crate::curve::splitting::Tower<F> {
        &self.sp.ring
    }

    /// `℘^{(p)}(z − z_b)` at `z = z_a + sign·s`.
    pub fn expand_slot(&self, a: usize, b: usize, p: u8, sign: i8) -> Series<TowerElem<F>> {
        let r = self.ring();
        assert!(
            p <= self.pmax,
            "derivative order {p} beyond the prepared range"
        );
        let s = if a == b {
            laurent_series(r, &self.laurent, p as u32, self.order)
        } else {
            let co = &self.hp[a][b];
            let mut c = Vec::with_capacity(self.order as usize + 1);
            // ℘^{(p)}(ω + t) = Σ_k co[k+p] (k+p)!/k! t^k
            let mut ratio = r.one();
            for j in 1..=p as i64 {
                ratio = r.mul_int(&ratio, j);
            }
            for k in 0..=self.order as usize {
                if k > 0 {
                    ratio = r.mul(&ratio, &r.from_frac((k + p as usize) as i64, k as i64));
                }
                c.push(r.mul(&co[k + p as usize], &ratio));
            }
            Series::new(r, 0, c, self.order)
        };
        if sign < 0 {
            s.reflect(r)
        } else {
            s
        }
    }

    /// `ω_n^h(z, ·)` at `z = z_a + sign·s`, keyed by the remaining slots.
    fn expand_factor(
        &self,
        om: &FormTable<TowerElem<F>>,
        a: usize,
        n: usize,
        h: usize,
        sign: i8,
    ) -> Dict<TowerElem<F>> {
        let r = self.ring();
        let mut out: Dict<TowerElem<F>> = HashMap::new();
        if (n, h) == (2, 0) {
            // ℘(z − z_j) = Σ_k ℘^{(k)}(z_j − z_a)(−sign·s)^k/k!
            let mut coef = r.one();
            for k in 0..=self.order {
                if k > 0 {
                    coef = r.mul(&coef, &r.from_frac(-sign as i64, k as i64));
                }
                let m = Series::new(r, k, vec![coef.clone()], self.order);
                out.insert(vec![(a as u8, k as u8)], m);
            }
            return out;
        }
        for (key, c) in &om[&(n, h)].terms {
            let (b, p) = key[0];
            let term = self.expand_slot(a, b as usize, p, sign).scale(r, c);
            accumulate(r, &mut out, key[1..].to_vec(), term);
        }
        out
    }

    /// Compute `ωₙʰ` for all levels `1..=max_level`.
    pub fn run(&self, max_level: usize) -> Result<FormTable<TowerElem<F>>, TrError> {
        let mut om = FormTable::new();
        for chi in 1..=max_level {
            for (n, h) in level_pairs(chi) {
                let form = self.step(&om, n, h)?;
                om.insert((n, h), form);
            }
        }
        Ok(om)
    }

    fn step(
        &self,
        om: &FormTable<TowerElem<F>>,
        n: usize,
        h: usize,
    ) -> Result<WeierstrassForm<TowerElem<F>>, TrError> {
        let r = self.ring();
        let mut res: HashMap<Key, TowerElem<F>> = HashMap::new();
        for a in 0..4 {
            let f = self.bracket(om, a, n, h)?;
            let dinv = &self.dinv[a];
            for (key, l) in f {
                let g = mul_upto(r, &l, dinv, -2);
                if g.is_zero() && g.prec >= -2 {
                    continue;
                }
                // f must be even in s
                let mut e = g.val;
                while e <= -2 {
                    let c = g.try_coeff(r, e)?;
                    if e % 2 != 0 && !r.is_zero(&c) {
                        return Err(TrError::ParityGuard { n, h, center: a });
                    }
                    e += 1;
                }
                let mut fact = r.one();
                for k in 0.. {
                    if k > 0 {
                        fact = r.mul_int(&fact, k + 1);
                    }
                    let e = -(k as i32) - 2;
                    if e < g.val {
                        break;
                    }
                    if k % 2 != 0 {
                        continue;
                    }
                    let c = g.try_coeff(r, e)?;
                    if r.is_zero(&c) {
                        continue;
                    }
                    let mut k2 = Vec::with_capacity(n);
                    k2.push((a as u8, k as u8));
                    k2.extend_from_slice(&key);
                    let v = r.mul(&c, &r.inv(&fact).expect("factorial is a unit"));
                    let slot = res.entry(k2).or_insert_with(|| r.zero());
                    r.add_assign(slot, &v);
                }
            }
        }
        let mut terms = BTreeMap::new();
        for (k, c) in res {
            if r.is_zero(&c) {
                continue;
            }
            if k.iter().any(|&(_, p)| p % 2 != 0) {
                return Err(TrError::OddDerivative { n, h });
            }
            terms.insert(k, c);
        }
        Ok(WeierstrassForm { n, h, terms })
    }

    /// Bracket of the recursion at center `a`, keyed by slots `1..n`.
    fn bracket(
        &self,
        om: &FormTable<TowerElem<F>>,
        a: usize,
        n: usize,
        h: usize,
    ) -> Result<Dict<TowerElem<F>>, TrError> {
        let r = self.ring();
        let mut f: Dict<TowerElem<F>> = HashMap::new();
        if h >= 1 {
            if (n + 1, h - 1) == (2, 0) {
                // B(z, z̄) = ℘(2s)
                let b =
                    laurent_series(r, &self.laurent, 0, self.order).subst_scale(r, &r.from_int(2));
                accumulate(r, &mut f, Vec::new(), b);
            } else {
                for (key, c) in &om[&(n + 1, h - 1)].terms {
                    let (b1, p1) = key[0];
                    let (b2, p2) = key[1];
                    let s1 = self.expand_slot(a, b1 as usize, p1, 1);
                    let s2 = self.expand_slot(a, b2 as usize, p2, -1);
                    accumulate(
                        r,
                        &mut f,
                        key[2..].to_vec(),
                        mul_upto(r, &s1, &s2, 0).scale(r, c),
                    );
                }
            }
        }
        let slots: Vec<usize> = (1..n).collect();
        let mut cache: HashMap<(usize, usize, i8), Dict<TowerElem<F>>> = HashMap::new();
        for hp in 0..=h {
            for rr in 0..n {
                if (rr == 0 && hp == 0) || (rr == n - 1 && hp == h) {
                    continue;
                }
                let (n1, h1, n2, h2) = (rr + 1, hp, n - rr, h - hp);
                if (n1, h1) == (1, 0) || (n2, h2) == (1, 0) {
                    continue;
                }
                for (nn, hh, sg) in [(n1, h1, 1i8), (n2, h2, -1)] {
                    cache
                        .entry((nn, hh, sg))
                        .or_insert_with(|| self.expand_factor(om, a, nn, hh, sg));
                }
                let f1 = &cache[&(n1, h1, 1)];
                let f2 = &cache[&(n2, h2, -1)];
                // missing ℘^{(k)} keys with k > order must not reach s^0
                let b_side = if (n1, h1) == (2, 0) {
                    Some(f2)
                } else if (n2, h2) == (2, 0) {
                    Some(f1)
                } else {
                    None
                };
                if let Some(other) = b_side {
                    let vmin = other
                        .values()
                        .filter(|l| !l.is_zero())
                        .map(|l| l.val)
                        .min()
                        .unwrap_or(0);
                    if self.order + vmin < 0 {
                        return Err(SeriesError::Truncated(-vmin, self.order).into());
                    }
                }
                for j in combinations(&slots, rr) {
                    let k: Vec<usize> = slots.iter().copied().filter(|x| !j.contains(x)).collect();
                    let mut pos = vec![0usize; n];
                    for (i, &x) in j.iter().enumerate() {
                        pos[x] = i;
                    }
                    for (i, &x) in k.iter().enumerate() {
                        pos[x] = i;
                    }
                    let in_j: Vec<bool> = (0..n).map(|x| j.contains(&x)).collect();
                    for (k1, l1) in f1 {
                        for (k2, l2) in f2 {
                            let key: Key = slots
                                .iter()
                                .map(|&x| if in_j[x] { k1[pos[x]] } else { k2[pos[x]] })
                                .collect();
                            let prod = mul_upto(r, l1, l2, 0);
                            accumulate(r, &mut f, key, prod);
                        }
                    }
                }
            }
        }
        Ok(f)
    }
}

/// `℘(z_a − z_b) = S'(b)/(4(a − b)) + S''(b)/24`.
pub fn halfperiod_value<R: Ring>(
    r: &R,
    polys: &CurvePolys<R::Elem>,
    a: &R::Elem,
    b: &R::Elem,
) -> R::Elem {
    let d = r
        .inv(&r.mul_int(&r.sub(a, b), 4))
        .expect("distinct roots differ by a unit");
    r.add(
        &r.mul(&polys.ds.eval(r, b), &d),
        &r.mul(&polys.dds.eval(r, b), &r.from_frac(1, 24)),
    )
}

/// Product known only through `s^e`, skipping work past it.
pub fn mul_upto<R: Ring>(
    r: &R,
    a: &Series<R::Elem>,
    b: &Series<R::Elem>,
    e: i32,
) -> Series<R::Elem> {
    let known = (a.prec as i64 + b.val as i64)
        .min(b.prec as i64 + a.val as i64)
        .min(e as i64) as i32;
    if a.is_zero() || b.is_zero() {
        return Series::zero(known);
    }
    let mut p = a.truncate(r, e - b.val).mul(r, &b.truncate(r, e - a.val));
    if p.is_zero() {
        return Series::zero(known);
    }
    p.prec = known;
    p
}

fn accumulate<R: Ring>(r: &R, d: &mut Dict<R::Elem>, key: Key, s: Series<R::Elem>) {
    match d.get_mut(&key) {
        Some(x) => *x = x.add(r, &s),
        None => {
            d.insert(key, s);
        }
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_per_level() {
        assert_eq!(level_pairs(1), vec![(3, 0), (1, 1)]);
        assert_eq!(level_pairs(2), vec![(4, 0), (2, 1)]);
        assert_eq!(level_pairs(3), vec![(5, 0), (3, 1), (1, 2)]);
    }

    #[test]
    fn halfperiod_values_are_symmetric() {
        let ctx = Context::rational(&crate::curve::preset("4_1").unwrap(), 6).unwrap();
        let r = ctx.ring();
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    assert_eq!(ctx.hp[a][b][0], ctx.hp[b][a][0]);
                    // a root of 4x³ − g₂x − g₃
                    let e = &ctx.hp[a][b][0];
                    let cubic = r.sub(
                        &r.sub(&r.mul_int(&r.pow(e, 3), 4), &r.mul(&ctx.g2, e)),
                        &ctx.g3,
                    );
                    assert!(r.is_zero(&cubic));
                }
            }
        }
    }

    #[test]
    fn level_one_is_symmetric_and_even() {
        for name in ["4_1", "L2R"] {
            let ctx = Context::rational(&crate::curve::preset(name).unwrap(), 10).unwrap();
            let om = ctx.run(1).unwrap();
            for f in om.values() {
                assert!(
                    f.is_symmetric() && f.all_even(),
                    "{name} ({}, {})",
                    f.n,
                    f.h
                );
            }
            assert_eq!(om[&(3, 0)].terms.len(), 4);
        }
    }
}
