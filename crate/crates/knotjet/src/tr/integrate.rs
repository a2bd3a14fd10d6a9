//! Path integration, B-cycle contraction and the rewrite in `(w, √σ)`.

use super::engine::{Context, FormTable, Slot};
use super::TrError;
use crate::algebra::poly::Poly;
use crate::algebra::ring::Ring;
use crate::curve::splitting::TowerElem;
use std::collections::BTreeMap;

/// `G = num(w)·σ^{−r/2}·(2ϖ_A)^{grade}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Amplitude<E> {
    pub n: usize,
    pub h: usize,
    pub d: usize,
    pub r: i64,
    /// ascending coefficients in `w`
    pub num: Vec<E>,
    pub grade: i64,
}

impl<E: Clone + PartialEq> Amplitude<E> {
    pub fn level(&self) -> i64 {
        2 * self.h as i64 - 2 + (self.n + self.d) as i64
    }
}

/// `N/(X − β)^m`.
struct Frac<E> {
    num: Poly<E>,
    m: u32,
}

impl<F: Ring> Context<F> {
    /// The integrated slot `℘^{(p)}(z − z_b)` from `ι(q)` to `q`, as
    /// `Y·U(X)/S(X)^m` with integration constants dropped.
    pub fn path_integral(&self, b: usize, p: u8) -> (Poly<TowerElem<F>>, u32) {
        assert!(p.is_multiple_of(2), "odd slot order {p}");
        let r = self.ring();
        let ib = self.sp.iota[b];
        let (u1, m1) = self.primitive_over_s(b, p);
        let (u2, m2) = self.primitive_over_s(ib, p);
        assert_eq!(m1, m2);
        (u1.sub(r, &u2), m1)
    }

    /// `Y⁻¹ × primitive` at one endpoint, over `S^m`.
    fn primitive_over_s(&self, b: usize, p: u8) -> (Poly<TowerElem<F>>, u32) {
        let r = self.ring();
        let beta = &self.sp.roots[b];
        let lin = Poly::new(r, vec![r.neg(beta), r.one()]);
        let cof = self.polys.s.div_exact(r, &lin).expect("root of S");
        let fr = if p == 0 {
            Frac {
                num: Poly::constant(r, r.from_frac(-1, 2)),
                m: 1,
            }
        } else {
            // R₀ = S'(β)/(4(X−β)) + S''(β)/24; T = R'; R = (S'/2)T + S T'
            let a = r.mul(&self.polys.ds.eval(r, beta), &r.from_frac(1, 4));
            let c = r.mul(&self.polys.dds.eval(r, beta), &r.from_frac(1, 24));
            let mut cur = Frac {
                num: Poly::constant(r, a).add(r, &lin.scale(r, &c)),
                m: 1,
            };
            let half_ds = self.polys.ds.scale(r, &r.from_frac(1, 2));
            for j in 1..p as u32 {
                let dn = cur
                    .num
                    .derivative(r)
                    .mul(r, &lin)
                    .sub(r, &cur.num.scale(r, &r.from_int(cur.m as i64)));
                cur = if j % 2 == 1 {
                    Frac {
                        num: dn,
                        m: cur.m + 1,
                    }
                } else {
                    // cur is T = N/(X−β)^m and dn/(X−β)^{m+1} its derivative
                    Frac {
                        num: half_ds.mul(r, &cur.num).add(r, &cof.mul(r, &dn)),
                        m: cur.m,
                    }
                };
            }
            cur
        };
        (fr.num.mul(r, &cof.pow(r, fr.m)), fr.m)
    }

    /// `G_n^{h,(d)}` from `ω_{n+d}^h`.
    pub fn amplitude(
        &self,
        om: &FormTable<TowerElem<F>>,
        n: usize,
        h: usize,
        d: usize,
    ) -> Result<Amplitude<F::Elem>, TrError> {
        let r = self.ring();
        let base = &r.base.base.base;
        let form = om
            .get(&(n + d, h))
            .ok_or(TrError::LevelNotComputed(2 * h as i64 - 2 + (n + d) as i64))?;
        // aggregate over the multiset of integrated slots
        let mut agg: BTreeMap<Vec<Slot>, TowerElem<F>> = BTreeMap::new();
        for (key, c) in &form.terms {
            if key[n..].iter().any(|&(_, p)| p != 0) {
                continue;
            }
            let mut ms = key[..n].to_vec();
            ms.sort();
            let e = agg.entry(ms).or_insert_with(|| r.zero());
            r.add_assign(e, c);
        }
        let mut cache: BTreeMap<Slot, (Poly<TowerElem<F>>, u32)> = BTreeMap::new();
        let mut parts = Vec::new();
        let mut kmax = 0;
        for (ms, c) in &agg {
            if r.is_zero(c) {
                continue;
            }
            let mut num = Poly::constant(r, c.clone());
            let mut m = 0;
            for &(b, p) in ms {
                let (u, mu) = cache
                    .entry((b, p))
                    .or_insert_with(|| self.path_integral(b as usize, p))
                    .clone();
                num = num.mul(r, &u);
                m += mu;
            }
            kmax = kmax.max(m);
            parts.push((num, m));
        }
        let mut total = Poly::zero();
        for (num, m) in parts {
            total = total.add(r, &num.mul(r, &self.polys.s.pow(r, kmax - m)));
        }
        let mut norm = base.one();
        for j in 1..=n as i64 {
            norm = base.mul_int(&norm, j);
        }
        for j in 1..=d as i64 {
            norm = base.mul_int(&norm, j);
        }
        let norm = base.inv(&norm).expect("factorials are units");
        let mut coeffs = Vec::with_capacity(total.c.len());
        for c in &total.c {
            coeffs.push(base.mul(&self.sp.to_base(c).ok_or(TrError::NotRational)?, &norm));
        }
        let (num, r_exp) = to_w(base, &coeffs, n as i64 - 2 * kmax as i64, &self.sigma)?;
        if d % 2 == 1 && num.iter().any(|x| !base.is_zero(x)) {
            return Err(TrError::OddD { n, h, d });
        }
        let num = if num.iter().all(|x| base.is_zero(x)) {
            Vec::new()
        } else {
            num
        };
        Ok(Amplitude {
            n,
            h,
            d,
            r: if num.is_empty() { 0 } else { r_exp },
            num,
            grade: -(d as i64),
        })
    }

    /// All `G_n^{h,(d)}` with `0 < 2h − 2 + n + d ≤ max_level`, `d` even.
    pub fn amplitudes(
        &self,
        om: &FormTable<TowerElem<F>>,
        max_level: usize,
    ) -> Result<Vec<Amplitude<F::Elem>>, TrError> {
        let mut out = Vec::new();
        for &(nd, h) in om.keys() {
            if om[&(nd, h)].level() > max_level as i64 {
                continue;
            }
            for d in 0..=nd {
                let a = self.amplitude(om, nd - d, h, d)?;
                if d % 2 == 0 {
                    out.push(a);
                }
            }
        }
        Ok(out)
    }
}

/// Rewrite `X^{shift}·N(X)·σ^{shift/2}` as `P(w)/σ^{r/2}` with
/// `w = (X + 1/X)/2`, dividing out whole powers of `σ`.
pub fn to_w<R: Ring>(
    r: &R,
    n: &[R::Elem],
    shift: i64,
    sigma: &Poly<R::Elem>,
) -> Result<(Vec<R::Elem>, i64), TrError> {
    let nz: Vec<usize> = (0..n.len()).filter(|&i| !r.is_zero(&n[i])).collect();
    if nz.is_empty() {
        return Ok((Vec::new(), 0));
    }
    // Laurent coefficients l_j at X^j, j = shift + i
    let lo = shift + nz[0] as i64;
    let hi = shift + *nz.last().unwrap() as i64;
    if lo != -hi {
        return Err(TrError::Remainder);
    }
    let at = |j: i64| -> R::Elem {
        let i = j - shift;
        if i < 0 || i as usize >= n.len() {
            r.zero()
        } else {
            n[i as usize].clone()
        }
    };
    for j in 1..=hi {
        if at(j) != at(-j) {
            return Err(TrError::Remainder);
        }
    }
    // X^j + X^{−j} in t = X + 1/X: P₀ = 2, P₁ = t, P_{j+1} = tP_j − P_{j−1}
    let t = Poly::new(r, vec![r.zero(), r.one()]);
    let mut prev = Poly::constant(r, r.from_int(2));
    let mut cur = t.clone();
    let mut acc = Poly::constant(r, at(0));
    for j in 1..=hi {
        acc = acc.add(r, &cur.scale(r, &at(j)));
        let next = t.mul(r, &cur).sub(r, &prev);
        prev = cur;
        cur = next;
    }
    // t = 2w
    let mut pw = r.one();
    let mut c = Vec::with_capacity(acc.c.len());
    for x in &acc.c {
        c.push(r.mul(x, &pw));
        pw = r.mul_int(&pw, 2);
    }
    let mut p = Poly::new(r, c);
    let mut rr = -shift;
    while rr >= 2 {
        match p.div_exact(r, sigma) {
            Some(q) if !q.is_zero() => {
                p = q;
                rr -= 2;
            }
            _ => break,
        }
    }
    Ok((p.c, rr))
}
