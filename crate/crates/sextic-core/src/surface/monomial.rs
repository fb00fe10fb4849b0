//! Search for monomial solutions of simultaneous norm equations
//! `Norm_{u_i}(λ) = a_i`, with λ optionally fixed by a set of elements.

use crate::fieldtower::{ElemId, GaloisTower, Qw, RatFn};

/// Leading coefficient and exponent vector of a monomial quotient.
pub fn laurent_parts(x: &RatFn) -> Option<(Qw, Vec<i64>)> {
    if x.is_zero() || !x.is_monomial_quotient() {
        return None;
    }
    let (nm, nc) = x.num().leading()?;
    let (dm, dc) = x.den().leading()?;
    let e = nm.iter().zip(dm).map(|(a, b)| *a as i64 - *b as i64).collect();
    Some((nc.div(dc)?, e))
}

pub fn laurent_monomial(nvars: usize, c: &Qw, e: &[i64]) -> RatFn {
    let mut r = RatFn::constant(nvars, c.clone());
    for (i, &k) in e.iter().enumerate() {
        if k != 0 {
            r = r.mul(&RatFn::var(nvars, i).pow(k).unwrap());
        }
    }
    r
}

fn exponent_norm(tower: &GaloisTower, u: ElemId, a: &[i64]) -> Vec<i64> {
    let n = tower.order(u);
    let perm = &tower.aut(u).perm;
    let mut cur = a.to_vec();
    let mut acc = a.to_vec();
    for _ in 1..n {
        let mut next = vec![0; cur.len()];
        for (j, &e) in cur.iter().enumerate() {
            next[perm[j]] += e;
        }
        for (s, v) in acc.iter_mut().zip(&next) {
            *s += v;
        }
        cur = next;
    }
    acc
}

fn roots_of(r: &Qw, n: usize) -> Vec<Qw> {
    match n {
        1 => vec![r.clone()],
        2 => r.sqrt().map(|s| vec![s.clone(), -s]).unwrap_or_default(),
        3 => match r.cbrt() {
            Ok(Some(c)) => (0..3).map(|k| &c * &Qw::omega().pow(k).unwrap()).collect(),
            _ => vec![],
        },
        6 => roots_of(r, 2).iter().flat_map(|s| roots_of(s, 3)).collect(),
        _ => vec![],
    }
}

/// A monomial `c·x^a` with exponents in `[-bound, bound]` solving every
/// equation and fixed by `fixed_by`, verified with exact norms.
pub fn find_monomial_with_norms(
    tower: &GaloisTower,
    conds: &[(ElemId, RatFn)],
    fixed_by: &[ElemId],
    bound: i64,
) -> Option<RatFn> {
    let nv = tower.nvars();
    let mut targets = Vec::new();
    for (u, a) in conds {
        targets.push((*u, laurent_parts(a)?));
    }
    let width = (2 * bound + 1) as usize;
    let total = width.pow(nv as u32);
    for code in 0..total {
        let mut k = code;
        let a: Vec<i64> = (0..nv)
            .map(|_| {
                let d = (k % width) as i64 - bound;
                k /= width;
                d
            })
            .collect();
        if !targets.iter().all(|(u, (_, e))| exponent_norm(tower, *u, &a) == *e) {
            continue;
        }
        let base = laurent_monomial(nv, &Qw::one(), &a);
        if !tower.is_fixed(&base, fixed_by) {
            continue;
        }
        let mut candidates = match targets.first() {
            None => vec![Qw::one()],
            Some((u, (c, _))) => {
                let (k0, _) = laurent_parts(&tower.norm(*u, &base)).unwrap();
                roots_of(&c.div(&k0).unwrap(), tower.order(*u))
            }
        };
        candidates.sort_by_key(|c| c.to_string());
        for c in candidates {
            let lam = base.scale(&c);
            if conds.iter().all(|(u, t)| tower.norm(*u, &lam) == *t) && tower.is_fixed(&lam, fixed_by) {
                return Some(lam);
            }
        }
    }
    None
}
