//! Modular multivariate gcd over Q(ω).
//!
//! Images are computed modulo primes p ≡ 1 (mod 3) under both embeddings of
//! ω into F_p, by dense evaluation and Newton interpolation one variable at a
//! time. The coefficients a + bω are recovered from the two images, lifted by
//! Chinese remaindering and rational reconstruction, and the candidate is
//! accepted only after exact division of both inputs.

use super::poly::{Monomial, Poly};
use super::qw::Qw;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

type MPoly = BTreeMap<Monomial, u64>;

/// Number of primes tried before giving up.
const MAX_PRIMES: usize = 60;

#[derive(Clone, Copy)]
struct Fp {
    p: u64,
}

impl Fp {
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes p ≡ 1 (mod 3) below 2^31, in decreasing order.
fn primes() -> impl Iterator<Item = u64> {
    let start: u64 = (1 << 31) - 1;
    (0..).map(move |k| start - k).filter(|&p| p % 3 == 1 && is_prime(p))
}

fn cube_root_of_unity(f: &Fp) -> u64 {
    (2..).map(|g| f.pow(g, (f.p - 1) / 3)).find(|&r| r != 1).unwrap()
}

fn rat_mod(x: &BigRational, p: u64) -> Option<u64> {
    let pm = BigInt::from(p);
    let n = x.numer().mod_floor(&pm).to_u64().unwrap();
    let d = x.denom().mod_floor(&pm).to_u64().unwrap();
    if d == 0 {
        return None;
    }
    let f = Fp { p };
    Some(f.mul(n, f.inv(d)))
}

/// Image of a polynomial under ω ↦ r; `None` if a denominator vanishes.
fn image(a: &Poly, f: &Fp, r: u64) -> Option<MPoly> {
    let mut out = MPoly::new();
    for (m, c) in a.terms() {
        let v = f.add(rat_mod(&c.a, f.p)?, f.mul(rat_mod(&c.b, f.p)?, r));
        if v != 0 {
            out.insert(m.clone(), v);
        }
    }
    Some(out)
}

// Univariate polynomials over F_p, lowest degree first.

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn ueval(f: &Fp, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

fn umonic(f: &Fp, a: &[u64]) -> Vec<u64> {
    match a.last() {
        None => vec![],
        Some(&l) => {
            let i = f.inv(l);
            a.iter().map(|&c| f.mul(c, i)).collect()
        }
    }
}

/// Quotient and remainder.
fn udivrem(f: &Fp, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let li = f.inv(*b.last().unwrap());
    let mut q = vec![0; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = f.mul(*r.last().unwrap(), li);
        q[shift] = c;
        for (j, &bc) in b.iter().enumerate() {
            r[j + shift] = f.sub(r[j + shift], f.mul(c, bc));
        }
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn ugcd(f: &Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = udivrem(f, &x, &y);
        x = y;
        y = r;
    }
    umonic(f, &x)
}

// Multivariate polynomials over F_p.

fn mp_monic(f: &Fp, a: &MPoly) -> MPoly {
    match a.iter().next_back() {
        None => MPoly::new(),
        Some((_, &l)) => {
            let i = f.inv(l);
            a.iter().map(|(m, &c)| (m.clone(), f.mul(c, i))).collect()
        }
    }
}

fn mp_div_exact(f: &Fp, a: &MPoly, d: &MPoly) -> bool {
    let (dm, &dc) = match d.iter().next_back() {
        None => return false,
        Some(x) => x,
    };
    let dm = dm.clone();
    let di = f.inv(dc);
    let mut r = a.clone();
    while let Some((rm, &rc)) = r.iter().next_back() {
        if rm.iter().zip(&dm).any(|(x, y)| x < y) {
            return false;
        }
        let qm: Monomial = rm.iter().zip(&dm).map(|(x, y)| x - y).collect();
        let qc = f.mul(rc, di);
        for (m, &c) in d {
            let key: Monomial = m.iter().zip(&qm).map(|(x, y)| x + y).collect();
            let v = f.sub(*r.get(&key).unwrap_or(&0), f.mul(qc, c));
            if v == 0 {
                r.remove(&key);
            } else {
                r.insert(key, v);
            }
        }
    }
    true
}

/// View as a polynomial in the other variables with coefficients in F_p[y].
fn split(a: &MPoly, y: usize) -> BTreeMap<Monomial, Vec<u64>> {
    let mut out: BTreeMap<Monomial, Vec<u64>> = BTreeMap::new();
    for (m, &c) in a {
        let k = m[y] as usize;
        let mut x = m.clone();
        x[y] = 0;
        let e = out.entry(x).or_default();
        if e.len() <= k {
            e.resize(k + 1, 0);
        }
        e[k] = c;
    }
    out
}

fn join(a: &BTreeMap<Monomial, Vec<u64>>, y: usize) -> MPoly {
    let mut out = MPoly::new();
    for (x, cs) in a {
        for (k, &c) in cs.iter().enumerate() {
            if c != 0 {
                let mut m = x.clone();
                m[y] = k as u32;
                out.insert(m, c);
            }
        }
    }
    out
}

fn content_in(f: &Fp, a: &BTreeMap<Monomial, Vec<u64>>) -> Vec<u64> {
    let mut g: Vec<u64> = vec![];
    for c in a.values() {
        g = ugcd(f, &g, c);
        if g.len() == 1 {
            break;
        }
    }
    g
}

fn divide_content(f: &Fp, a: &BTreeMap<Monomial, Vec<u64>>, c: &[u64]) -> BTreeMap<Monomial, Vec<u64>> {
    a.iter().map(|(x, v)| (x.clone(), udivrem(f, v, c).0)).collect()
}

fn vars_of(a: &MPoly, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| a.keys().any(|m| m[i] > 0)).collect()
}

/// Monic gcd over F_p.
fn gcd_p(f: &Fp, a: &MPoly, b: &MPoly, n: usize) -> MPoly {
    if a.is_empty() {
        return mp_monic(f, b);
    }
    if b.is_empty() {
        return mp_monic(f, a);
    }
    let mut vars = vars_of(a, n);
    for v in vars_of(b, n) {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort();
    let one: MPoly = [(vec![0; n], 1)].into_iter().collect();
    let y = match vars.last() {
        None => return one,
        Some(&y) => y,
    };
    let sa = split(a, y);
    let sb = split(b, y);
    if vars.len() == 1 {
        let g = ugcd(f, &sa[&vec![0; n]], &sb[&vec![0; n]]);
        return join(&[(vec![0; n], g)].into_iter().collect(), y);
    }
    let ca = content_in(f, &sa);
    let cb = content_in(f, &sb);
    let c = ugcd(f, &ca, &cb);
    let a1 = divide_content(f, &sa, &ca);
    let b1 = divide_content(f, &sb, &cb);
    let la = a1.values().next_back().unwrap().clone();
    let lb = b1.values().next_back().unwrap().clone();
    let gamma = ugcd(f, &la, &lb);
    let da = a1.values().map(|v| v.len()).max().unwrap() - 1;
    let db = b1.values().map(|v| v.len()).max().unwrap() - 1;
    let bound = gamma.len() - 1 + da.min(db);
    let a1m = join(&a1, y);
    let b1m = join(&b1, y);
    let content_poly = |c: &[u64]| join(&[(vec![0; n], c.to_vec())].into_iter().collect(), y);

    let mut h: BTreeMap<Monomial, Vec<u64>> = BTreeMap::new();
    let mut q: Vec<u64> = vec![1];
    let mut lead: Option<Monomial> = None;
    let mut points = 0;
    for beta in 1..f.p {
        if ueval(f, &la, beta) == 0 || ueval(f, &lb, beta) == 0 {
            continue;
        }
        let ev = |s: &BTreeMap<Monomial, Vec<u64>>| -> MPoly {
            s.iter().filter_map(|(x, v)| {
                let e = ueval(f, v, beta);
                (e != 0).then(|| (x.clone(), e))
            }).collect()
        };
        let g = gcd_p(f, &ev(&a1), &ev(&b1), n);
        let glead = g.keys().next_back().unwrap().clone();
        if glead.iter().all(|&e| e == 0) {
            return mp_monic(f, &content_poly(&c));
        }
        match &lead {
            Some(l) if glead > *l => continue,
            Some(l) if glead == *l => {}
            _ => {
                lead = Some(glead);
                h.clear();
                q = vec![1];
                points = 0;
            }
        }
        let scale = ueval(f, &gamma, beta);
        let qb = f.inv(ueval(f, &q, beta));
        let mut changed = false;
        let mut keys: Vec<Monomial> = g.keys().cloned().collect();
        for k in h.keys() {
            if !g.contains_key(k) {
                keys.push(k.clone());
            }
        }
        for k in keys {
            let target = f.mul(*g.get(&k).unwrap_or(&0), scale);
            let cur = h.get(&k).map_or(0, |v| ueval(f, v, beta));
            let d = f.mul(f.sub(target, cur), qb);
            if d != 0 {
                changed = true;
                let e = h.entry(k).or_default();
                if e.len() < q.len() {
                    e.resize(q.len(), 0);
                }
                for (j, &qc) in q.iter().enumerate() {
                    e[j] = f.add(e[j], f.mul(d, qc));
                }
            }
        }
        let mut nq = vec![0; q.len() + 1];
        for (j, &qc) in q.iter().enumerate() {
            nq[j + 1] = f.add(nq[j + 1], qc);
            nq[j] = f.sub(nq[j], f.mul(beta, qc));
        }
        q = nq;
        points += 1;
        if !changed || points > bound {
            let hc = content_in(f, &h);
            let pp = join(&divide_content(f, &h, &hc), y);
            if mp_div_exact(f, &a1m, &pp) && mp_div_exact(f, &b1m, &pp) {
                let cp = content_poly(&c);
                let mut prod = MPoly::new();
                for (m1, &c1) in &pp {
                    for (m2, &c2) in &cp {
                        let key: Monomial = m1.iter().zip(m2).map(|(x, z)| x + z).collect();
                        let v = f.add(*prod.get(&key).unwrap_or(&0), f.mul(c1, c2));
                        prod.insert(key, v);
                    }
                }
                prod.retain(|_, v| *v != 0);
                return mp_monic(f, &prod);
            }
            if points > bound {
                lead = None;
            }
        }
    }
    unreachable!("evaluation points exhausted")
}

/// Rational number n/d ≡ u (mod m) with |n|, d ≤ sqrt(m/2).
fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

fn crt(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let pm = BigInt::from(p);
    let f = Fp { p };
    let am = a.mod_floor(&pm).to_u64().unwrap();
    let minv = f.inv(m.mod_floor(&pm).to_u64().unwrap());
    let k = f.mul(f.sub(b, am), minv);
    a + m * BigInt::from(k)
}

/// Monic gcd of two nonzero polynomials over Q(ω), or `None` if the
/// modular method did not converge within the prime budget.
pub fn gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let n = a.nvars();
    let mut modulus = BigInt::one();
    let mut lead: Option<Monomial> = None;
    let mut residues: BTreeMap<Monomial, (BigInt, BigInt)> = BTreeMap::new();
    let mut previous: Option<Poly> = None;
    for p in primes().take(MAX_PRIMES) {
        let f = Fp { p };
        let r = cube_root_of_unity(&f);
        let r2 = f.mul(r, r);
        let (ia, ib, ja, jb) = match (image(a, &f, r), image(b, &f, r), image(a, &f, r2), image(b, &f, r2)) {
            (Some(w), Some(x), Some(y), Some(z)) => (w, x, y, z),
            _ => continue,
        };
        if ia.len() != a.num_terms() || ib.len() != b.num_terms() || ja.len() != a.num_terms() || jb.len() != b.num_terms() {
            continue;
        }
        let g1 = gcd_p(&f, &ia, &ib, n);
        let g2 = gcd_p(&f, &ja, &jb, n);
        let l1 = g1.keys().next_back().unwrap().clone();
        if g2.keys().next_back() != Some(&l1) {
            continue;
        }
        match &lead {
            Some(l) if l1 > *l => continue,
            Some(l) if l1 == *l => {}
            _ => {
                lead = Some(l1);
                residues.clear();
                modulus = BigInt::one();
                previous = None;
            }
        }
        let dinv = f.inv(f.sub(r, r2));
        let mut keys: Vec<Monomial> = g1.keys().chain(g2.keys()).cloned().collect();
        keys.extend(residues.keys().cloned());
        keys.sort();
        keys.dedup();
        let mut next = BTreeMap::new();
        for k in keys {
            let v1 = *g1.get(&k).unwrap_or(&0);
            let v2 = *g2.get(&k).unwrap_or(&0);
            let cb = f.mul(f.sub(v1, v2), dinv);
            let ca = f.sub(v1, f.mul(cb, r));
            let (ra, rb) = residues.get(&k).cloned().unwrap_or((BigInt::zero(), BigInt::zero()));
            next.insert(k, (crt(&ra, &modulus, ca, p), crt(&rb, &modulus, cb, p)));
        }
        residues = next;
        modulus *= BigInt::from(p);
        let mut cand = Poly::zero(n);
        let mut ok = true;
        for (k, (ra, rb)) in &residues {
            match (rational_reconstruction(ra, &modulus), rational_reconstruction(rb, &modulus)) {
                (Some(x), Some(y)) => {
                    let c = Qw::new(x, y);
                    if !c.is_zero() {
                        cand.add_term(k.clone(), c);
                    }
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            previous = None;
            continue;
        }
        if previous.as_ref() == Some(&cand) && a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
            return Some(cand);
        }
        previous = Some(cand);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn recovers_common_factors() {
        let w = Poly::constant(3, Qw::omega());
        let half = Poly::constant(3, Qw::from_rational(BigRational::new(BigInt::from(1), BigInt::from(2))));
        let g = v(0).mul(&v(1)).add(&w.mul(&v(2))).add(&half);
        let a = g.mul(&v(0).add(&v(1)).pow(2));
        let b = g.mul(&g).mul(&v(2).sub(&Poly::one(3)));
        assert_eq!(gcd(&a, &b).unwrap(), g.monic());
        assert_eq!(gcd(&a, &v(2)).unwrap(), Poly::one(3));
        assert_eq!(gcd(&a.mul(&a), &a).unwrap(), a.monic());
    }
}
