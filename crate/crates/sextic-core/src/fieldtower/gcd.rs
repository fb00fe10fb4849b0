//! Multivariate polynomial gcd over Q(ω).
//!
//! Cheap structural cases are handled directly; the general case uses the
//! modular algorithm in [`super::modgcd`], with recursive primitive
//! pseudo-remainder sequences as a fallback.

use super::poly::{Monomial, Poly};
use super::qw::Qw;

/// Greatest common divisor, normalized to leading coefficient 1.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    if a.is_monomial() || b.is_monomial() {
        let (m, other) = if a.is_monomial() { (a, b) } else { (b, a) };
        let mm = m.leading().unwrap().0.clone();
        let g: Monomial = (0..n).map(|i| mm[i].min(other.low_degree_in(i))).collect();
        return Poly::monomial(g, Qw::one());
    }
    if let Some(_) = a.div_exact(b) {
        return b.monic();
    }
    if let Some(_) = b.div_exact(a) {
        return a.monic();
    }
    // Pull out common monomial factors first.
    let ma: Monomial = (0..n).map(|i| a.low_degree_in(i)).collect();
    let mb: Monomial = (0..n).map(|i| b.low_degree_in(i)).collect();
    if ma.iter().any(|&e| e > 0) || mb.iter().any(|&e| e > 0) {
        let mg: Monomial = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
        let a2 = a.div_exact(&Poly::monomial(ma, Qw::one())).unwrap();
        let b2 = b.div_exact(&Poly::monomial(mb, Qw::one())).unwrap();
        return gcd(&a2, &b2).mul_monomial(&mg, &Qw::one()).monic();
    }
    let va = a.vars_present();
    let vb = b.vars_present();
    // A variable occurring in only one argument: the gcd divides that
    // argument's content in it.
    for &v in &va {
        if !vb.contains(&v) {
            return gcd(&content(a, v), b);
        }
    }
    for &v in &vb {
        if !va.contains(&v) {
            return gcd(a, &content(b, v));
        }
    }
    if let Some(g) = super::modgcd::gcd(a, b) {
        return g;
    }
    let v = *va.iter().max_by_key(|&&v| (a.degree_in(v).min(b.degree_in(v)), std::cmp::Reverse(v))).unwrap();
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).unwrap();
    let pb = b.div_exact(&cb).unwrap();
    let g = primitive_prs(&pa, &pb, v);
    g.mul(&c).monic()
}

/// Content with respect to variable `v`: gcd of the coefficients in `v`.
pub fn content(p: &Poly, v: usize) -> Poly {
    let mut coeffs = p.coefficients_in(v).into_iter().filter(|c| !c.is_zero()).collect::<Vec<_>>();
    coeffs.sort_by_key(|c| (c.num_terms(), c.total_degree()));
    let mut g = Poly::zero(p.nvars());
    for c in coeffs {
        g = gcd(&g, &c);
        if g.is_constant() {
            return Poly::one(p.nvars());
        }
    }
    g
}

fn primitive_part(p: &Poly, v: usize) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content(p, v);
    p.div_exact(&c).unwrap()
}

fn lc_in(p: &Poly, v: usize) -> Poly {
    p.coefficients_in(v).pop().unwrap()
}

/// Pseudo-remainder of `a` by `b` with respect to variable `v`.
fn pseudo_rem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let n = a.nvars();
    let db = b.degree_in(v);
    let lb = lc_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = lc_in(&r, v);
        let mut m = vec![0; n];
        m[v] = dr - db;
        r = r.mul(&lb).sub(&b.mul(&lr).mul_monomial(&m, &Qw::one()));
    }
    r
}

fn primitive_prs(a: &Poly, b: &Poly, v: usize) -> Poly {
    let (mut x, mut y) = if a.degree_in(v) >= b.degree_in(v) { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    while !y.is_zero() {
        if y.degree_in(v) == 0 {
            return Poly::one(a.nvars());
        }
        let r = pseudo_rem(&x, &y, v);
        x = y;
        y = primitive_part(&r, v);
    }
    primitive_part(&x, v).monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(4, i)
    }

    fn c(n: i64) -> Poly {
        Poly::constant(4, Qw::from_int(n))
    }

    #[test]
    fn univariate_and_multivariate() {
        let f = x(0).add(&x(1));
        let g1 = x(0).mul(&x(2)).add(&c(1));
        let g2 = x(3).sub(&x(1).pow(2)).add(&x(0));
        let a = f.mul(&g1);
        let b = f.mul(&g2);
        assert_eq!(gcd(&a, &b), f.monic());
        assert_eq!(gcd(&g1, &g2), Poly::one(4));
    }

    #[test]
    fn monomial_factors() {
        let a = x(0).pow(2).mul(&x(1)).mul(&x(2).add(&c(1)));
        let b = x(0).mul(&x(1).pow(3)).mul(&x(2).add(&c(1)));
        let g = gcd(&a, &b);
        assert_eq!(g, x(0).mul(&x(1)).mul(&x(2).add(&c(1))));
    }

    #[test]
    fn omega_coefficients() {
        let w = Qw::omega();
        let f = x(0).add(&x(1).scale(&w));
        let g = x(0).add(&x(1).scale(&w.pow(2).unwrap()));
        let p = f.mul(&g).mul(&x(2).add(&c(2)));
        let q = f.mul(&x(3).sub(&c(1)));
        assert_eq!(gcd(&p, &q), f.monic());
        assert_eq!(gcd(&f, &g), Poly::one(4));
    }
}
