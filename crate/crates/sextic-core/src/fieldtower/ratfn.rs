//! Rational functions over Q(ω) in canonical form.
//!
//! Numerator and denominator are coprime and the denominator has leading
//! coefficient 1, so structural equality is field equality.

use super::gcd::gcd;
use super::poly::Poly;
use super::qw::Qw;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    /// Build `num/den` and reduce to canonical form.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let n = num.nvars();
        if num.is_zero() {
            return Some(RatFn { num, den: Poly::one(n) });
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() { (num, den) } else { (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap()) };
        Some(RatFn::normalized(num, den))
    }

    /// Normalize a coprime pair.
    fn normalized(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let inv = lc.inv().unwrap();
            RatFn { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFn { num: p, den: Poly::one(n) }
    }

    pub fn constant(nvars: usize, c: Qw) -> Self {
        RatFn::from_poly(Poly::constant(nvars, c))
    }

    pub fn int(nvars: usize, c: i64) -> Self {
        RatFn::constant(nvars, Qw::from_int(c))
    }

    pub fn zero(nvars: usize) -> Self {
        RatFn::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        RatFn::from_poly(Poly::one(nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        RatFn::from_poly(Poly::var(nvars, i))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num == self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Qw> {
        if self.is_constant() {
            let n = self.num.constant_value()?;
            let d = self.den.constant_value()?;
            n.div(&d)
        } else {
            None
        }
    }

    /// Numerator and denominator are single terms.
    pub fn is_monomial_quotient(&self) -> bool {
        self.num.is_monomial() && self.den.is_monomial()
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFn::new(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        let g = gcd(&self.den, &o.den);
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d2).add(&o.num.mul(&d1));
        let den = d1.mul(&o.den);
        RatFn::new(num, den).unwrap()
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero(self.nvars());
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RatFn::normalized(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Option<RatFn> {
        if self.is_zero() {
            None
        } else {
            Some(RatFn::normalized(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, o: &RatFn) -> Option<RatFn> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: i64) -> Option<RatFn> {
        if e < 0 {
            return self.inv().map(|i| i.pow(-e).unwrap());
        }
        Some(RatFn::normalized(self.num.pow(e as u32), self.den.pow(e as u32)))
    }

    pub fn scale(&self, c: &Qw) -> RatFn {
        if c.is_zero() {
            return RatFn::zero(self.nvars());
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Apply `x_j ↦ c_j · x_{perm[j]}`; coprimality is preserved.
    pub fn substitute_scaled_perm(&self, perm: &[usize], scales: &[Qw]) -> RatFn {
        RatFn::normalized(self.num.substitute_scaled_perm(perm, scales), self.den.substitute_scaled_perm(perm, scales))
    }

    /// Degree valuation at infinity in variable `i`: deg(num) − deg(den).
    pub fn degree_in(&self, i: usize) -> i64 {
        self.num.degree_in(i) as i64 - self.den.degree_in(i) as i64
    }

    /// Order of vanishing along `x_i = 0`.
    pub fn order_at_zero(&self, i: usize) -> i64 {
        self.num.low_degree_in(i) as i64 - self.den.low_degree_in(i) as i64
    }

    /// Exact order along the prime polynomial `p`.
    pub fn order_along(&self, p: &Poly) -> i64 {
        if p.is_constant() {
            return 0;
        }
        fn mult(q: &Poly, p: &Poly) -> i64 {
            let mut k = 0;
            let mut cur = q.clone();
            while let Some(next) = cur.div_exact(p) {
                cur = next;
                k += 1;
            }
            k
        }
        mult(&self.num, p) - mult(&self.den, p)
    }

    /// Exact n-th root in the same field (n = 2 or 3).
    pub fn nth_root(&self, n: u32) -> Result<Option<RatFn>, ()> {
        let d = match self.den.nth_root(n)? {
            Some(d) => d,
            None => return Ok(None),
        };
        let m = match self.num.nth_root(n)? {
            Some(m) => m,
            None => return Ok(None),
        };
        Ok(RatFn::new(m, d))
    }

    pub fn embed(&self, nvars: usize, map: &[usize]) -> RatFn {
        RatFn::new(self.num.embed(nvars, map), self.den.embed(nvars, map)).unwrap()
    }

    pub fn render(&self, names: &[String]) -> String {
        let n = self.num.render(names);
        if self.den.is_constant() && self.den.constant_value().map(|c| c.is_one()).unwrap_or(false) {
            return n;
        }
        let wrap = |s: String, p: &Poly| if p.num_terms() > 1 || s.contains('*') || s.starts_with('(') { format!("({})", s) } else { s };
        format!("{}/{}", wrap(n, &self.num), wrap(self.den.render(names), &self.den))
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("x{}", i)).collect();
        write!(f, "{}", self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> RatFn {
        RatFn::var(3, i)
    }

    #[test]
    fn canonical_equality() {
        let a = v(0).add(&v(1));
        let b = v(0).sub(&v(2));
        let q1 = a.mul(&b).div(&b.mul(&v(1))).unwrap();
        let q2 = a.div(&v(1)).unwrap();
        assert_eq!(q1, q2);
        let two = RatFn::int(3, 2);
        assert_eq!(two.mul(&a).div(&two.mul(&b)).unwrap(), a.div(&b).unwrap());
    }

    #[test]
    fn field_identities() {
        let a = v(0).add(&RatFn::int(3, 1)).div(&v(1)).unwrap();
        let b = v(2).div(&v(0).sub(&v(1))).unwrap();
        let lhs = a.add(&b).mul(&a.sub(&b));
        let rhs = a.mul(&a).sub(&b.mul(&b));
        assert_eq!(lhs, rhs);
        assert!(a.mul(&a.inv().unwrap()).is_one());
    }

    #[test]
    fn orders() {
        let p = v(0).add(&v(1));
        let x = p.pow(2).unwrap().div(&v(2).mul(&p)).unwrap();
        assert_eq!(x.order_along(p.num()), 1);
        assert_eq!(x.order_at_zero(2), -1);
        assert_eq!(x.degree_in(0), 1);
    }
}
