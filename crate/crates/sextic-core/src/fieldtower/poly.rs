//! Sparse multivariate polynomials over Q(ω).
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors; the map order is
//! lexicographic with the first variable most significant, so the leading term
//! is the last entry.

use super::qw::Qw;
use std::collections::BTreeMap;
use std::fmt;

pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Qw>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Qw) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Qw::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly::monomial(m, Qw::one())
    }

    pub fn monomial(m: Monomial, c: Qw) -> Self {
        let nvars = m.len();
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Qw)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Qw)> + DoubleEndedIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<Qw> {
        if self.is_zero() {
            return Some(Qw::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn add_term(&mut self, m: Monomial, c: Qw) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.len(), self.nvars);
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Qw)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Qw {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Qw::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Highest exponent of variable `i` (0 for the zero polynomial).
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i]).max().unwrap_or(0)
    }

    /// Lowest exponent of variable `i` among the terms.
    pub fn low_degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i]).min().unwrap_or(0)
    }

    pub fn vars_present(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.degree_in(i) > 0).collect()
    }

    pub fn scale(&self, c: &Qw) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Qw) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().zip(m).map(|(a, b)| a + b).collect(), v * c))
                .collect(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        self.scale(&Qw::from_int(-1))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                r.add_term(m, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let dc_inv = dc.inv().unwrap();
        if d.is_monomial() {
            let mut q = Poly::zero(self.nvars);
            for (m, c) in &self.terms {
                if m.iter().zip(&dm).any(|(a, b)| a < b) {
                    return None;
                }
                q.terms.insert(m.iter().zip(&dm).map(|(a, b)| a - b).collect(), c * &dc_inv);
            }
            return Some(q);
        }
        let mut r = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if rm.iter().zip(&dm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Monomial = rm.iter().zip(&dm).map(|(a, b)| a - b).collect();
            let qc = &rc * &dc_inv;
            r = r.sub(&d.mul_monomial(&qm, &qc));
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Divide by the leading coefficient so the leading coefficient becomes 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Coefficients of `self` viewed as a polynomial in variable `i`.
    ///
    /// Entry `k` is the coefficient of `x_i^k`; it does not involve `x_i`.
    pub fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Poly::zero(self.nvars); d + 1];
        for (m, c) in &self.terms {
            let k = m[i] as usize;
            let mut m2 = m.clone();
            m2[i] = 0;
            out[k].add_term(m2, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(i: usize, coeffs: &[Poly], nvars: usize) -> Poly {
        let mut r = Poly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; nvars];
            m[i] = k as u32;
            r = r.add(&c.mul_monomial(&m, &Qw::one()));
        }
        r
    }

    /// Substitute the constant `v` for variable `i`.
    pub fn eval_var(&self, i: usize, v: &Qw) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2[i] = 0;
            r.add_term(m2, c * &v.pow(m[i] as i64).unwrap());
        }
        r
    }

    /// Substitute `x_j ↦ c_j · x_{perm[j]}` for every variable.
    pub fn substitute_scaled_perm(&self, perm: &[usize], scales: &[Qw]) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; self.nvars];
            let mut coeff = c.clone();
            for (j, &e) in m.iter().enumerate() {
                if e > 0 {
                    m2[perm[j]] += e;
                    coeff = &coeff * &scales[j].pow(e as i64).unwrap();
                }
            }
            r.add_term(m2, coeff);
        }
        r
    }

    /// Rename variables into a polynomial ring with `nvars` variables: variable
    /// `j` becomes variable `map[j]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Poly {
        let mut r = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; nvars];
            for (j, &e) in m.iter().enumerate() {
                m2[map[j]] += e;
            }
            r.add_term(m2, c.clone());
        }
        r
    }

    /// Exact n-th root when `self` is the n-th power of a polynomial.
    ///
    /// `Err(())` signals that a constant root search exceeded its size limit.
    pub fn nth_root(&self, n: u32) -> Result<Option<Poly>, ()> {
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        let (lm, lc) = self.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        if lm.iter().any(|e| e % n != 0) {
            return Ok(None);
        }
        let croot = match n {
            2 => lc.sqrt(),
            3 => lc.cbrt()?,
            _ => return Err(()),
        };
        let croot = match croot {
            Some(c) => c,
            None => return Ok(None),
        };
        let maxdeg = self.total_degree() / n;
        let qm: Monomial = lm.iter().map(|e| e / n).collect();
        let mut q = Poly::monomial(qm, croot);
        let nq = Qw::from_int(n as i64);
        loop {
            let r = self.sub(&q.pow(n));
            if r.is_zero() {
                return Ok(Some(q));
            }
            let (rm, rc) = r.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
            let lead_q = q.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
            let denom_m: Monomial = lead_q.0.iter().map(|e| e * (n - 1)).collect();
            if rm.iter().zip(&denom_m).any(|(a, b)| a < b) {
                return Ok(None);
            }
            let tm: Monomial = rm.iter().zip(&denom_m).map(|(a, b)| a - b).collect();
            if tm.iter().sum::<u32>() > maxdeg || tm >= lead_q.0 {
                return Ok(None);
            }
            if q.terms.contains_key(&tm) {
                return Ok(None);
            }
            let denom_c = &nq * &lead_q.1.pow((n - 1) as i64).unwrap();
            let tc = rc.div(&denom_c).unwrap();
            q.add_term(tm, tc);
        }
    }

    /// Render using the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                .collect();
            let cs = c.to_string();
            let s = if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono.join("*")
            } else if (-c).is_one() {
                format!("-{}", mono.join("*"))
            } else {
                format!("{}*{}", cs, mono.join("*"))
            };
            parts.push(s);
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{}", i)).collect();
        write!(f, "{}", self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn exact_division() {
        let a = x(0).add(&x(1));
        let b = x(0).sub(&x(2));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&x(1)).is_none());
    }

    #[test]
    fn roots() {
        let a = x(0).add(&x(1).scale(&Qw::omega())).add(&Poly::one(3));
        let sq = a.mul(&a);
        let r = sq.nth_root(2).unwrap().unwrap();
        assert_eq!(r.mul(&r), sq);
        let cu = a.pow(3);
        let r = cu.nth_root(3).unwrap().unwrap();
        assert_eq!(r.pow(3), cu);
        assert!(x(0).mul(&x(1)).nth_root(2).unwrap().is_none());
        assert!(a.pow(2).nth_root(3).unwrap().is_none());
    }

    #[test]
    fn coefficient_round_trip() {
        let p = x(0).mul(&x(1)).add(&x(1).pow(3)).add(&Poly::constant(3, Qw::from_int(4)));
        let cs = p.coefficients_in(1);
        assert_eq!(Poly::from_coefficients_in(1, &cs, 3), p);
    }
}
