//! Norm-class facts: a three-valued oracle for membership in Norm_u(F*), and
//! Hilbert 90 witnesses for monomial quotients.

use super::poly::Poly;
use super::ratfn::RatFn;
use super::tower::{ElemId, GaloisTower};
use crate::error::{Error, Result};
use crate::Tri;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    IsNorm,
    NotNorm,
}

/// Evidence backing a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Norm of the witness equals the subject.
    Certificate { witness: RatFn },
    /// A variable whose degree (at infinity or at zero) every group element
    /// preserves has a degree residue nonzero modulo the generator order.
    Valuation { variable: String, at_zero: bool, degree: i64, modulus: usize },
    /// The order along a u-stable irreducible polynomial is nonzero modulo the
    /// generator order.
    PrimeValuation { prime: String, order: i64, modulus: usize },
    /// For u: y ↦ −y of order 2, the residue of x/y^{2m} at y = 0 times (−1)^m
    /// is not a square.
    Residue { variable: String, residue: String, half_order: i64 },
    /// User assertion; never overrides a proven verdict.
    Assumed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFact {
    pub subject: RatFn,
    pub generator: ElemId,
    pub verdict: Verdict,
    pub provenance: Provenance,
}

impl ClassFact {
    pub fn is_assumed(&self) -> bool {
        self.provenance == Provenance::Assumed
    }

    pub fn assumed(subject: RatFn, generator: ElemId, verdict: Verdict) -> ClassFact {
        ClassFact { subject, generator, verdict, provenance: Provenance::Assumed }
    }

    pub fn describe(&self, tower: &GaloisTower) -> String {
        let v = match self.verdict {
            Verdict::IsNorm => "IsNorm",
            Verdict::NotNorm => "NotNorm",
        };
        let p = match &self.provenance {
            Provenance::Certificate { witness } => format!("certificate {}", tower.render(witness)),
            Provenance::Valuation { variable, at_zero, degree, modulus } => format!(
                "valuation {} {} = {} not divisible by {}",
                if *at_zero { "ord0" } else { "deg" },
                variable,
                degree,
                modulus
            ),
            Provenance::PrimeValuation { prime, order, modulus } => {
                format!("valuation along {} = {} not divisible by {}", prime, order, modulus)
            }
            Provenance::Residue { variable, residue, half_order } => format!(
                "residue at {}=0 is (-1)^{} * ({}) times a non-square",
                variable, half_order, residue
            ),
            Provenance::Assumed => "assumed".into(),
        };
        format!("{} {} over Norm_{}: {}", tower.render(&self.subject), v, tower.word(self.generator), p)
    }
}

/// Outcome of a norm-class query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormClass {
    Fact(ClassFact),
    Unknown,
}

impl NormClass {
    pub fn tri_is_norm(&self) -> Tri {
        match self {
            NormClass::Fact(f) if f.verdict == Verdict::IsNorm => Tri::Yes,
            NormClass::Fact(_) => Tri::No,
            NormClass::Unknown => Tri::Unknown,
        }
    }

    pub fn fact(&self) -> Option<&ClassFact> {
        match self {
            NormClass::Fact(f) => Some(f),
            NormClass::Unknown => None,
        }
    }

    pub fn is_assumed(&self) -> bool {
        self.fact().map(|f| f.is_assumed()).unwrap_or(false)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Verdict::IsNorm { "IsNorm" } else { "NotNorm" })
    }
}

/// Whether `p` is certified irreducible: degree 1 in some variable with
/// coefficients of gcd 1.
fn certified_irreducible(p: &Poly) -> bool {
    if p.is_constant() {
        return false;
    }
    for v in p.vars_present() {
        if p.degree_in(v) == 1 {
            let cs = p.coefficients_in(v);
            if super::gcd::gcd(&cs[0], &cs[1]).is_constant() {
                return true;
            }
        }
    }
    false
}

fn stable_up_to_constant(tower: &GaloisTower, u: ElemId, p: &Poly) -> bool {
    let x = RatFn::from_poly(p.clone());
    let img = tower.apply(u, &x);
    img.div(&x).map(|q| q.is_constant()).unwrap_or(false)
}

/// Three-valued test of `x ∈ Norm_u(F*)`.
pub fn norm_class(
    tower: &GaloisTower,
    x: &RatFn,
    u: ElemId,
    cert: Option<&RatFn>,
    assumed: &[ClassFact],
) -> Result<NormClass> {
    if x.is_zero() {
        return Err(Error::Precondition("norm_class needs a nonzero element".into()));
    }
    if let Some(c) = cert {
        let n = tower.norm(u, c);
        if n == *x {
            return Ok(NormClass::Fact(ClassFact {
                subject: x.clone(),
                generator: u,
                verdict: Verdict::IsNorm,
                provenance: Provenance::Certificate { witness: c.clone() },
            }));
        }
        return Err(Error::CertificateFailed { expected: tower.render(x), found: tower.render(&n) });
    }
    let proven = proven_class(tower, x, u)?;
    if proven != NormClass::Unknown {
        return Ok(proven);
    }
    if let Some(f) = assumed.iter().find(|f| f.generator == u && f.subject == *x) {
        return Ok(NormClass::Fact(ClassFact { provenance: Provenance::Assumed, ..f.clone() }));
    }
    Ok(NormClass::Unknown)
}

fn not_norm(x: &RatFn, u: ElemId, provenance: Provenance) -> NormClass {
    NormClass::Fact(ClassFact { subject: x.clone(), generator: u, verdict: Verdict::NotNorm, provenance })
}

fn proven_class(tower: &GaloisTower, x: &RatFn, u: ElemId) -> Result<NormClass> {
    let n = tower.order(u);
    if n == 1 {
        return Ok(NormClass::Fact(ClassFact {
            subject: x.clone(),
            generator: u,
            verdict: Verdict::IsNorm,
            provenance: Provenance::Certificate { witness: x.clone() },
        }));
    }
    if !tower.is_fixed(x, &[u]) {
        return Ok(NormClass::Unknown);
    }
    if x.is_one() {
        return Ok(NormClass::Fact(ClassFact {
            subject: x.clone(),
            generator: u,
            verdict: Verdict::IsNorm,
            provenance: Provenance::Certificate { witness: x.clone() },
        }));
    }
    let n_i = n as i64;
    for v in tower.distinguished_vars() {
        let d = x.degree_in(v);
        if d.rem_euclid(n_i) != 0 {
            return Ok(not_norm(
                x,
                u,
                Provenance::Valuation { variable: tower.vars()[v].clone(), at_zero: false, degree: d, modulus: n },
            ));
        }
        let o = x.order_at_zero(v);
        if o.rem_euclid(n_i) != 0 {
            return Ok(not_norm(
                x,
                u,
                Provenance::Valuation { variable: tower.vars()[v].clone(), at_zero: true, degree: o, modulus: n },
            ));
        }
    }
    if n == 2 {
        if let Some(r) = residue_test(tower, x, u)? {
            return Ok(r);
        }
    }
    for p in [x.num(), x.den()] {
        if certified_irreducible(p) && stable_up_to_constant(tower, u, p) {
            let o = x.order_along(p);
            if o.rem_euclid(n_i) != 0 {
                return Ok(not_norm(x, u, Provenance::PrimeValuation { prime: p.render(tower.vars()), order: o, modulus: n }));
            }
        }
    }
    if let Some(mu) = monomial_norm_preimage(tower, x, u) {
        return Ok(NormClass::Fact(ClassFact {
            subject: x.clone(),
            generator: u,
            verdict: Verdict::IsNorm,
            provenance: Provenance::Certificate { witness: mu },
        }));
    }
    Ok(NormClass::Unknown)
}

/// A monomial μ = c·∏ v_i^{a_i} with |a_i| ≤ 3 and Norm_u(μ) = x, for x a
/// constant multiple of a monomial quotient.
fn monomial_norm_preimage(tower: &GaloisTower, x: &RatFn, u: ElemId) -> Option<RatFn> {
    const BOUND: i64 = 3;
    let nv = tower.nvars();
    if !x.is_monomial_quotient() || nv > 6 {
        return None;
    }
    let (nm, _) = x.num().leading()?;
    let (dm, _) = x.den().leading()?;
    let target: Vec<i64> = (0..nv).map(|i| nm[i] as i64 - dm[i] as i64).collect();
    let aut = tower.aut(u);
    let order = tower.order(u);
    let orbit_sum = |a: &[i64]| -> Vec<i64> {
        let mut sum = vec![0i64; nv];
        let mut cur = a.to_vec();
        for _ in 0..order {
            for i in 0..nv {
                sum[i] += cur[i];
            }
            let mut next = vec![0i64; nv];
            for i in 0..nv {
                next[aut.perm[i]] = cur[i];
            }
            cur = next;
        }
        sum
    };
    let width = (2 * BOUND + 1) as usize;
    let mut a = vec![0i64; nv];
    for code in 0..width.pow(nv as u32) {
        let mut k = code;
        for ai in a.iter_mut() {
            *ai = (k % width) as i64 - BOUND;
            k /= width;
        }
        if orbit_sum(&a) != target {
            continue;
        }
        let mut mu = RatFn::one(nv);
        for (i, &e) in a.iter().enumerate() {
            if e != 0 {
                mu = mu.mul(&RatFn::var(nv, i).pow(e)?);
            }
        }
        let ratio = x.div(&tower.norm(u, &mu))?;
        if let Ok(Some(root)) = ratio.nth_root(order as u32) {
            let mu = mu.mul(&root);
            if tower.norm(u, &mu) == *x {
                return Some(mu);
            }
        }
    }
    None
}

/// The residue test for u: y ↦ −y fixing all other variables.
fn residue_test(tower: &GaloisTower, x: &RatFn, u: ElemId) -> Result<Option<NormClass>> {
    let aut = tower.aut(u);
    let nv = tower.nvars();
    let sign_vars: Vec<usize> = (0..nv).filter(|&i| aut.perm[i] == i && aut.zeta[i] == 3).collect();
    let fixed_rest = (0..nv).all(|i| sign_vars.contains(&i) || (aut.perm[i] == i && aut.zeta[i] == 0));
    if sign_vars.len() != 1 || !fixed_rest {
        return Ok(None);
    }
    let y = sign_vars[0];
    let ord = x.order_at_zero(y);
    if ord.rem_euclid(2) != 0 {
        return Ok(Some(not_norm(
            x,
            u,
            Provenance::Valuation { variable: tower.vars()[y].clone(), at_zero: true, degree: ord, modulus: 2 },
        )));
    }
    let m = ord / 2;
    let ypow = RatFn::var(nv, y).pow(2 * m).unwrap();
    let x0 = x.div(&ypow).unwrap();
    let zero = super::qw::Qw::zero();
    let res_num = x0.num().eval_var(y, &zero);
    let res_den = x0.den().eval_var(y, &zero);
    let residue = RatFn::new(res_num, res_den).unwrap();
    let signed = if m % 2 == 0 { residue.clone() } else { residue.neg() };
    match signed.nth_root(2) {
        Ok(Some(_)) => Ok(None),
        Ok(None) => Ok(Some(not_norm(
            x,
            u,
            Provenance::Residue { variable: tower.vars()[y].clone(), residue: tower.render(&residue), half_order: m },
        ))),
        Err(()) => Ok(None),
    }
}

/// μ with λ = μ/u(μ) for a monomial quotient λ of u-norm 1.
pub fn hilbert90_witness(tower: &GaloisTower, lam: &RatFn, u: ElemId) -> Result<Option<RatFn>> {
    if !tower.norm(u, lam).is_one() {
        return Err(Error::Precondition("Hilbert 90 needs an element of norm 1".into()));
    }
    if !lam.is_monomial_quotient() {
        return Ok(None);
    }
    let nv = tower.nvars();
    let nm = lam.num().leading().map(|(m, _)| m.clone()).unwrap();
    let dm = lam.den().leading().map(|(m, _)| m.clone()).unwrap();
    let e: Vec<i64> = (0..nv).map(|i| nm[i] as i64 - dm[i] as i64).collect();
    let aut = tower.aut(u);
    let mut a = vec![0i64; nv];
    let mut assigned = vec![false; nv];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for i0 in 0..nv {
        if assigned[i0] {
            continue;
        }
        let mut cyc = vec![i0];
        assigned[i0] = true;
        let mut i = i0;
        loop {
            let j = aut.perm[i];
            if j == i0 {
                if a[i0] - a[i] != e[i0] {
                    return Ok(None);
                }
                break;
            }
            a[j] = a[i] + e[j];
            assigned[j] = true;
            cyc.push(j);
            i = j;
        }
        cycles.push(cyc);
    }
    let build = |a: &[i64]| -> RatFn {
        let mut r = RatFn::one(nv);
        for (i, &k) in a.iter().enumerate() {
            if k != 0 {
                r = r.mul(&RatFn::var(nv, i).pow(k).unwrap());
            }
        }
        r
    };
    let total = 6usize.pow(cycles.len() as u32);
    for code in 0..total {
        let mut shifted = a.clone();
        let mut k = code;
        for cyc in &cycles {
            let t = (k % 6) as i64;
            k /= 6;
            for &i in cyc {
                shifted[i] += t;
            }
        }
        let mu = build(&shifted);
        let q = mu.div(&tower.apply(u, &mu)).unwrap();
        if q == *lam {
            return Ok(Some(mu));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_norms_are_found() {
        let t = GaloisTower::standard_z6();
        let h = t.generator('h').unwrap();
        let x = t.norm(h, &t.parse_element("x1^2*y/x3").unwrap()).mul(&t.parse_element("-1/y^2").unwrap());
        let r = norm_class(&t, &x, h, None, &[]).unwrap();
        assert_eq!(r.tri_is_norm(), Tri::Yes);
        match &r.fact().unwrap().provenance {
            Provenance::Certificate { witness } => assert_eq!(t.norm(h, witness), x),
            p => panic!("{:?}", p),
        }
    }

    #[test]
    fn example_s_is_not_a_g_norm() {
        let t = GaloisTower::standard_s3();
        let g = t.generator('g').unwrap();
        let s = t.var("s").unwrap();
        let r = norm_class(&t, &s, g, None, &[]).unwrap();
        assert_eq!(r.tri_is_norm(), Tri::No);
        match &r.fact().unwrap().provenance {
            Provenance::Valuation { variable, degree, modulus, .. } => {
                assert_eq!(variable, "s");
                assert_eq!((*degree, *modulus), (1, 3));
            }
            p => panic!("unexpected provenance {:?}", p),
        }
    }

    #[test]
    fn certificates() {
        let t = GaloisTower::standard_z6();
        let g = t.generator('g').unwrap();
        let x = t.parse_element("x1*x2*x3").unwrap();
        let x1 = t.var("x1").unwrap();
        assert_eq!(norm_class(&t, &x, g, Some(&x1), &[]).unwrap().tri_is_norm(), Tri::Yes);
        let bad = t.var("x2").unwrap().mul(&x1);
        assert!(matches!(norm_class(&t, &x, g, Some(&bad), &[]), Err(Error::CertificateFailed { .. })));
    }

    #[test]
    fn residue_test_on_x1_over_x2() {
        let t = GaloisTower::standard_z6();
        let h = t.generator('h').unwrap();
        let x = t.parse_element("x1/x2").unwrap();
        let r = norm_class(&t, &x, h, None, &[]).unwrap();
        assert_eq!(r.tri_is_norm(), Tri::No);
        assert!(matches!(r.fact().unwrap().provenance, Provenance::Residue { .. }));
        // A genuine norm is never declared a non-norm.
        let a = t.parse_element("x1 + y").unwrap();
        let n = t.norm(h, &a);
        assert_ne!(norm_class(&t, &n, h, None, &[]).unwrap().tri_is_norm(), Tri::No);
    }

    #[test]
    fn prime_valuation() {
        let t = GaloisTower::standard_z6();
        let g = t.generator('g').unwrap();
        let xi = t.parse_element("(x1*x2*x3 + y)/(x1*x2*x3 - y)").unwrap();
        let r = norm_class(&t, &xi, g, None, &[]).unwrap();
        assert_eq!(r.tri_is_norm(), Tri::No);
    }

    #[test]
    fn assumed_only_fills_unknown() {
        let t = GaloisTower::standard_s3();
        let g = t.generator('g').unwrap();
        let s = t.var("s").unwrap();
        let fake = ClassFact::assumed(s.clone(), g, Verdict::IsNorm);
        let r = norm_class(&t, &s, g, None, &[fake]).unwrap();
        assert_eq!(r.tri_is_norm(), Tri::No);
        let x = t.parse_element("(t1+s)*(t2+s)*(t3+s)").unwrap();
        assert_eq!(norm_class(&t, &x, g, None, &[]).unwrap(), NormClass::Unknown);
        let a = ClassFact::assumed(x.clone(), g, Verdict::NotNorm);
        let r = norm_class(&t, &x, g, None, &[a]).unwrap();
        assert!(r.is_assumed());
    }

    #[test]
    fn hilbert90() {
        let t = GaloisTower::standard_z6();
        let g = t.generator('g').unwrap();
        let h = t.generator('h').unwrap();
        let lam = t.parse_element("x1/x2").unwrap();
        let mu = hilbert90_witness(&t, &lam, g).unwrap().unwrap();
        assert_eq!(mu.div(&t.apply(g, &mu)).unwrap(), lam);
        assert!(hilbert90_witness(&t, &t.one(), g).unwrap().unwrap().is_one());
        let minus = t.parse_element("-1").unwrap();
        let mu = hilbert90_witness(&t, &minus, h).unwrap().unwrap();
        assert_eq!(mu.div(&t.apply(h, &mu)).unwrap(), minus);
        let nm = t.parse_element("(x1+x2)/(x2+x3)").unwrap();
        assert_eq!(hilbert90_witness(&t, &nm, g).unwrap(), None);
    }
}
