//! Automorphisms of the split toric sextic surface: elements of T(F) ⋊ D6,
//! written `((λ1, λ2), δ)` for the map "apply δ, then translate by (λ1, λ2)".

use crate::curveconfig::D6;
use crate::fieldtower::{ElemId, GaloisTower, RatFn};
use crate::error::{Error, Result};
use std::fmt;

/// Action of a hexagon symmetry on a torus point, over any field given by
/// its multiplication and inversion. Returns `None` when an inversion fails.
///
/// The point `(λ1, λ2)` is written `[1 : λ1 : λ2]`; the coordinates are
/// permuted by `p`, inverted when `inv` is set, and renormalized.
pub fn hexagon_act<T: Clone>(
    d: &D6,
    t: &[T; 2],
    one: &T,
    mul: impl Fn(&T, &T) -> T,
    inv: impl Fn(&T) -> Option<T>,
) -> Option<[T; 2]> {
    let src = [one.clone(), t[0].clone(), t[1].clone()];
    let mut c = src.clone();
    for j in 0..3 {
        c[d.p[j] as usize] = src[j].clone();
    }
    if d.inv {
        for x in c.iter_mut() {
            *x = inv(x)?;
        }
    }
    let c0 = inv(&c[0])?;
    Some([mul(&c[1], &c0), mul(&c[2], &c0)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedAutomorphism {
    pub lam: [RatFn; 2],
    pub delta: D6,
}

fn hex_act_f(d: &D6, t: &[RatFn; 2]) -> [RatFn; 2] {
    let one = RatFn::one(t[0].nvars());
    hexagon_act(d, t, &one, |a, b| a.mul(b), |a| a.inv()).expect("torus entries are nonzero")
}

impl TwistedAutomorphism {
    pub fn new(lam: [RatFn; 2], delta: D6) -> Result<TwistedAutomorphism> {
        if lam[0].is_zero() || lam[1].is_zero() {
            return Err(Error::Precondition("torus coordinates must be nonzero".into()));
        }
        Ok(TwistedAutomorphism { lam, delta })
    }

    pub fn identity(nvars: usize) -> TwistedAutomorphism {
        TwistedAutomorphism { lam: [RatFn::one(nvars), RatFn::one(nvars)], delta: D6::identity() }
    }

    pub fn toric(l1: RatFn, l2: RatFn) -> TwistedAutomorphism {
        TwistedAutomorphism { lam: [l1, l2], delta: D6::identity() }
    }

    pub fn hexagon(nvars: usize, delta: D6) -> TwistedAutomorphism {
        TwistedAutomorphism { lam: [RatFn::one(nvars), RatFn::one(nvars)], delta }
    }

    pub fn nvars(&self) -> usize {
        self.lam[0].nvars()
    }

    pub fn is_toric(&self) -> bool {
        self.delta.is_identity()
    }

    pub fn is_identity(&self) -> bool {
        self.is_toric() && self.lam[0].is_one() && self.lam[1].is_one()
    }

    /// `self ∘ other`: `(a, δ)(b, δ') = (a · δ(b), δδ')`.
    pub fn compose(&self, other: &TwistedAutomorphism) -> TwistedAutomorphism {
        let b = hex_act_f(&self.delta, &other.lam);
        TwistedAutomorphism { lam: [self.lam[0].mul(&b[0]), self.lam[1].mul(&b[1])], delta: self.delta.compose(&other.delta) }
    }

    /// `(a, δ)⁻¹ = (δ⁻¹(a⁻¹), δ⁻¹)`.
    pub fn inverse(&self) -> TwistedAutomorphism {
        let di = self.delta.inverse();
        let ainv = [self.lam[0].inv().unwrap(), self.lam[1].inv().unwrap()];
        TwistedAutomorphism { lam: hex_act_f(&di, &ainv), delta: di }
    }

    /// Galois conjugate `u(ψ)`: `u` acts on the torus entries.
    pub fn galois_apply(&self, tower: &GaloisTower, u: ElemId) -> TwistedAutomorphism {
        TwistedAutomorphism { lam: [tower.apply(u, &self.lam[0]), tower.apply(u, &self.lam[1])], delta: self.delta }
    }

    pub fn pow(&self, k: usize) -> TwistedAutomorphism {
        let mut acc = TwistedAutomorphism::identity(self.nvars());
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// Action on a torus point.
    pub fn apply_point(&self, p: &[RatFn; 2]) -> [RatFn; 2] {
        let q = hex_act_f(&self.delta, p);
        [self.lam[0].mul(&q[0]), self.lam[1].mul(&q[1])]
    }

    pub fn render(&self, tower: &GaloisTower) -> String {
        format!("(({}, {}), {})", tower.render(&self.lam[0]), tower.render(&self.lam[1]), self.delta)
    }
}

impl fmt::Display for TwistedAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}, {}), {})", self.lam[0], self.lam[1], self.delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t() -> GaloisTower {
        GaloisTower::standard_z6()
    }

    fn el(s: &str) -> RatFn {
        t().parse_element(s).unwrap()
    }

    #[test]
    fn conjugation_formulas() {
        let a = TwistedAutomorphism::toric(el("x1"), el("x2"));
        let conj = |d: D6| {
            let h = TwistedAutomorphism::hexagon(4, d);
            h.compose(&a).compose(&h.inverse())
        };
        assert_eq!(conj(D6::theta()), TwistedAutomorphism::toric(el("1/x2"), el("x1/x2")));
        assert_eq!(conj(D6::iota()), TwistedAutomorphism::toric(el("1/x1"), el("1/x2")));
        assert_eq!(conj(D6::sigma()), TwistedAutomorphism::toric(el("1/x2"), el("1/x1")));
    }

    #[test]
    fn group_laws() {
        let a = TwistedAutomorphism::new([el("x1+1"), el("x2/y")], D6::theta()).unwrap();
        let b = TwistedAutomorphism::new([el("x3"), el("2")], D6::sigma()).unwrap();
        let c = TwistedAutomorphism::new([el("y"), el("x1*x2")], D6::iota()).unwrap();
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(a.inverse().compose(&a).is_identity());
        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        let p = [el("x2"), el("x3+y")];
        assert_eq!(a.compose(&b).apply_point(&p), a.apply_point(&b.apply_point(&p)));
        assert!(TwistedAutomorphism::hexagon(4, D6::theta()).pow(3).is_identity());
    }

    fn d6_strategy() -> impl Strategy<Value = D6> {
        (any::<bool>(), 0usize..6).prop_map(|(inv, k)| {
            let perms = [[0u8, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];
            D6 { inv, p: perms[k] }
        })
    }

    proptest! {
        #[test]
        fn hexagon_action_is_a_homomorphism(d1 in d6_strategy(), d2 in d6_strategy(), i in -2i64..3, j in -2i64..3) {
            let p = [el("x1").pow(i).unwrap().mul(&el("y")), el("x2").pow(j).unwrap()];
            let lhs = hex_act_f(&d1.compose(&d2), &p);
            let rhs = hex_act_f(&d1, &hex_act_f(&d2, &p));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
