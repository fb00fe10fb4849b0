//! The coefficient field Q(ω), ω² + ω + 1 = 0.
//!
//! An element is stored as `a + b·ω` with rational `a`, `b`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element `a + b·ω` of Q(ω).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Qw {
    pub a: BigRational,
    pub b: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Qw {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Qw { a, b }
    }

    pub fn zero() -> Self {
        Qw::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Qw::from_int(1)
    }

    /// The primitive cube root of unity ω.
    pub fn omega() -> Self {
        Qw::new(BigRational::zero(), BigRational::one())
    }

    /// ζ6 = 1 + ω = −ω², a primitive sixth root of unity.
    pub fn zeta6() -> Self {
        Qw::new(BigRational::one(), BigRational::one())
    }

    /// ζ6^k for any integer k.
    pub fn zeta6_pow(k: i64) -> Self {
        match k.rem_euclid(6) {
            0 => Qw::from_int(1),
            1 => Qw::new(rat(1), rat(1)),
            2 => Qw::new(rat(0), rat(1)),
            3 => Qw::from_int(-1),
            4 => Qw::new(rat(-1), rat(-1)),
            _ => Qw::new(rat(0), rat(-1)),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Qw::new(rat(n), BigRational::zero())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Qw::new(r, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate ω ↦ ω²: `a + bω ↦ (a − b) − bω`.
    pub fn conj(&self) -> Self {
        Qw::new(&self.a - &self.b, -self.b.clone())
    }

    /// Field norm to Q: a² − ab + b².
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Field trace to Q: 2a − b.
    pub fn trace(&self) -> BigRational {
        &self.a + &self.a - &self.b
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Qw::new(c.a / &n, c.b / &n))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        if e < 0 {
            return self.inv().and_then(|x| x.pow(-e));
        }
        let mut base = self.clone();
        let mut acc = Qw::one();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Some(acc)
    }

    pub fn div(&self, other: &Qw) -> Option<Self> {
        other.inv().map(|i| self * &i)
    }

    /// Exponent k (mod 6) with `self = ζ6^k`, if `self` is a sixth root of unity.
    pub fn root_of_unity_exponent(&self) -> Option<i64> {
        (0..6).find(|&k| &Qw::zeta6_pow(k) == self)
    }

    /// A square root in Q(ω), if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Qw::zero());
        }
        let n = rational_root(&self.norm(), 2)?;
        let t2 = self.trace() + &n + &n;
        if t2.is_zero() {
            // self = −n is a negative rational; √−3 = 1 + 2ω.
            let q = rational_root(&(n / rat(3)), 2)?;
            let z = Qw::new(q.clone(), &q + &q);
            return if &(&z * &z) == self { Some(z) } else { None };
        }
        let t = rational_root(&t2, 2)?;
        let sum = self + &Qw::from_rational(n);
        let z = Qw::new(&sum.a / &t, &sum.b / &t);
        if &(&z * &z) == self {
            Some(z)
        } else {
            None
        }
    }

    /// A cube root in Q(ω), if one exists.
    ///
    /// Returns `Err(())` when the rational root search exceeds the size limit.
    pub fn cbrt(&self) -> Result<Option<Self>, ()> {
        if self.is_zero() {
            return Ok(Some(Qw::zero()));
        }
        let m = match rational_root(&self.norm(), 3) {
            Some(m) => m,
            None => return Ok(None),
        };
        // τ = z + z̄ is a rational root of T³ − 3mT − Tr(c).
        let coeffs = [-self.trace(), -(rat(3) * &m), BigRational::zero(), BigRational::one()];
        let roots = rational_roots_cubic(&coeffs)?;
        for tau in roots {
            let y2 = (rat(4) * &m - &tau * &tau) / rat(3);
            if y2.is_negative() {
                continue;
            }
            let y = match rational_root(&y2, 2) {
                Some(y) => y,
                None => continue,
            };
            for ys in [y.clone(), -y.clone()] {
                let x = (&tau + &ys) / rat(2);
                let z = Qw::new(x, ys);
                if &(&(&z * &z) * &z) == self {
                    return Ok(Some(z));
                }
            }
        }
        Ok(None)
    }
}

/// The nonnegative n-th root of a rational number when it is rational.
pub fn rational_root(r: &BigRational, n: u32) -> Option<BigRational> {
    if r.is_negative() {
        if n % 2 == 0 {
            return None;
        }
        return rational_root(&-r.clone(), n).map(|x| -x);
    }
    let num = r.numer().nth_root(n);
    let den = r.denom().nth_root(n);
    if num.pow(n) == *r.numer() && den.pow(n) == *r.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, ()> {
    let n = n.abs();
    if n.is_zero() {
        return Ok(vec![BigInt::one()]);
    }
    let v = n.to_u64().ok_or(())?;
    if v > DIVISOR_LIMIT {
        return Err(());
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d * d != v {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Rational roots of `c0 + c1 T + c2 T² + c3 T³` by the rational root theorem.
fn rational_roots_cubic(c: &[BigRational; 4]) -> Result<Vec<BigRational>, ()> {
    let mut l = BigInt::one();
    for x in c.iter() {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    if ints[0].is_zero() {
        let mut roots = vec![BigRational::zero()];
        // Remaining quadratic c1 + c2 T + c3 T².
        let (a, b, cc) = (&c[3], &c[2], &c[1]);
        let disc = b * b - rat(4) * a * cc;
        if let Some(s) = rational_root(&disc, 2) {
            roots.push((-b.clone() + &s) / (rat(2) * a));
            roots.push((-b.clone() - &s) / (rat(2) * a));
        }
        return Ok(roots);
    }
    let ps = divisors(&ints[0])?;
    let qs = divisors(&ints[3])?;
    let mut roots = Vec::new();
    for p in &ps {
        for q in &qs {
            for sign in [1, -1] {
                let cand = BigRational::new(p * BigInt::from(sign), q.clone());
                let val = &c[0] + &cand * (&c[1] + &cand * (&c[2] + &cand * &c[3]));
                if val.is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    Ok(roots)
}

impl Add for &Qw {
    type Output = Qw;
    fn add(self, o: &Qw) -> Qw {
        Qw::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for &Qw {
    type Output = Qw;
    fn sub(self, o: &Qw) -> Qw {
        Qw::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul for &Qw {
    type Output = Qw;
    fn mul(self, o: &Qw) -> Qw {
        let bd = &self.b * &o.b;
        Qw::new(&self.a * &o.a - &bd, &self.a * &o.b + &self.b * &o.a - bd)
    }
}

impl Neg for &Qw {
    type Output = Qw;
    fn neg(self) -> Qw {
        Qw::new(-self.a.clone(), -self.b.clone())
    }
}

impl Add for Qw {
    type Output = Qw;
    fn add(self, o: Qw) -> Qw {
        &self + &o
    }
}

impl Sub for Qw {
    type Output = Qw;
    fn sub(self, o: Qw) -> Qw {
        &self - &o
    }
}

impl Mul for Qw {
    type Output = Qw;
    fn mul(self, o: Qw) -> Qw {
        &self * &o
    }
}

impl Neg for Qw {
    type Output = Qw;
    fn neg(self) -> Qw {
        -&self
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Qw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        let bpart = if self.b.is_one() {
            "w".to_string()
        } else if (-self.b.clone()).is_one() {
            "-w".to_string()
        } else {
            format!("{}*w", fmt_rat(&self.b))
        };
        if self.a.is_zero() {
            write!(f, "{}", bpart)
        } else if bpart.starts_with('-') {
            write!(f, "({}{})", fmt_rat(&self.a), bpart)
        } else {
            write!(f, "({}+{})", fmt_rat(&self.a), bpart)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_relation() {
        let w = Qw::omega();
        let s = &(&(&w * &w) + &w) + &Qw::one();
        assert!(s.is_zero());
        assert_eq!(w.pow(3).unwrap(), Qw::one());
        assert_eq!(Qw::zeta6().pow(6).unwrap(), Qw::one());
        assert_eq!(Qw::zeta6().pow(3).unwrap(), Qw::from_int(-1));
    }

    #[test]
    fn inverse_and_norm() {
        let x = Qw::new(rat(3), rat(-2));
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!(x.norm(), rat(9 + 6 + 4));
    }

    #[test]
    fn square_roots() {
        for (a, b) in [(1, 0), (2, 3), (-1, 2), (0, 1), (5, -7)] {
            let z = Qw::new(rat(a), rat(b));
            let sq = &z * &z;
            let r = sq.sqrt().expect("square");
            assert_eq!(&r * &r, sq);
        }
        assert!(Qw::from_int(-3).sqrt().is_some());
        assert!(Qw::from_int(2).sqrt().is_none());
        assert!(Qw::from_int(-1).sqrt().is_none());
    }

    #[test]
    fn cube_roots() {
        for (a, b) in [(1, 0), (2, 3), (-1, 2), (0, 1), (4, -1)] {
            let z = Qw::new(rat(a), rat(b));
            let c = z.pow(3).unwrap();
            let r = c.cbrt().unwrap().expect("cube");
            assert_eq!(r.pow(3).unwrap(), c);
        }
        assert!(Qw::from_int(2).cbrt().unwrap().is_none());
        assert!(Qw::omega().cbrt().unwrap().is_none());
    }
}
