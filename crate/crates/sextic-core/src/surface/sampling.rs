//! Seeded samplers for twist parameters and automorphisms over the standard
//! towers.

use super::twisted::TwistedAutomorphism;
use crate::fieldtower::{GType, GaloisTower, Qw, RatFn};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn mono(nv: usize, c: Qw, e: &[i64]) -> RatFn {
    super::monomial::laurent_monomial(nv, &c, e)
}

fn small_unit(rng: &mut ChaCha8Rng) -> Qw {
    let k = rng.gen_range(1..=3);
    let z = Qw::zeta6_pow(rng.gen_range(0..6));
    &Qw::from_int(if rng.gen_bool(0.5) { k } else { -k }) * &z
}

/// Monomial (ξ, ρ) satisfying the conditions for the standard tower of
/// `gtype` (ρ is `None` for S3).
pub fn valid_params(gtype: GType, rng: &mut ChaCha8Rng) -> (RatFn, Option<RatFn>) {
    let nv = 4;
    match gtype {
        GType::S3 => {
            let m = rng.gen_range(-2..=2);
            let n = rng.gen_range(-2..=2);
            let c = Qw::from_int(rng.gen_range(1..=4)) * Qw::zeta6_pow(rng.gen_range(0..6));
            (mono(nv, c, &[m, m, m, n]), None)
        }
        GType::Z6 | GType::D6 => {
            let a: [i64; 3] = if gtype == GType::Z6 {
                let a0 = rng.gen_range(-2..=2);
                let a1 = rng.gen_range(-2..=2);
                let a2: i64 = rng.gen_range(-2..=2);
                let fix = if (a0 + a1 + a2) % 2 != 0 { 1 } else { 0 };
                [a0, a1, a2 + fix]
            } else {
                let p = rng.gen_range(-2..=2);
                let q = 2 * rng.gen_range(-1..=1);
                [p, p, q]
            };
            let sum: i64 = a.iter().sum();
            let m = -sum / 2;
            let b = rng.gen_range(-1..=1);
            let n = -3 * b;
            let e = small_unit(rng);
            let e2 = &e * &e;
            let c0 = if n % 2 != 0 { -e2 } else { e2 };
            let c = if gtype == GType::Z6 { &c0 * &Qw::omega().pow(rng.gen_range(0..3)).unwrap() } else { c0 };
            let d0 = e.pow(-3).unwrap();
            let d = if rng.gen_bool(0.5) { d0 } else { -d0 };
            let rho = mono(nv, c, &[a[0], a[1], a[2], 2 * b]);
            let xi = mono(nv, d, &[m, m, m, n]);
            (xi, Some(rho))
        }
    }
}

/// Parameters violating at least one condition.
pub fn violating_params(gtype: GType, rng: &mut ChaCha8Rng) -> (RatFn, Option<RatFn>) {
    let (xi, rho) = valid_params(gtype, rng);
    let nv = 4;
    match gtype {
        GType::S3 => {
            let i = rng.gen_range(0..3);
            let mut e = [0i64; 4];
            e[i] = 1;
            (xi.mul(&mono(nv, Qw::one(), &e)), None)
        }
        _ => match rng.gen_range(0..3) {
            0 => (xi.scale(&Qw::from_int(rng.gen_range(2..=5))), rho),
            1 => (xi, rho.map(|r| r.mul(&mono(nv, Qw::one(), &[1, 0, 0, 0])))),
            _ => (xi.mul(&mono(nv, Qw::one(), &[0, 0, 0, 1])), rho),
        },
    }
}

/// A small random polynomial in the tower variables.
pub fn small_poly(tower: &GaloisTower, rng: &mut ChaCha8Rng) -> RatFn {
    let nv = tower.nvars();
    let i = rng.gen_range(0..nv);
    let j = rng.gen_range(0..nv);
    let c = rng.gen_range(1..=3);
    let d = rng.gen_range(1..=4);
    RatFn::var(nv, i).add(&RatFn::var(nv, j).scale(&Qw::from_int(c))).add(&RatFn::int(nv, d))
}

fn ratio(tower: &GaloisTower, x: &RatFn, u: crate::fieldtower::ElemId) -> RatFn {
    x.div(&tower.apply(u, x)).unwrap()
}

/// A member of the torus set T1, T2 or T3 of the standard tower.
pub fn torus_member(tower: &GaloisTower, rng: &mut ChaCha8Rng) -> TwistedAutomorphism {
    let g = tower.generator('g').unwrap();
    let mut phi = small_poly(tower, rng);
    while phi.is_zero() {
        phi = small_poly(tower, rng);
    }
    match tower.gtype() {
        GType::Z6 => {
            let h = tower.generator('h').unwrap();
            let nu = ratio(tower, &phi, h);
            let lam = ratio(tower, &nu, g);
            TwistedAutomorphism::toric(lam.clone(), lam.mul(&tower.apply(g, &lam)))
        }
        gt => {
            let f = tower.generator('f').unwrap();
            let z = if gt == GType::D6 { ratio(tower, &phi, tower.generator('h').unwrap()) } else { phi };
            let y = ratio(tower, &z, f);
            let lam = ratio(tower, &y, g);
            TwistedAutomorphism::toric(lam.clone(), tower.apply(f, &lam.inv().unwrap()))
        }
    }
}

/// A toric element outside the torus set.
pub fn torus_non_member(tower: &GaloisTower, rng: &mut ChaCha8Rng) -> TwistedAutomorphism {
    let m = torus_member(tower, rng);
    let nv = tower.nvars();
    match rng.gen_range(0..3) {
        0 => TwistedAutomorphism::toric(m.lam[0].scale(&Qw::from_int(rng.gen_range(2..=4))), m.lam[1].clone()),
        1 => TwistedAutomorphism::toric(m.lam[0].mul(&RatFn::var(nv, 0)), m.lam[1].clone()),
        _ => TwistedAutomorphism::toric(m.lam[0].clone(), m.lam[1].mul(&RatFn::var(nv, 1))),
    }
}
