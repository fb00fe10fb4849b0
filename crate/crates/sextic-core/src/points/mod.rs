//! Closed points of degree 2 and 3 given by λ-parametrizations: validation
//! through twisted orbits, general position, and explicit constructions.

#[cfg(test)]
mod tests;

use crate::error::{Error, Result};
use crate::fieldtower::{
    composite_group, CompositeElem, CompositeGroup, EGroup, EPart, ElemId, ExtElem, ExtensionDescriptor, GType, Intersection, Radical,
    RatFn,
};
use crate::surface::monomial::find_monomial_with_norms;
use crate::surface::{apply_move, hexagon_act, index, Move, SurfaceIndex, SurfaceSpec, TwistedAutomorphism};
use crate::Tri;
use std::fmt;

/// Exponent bound for the norm-twist witnesses used to normalize ξ or ρ.
const NORMALIZE_BOUND: i64 = 2;

/// Where a closed point splits, relative to the tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointCase {
    /// 2-point over K (Z6: F^g; D6: F^{<g,s>}).
    TwoOverK,
    /// 2-point over F^{<g,f>} (D6).
    TwoOverFgf,
    /// 2-point over a quadratic E with E ∩ F = k.
    TwoOutside,
    /// 3-point over L = F^h (Z6, D6).
    ThreeOverL,
    /// 3-point over F (S3).
    ThreeOverF,
    /// 3-point over E ⊄ F.
    ThreeOutside,
    /// 4-point with a declared general-position flag.
    Four,
}

impl fmt::Display for PointCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PointCase::TwoOverK => "2-point over K",
            PointCase::TwoOverFgf => "2-point over F^<g,f>",
            PointCase::TwoOutside => "2-point over E not in F",
            PointCase::ThreeOverL => "3-point over L",
            PointCase::ThreeOverF => "3-point over F",
            PointCase::ThreeOutside => "3-point over E not in F",
            PointCase::Four => "4-point",
        };
        write!(f, "{}", s)
    }
}

/// The λ-data of a point before normalization.
#[derive(Clone, Debug, PartialEq)]
pub enum LambdaData {
    Single(ExtElem),
    Pair(ExtElem, ExtElem),
}

/// One checked condition of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCondition {
    pub label: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ClosedPointSpec {
    pub name: String,
    pub degree: u32,
    /// Normalized descriptor of the splitting field E.
    pub ext: ExtensionDescriptor,
    pub case: PointCase,
    /// Gal(FE/k); absent for declared 4-points.
    pub group: Option<CompositeGroup>,
    /// First component (λ1, λ2) of φ(p).
    pub coords: Option<[ExtElem; 2]>,
    /// Orbit of `coords` under the twisted action.
    pub components: Vec<[ExtElem; 2]>,
    pub declared_general: Option<bool>,
}

impl ClosedPointSpec {
    pub fn radical(&self) -> Option<&Radical> {
        self.group.as_ref().and_then(|g| g.radical.as_ref())
    }

    /// Human-readable first component.
    pub fn render_coords(&self, s: &SurfaceSpec) -> String {
        match (&self.coords, &self.group) {
            (Some(c), Some(g)) => format!("({}, {})", g.render(&s.tower, &c[0]), g.render(&s.tower, &c[1])),
            _ => "-".into(),
        }
    }
}

fn fgen(s: &SurfaceSpec, c: char) -> ElemId {
    s.tower.generator(c).expect("generator present for this group type")
}

fn lift(x: ElemId) -> CompositeElem {
    CompositeElem { f: x, e: EPart::id() }
}

fn sorted(mut v: Vec<ElemId>) -> Vec<ElemId> {
    v.sort();
    v.dedup();
    v
}

/// Classify (gtype, d, E), rejecting the combinations that carry no points.
fn classify_case(s: &SurfaceSpec, degree: u32, cg: &CompositeGroup) -> Result<PointCase> {
    let gt = s.gtype();
    let tower = &s.tower;
    let unsupported = |m: &str| Err(Error::Unsupported(m.to_string()));
    if gt == GType::S3 && degree == 2 {
        return unsupported("S3-surfaces have no 2-points: the index-2 case does not occur for G = S3");
    }
    match &cg.intersection {
        Intersection::Contained { fixing } => {
            let fx = sorted(fixing.clone());
            let sub = |cs: &[char]| -> Vec<ElemId> {
                let gens: Vec<ElemId> = cs
                    .iter()
                    .map(|&c| if c == 's' { tower.mul(fgen(s, 'h'), fgen(s, 'f')) } else { fgen(s, c) })
                    .collect();
                tower.subgroup(&gens)
            };
            match (gt, degree) {
                (GType::Z6, 2) if fx == sub(&['g']) => Ok(PointCase::TwoOverK),
                (GType::Z6, 2) => unsupported("a Z6 2-point splitting over a subfield of F splits over K = F^g"),
                (GType::Z6, 3) if fx == sub(&['h']) => Ok(PointCase::ThreeOverL),
                (GType::Z6, 3) => unsupported("a Z6 3-point splitting over a subfield of F splits over L = F^h"),
                (GType::S3, 3) if fx.len() == 1 => Ok(PointCase::ThreeOverF),
                (GType::S3, 3) => unsupported("an S3 3-point splitting over a subfield of F splits over F itself"),
                (GType::D6, 2) if fx == sub(&['g', 's']) => Ok(PointCase::TwoOverK),
                (GType::D6, 2) if fx == sub(&['g', 'f']) => Ok(PointCase::TwoOverFgf),
                (GType::D6, 2) if fx == sub(&['g', 'h']) => unsupported("D6-surfaces have no 2-points that split over F^<g,h>"),
                (GType::D6, 2) => unsupported("a D6 2-point splitting over a subfield of F needs a quadratic subfield"),
                (GType::D6, 3) if fx == sub(&['h']) => Ok(PointCase::ThreeOverL),
                (GType::D6, 3) => unsupported("a D6 3-point splitting over a subfield of F splits over L = F^h"),
                _ => unsupported("closed points are supported in degrees 2, 3 and 4"),
            }
        }
        _ => match (degree, cg.egroup) {
            (2, EGroup::Z2) => Ok(PointCase::TwoOutside),
            (3, EGroup::Z3) | (3, EGroup::S3) => Ok(PointCase::ThreeOutside),
            (2, _) => unsupported("a 2-point not split over F needs a quadratic splitting field"),
            (3, _) => unsupported("a 3-point not split over F needs a cubic or sextic splitting field"),
            _ => unsupported("closed points are supported in degrees 2, 3 and 4"),
        },
    }
}

/// Apply a twisted automorphism with entries in F to a point of FE².
fn act(rad: &Radical, psi: &TwistedAutomorphism, p: &[ExtElem; 2]) -> Result<[ExtElem; 2]> {
    let q = hexagon_act(&psi.delta, p, &rad.one(), |a, b| rad.mul(a, b), |a| rad.inv(a))
        .ok_or_else(|| Error::DomainMismatch("coordinate leaves the torus chart (a coordinate is zero)".into()))?;
    Ok([rad.mul(&rad.from_f(&psi.lam[0]), &q[0]), rad.mul(&rad.from_f(&psi.lam[1]), &q[1])])
}

/// `α_x ∘ x` applied to a point of FE².
pub fn twisted_apply(s: &SurfaceSpec, cg: &CompositeGroup, x: &CompositeElem, p: &[ExtElem; 2]) -> Result<[ExtElem; 2]> {
    let rad = cg.radical.as_ref().ok_or_else(|| Error::Unsupported("no arithmetic model for FE".into()))?;
    if p.iter().any(|c| c.is_zero()) {
        return Err(Error::DomainMismatch("coordinate leaves the torus chart (a coordinate is zero)".into()));
    }
    let q = [cg.apply(&s.tower, x, &p[0])?, cg.apply(&s.tower, x, &p[1])?];
    act(rad, &s.cocycle()[x.f], &q)
}

/// Orbit of `coords` under the maps u ↦ α_u∘u for the generators `gens`.
pub fn twisted_orbit(s: &SurfaceSpec, coords: &[ExtElem; 2], cg: &CompositeGroup, gens: &[CompositeElem]) -> Result<Vec<[ExtElem; 2]>> {
    let mut orbit = vec![coords.clone()];
    let mut i = 0;
    while i < orbit.len() {
        for x in gens {
            let y = twisted_apply(s, cg, x, &orbit[i])?;
            if !orbit.contains(&y) {
                orbit.push(y);
            }
        }
        i += 1;
    }
    Ok(orbit)
}

fn all_generators(cg: &CompositeGroup) -> Vec<CompositeElem> {
    cg.generators.iter().map(|g| g.1).collect()
}

/// The subgroup of Gal(FE/k) that fixes the first component in the normal
/// form of the case.
fn stabilizer(s: &SurfaceSpec, cg: &CompositeGroup, case: PointCase) -> Vec<CompositeElem> {
    let tower = &s.tower;
    let gt = s.gtype();
    let sub = |cs: &[char]| -> Vec<CompositeElem> {
        let gens: Vec<CompositeElem> = cs
            .iter()
            .map(|&c| lift(if c == 's' { tower.mul(fgen(s, 'h'), fgen(s, 'f')) } else { fgen(s, c) }))
            .collect();
        cg.subgroup(tower, &gens)
    };
    match case {
        PointCase::TwoOverK if gt == GType::Z6 => sub(&['g']),
        PointCase::TwoOverK => sub(&['g', 's']),
        PointCase::TwoOverFgf => sub(&['g', 'f']),
        PointCase::ThreeOverL if gt == GType::Z6 => sub(&['h']),
        PointCase::ThreeOverL => sub(&['h', 'f']),
        PointCase::ThreeOverF => sub(&['f']),
        PointCase::TwoOutside | PointCase::ThreeOutside => {
            let t = EPart { w: 0, t: true };
            let mut v: Vec<CompositeElem> = cg
                .elements
                .iter()
                .filter(|x| x.e.is_id() || (case == PointCase::ThreeOutside && cg.egroup == EGroup::S3 && x.e == t))
                .copied()
                .collect();
            v.sort();
            v
        }
        PointCase::Four => vec![],
    }
}

/// Gal(FE/E).
pub(crate) fn fixing_of_e(cg: &CompositeGroup) -> Vec<CompositeElem> {
    let mut v: Vec<CompositeElem> = match &cg.intersection {
        Intersection::Contained { fixing } => cg.elements.iter().filter(|x| fixing.contains(&x.f)).copied().collect(),
        _ => cg.elements.iter().filter(|x| x.e.is_id()).copied().collect(),
    };
    v.sort();
    v
}

/// Largest normal subgroup contained in `h`.
fn core(s: &SurfaceSpec, cg: &CompositeGroup, h: &[CompositeElem]) -> Vec<CompositeElem> {
    let mut v: Vec<CompositeElem> = h
        .iter()
        .filter(|&&y| {
            cg.elements.iter().all(|x| {
                let c = cg.mul(&s.tower, &cg.mul(&s.tower, x, &y), &cg.inverse(&s.tower, x));
                h.contains(&c)
            })
        })
        .copied()
        .collect();
    v.sort();
    v
}

/// A generating set of a subgroup, chosen greedily.
fn generators_of(s: &SurfaceSpec, cg: &CompositeGroup, h: &[CompositeElem]) -> Vec<CompositeElem> {
    let mut gens = Vec::new();
    let mut span = vec![cg.identity()];
    for x in h {
        if !span.contains(x) {
            gens.push(*x);
            span = cg.subgroup(&s.tower, &gens);
        }
    }
    gens
}

/// Expand single λ-data into the first component of the case's normal form.
fn normal_form(s: &SurfaceSpec, cg: &CompositeGroup, case: PointCase, lam: LambdaData) -> Result<[ExtElem; 2]> {
    let rad = cg.radical.as_ref().ok_or_else(|| Error::Unsupported("no arithmetic model for FE".into()))?;
    match lam {
        LambdaData::Pair(a, b) => Ok([a, b]),
        LambdaData::Single(l) => {
            if l.is_zero() {
                return Err(Error::DomainMismatch("coordinate leaves the torus chart (λ = 0)".into()));
            }
            match case {
                PointCase::ThreeOverL if s.gtype() == GType::Z6 => {
                    Err(Error::Precondition("a Z6 3-point over L needs the pair (λ1, λ2)".into()))
                }
                PointCase::ThreeOverL | PointCase::ThreeOverF => {
                    let f = lift(fgen(s, 'f'));
                    let fl = cg.apply(&s.tower, &f, &rad.inv(&l).unwrap())?;
                    let second = rad.div(&fl, &rad.from_f(&s.xi)).unwrap();
                    Ok([l, second])
                }
                _ => {
                    let g = lift(fgen(s, 'g'));
                    let gl = cg.apply(&s.tower, &g, &l)?;
                    Ok([l.clone(), rad.mul(&l, &gl)])
                }
            }
        }
    }
}

impl ClosedPointSpec {
    /// Build a point of degree 2 or 3 from λ-data; the component list is the
    /// computed twisted orbit.
    pub fn new(s: &SurfaceSpec, name: &str, degree: u32, ext: &ExtensionDescriptor, lam: LambdaData) -> Result<ClosedPointSpec> {
        let cg = composite_group(&s.tower, ext)?;
        if degree == 4 {
            return Err(Error::Precondition("4-points are declared with ClosedPointSpec::declared".into()));
        }
        let case = classify_case(s, degree, &cg)?;
        let coords = normal_form(s, &cg, case, lam)?;
        let components = twisted_orbit(s, &coords, &cg, &all_generators(&cg))?;
        Ok(ClosedPointSpec {
            name: name.into(),
            degree,
            ext: cg.ext.clone(),
            case,
            group: Some(cg),
            coords: Some(coords),
            components,
            declared_general: None,
        })
    }

    /// Parse λ-data (one or two strings) in the tower variables and the
    /// radical symbol of E.
    pub fn parse(s: &SurfaceSpec, name: &str, degree: u32, ext: &ExtensionDescriptor, lam: &[String]) -> Result<ClosedPointSpec> {
        let cg = composite_group(&s.tower, ext)?;
        let data = match lam {
            [a] => LambdaData::Single(cg.parse_ext_elem(&s.tower, a)?),
            [a, b] => LambdaData::Pair(cg.parse_ext_elem(&s.tower, a)?, cg.parse_ext_elem(&s.tower, b)?),
            _ => return Err(Error::Parse("λ-data must be one element or a pair".into())),
        };
        ClosedPointSpec::new(s, name, degree, ext, data)
    }

    /// A 4-point known only through its splitting field and a declared
    /// general-position flag.
    pub fn declared(name: &str, ext: ExtensionDescriptor, general: bool) -> ClosedPointSpec {
        ClosedPointSpec {
            name: name.into(),
            degree: 4,
            ext,
            case: PointCase::Four,
            group: None,
            coords: None,
            components: vec![],
            declared_general: Some(general),
        }
    }
}

/// Every condition checked by [`validate_point`], with its outcome.
pub fn point_conditions(s: &SurfaceSpec, p: &ClosedPointSpec) -> Result<Vec<PointCondition>> {
    if p.degree == 4 {
        return Ok(vec![PointCondition { label: "declared 4-point".into(), holds: true }]);
    }
    let cg = p.group.as_ref().ok_or_else(|| Error::Precondition("point has no composite group".into()))?;
    let coords = p.coords.as_ref().unwrap();
    let tower = &s.tower;
    let rad = cg.radical.as_ref().unwrap();
    let mut out = Vec::new();
    let h1 = stabilizer(s, cg, p.case);
    for x in generators_of(s, cg, &h1) {
        let img = twisted_apply(s, cg, &x, coords)?;
        out.push(PointCondition { label: format!("alpha∘{} fixes p1", cg.element_name(tower, &x)), holds: img == *coords });
    }
    let orbit = twisted_orbit(s, coords, cg, &all_generators(cg))?;
    out.push(PointCondition { label: format!("orbit has {} components", p.degree), holds: orbit.len() == p.degree as usize });
    out.push(PointCondition { label: "kernel of the action on the orbit is Gal(FE/E)".into(), holds: core(s, cg, &h1) == fixing_of_e(cg) });

    let l1 = &coords[0];
    let l2 = &coords[1];
    let xi = rad.from_f(&s.xi);
    let rho = s.rho.as_ref().map(|r| rad.from_f(r));
    let g = lift(fgen(s, 'g'));
    let norm = |x: &CompositeElem, v: &ExtElem| cg.norm(tower, x, v);
    let push = |out: &mut Vec<PointCondition>, label: &str, holds: bool| out.push(PointCondition { label: label.into(), holds });
    let xi_inv = rad.inv(&xi).unwrap();
    let g_form = |out: &mut Vec<PointCondition>| -> Result<()> {
        let gl = cg.apply(tower, &g, l1)?;
        push(out, "λ2 = λ1·g(λ1)", *l2 == rad.mul(l1, &gl));
        push(out, "Norm_g(λ1) = 1/ξ", norm(&g, l1)? == xi_inv);
        Ok(())
    };
    let h_in_stab = |c: char| h1.contains(&lift(fgen(s, c)));
    match (s.gtype(), p.case) {
        (GType::Z6, PointCase::ThreeOverL) => {
            let h = lift(fgen(s, 'h'));
            let r = rho.clone().unwrap();
            let gr = cg.apply(tower, &g, &r)?;
            push(&mut out, "Norm_h(λ1) = ρ", norm(&h, l1)? == r);
            push(&mut out, "Norm_h(λ2) = ρ·g(ρ)", norm(&h, l2)? == rad.mul(&r, &gr));
        }
        (GType::S3, PointCase::ThreeOverF) | (GType::D6, PointCase::ThreeOverL) => {
            let f = lift(fgen(s, 'f'));
            let fl = cg.apply(tower, &f, &rad.inv(l1).unwrap())?;
            push(&mut out, "λ2 = f(1/λ1)/ξ", *l2 == rad.mul(&fl, &xi_inv));
            if s.gtype() == GType::D6 {
                let h = lift(fgen(s, 'h'));
                push(&mut out, "Norm_h(λ1) = ρ", norm(&h, l1)? == rho.clone().unwrap());
            }
        }
        (_, PointCase::ThreeOverL) | (_, PointCase::ThreeOverF) | (_, PointCase::Four) => {}
        _ => {
            g_form(&mut out)?;
            if s.gtype() != GType::S3 && h_in_stab('h') {
                let h = lift(fgen(s, 'h'));
                push(&mut out, "Norm_h(λ1) = ρ", norm(&h, l1)? == rho.clone().unwrap());
            }
            if s.gtype() != GType::Z6 {
                let gf = tower.mul(fgen(s, 'g'), fgen(s, 'f'));
                if let Some(x) = h1.iter().find(|x| x.f == gf) {
                    let label = format!("{}(λ1) = λ1", cg.element_name(tower, x));
                    push(&mut out, &label, cg.apply(tower, x, l1)? == *l1);
                }
            }
        }
    }
    if out.iter().all(|c| c.holds) && p.components.len() != p.degree as usize {
        push(&mut out, "stored components match the orbit", false);
    }
    Ok(out)
}

/// Whether the λ-data defines a closed point of the declared degree and
/// splitting field on `s`.
pub fn validate_point(s: &SurfaceSpec, p: &ClosedPointSpec) -> Result<bool> {
    Ok(point_conditions(s, p)?.iter().all(|c| c.holds))
}

/// General position: no three geometric components on a line and none on a
/// conic through the blown-up points.
pub fn general_position(s: &SurfaceSpec, p: &ClosedPointSpec) -> bool {
    match p.case {
        PointCase::Four => p.declared_general.unwrap_or(false),
        PointCase::TwoOverK | PointCase::TwoOverFgf | PointCase::TwoOutside | PointCase::ThreeOutside => true,
        PointCase::ThreeOverL | PointCase::ThreeOverF => {
            let c = match &p.coords {
                Some(c) => c,
                None => return false,
            };
            let (l1, l2) = match (c[0].in_f(), c[1].in_f()) {
                (Some(a), Some(b)) => (a, b),
                _ => return false,
            };
            let t = &s.tower;
            let g = fgen(s, 'g');
            let g2 = t.mul(g, g);
            let xi = &s.xi;
            if s.gtype() == GType::Z6 {
                let one = RatFn::one(t.nvars());
                *l2 != l1.mul(&t.apply(g, l1))
                    && *l1 != xi.mul(l2).mul(&t.apply(g2, l2))
                    && xi.mul(&t.apply(g, l1)).mul(&t.apply(g2, l2)) != one
            } else {
                let f = fgen(s, 'f');
                let gf = t.mul(g, f);
                let prod = xi.mul(l1).mul(&t.apply(g, l1)).mul(&t.apply(f, l1));
                !prod.is_one() && t.apply(gf, l1) != *l1
            }
        }
    }
}

/// Move the point through β, where the coordinates on the target surface are
/// β applied to the coordinates on the source.
fn transport(target: &SurfaceSpec, p: &ClosedPointSpec, beta: &TwistedAutomorphism) -> Result<ClosedPointSpec> {
    let cg = p.group.as_ref().unwrap();
    let rad = cg.radical.as_ref().unwrap();
    let c = act(rad, beta, p.coords.as_ref().unwrap())?;
    ClosedPointSpec::new(target, &p.name, p.degree, &p.ext, LambdaData::Pair(c[0].clone(), c[1].clone()))
}

/// The image of a closed point of `s` under an automorphism ψ of `s`.
pub fn image_under(s: &SurfaceSpec, p: &ClosedPointSpec, psi: &TwistedAutomorphism) -> Result<ClosedPointSpec> {
    if p.coords.is_none() || p.group.is_none() {
        return Err(Error::Precondition(format!("{} has no coordinates", p.name)));
    }
    transport(s, p, psi)
}

/// A surface isomorphic to `s` with ξ = 1 (when `target_xi`) or ρ = 1, found by
/// a monomial norm twist, with the conjugating element from `s`.
fn normalized(s: &SurfaceSpec, target_xi: bool) -> Result<(SurfaceSpec, TwistedAutomorphism)> {
    let t = &s.tower;
    let nv = t.nvars();
    let is_done = |x: &SurfaceSpec| if target_xi { x.xi.is_one() } else { x.rho.as_ref().map_or(true, |r| r.is_one()) };
    if is_done(s) {
        return Ok((s.clone(), TwistedAutomorphism::identity(nv)));
    }
    let fixed_by: Vec<ElemId> = if s.gtype() == GType::D6 { vec![t.mul(fgen(s, 'g'), fgen(s, 'f'))] } else { vec![] };
    let (cond, what) = if target_xi {
        ((fgen(s, 'g'), s.xi.clone()), "ξ")
    } else {
        ((fgen(s, 'h'), s.rho.as_ref().unwrap().inv().unwrap()), "ρ")
    };
    let lambda = find_monomial_with_norms(t, &[cond.clone()], &fixed_by, NORMALIZE_BOUND).ok_or_else(|| {
        Error::WitnessRequired(format!(
            "no monomial λ with Norm_{}(λ) = {} was found; supply λ to normalize {} to 1",
            t.word(cond.0),
            t.render(&cond.1),
            what
        ))
    })?;
    let (n, beta) = apply_move(s, &Move::NormTwist { lambda })?;
    if !is_done(&n) {
        return Err(Error::Precondition(format!("normalization of {} did not reach 1", what)));
    }
    Ok((n, beta))
}

fn index_is(s: &SurfaceSpec, n: u32) -> Result<()> {
    match index(s) {
        SurfaceIndex::Known(k) if k != n => Err(Error::IndexMismatch(format!("the recipe needs index {}, the surface has index {}", n, k))),
        _ => Ok(()),
    }
}

fn finish(s: &SurfaceSpec, p: ClosedPointSpec) -> Option<ClosedPointSpec> {
    match validate_point(s, &p) {
        Ok(true) if general_position(s, &p) => Some(p),
        _ => None,
    }
}

/// Low-degree polynomials used as candidates for b or a.
fn candidate_polys(s: &SurfaceSpec) -> Vec<RatFn> {
    let t = &s.tower;
    let nv = t.nvars();
    let mut monos: Vec<RatFn> = Vec::new();
    for i in 0..nv {
        monos.push(RatFn::var(nv, i));
    }
    for i in 0..nv {
        for j in i..nv {
            monos.push(RatFn::var(nv, i).mul(&RatFn::var(nv, j)));
        }
    }
    let mut out = Vec::new();
    for m in &monos {
        out.push(m.clone());
        out.push(m.add(&RatFn::one(nv)));
    }
    for i in 0..nv {
        for j in 0..nv {
            if i != j {
                out.push(RatFn::var(nv, i).add(&RatFn::var(nv, j).scale(&crate::fieldtower::Qw::from_int(2))));
            }
        }
    }
    out
}

/// A 3-point in general position splitting over a subfield of F, following
/// the constructions for index-3 surfaces.
pub fn construct_3point(s: &SurfaceSpec) -> Result<ClosedPointSpec> {
    index_is(s, 3)?;
    let t = &s.tower;
    let (n, beta) = normalized(s, false)?;
    let back = beta.inverse();
    match s.gtype() {
        GType::Z6 => {
            let g = fgen(s, 'g');
            let h = fgen(s, 'h');
            let g2 = t.mul(g, g);
            let ext = ExtensionDescriptor::subfield("L", t.subgroup(&[h]));
            let lam2 = n.xi.inv().unwrap();
            for m in candidate_polys(s) {
                let b = m.add(&t.apply(g, &m)).add(&t.apply(g2, &m));
                if b.is_zero() || t.in_base_field(&b) {
                    continue;
                }
                let hb = t.apply(h, &b);
                let lam1 = match b.div(&hb) {
                    Some(x) => x,
                    None => continue,
                };
                let cg = composite_group(t, &ext)?;
                let rad = cg.radical.as_ref().unwrap();
                let p = ClosedPointSpec::new(&n, "p3", 3, &ext, LambdaData::Pair(rad.from_f(&lam1), rad.from_f(&lam2)))?;
                if finish(&n, p.clone()).is_none() {
                    continue;
                }
                if let Some(q) = finish(s, transport(s, &p, &back)?) {
                    return Ok(q);
                }
            }
            Err(Error::WitnessRequired("no b in F^g of degree at most 2 avoids the excluded loci; supply b".into()))
        }
        GType::S3 => {
            let ext = ExtensionDescriptor::subfield("F", vec![t.identity()]);
            let cg = composite_group(t, &ext)?;
            let rad = cg.radical.as_ref().unwrap();
            let gf = t.mul(fgen(s, 'g'), fgen(s, 'f'));
            for lam in candidate_polys(s) {
                if t.apply(gf, &lam) == lam {
                    continue;
                }
                let p = ClosedPointSpec::new(s, "p3", 3, &ext, LambdaData::Single(rad.from_f(&lam)))?;
                if let Some(q) = finish(s, p) {
                    return Ok(q);
                }
            }
            Err(Error::WitnessRequired("no λ of degree at most 2 outside F^{gf}; supply λ".into()))
        }
        GType::D6 => {
            let h = fgen(s, 'h');
            let gf = t.mul(fgen(s, 'g'), fgen(s, 'f'));
            let ext = ExtensionDescriptor::subfield("L", t.subgroup(&[h]));
            let cg = composite_group(t, &ext)?;
            let rad = cg.radical.as_ref().unwrap();
            for a in candidate_polys(s) {
                if t.apply(h, &a) == a || t.apply(gf, &a) == a {
                    continue;
                }
                let lam = match a.div(&t.apply(h, &a)) {
                    Some(x) => x,
                    None => continue,
                };
                let p = ClosedPointSpec::new(&n, "p3", 3, &ext, LambdaData::Single(rad.from_f(&lam)))?;
                if finish(&n, p.clone()).is_none() {
                    continue;
                }
                if let Some(q) = finish(s, transport(s, &p, &back)?) {
                    return Ok(q);
                }
            }
            Err(Error::WitnessRequired("no a of degree at most 2 outside F^h and F^{gf}; supply a".into()))
        }
    }
}

/// 2-points in general position splitting over quadratic subfields of F:
/// over K for Z6, over F^{<g,f>} and over K for D6.
pub fn construct_2point(s: &SurfaceSpec) -> Result<Vec<ClosedPointSpec>> {
    if s.gtype() == GType::S3 {
        return Err(Error::Unsupported("S3-surfaces have no 2-points".into()));
    }
    index_is(s, 2)?;
    let t = &s.tower;
    let (n, beta) = normalized(s, true)?;
    let back = beta.inverse();
    let g = fgen(s, 'g');
    let mut specs: Vec<(String, Vec<ElemId>, RatFn)> = Vec::new();
    let one = RatFn::one(t.nvars());
    match s.gtype() {
        GType::Z6 => specs.push(("p2_K".into(), t.subgroup(&[g]), one)),
        _ => {
            let f = fgen(s, 'f');
            let sgen = t.mul(fgen(s, 'h'), f);
            specs.push(("p2_Fgf".into(), t.subgroup(&[g, f]), one));
            let lam = t.apply(g, &n.rho.as_ref().unwrap().inv().unwrap());
            specs.push(("p2_K".into(), t.subgroup(&[g, sgen]), lam));
        }
    }
    let mut out = Vec::new();
    for (name, fixing, lam) in specs {
        let ext = ExtensionDescriptor::subfield(if name == "p2_K" { "K" } else { "F^<g,f>" }, fixing);
        let cg = composite_group(t, &ext)?;
        let p = ClosedPointSpec::new(&n, &name, 2, &ext, LambdaData::Single(cg.radical.as_ref().unwrap().from_f(&lam)))?;
        if !validate_point(&n, &p)? {
            return Err(Error::Precondition(format!("constructed {} failed validation", name)));
        }
        let q = transport(s, &p, &back)?;
        if !validate_point(s, &q)? {
            return Err(Error::Precondition(format!("transported {} failed validation", name)));
        }
        out.push(q);
    }
    Ok(out)
}

/// Whether k(∛a) = k(∛b): decided by testing a/b and a·b for being cubes
/// in k, using exact cube roots in the polynomial ring.
pub fn cubic_kummer_fields_equal(tower: &crate::fieldtower::GaloisTower, a: &RatFn, b: &RatFn) -> Tri {
    let is_cube_in_k = |x: &RatFn| -> Tri {
        match x.nth_root(3) {
            Ok(Some(c)) => Tri::from_bool(tower.in_base_field(&c)),
            Ok(None) => Tri::No,
            Err(()) => Tri::Unknown,
        }
    };
    match (a.div(b), Some(a.mul(b))) {
        (Some(q), Some(p)) => is_cube_in_k(&q).or(is_cube_in_k(&p)),
        _ => Tri::Unknown,
    }
}
