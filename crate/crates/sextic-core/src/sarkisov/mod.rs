//! Sarkisov links of type II at points of degree 2 and 3: the induced Galois
//! action on the new hexagon, the new splitting field and Galois group, the
//! transformed Severi–Brauer data, and the rigidity and birationality
//! decisions built on them.

pub mod decide;
pub mod field;
pub mod model;

#[cfg(test)]
mod tests;

pub use decide::{are_birational, fields_d_probe, is_birationally_rigid, BirVerdict, ProbeEntry, ProbeReport, Rigidity};
pub use decide::ChainStep;
pub use field::{compositum, field_contained, fields_equal, FieldDesc};
pub use model::{classes_equivalent, model_iso, ClassDesc, ModelData, ModelIso};

use crate::curveconfig::{
    contracted_labels, image_type, induced_sigma_prime_action, predicted_kernel, ImageType, InducedAction, PointGroup, PointPattern, D6,
};
use crate::error::{Error, Result};
use crate::fieldtower::{ClassFact, CompositeElem, CompositeGroup, EGroup, GType, Intersection};
use crate::points::{general_position, twisted_apply, validate_point, ClosedPointSpec};
use crate::surface::{index, SurfaceIndex, SurfaceSpec};
use crate::Tri;
use std::fmt;

/// Orientation of a link inside an explored graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Positive,
    Negative,
    AlmostInvolution,
    Unknown,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Orientation::Positive => "positive",
            Orientation::Negative => "negative",
            Orientation::AlmostInvolution => "almost-involution",
            Orientation::Unknown => "unknown",
        };
        write!(f, "{}", s)
    }
}

/// One verified statement about a link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkCheck {
    pub label: String,
    pub holds: Tri,
}

/// The result of a link at a closed point.
#[derive(Clone, Debug)]
pub struct LinkRecord {
    pub source: SurfaceSpec,
    pub source_model: ModelData,
    pub point: ClosedPointSpec,
    pub degree: usize,
    /// Gal(FE/k) with its induced action on the new hexagon.
    pub group: CompositeGroup,
    pub action: InducedAction,
    /// H: the elements acting trivially on the new hexagon.
    pub kernel: Vec<CompositeElem>,
    pub new_image: ImageType,
    pub target: ModelData,
    /// Whether `target.surface` holds a parametrization.
    pub reconstructed: bool,
    /// Splitting field of the base point of the inverse link.
    pub inverse_point_field: FieldDesc,
    pub point_key: String,
    pub key: String,
    pub inverse_key: String,
    pub orientation: Orientation,
    pub checks: Vec<LinkCheck>,
    pub facts: Vec<ClassFact>,
}

impl LinkRecord {
    pub fn kernel_names(&self) -> Vec<String> {
        field::composite_generators(&self.source.tower, &self.group, &self.kernel)
            .iter()
            .map(|x| self.group.element_name(&self.source.tower, x))
            .collect()
    }

    pub fn assumed_facts(&self) -> Vec<&ClassFact> {
        self.facts.iter().filter(|f| f.is_assumed()).collect()
    }

    pub fn report(&self) -> String {
        let t = &self.source.tower;
        let mut out = String::new();
        out.push_str(&format!("link {} at {} (degree {})\n", self.source.name, self.point.name, self.degree));
        out.push_str(&format!("  base point field E = {}\n", FieldDesc::of_extension(t, &self.group).render(t)));
        let names = self.kernel_names();
        out.push_str(&format!("  kernel H = <{}> of order {}\n", names.join(","), self.kernel.len()));
        out.push_str(&format!("  new Galois group {:?}\n", self.new_image));
        out.push_str(&format!("  F' = {}\n", self.target.f.render(t)));
        out.push_str(&format!("  K' = {}\n", self.target.k.render(t)));
        match &self.target.l {
            Some(l) => out.push_str(&format!("  L' = {}\n", l.render(t))),
            None => out.push_str("  L' undefined\n"),
        }
        out.push_str(&format!("  X' = {}\n", self.target.sb.render(t)));
        if let Some(c) = &self.target.conic {
            out.push_str(&format!("  Y' = {}\n", c.render(t)));
        }
        out.push_str(&format!("  target index {}\n", self.target.index()));
        out.push_str(&format!(
            "  target {}\n",
            if self.reconstructed { "isomorphic to the source (parametrization reused)" } else { "data only" }
        ));
        out.push_str(&format!("  inverse base point field {}\n", self.inverse_point_field.render(t)));
        for c in &self.checks {
            out.push_str(&format!("  check {}: {}\n", c.label, c.holds));
        }
        out
    }
}

fn lift_image(s: &SurfaceSpec, xs: &[CompositeElem]) -> Vec<D6> {
    let mut v: Vec<D6> = xs.iter().map(|x| s.tower.d6(x.f)).collect();
    v.sort();
    v.dedup();
    v
}

/// Which component each element sends each component to.
fn component_permutations(s: &SurfaceSpec, p: &ClosedPointSpec, cg: &CompositeGroup) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for x in &cg.elements {
        let mut perm = Vec::with_capacity(p.components.len());
        for c in &p.components {
            let y = twisted_apply(s, cg, x, c)?;
            let j = p.components.iter().position(|d| *d == y).ok_or_else(|| {
                Error::InconsistentAction(format!("{} does not permute the components of {}", cg.element_name(&s.tower, x), p.name))
            })?;
            perm.push(j);
        }
        out.push(perm);
    }
    Ok(out)
}

fn pattern_of(s: &SurfaceSpec, cg: &CompositeGroup, perms: &[Vec<usize>]) -> Result<PointPattern> {
    Ok(match &cg.intersection {
        Intersection::Contained { .. } => {
            let stab: Vec<CompositeElem> = cg.elements.iter().zip(perms).filter(|(_, p)| p[0] == 0).map(|(x, _)| *x).collect();
            PointPattern::Contained { stabilizer: lift_image(s, &stab) }
        }
        Intersection::Quadratic { fixing } => {
            let mut u: Vec<D6> = fixing.iter().map(|&x| s.tower.d6(x)).collect();
            u.sort();
            PointPattern::Quadratic { fixing: u }
        }
        Intersection::Trivial => PointPattern::Trivial {
            egroup: match cg.egroup {
                EGroup::Z2 => PointGroup::Z2,
                EGroup::Z3 => PointGroup::Z3,
                EGroup::S3 => PointGroup::S3,
                EGroup::InF => return Err(Error::InconsistentAction("trivial intersection with E inside F".into())),
            },
        },
    })
}

/// A key for the orbit of components of a point.
pub fn point_key(s: &SurfaceSpec, p: &ClosedPointSpec) -> String {
    let t = &s.tower;
    let field = p.group.as_ref().map(|g| FieldDesc::of_extension(t, g).render(t)).unwrap_or_else(|| p.ext.name.clone());
    let mut comps: Vec<String> = match &p.group {
        Some(g) => p.components.iter().map(|c| format!("({},{})", g.render(t, &c[0]), g.render(t, &c[1]))).collect(),
        None => vec![p.name.clone()],
    };
    comps.sort();
    format!("{}{{{}}}", field, comps.join(","))
}

/// Key of the inverse of a link with the given key.
pub fn paired_key(key: &str) -> String {
    match key.strip_prefix("inverse[").and_then(|r| r.strip_suffix(']')) {
        Some(inner) => inner.to_string(),
        None => format!("inverse[{}]", key),
    }
}

fn check(checks: &mut Vec<LinkCheck>, label: &str, holds: Tri) {
    checks.push(LinkCheck { label: label.to_string(), holds });
}

/// Perform the link of type II at a closed point of degree 2 or 3.
pub fn link(s: &SurfaceSpec, p: &ClosedPointSpec) -> Result<LinkRecord> {
    let d = p.degree as usize;
    if d != 2 && d != 3 {
        return Err(Error::Unsupported(format!("links at points of degree {}", d)));
    }
    let fits = p.group.as_ref().map(|g| g.gtype() == s.gtype() && g.radical.as_ref().map(|r| r.nvars()) == Some(s.tower.nvars()));
    if fits != Some(true) {
        return Err(Error::DomainMismatch(format!("{} is not a point over the splitting field of {}", p.name, s.name)));
    }
    if !validate_point(s, p)? {
        return Err(Error::Precondition(format!("{} fails validation", p.name)));
    }
    if !general_position(s, p) {
        return Err(Error::NotInGeneralPosition);
    }
    let want = if d == 2 { 2 } else { 3 };
    match index(s) {
        SurfaceIndex::Known(n) if n == want => {}
        other => {
            return Err(Error::IndexMismatch(format!("a link at a point of degree {} needs index {}, the surface has index {}", d, want, other)))
        }
    }
    let tower = &s.tower;
    let cg = p.group.clone().ok_or_else(|| Error::Precondition("point without a Galois group".into()))?;
    let perms = component_permutations(s, p, &cg)?;
    let elems: Vec<(String, D6, Vec<usize>)> =
        cg.elements.iter().zip(&perms).map(|(x, pm)| (cg.element_name(tower, x), tower.d6(x.f), pm.clone())).collect();
    let action = induced_sigma_prime_action(d, &elems)?;
    let sigma: Vec<D6> = action.sigma_prime.iter().map(|(_, x)| *x).collect();
    let select = |pred: &dyn Fn(&D6) -> bool| -> Vec<CompositeElem> {
        cg.elements.iter().zip(&sigma).filter(|(_, y)| pred(y)).map(|(x, _)| *x).collect()
    };
    let kernel = select(&|y| y.is_identity());
    let new_image = image_type(&sigma);
    let mut checks = Vec::new();

    // the kernel and image predicted by the case tables
    let pattern = pattern_of(s, &cg, &perms)?;
    let (pk, pimg) = predicted_kernel(s.gtype(), d, &pattern)
        .ok_or_else(|| Error::InconsistentAction(format!("case outside the link tables: {:?}", pattern)))?;
    let kimg = lift_image(s, &kernel);
    let mut pk_sorted = pk.clone();
    pk_sorted.sort();
    if kimg != pk_sorted || kernel.len() != pk.len() || new_image != pimg {
        return Err(Error::InconsistentAction(format!(
            "computed kernel {:?} with image {:?}, tables predict {:?} with {:?}",
            kimg, new_image, pk_sorted, pimg
        )));
    }
    check(&mut checks, "kernel and new group match the case tables", Tri::Yes);

    let new_gtype = match new_image {
        ImageType::Z6 => GType::Z6,
        ImageType::S3 => GType::S3,
        ImageType::D6 => GType::D6,
        ImageType::Other(n) => {
            return Err(Error::InconsistentAction(format!("the new hexagon has a Galois image of order {}", n)));
        }
    };
    let f_new = FieldDesc::fixed_field(tower, &cg, &kernel);
    let k_new = FieldDesc::fixed_field(tower, &cg, &select(&|y| y.preserves_triangles()));
    let l_new = match new_gtype {
        GType::S3 => None,
        _ => Some(FieldDesc::fixed_field(tower, &cg, &select(&|y| y.is_identity() || *y == D6::iota()))),
    };
    let e = FieldDesc::of_extension(tower, &cg);
    let src = ModelData::from_surface(s);
    if d == 2 {
        check(&mut checks, "K' = E", fields_equal(tower, &k_new, &e));
        let l_same = match (&l_new, &src.l) {
            (Some(a), Some(b)) => fields_equal(tower, a, b),
            _ => Tri::No,
        };
        check(&mut checks, "L' = L", l_same);
    } else {
        check(&mut checks, "K' = K", fields_equal(tower, &k_new, &src.k));
        match &l_new {
            Some(l) => check(&mut checks, "L' = E", fields_equal(tower, l, &e)),
            None => check(&mut checks, "L' undefined and F' = E", fields_equal(tower, &f_new, &e)),
        }
    }

    let (sb, conic) = if d == 2 {
        (ClassDesc::Trivial, src.conic.clone())
    } else {
        (src.sb.clone(), l_new.as_ref().map(|_| ClassDesc::Trivial))
    };
    let mut target = ModelData {
        name: format!("{}/{}", s.name, p.name),
        gtype: new_gtype,
        frame: tower.clone(),
        f: f_new,
        k: k_new,
        l: l_new,
        sb,
        conic,
        surface: None,
        assumed: s.assumed.clone(),
    };
    check(&mut checks, "index preserved", Tri::from_bool(target.index() == src.index()));
    let iso = model_iso(&target, &src);
    let mut facts = iso.facts.clone();
    for nc in [Some(&s.sb_data().sb_status), s.sb_data().conic_status.as_ref()].into_iter().flatten() {
        if let Some(f) = nc.fact() {
            facts.push(f.clone());
        }
    }
    let reconstructed = iso.verdict == Tri::Yes;
    if reconstructed {
        let mut t = s.clone();
        t.name = target.name.clone();
        target.surface = Some(t);
    }

    // the base point of the inverse link: the curves contracted by η′
    let (_, contracted) = contracted_labels(d)?;
    let cidx: Vec<usize> = contracted.iter().map(|l| action.config.index_of(l).expect("label in configuration")).collect();
    let stab: Vec<CompositeElem> = cg
        .elements
        .iter()
        .zip(&action.full)
        .filter(|(_, (_, perm))| cidx.iter().all(|&c| perm[c] == c))
        .map(|(x, _)| *x)
        .collect();
    let inverse_point_field = FieldDesc::fixed_field(tower, &cg, &stab);
    check(
        &mut checks,
        "inverse base point has the expected degree orbit",
        Tri::from_bool(cg.elements.iter().zip(&action.full).all(|(_, (_, perm))| {
            let mut img: Vec<usize> = cidx.iter().map(|&c| perm[c]).collect();
            img.sort();
            let mut c0 = cidx.clone();
            c0.sort();
            img == c0
        })),
    );

    let pk = point_key(s, p);
    let key = format!("{}@{}", src.key(), pk);
    let mut rec = LinkRecord {
        source: s.clone(),
        source_model: src,
        point: p.clone(),
        degree: d,
        group: cg,
        action,
        kernel,
        new_image,
        target,
        reconstructed,
        inverse_point_field,
        point_key: pk,
        inverse_key: String::new(),
        key,
        orientation: Orientation::Unknown,
        checks,
        facts,
    };
    rec.inverse_key = paired_key(&rec.key);
    let rt = inverse_round_trip(&rec);
    rec.checks.push(LinkCheck { label: "inverse link returns the source data".into(), holds: rt });
    if let Some(bad) = rec.checks.iter().find(|c| c.holds == Tri::No) {
        return Err(Error::InconsistentAction(format!("link check failed: {}", bad.label)));
    }
    Ok(rec)
}

/// The data of the inverse link's target predicted from the target data and
/// the inverse base point, compared with the source.
pub fn inverse_round_trip(rec: &LinkRecord) -> Tri {
    let t = &rec.source.tower;
    let src = &rec.source_model;
    let tgt = &rec.target;
    let e_inv = &rec.inverse_point_field;
    if rec.degree == 2 {
        let k = fields_equal(t, e_inv, &src.k);
        let l = match (&tgt.l, &src.l) {
            (Some(a), Some(b)) => fields_equal(t, a, b),
            _ => Tri::No,
        };
        let conic = match (&tgt.conic, &src.conic) {
            (Some(a), Some(b)) => classes_equivalent(t, a, b, &src.assumed, true).0,
            _ => Tri::No,
        };
        k.and(l).and(conic).and(src.sb.is_trivial())
    } else {
        let k = fields_equal(t, &tgt.k, &src.k);
        let rest = match field_contained(t, &tgt.k, e_inv) {
            Tri::Yes => Tri::from_bool(src.gtype == GType::S3).and(fields_equal(t, e_inv, &src.f)),
            Tri::No => match &src.l {
                Some(l) => fields_equal(t, e_inv, l),
                None => Tri::No,
            },
            Tri::Unknown => Tri::Unknown,
        };
        let sb = classes_equivalent(t, &tgt.sb, &src.sb, &src.assumed, false).0;
        let conic = src.conic.as_ref().map(|c| c.is_trivial()).unwrap_or(Tri::Yes);
        k.and(rest).and(sb).and(conic)
    }
}
