//! Subfields of composites FE described by fixing subgroups, with a
//! three-valued equality test.

use crate::fieldtower::{composite_group, CompositeElem, CompositeGroup, ElemId, ExtKind, ExtensionDescriptor, GaloisTower, RatFn};
use crate::points::fixing_of_e;
use crate::Result;
use crate::Tri;

/// A finite extension of k inside FE, where F is the splitting field of a
/// fixed base tower and E is an extension of k.
#[derive(Clone, Debug)]
pub enum FieldDesc {
    /// F^U for a subgroup U of Gal(F/k).
    InF { fixing: Vec<ElemId> },
    /// The extension E itself, when E is not contained in F.
    Ext { group: CompositeGroup },
    /// (FE)^H for a subgroup H of Gal(FE/k), neither inside F nor equal to E.
    Composite { group: CompositeGroup, fixing: Vec<CompositeElem> },
}

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort();
    v.dedup();
    v
}

impl FieldDesc {
    /// F itself.
    pub fn whole(tower: &GaloisTower) -> FieldDesc {
        FieldDesc::InF { fixing: vec![tower.identity()] }
    }

    pub fn in_f(fixing: &[ElemId]) -> FieldDesc {
        FieldDesc::InF { fixing: sorted(fixing) }
    }

    /// The splitting field E of a composite group, in canonical form.
    pub fn of_extension(tower: &GaloisTower, cg: &CompositeGroup) -> FieldDesc {
        FieldDesc::fixed_field(tower, cg, &fixing_of_e(cg))
    }

    /// A descriptor for an extension given by its descriptor.
    pub fn from_extension(tower: &GaloisTower, ext: &ExtensionDescriptor) -> Result<FieldDesc> {
        let cg = composite_group(tower, ext)?;
        Ok(FieldDesc::of_extension(tower, &cg))
    }

    /// (FE)^H in canonical form.
    pub fn fixed_field(tower: &GaloisTower, cg: &CompositeGroup, h: &[CompositeElem]) -> FieldDesc {
        let h = sorted(h);
        let over_f: Vec<&CompositeElem> = cg.elements.iter().filter(|x| x.f == tower.identity()).collect();
        if over_f.iter().all(|x| h.contains(x)) {
            return FieldDesc::in_f(&h.iter().map(|x| x.f).collect::<Vec<_>>());
        }
        if h == sorted(&fixing_of_e(cg)) {
            return FieldDesc::Ext { group: cg.clone() };
        }
        FieldDesc::Composite { group: cg.clone(), fixing: h }
    }

    /// The subgroup of Gal(FE/k) fixing this field, where FE is the composite
    /// of `cg`; `None` when the field is not visibly inside that composite.
    pub fn subgroup_in(&self, cg: &CompositeGroup) -> Option<Vec<CompositeElem>> {
        let mut v: Vec<CompositeElem> = match self {
            FieldDesc::InF { fixing } => cg.elements.iter().filter(|x| fixing.contains(&x.f)).copied().collect(),
            FieldDesc::Ext { group } if group.ext == cg.ext => fixing_of_e(cg),
            FieldDesc::Composite { group, fixing } if group.ext == cg.ext => fixing.clone(),
            _ => return None,
        };
        v.sort();
        Some(v)
    }

    /// The composite group this field refers to, if it is not inside F.
    pub fn group(&self) -> Option<&CompositeGroup> {
        match self {
            FieldDesc::InF { .. } => None,
            FieldDesc::Ext { group } | FieldDesc::Composite { group, .. } => Some(group),
        }
    }

    /// Degree over k.
    pub fn degree(&self, tower: &GaloisTower) -> usize {
        match self {
            FieldDesc::InF { fixing } => tower.size() / fixing.len(),
            FieldDesc::Ext { group } => group.ext_degree,
            FieldDesc::Composite { group, fixing } => group.size() / fixing.len(),
        }
    }

    pub fn render(&self, tower: &GaloisTower) -> String {
        match self {
            FieldDesc::InF { fixing } => {
                if fixing.len() == 1 {
                    "F".into()
                } else if fixing.len() == tower.size() {
                    "k".into()
                } else {
                    format!("F^<{}>", subgroup_generators(tower, fixing).join(","))
                }
            }
            FieldDesc::Ext { group } => group.ext.name.clone(),
            FieldDesc::Composite { group, fixing } => {
                let gens = composite_generators(tower, group, fixing);
                let names: Vec<String> = gens.iter().map(|x| group.element_name(tower, x)).collect();
                format!("(F.{})^<{}>", group.ext.name, names.join(","))
            }
        }
    }
}

/// A short generating set of a subgroup of Gal(F/k), as words.
pub fn subgroup_generators(tower: &GaloisTower, set: &[ElemId]) -> Vec<String> {
    let mut gens: Vec<ElemId> = Vec::new();
    let mut span = vec![tower.identity()];
    let mut cands = set.to_vec();
    cands.sort_by_key(|&x| (tower.word(x).len(), x));
    for x in cands {
        if !span.contains(&x) {
            gens.push(x);
            span = tower.subgroup(&gens);
        }
    }
    gens.iter().map(|&x| tower.word(x)).collect()
}

/// A short generating set of a subgroup of Gal(FE/k).
pub fn composite_generators(tower: &GaloisTower, cg: &CompositeGroup, set: &[CompositeElem]) -> Vec<CompositeElem> {
    let mut gens: Vec<CompositeElem> = Vec::new();
    let mut span = vec![cg.identity()];
    for x in set {
        if !span.contains(x) {
            gens.push(*x);
            span = cg.subgroup(tower, &gens);
        }
    }
    gens
}

fn power_in_k(tower: &GaloisTower, x: &RatFn, n: u32) -> Tri {
    match x.nth_root(n) {
        Ok(Some(c)) => Tri::from_bool(tower.in_base_field(&c)),
        Ok(None) => Tri::No,
        Err(()) => Tri::Unknown,
    }
}

/// Whether two radical extensions of k not contained in F coincide.
fn extensions_equal(tower: &GaloisTower, a: &ExtensionDescriptor, b: &ExtensionDescriptor) -> Tri {
    if a.kind == b.kind {
        return Tri::Yes;
    }
    match (&a.kind, &b.kind) {
        (ExtKind::KummerCubic { radicand: x }, ExtKind::KummerCubic { radicand: y }) => {
            crate::points::cubic_kummer_fields_equal(tower, x, y)
        }
        (ExtKind::Quadratic { radicand: x }, ExtKind::Quadratic { radicand: y }) => match x.div(y) {
            Some(q) => power_in_k(tower, &q, 2),
            None => Tri::Unknown,
        },
        (ExtKind::KummerSextic { .. }, ExtKind::KummerSextic { .. }) => Tri::Unknown,
        _ => Tri::No,
    }
}

/// Three-valued equality of two fields described over the same base tower.
pub fn fields_equal(tower: &GaloisTower, a: &FieldDesc, b: &FieldDesc) -> Tri {
    if a.degree(tower) != b.degree(tower) {
        return Tri::No;
    }
    match (a, b) {
        (FieldDesc::InF { fixing: x }, FieldDesc::InF { fixing: y }) => Tri::from_bool(x == y),
        (FieldDesc::InF { .. }, _) | (_, FieldDesc::InF { .. }) => Tri::No,
        (FieldDesc::Ext { group: x }, FieldDesc::Ext { group: y }) => extensions_equal(tower, &x.ext, &y.ext),
        (FieldDesc::Composite { group: x, fixing: hx }, FieldDesc::Composite { group: y, fixing: hy }) if x.ext == y.ext => {
            Tri::from_bool(hx == hy)
        }
        (FieldDesc::Ext { group: x }, FieldDesc::Composite { group: y, .. })
        | (FieldDesc::Composite { group: y, .. }, FieldDesc::Ext { group: x })
            if x.ext == y.ext =>
        {
            Tri::No
        }
        _ => Tri::Unknown,
    }
}

/// Whether `a ⊆ b`, decided inside a common composite.
pub fn field_contained(tower: &GaloisTower, a: &FieldDesc, b: &FieldDesc) -> Tri {
    let cg = match (a.group(), b.group()) {
        (Some(x), Some(y)) if x.ext != y.ext => return Tri::Unknown,
        (Some(x), _) | (_, Some(x)) => x.clone(),
        (None, None) => match composite_group(tower, &ExtensionDescriptor::subfield("F", vec![tower.identity()])) {
            Ok(c) => c,
            Err(_) => return Tri::Unknown,
        },
    };
    match (a.subgroup_in(&cg), b.subgroup_in(&cg)) {
        (Some(ha), Some(hb)) => Tri::from_bool(hb.iter().all(|x| ha.contains(x))),
        _ => Tri::Unknown,
    }
}

/// The compositum of two fields, when both lie in a common composite.
pub fn compositum(tower: &GaloisTower, a: &FieldDesc, b: &FieldDesc) -> Option<FieldDesc> {
    let cg = match (a.group(), b.group()) {
        (Some(x), Some(y)) if x.ext != y.ext => return None,
        (Some(x), _) | (_, Some(x)) => x.clone(),
        (None, None) => composite_group(tower, &ExtensionDescriptor::subfield("F", vec![tower.identity()])).ok()?,
    };
    let ha = a.subgroup_in(&cg)?;
    let hb = b.subgroup_in(&cg)?;
    let h: Vec<CompositeElem> = ha.into_iter().filter(|x| hb.contains(x)).collect();
    Some(FieldDesc::fixed_field(tower, &cg, &h))
}
