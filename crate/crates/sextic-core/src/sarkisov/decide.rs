//! Decisions built on links: birational rigidity, birationality of two
//! models, and the splitting-field probe.

use super::field::{field_contained, fields_equal, FieldDesc};
use super::model::{classes_equivalent, model_iso, ModelData};
use super::{link, point_key, LinkRecord};
use crate::fieldtower::GType;
use crate::points::{construct_2point, construct_3point, general_position, validate_point, ClosedPointSpec};
use crate::surface::{index, SurfaceIndex, SurfaceSpec};
use crate::Tri;
use std::collections::VecDeque;

/// Outcome of the rigidity decision.
#[derive(Clone, Debug)]
pub enum Rigidity {
    SuperRigid,
    /// Rigid, given that the supplied points are declared to be all points of
    /// the relevant degree up to the splitting-field condition.
    Rigid,
    NotRigid(String),
    Conditional(Vec<String>),
}

fn point_field(s: &SurfaceSpec, p: &ClosedPointSpec) -> Option<FieldDesc> {
    p.group.as_ref().map(|g| FieldDesc::of_extension(&s.tower, g))
}

fn usable(s: &SurfaceSpec, p: &ClosedPointSpec, d: u32) -> bool {
    p.degree == d && p.group.is_some() && validate_point(s, p).unwrap_or(false) && general_position(s, p)
}

/// The field over which every point of degree `d` splits for rigidity.
fn rigid_field(s: &SurfaceSpec, d: u32) -> (String, FieldDesc) {
    let sb = s.sb_data();
    if d == 2 {
        ("K".into(), FieldDesc::in_f(&sb.k_fixing))
    } else if s.gtype() == GType::S3 {
        ("F".into(), FieldDesc::whole(&s.tower))
    } else {
        ("L".into(), FieldDesc::in_f(sb.l_fixing.as_ref().expect("L exists for Z6 and D6")))
    }
}

fn witness_of(s: &SurfaceSpec, p: &ClosedPointSpec, fname: &str) -> String {
    let t = &s.tower;
    let e = point_field(s, p).map(|e| e.render(t)).unwrap_or_else(|| p.ext.name.clone());
    match link(s, p) {
        Ok(rec) => format!(
            "the link at {} (splitting over {} != {}) leads to the non-isomorphic model [{}]",
            p.name,
            e,
            fname,
            rec.target.key()
        ),
        Err(err) => format!("{} splits over {} != {} (link not computed: {})", p.name, e, fname, err),
    }
}

/// Decide birational rigidity from the index, the group type and the
/// supplied points; `universe_complete` declares that the supplied points
/// exhaust the splitting fields that occur.
pub fn is_birationally_rigid(s: &SurfaceSpec, declared: &[ClosedPointSpec], universe_complete: bool) -> Rigidity {
    let n = match index(s) {
        SurfaceIndex::Known(n) => n,
        SurfaceIndex::Unknown => {
            return Rigidity::Conditional(vec!["the index is undecided: the norm-class oracle returned unknown".into()])
        }
    };
    let d = match n {
        1 => return Rigidity::NotRigid("index 1: the surface has a rational point and is rational".into()),
        6 => return Rigidity::SuperRigid,
        2 => 2,
        _ => 3,
    };
    let t = &s.tower;
    if d == 2 && s.gtype() == GType::D6 {
        return match construct_2point(s) {
            Ok(pts) => match pts.iter().find(|p| p.name == "p2_Fgf") {
                Some(p) => Rigidity::NotRigid(witness_of(s, p, "K")),
                None => Rigidity::Conditional(vec!["no 2-point over F^<g,f> was constructed".into()]),
            },
            Err(e) => Rigidity::Conditional(vec![format!("2-point construction failed: {}", e)]),
        };
    }
    let (fname, target) = rigid_field(s, d);
    let mut pts: Vec<ClosedPointSpec> = declared.to_vec();
    let constructed = if d == 2 { construct_2point(s).ok() } else { construct_3point(s).ok().map(|p| vec![p]) };
    pts.extend(constructed.unwrap_or_default());
    let mut open = Vec::new();
    for p in pts.iter().filter(|p| usable(s, p, d)) {
        let e = point_field(s, p).expect("usable points carry a group");
        match fields_equal(t, &e, &target) {
            Tri::No => return Rigidity::NotRigid(witness_of(s, p, &fname)),
            Tri::Unknown => open.push(format!("whether {} splits over {} is undecided", p.name, fname)),
            Tri::Yes => {}
        }
    }
    if open.is_empty() && universe_complete {
        return Rigidity::Rigid;
    }
    open.push(format!("rigid relative to the declared point universe: every {}-point must split over {}", d, fname));
    Rigidity::Conditional(open)
}

/// One step of a chain of links.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub record: LinkRecord,
    /// Whether the step runs the link backwards.
    pub inverse: bool,
}

impl ChainStep {
    pub fn describe(&self) -> String {
        let (a, b) = (&self.record.source_model.name, &self.record.target.name);
        if self.inverse {
            format!("{} -> {} (inverse of the link at {})", b, a, self.record.point.name)
        } else {
            format!("{} -> {} (link at {})", a, b, self.record.point.name)
        }
    }
}

#[derive(Clone, Debug)]
pub enum BirVerdict {
    Yes { chain: Vec<ChainStep>, reason: String },
    No(String),
    Unknown(String),
}

impl BirVerdict {
    pub fn tri(&self) -> Tri {
        match self {
            BirVerdict::Yes { .. } => Tri::Yes,
            BirVerdict::No(_) => Tri::No,
            BirVerdict::Unknown(_) => Tri::Unknown,
        }
    }
}

/// Breadth-first search for a chain of the supplied links joining `a` to a
/// model isomorphic to `b`.
fn find_chain(a: &ModelData, b: &ModelData, links: &[LinkRecord]) -> Option<Vec<ChainStep>> {
    let mut verts: Vec<ModelData> = vec![a.clone()];
    let mut prev: Vec<Option<(usize, ChainStep)>> = vec![None];
    let mut queue = VecDeque::from([0usize]);
    let known = |verts: &[ModelData], m: &ModelData| verts.iter().position(|v| model_iso(v, m).verdict == Tri::Yes);
    while let Some(i) = queue.pop_front() {
        if model_iso(&verts[i], b).verdict == Tri::Yes {
            let mut chain = Vec::new();
            let mut cur = i;
            while let Some((p, step)) = &prev[cur] {
                chain.push(step.clone());
                cur = *p;
            }
            chain.reverse();
            return Some(chain);
        }
        for rec in links {
            let here = verts[i].clone();
            for (from, to, inverse) in [(&rec.source_model, &rec.target, false), (&rec.target, &rec.source_model, true)] {
                if model_iso(&here, from).verdict != Tri::Yes || known(&verts, to).is_some() {
                    continue;
                }
                verts.push(to.clone());
                prev.push(Some((i, ChainStep { record: rec.clone(), inverse })));
                queue.push_back(verts.len() - 1);
            }
        }
    }
    None
}

/// A point on `a` whose link reaches the field data of `b`, among the
/// supplied and constructed points.
fn connecting_link(a: &ModelData, b: &ModelData, d: u32, points: &[ClosedPointSpec]) -> Option<LinkRecord> {
    let s = a.surface.as_ref()?;
    let mut pts: Vec<ClosedPointSpec> = points.to_vec();
    let constructed = if d == 2 { construct_2point(s).ok() } else { construct_3point(s).ok().map(|p| vec![p]) };
    pts.extend(constructed.unwrap_or_default());
    pts.iter()
        .filter(|p| usable(s, p, d))
        .filter_map(|p| link(s, p).ok())
        .find(|rec| model_iso(&rec.target, b).verdict == Tri::Yes)
}

/// Decide whether two models are birational following the four cases of
/// the classification, using the supplied links and points as witnesses.
pub fn are_birational(a: &ModelData, b: &ModelData, links: &[LinkRecord], points: &[ClosedPointSpec]) -> BirVerdict {
    let iso = model_iso(a, b);
    if iso.verdict == Tri::Yes {
        return BirVerdict::Yes { chain: vec![], reason: format!("isomorphic: {}", iso.reason) };
    }
    if let Some(chain) = find_chain(a, b, links) {
        return BirVerdict::Yes { chain, reason: "chain of supplied links".into() };
    }
    let (ia, ib) = match (a.index(), b.index()) {
        (SurfaceIndex::Known(x), SurfaceIndex::Known(y)) => (x, y),
        _ => return BirVerdict::Unknown("an index is undecided".into()),
    };
    if ia != ib {
        return BirVerdict::No(format!("the indices {} and {} differ and the index is a birational invariant", ia, ib));
    }
    if a.frame != b.frame {
        return BirVerdict::Unknown("the models are described over different frames".into());
    }
    let t = &a.frame;
    let assumed: Vec<_> = a.assumed.iter().chain(&b.assumed).cloned().collect();
    match ia {
        1 => BirVerdict::Yes { chain: vec![], reason: "both models are rational (all Amitsur groups vanish)".into() },
        6 => match iso.verdict {
            Tri::No => BirVerdict::No(format!("index 6 models are birational only when isomorphic: {}", iso.reason)),
            _ => BirVerdict::Unknown(format!("index 6, isomorphism undecided: {}", iso.reason)),
        },
        2 | 3 => {
            let d = ia;
            let (same_field, same_class, need) = if d == 2 {
                let l = match (&a.l, &b.l) {
                    (Some(x), Some(y)) => fields_equal(t, x, y),
                    _ => Tri::No,
                };
                let c = match (&a.conic, &b.conic) {
                    (Some(x), Some(y)) => classes_equivalent(t, x, y, &assumed, true).0,
                    _ => Tri::No,
                };
                (l, c, "a 2-point splitting over K'")
            } else {
                let k = fields_equal(t, &a.k, &b.k);
                let c = classes_equivalent(t, &a.sb, &b.sb, &assumed, false).0;
                (k, c, if b.gtype == GType::S3 { "a 3-point splitting over F'" } else { "a 3-point splitting over L'" })
            };
            let case = if d == 2 { "(2)" } else { "(3)" };
            if same_field == Tri::No {
                return BirVerdict::No(format!("case {}: the fields {} differ", case, if d == 2 { "L, L'" } else { "K, K'" }));
            }
            if same_class == Tri::No {
                return BirVerdict::No(format!("case {}: the Brauer classes differ", case));
            }
            if same_field == Tri::Unknown || same_class == Tri::Unknown {
                return BirVerdict::Unknown(format!("case {}: field equality or class equivalence is undecided", case));
            }
            let found = connecting_link(a, b, d, points)
                .map(|r| ChainStep { record: r, inverse: false })
                .or_else(|| connecting_link(b, a, d, points).map(|r| ChainStep { record: r, inverse: true }));
            match found {
                Some(step) => BirVerdict::Yes { chain: vec![step], reason: format!("case {} with an explicit link", case) },
                None => BirVerdict::Unknown(format!(
                    "case {}: all data conditions hold; the existence of {} on the first model is open",
                    case, need
                )),
            }
        }
        n => BirVerdict::Unknown(format!("index {} does not occur", n)),
    }
}

/// One attestation checked by the splitting-field probe.
#[derive(Clone, Debug)]
pub struct ProbeEntry {
    pub field: String,
    pub link: String,
    pub attestation: String,
    pub holds: Tri,
}

#[derive(Clone, Debug, Default)]
pub struct ProbeReport {
    pub entries: Vec<ProbeEntry>,
    pub violations: Vec<String>,
}

/// Check that every splitting field attested on `s` by a candidate point is
/// attested on each link target, and that the inverse base point of each
/// link splits over a field attested on `s`.
pub fn fields_d_probe(s: &SurfaceSpec, links: &[LinkRecord], candidates: &[ClosedPointSpec]) -> ProbeReport {
    let t = &s.tower;
    let mut rep = ProbeReport::default();
    let push = |rep: &mut ProbeReport, field: String, link: &str, att: String, holds: Tri| {
        if holds == Tri::No {
            rep.violations.push(format!("{} is not attested after {}: {}", field, link, att));
        }
        rep.entries.push(ProbeEntry { field, link: link.to_string(), attestation: att, holds });
    };
    for rec in links {
        let lname = format!("{}@{}", rec.source.name, rec.point.name);
        for c in candidates {
            let Some(e) = point_field(s, c) else { continue };
            let ename = e.render(t);
            if point_key(s, c) != rec.point_key {
                push(&mut rep, ename, &lname, "transported point".into(), Tri::Yes);
                continue;
            }
            let (att, holds) = match (rec.degree, &rec.target.l) {
                (2, _) => ("K' = E: 2-points over K' exist on the target".to_string(), fields_equal(t, &rec.target.k, &e)),
                (_, Some(l)) => ("L' = E: 3-points over L' exist on the target".to_string(), fields_equal(t, l, &e)),
                (_, None) => ("F' = E: 3-points over F' exist on the target".to_string(), fields_equal(t, &rec.target.f, &e)),
            };
            push(&mut rep, ename, &lname, att, holds);
        }
        let inv = &rec.inverse_point_field;
        let src = &rec.source_model;
        let (att, holds) = if rec.degree == 2 {
            ("inverse base point over K: 2-points over K exist on the source".to_string(), fields_equal(t, inv, &src.k))
        } else {
            match &src.l {
                Some(l) if field_contained(t, &rec.target.k, inv) != Tri::Yes => ("inverse base point over L: 3-points over L exist on the source".to_string(), fields_equal(t, inv, l)),
                _ => ("inverse base point over F: 3-points over F exist on the source".to_string(), fields_equal(t, inv, &src.f)),
            }
        };
        push(&mut rep, inv.render(t), &lname, att, holds);
    }
    rep
}
