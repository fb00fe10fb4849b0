//! Finite fragments of the graph of birational models: vertices are
//! isomorphism classes of models, edges are classes of links with their
//! inverse pairing, sign labels and the reference links into each vertex.

use crate::error::{Error, Result};
use crate::fieldtower::{CompositeElem, CompositeGroup, GType, GaloisTower};
use crate::points::{general_position, image_under, validate_point, ClosedPointSpec};
use crate::sarkisov::{compositum, field_contained, fields_equal, link, model_iso, ClassDesc, FieldDesc, LinkRecord, ModelData, Orientation};
use crate::surface::{index, is_automorphism, SurfaceIndex, SurfaceSpec, TwistedAutomorphism};
use crate::Tri;
use std::fmt::Write as _;

/// A materialized model.
#[derive(Clone, Debug)]
pub struct Vertex {
    pub id: usize,
    pub name: String,
    pub model: ModelData,
    /// Number of links from the base surface along the exploration.
    pub level: usize,
    /// Points of the base surface blown up on the way to this vertex.
    pub consumed: Vec<String>,
    /// Vertices this one could not be told apart from.
    pub undecided: Vec<usize>,
}

/// How an edge was obtained.
#[derive(Clone, Debug)]
pub enum EdgeKind {
    /// A link computed on the base surface.
    Link(Box<LinkRecord>),
    /// A link at the image of a point of the base surface, with data from
    /// the splitting-field rules.
    Transported { point: String },
    /// The inverse of the partner edge.
    Inverse,
    /// The Geiser involution at a declared point of degree 4.
    Geiser { point: String },
    /// An automorphism of the vertex.
    Automorphism { aut: Option<TwistedAutomorphism> },
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub id: usize,
    pub from: usize,
    pub to: usize,
    pub label: String,
    /// Degree of the base point; 0 for automorphisms.
    pub degree: usize,
    pub kind: EdgeKind,
    /// The edge of the inverse map.
    pub partner: usize,
    /// Equivalence class: partners share a class exactly for almost
    /// involutions and involutions.
    pub class: usize,
    pub orientation: Orientation,
    pub base_field: Option<FieldDesc>,
    pub inverse_field: Option<FieldDesc>,
    /// Target data as produced by the link, before merging.
    pub target: ModelData,
}

impl Edge {
    pub fn is_automorphism(&self) -> bool {
        matches!(self.kind, EdgeKind::Automorphism { .. })
    }

    pub fn is_geiser(&self) -> bool {
        matches!(self.kind, EdgeKind::Geiser { .. })
    }

    pub fn is_self_loop(&self) -> bool {
        self.from == self.to
    }
}

/// An automorphism of the base surface offered as evidence that a self-link
/// is equivalent to its inverse.
#[derive(Clone, Debug)]
pub struct AutWitness {
    pub label: String,
    pub aut: TwistedAutomorphism,
}

/// A finite fragment of the graph of models of a surface.
#[derive(Clone, Debug)]
pub struct BirGraph {
    pub base: SurfaceSpec,
    pub index: SurfaceIndex,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// Reference link from the base into each vertex (`None` for the base
    /// and for vertices reached only through other vertices).
    pub reference: Vec<Option<usize>>,
    /// Recorded arbitrary choices: reference links and sign labels.
    pub choices: Vec<String>,
    /// Links that could not be materialized, with the reason.
    pub skipped: Vec<String>,
}

/// Galois group type of a Galois extension of k given by a fixing subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum GalType {
    C2,
    C3,
    S3,
    Other,
}

fn quotient_type<T: PartialEq + Copy>(all: &[T], fixing: &[T], mul: impl Fn(T, T) -> T, inv: impl Fn(T) -> T) -> GalType {
    let n = all.len() / fixing.len().max(1);
    let comm = all.iter().all(|&x| all.iter().all(|&y| fixing.contains(&mul(mul(x, y), mul(inv(x), inv(y))))));
    match (n, comm) {
        (2, _) => GalType::C2,
        (3, _) => GalType::C3,
        (6, false) => GalType::S3,
        _ => GalType::Other,
    }
}

fn galois_type(tower: &GaloisTower, e: &FieldDesc) -> GalType {
    match e {
        FieldDesc::InF { fixing } => {
            let all: Vec<usize> = tower.element_ids().collect();
            quotient_type(&all, fixing, |a, b| tower.mul(a, b), |a| tower.inverse(a))
        }
        FieldDesc::Ext { group } => {
            let fx = crate::points::fixing_of_e(group);
            composite_type(tower, group, &fx)
        }
        FieldDesc::Composite { group, fixing } => composite_type(tower, group, fixing),
    }
}

fn composite_type(tower: &GaloisTower, cg: &CompositeGroup, fixing: &[CompositeElem]) -> GalType {
    quotient_type(&cg.elements, fixing, |a, b| cg.mul(tower, &a, &b), |a| cg.inverse(tower, &a))
}

/// Target data and inverse base-point field of a link at a point of degree
/// `degree` splitting over `e`, on a model with data `m`.
pub fn target_by_rules(m: &ModelData, e: &FieldDesc, degree: usize) -> Result<(ModelData, FieldDesc)> {
    let t = &m.frame;
    let unsupported = |why: &str| Error::Unsupported(format!("link data on {}: {}", m.name, why));
    let (gtype, f, k, l, sb, conic, inverse) = match degree {
        3 => {
            let gt = galois_type(t, e);
            match field_contained(t, &m.k, e) {
                Tri::Yes if gt == GalType::S3 => {
                    let inverse = m.l.clone().unwrap_or_else(|| m.f.clone());
                    (GType::S3, e.clone(), m.k.clone(), None, m.sb.clone(), None, inverse)
                }
                Tri::No => {
                    let gtype = match gt {
                        GalType::C3 => GType::Z6,
                        GalType::S3 => GType::D6,
                        _ => return Err(unsupported("the splitting field is neither cyclic cubic nor an S3-extension")),
                    };
                    let f = compositum(t, &m.k, e).ok_or_else(|| unsupported("K.E is not visible in one composite"))?;
                    let inverse = m.l.clone().unwrap_or_else(|| m.f.clone());
                    (gtype, f, m.k.clone(), Some(e.clone()), m.sb.clone(), Some(ClassDesc::Trivial), inverse)
                }
                _ => return Err(unsupported("whether K lies in the splitting field is undecided")),
            }
        }
        2 => {
            if galois_type(t, e) != GalType::C2 {
                return Err(unsupported("a 2-point needs a quadratic splitting field"));
            }
            let l = m.l.clone().ok_or_else(|| unsupported("no field L"))?;
            let gtype = match m.gtype {
                GType::Z6 => GType::Z6,
                GType::D6 if fields_equal(t, e, &m.k) == Tri::Yes => GType::D6,
                _ => return Err(unsupported("the Galois group of E.L is not determined by the data")),
            };
            let f = compositum(t, e, &l).ok_or_else(|| unsupported("E.L is not visible in one composite"))?;
            (gtype, f, e.clone(), Some(l), ClassDesc::Trivial, m.conic.clone(), m.k.clone())
        }
        _ => return Err(unsupported("links are taken at points of degree 2 and 3")),
    };
    if f.degree(t) != 6 {
        return Err(Error::InconsistentAction(format!("the new splitting field has degree {}", f.degree(t))));
    }
    let model = ModelData { name: String::new(), gtype, frame: t.clone(), f, k, l, sb, conic, surface: None, assumed: m.assumed.clone() };
    Ok((model, inverse))
}

fn point_field(s: &SurfaceSpec, p: &ClosedPointSpec) -> Option<FieldDesc> {
    p.group.as_ref().map(|g| FieldDesc::of_extension(&s.tower, g))
}

impl BirGraph {
    fn new(s: &SurfaceSpec) -> BirGraph {
        let model = ModelData::from_surface(s);
        BirGraph {
            base: s.clone(),
            index: index(s),
            vertices: vec![Vertex { id: 0, name: s.name.clone(), model, level: 0, consumed: vec![], undecided: vec![] }],
            edges: vec![],
            reference: vec![None],
            choices: vec![],
            skipped: vec![],
        }
    }

    pub fn base_vertex(&self) -> usize {
        0
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    /// The vertex isomorphic to `m`, or a new one; undecided comparisons are
    /// recorded and never merge.
    fn place(&mut self, m: &ModelData, name: String, level: usize, consumed: Vec<String>, may_create: bool) -> Option<usize> {
        let mut undecided = Vec::new();
        for v in &self.vertices {
            match model_iso(m, &v.model).verdict {
                Tri::Yes => return Some(v.id),
                Tri::Unknown => undecided.push(v.id),
                Tri::No => {}
            }
        }
        if !may_create {
            return None;
        }
        let id = self.vertices.len();
        let mut model = m.clone();
        model.name = name.clone();
        for &u in &undecided {
            self.vertices[u].undecided.push(id);
        }
        self.vertices.push(Vertex { id, name, model, level, consumed, undecided });
        self.reference.push(None);
        Some(id)
    }

    #[allow(clippy::too_many_arguments)]
    fn add_pair(
        &mut self,
        from: usize,
        to: usize,
        label: String,
        degree: usize,
        kind: EdgeKind,
        base_field: FieldDesc,
        inverse_field: FieldDesc,
        target: ModelData,
    ) -> usize {
        let id = self.edges.len();
        let unknown = !self.vertices[from].undecided.is_empty() || !self.vertices[to].undecided.is_empty();
        let (pos, neg) = if unknown { (Orientation::Unknown, Orientation::Unknown) } else { (Orientation::Positive, Orientation::Negative) };
        let source_model = self.vertices[from].model.clone();
        self.edges.push(Edge {
            id,
            from,
            to,
            label: label.clone(),
            degree,
            kind,
            partner: id + 1,
            class: id,
            orientation: pos,
            base_field: Some(base_field.clone()),
            inverse_field: Some(inverse_field.clone()),
            target,
        });
        self.edges.push(Edge {
            id: id + 1,
            from: to,
            to: from,
            label: format!("{}^-1", label),
            degree,
            kind: EdgeKind::Inverse,
            partner: id,
            class: id + 1,
            orientation: neg,
            base_field: Some(inverse_field),
            inverse_field: Some(base_field),
            target: source_model,
        });
        if unknown {
            self.choices.push(format!("orientation of {} left unknown: an endpoint has an undecided isomorphism class", label));
        } else {
            self.choices.push(format!("sign: {} positive, {}^-1 negative", label, label));
        }
        if from == 0 && to != 0 && self.reference[to].is_none() {
            self.reference[to] = Some(id);
            self.choices.push(format!("reference link into {}: {}", self.vertices[to].name, label));
        }
        id
    }

    fn add_involution(&mut self, vertex: usize, label: String, kind: EdgeKind) -> usize {
        let id = self.edges.len();
        let (degree, orientation) = match kind {
            EdgeKind::Geiser { .. } => (4, Orientation::AlmostInvolution),
            _ => (0, Orientation::Positive),
        };
        let target = self.vertices[vertex].model.clone();
        self.edges.push(Edge {
            id,
            from: vertex,
            to: vertex,
            label,
            degree,
            kind,
            partner: id,
            class: id,
            orientation,
            base_field: None,
            inverse_field: None,
            target,
        });
        id
    }

    /// Register an automorphism of a vertex and its inverse; returns the
    /// edge of the automorphism.
    pub fn add_automorphism(&mut self, vertex: usize, label: &str, aut: Option<TwistedAutomorphism>) -> usize {
        let inv = aut.as_ref().map(|a| a.inverse());
        let involutive = match (&aut, &inv) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        };
        let id = self.add_involution(vertex, label.to_string(), EdgeKind::Automorphism { aut });
        if !involutive {
            let j = self.add_involution(vertex, format!("{}^-1", label), EdgeKind::Automorphism { aut: inv });
            self.edges[id].partner = j;
            self.edges[j].partner = id;
        }
        id
    }

    /// Whether the edge or its partner is a reference link.
    pub fn is_reference(&self, e: usize) -> bool {
        let p = self.edges[e].partner;
        self.reference.iter().any(|r| *r == Some(e) || *r == Some(p))
    }

    /// Label of the class of an edge: the label of the edge of the class
    /// created first.
    pub fn class_label(&self, e: usize) -> String {
        self.edges[self.edges[e].class].label.clone()
    }

    /// Mark a self-link as equivalent to its inverse after checking the
    /// witness; returns the resulting orientation.
    pub fn apply_witness(&mut self, e: usize, w: &AutWitness) -> Orientation {
        let o = classify_edge(self, e, std::slice::from_ref(w));
        if o == Orientation::AlmostInvolution {
            let p = self.edges[e].partner;
            let c = self.edges[e].class.min(self.edges[p].class);
            for x in [e, p] {
                self.edges[x].class = c;
                self.edges[x].orientation = Orientation::AlmostInvolution;
            }
            let label = self.edges[e].label.clone();
            self.choices.push(format!("{} is an almost involution: {} sends its base point to a point with the data of the inverse", label, w.label));
            self.add_automorphism(self.edges[e].from, &w.label, Some(w.aut.clone()));
        }
        o
    }

    /// Edges leaving a vertex.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.from == v)
    }

    /// Text dump: vertices with their keys, edges with classes and signs,
    /// the reference links and the recorded choices.
    pub fn dump(&self) -> String {
        let t = &self.base.tower;
        let mut out = String::new();
        let _ = writeln!(out, "graph of {} (index {})", self.base.name, self.index);
        let _ = writeln!(out, "vertices {}", self.vertices.len());
        for v in &self.vertices {
            let _ = writeln!(out, "  v{} {} level {} key {}", v.id, v.name, v.level, v.model.key());
            if !v.undecided.is_empty() {
                let names: Vec<String> = v.undecided.iter().map(|u| format!("v{}", u)).collect();
                let _ = writeln!(out, "    isomorphism undecided against {}", names.join(", "));
            }
        }
        let _ = writeln!(out, "edges {}", self.edges.len());
        for e in &self.edges {
            let field = e.base_field.as_ref().map(|f| f.render(t)).unwrap_or_else(|| "-".into());
            let _ = writeln!(
                out,
                "  e{} {}: v{} -> v{} degree {} over {} class {} partner e{} {}",
                e.id, e.label, e.from, e.to, e.degree, field, self.class_label(e.id), e.partner, e.orientation
            );
        }
        for c in &self.choices {
            let _ = writeln!(out, "choice {}", c);
        }
        for s in &self.skipped {
            let _ = writeln!(out, "skipped {}", s);
        }
        out
    }
}

/// Breadth-first exploration: links at the given points of the base
/// surface, then links at the images of these points on the new models, up
/// to `depth` links away from the base. Links between models already found
/// are always recorded.
pub fn explore_graph(s: &SurfaceSpec, points: &[ClosedPointSpec], depth: usize) -> BirGraph {
    let mut g = BirGraph::new(s);
    let t = &s.tower;
    for p in points {
        if p.degree == 4 {
            if g.index == SurfaceIndex::Known(2) && p.declared_general == Some(true) {
                let id = g.add_involution(0, format!("geiser[{}]", p.name), EdgeKind::Geiser { point: p.name.clone() });
                g.choices.push(format!("Geiser involution at {} recorded as e{}", p.name, id));
            } else {
                g.skipped.push(format!("{}: a Geiser involution needs index 2 and a 4-point declared in general position", p.name));
            }
            continue;
        }
        if depth == 0 {
            continue;
        }
        let rec = match link(s, p) {
            Ok(r) => r,
            Err(e) => {
                g.skipped.push(format!("{}@{}: {}", s.name, p.name, e));
                continue;
            }
        };
        let name = rec.target.name.clone();
        let Some(to) = g.place(&rec.target, name, 1, vec![p.name.clone()], true) else { continue };
        let base_field = FieldDesc::of_extension(t, &rec.group);
        let inv = rec.inverse_point_field.clone();
        let target = rec.target.clone();
        let mut rec = rec;
        rec.orientation = Orientation::Positive;
        g.add_pair(0, to, format!("{}[{}]", s.name, p.name), p.degree as usize, EdgeKind::Link(Box::new(rec)), base_field, inv, target);
    }
    let mut next = 1;
    while next < g.vertices.len() {
        let u = next;
        next += 1;
        let level = g.vertices[u].level;
        for q in points {
            if q.degree == 4 || g.vertices[u].consumed.contains(&q.name) {
                continue;
            }
            let Some(e) = point_field(s, q) else { continue };
            if !validate_point(s, q).unwrap_or(false) || !general_position(s, q) {
                continue;
            }
            let label = format!("{}[{}]", g.vertices[u].name, q.name);
            let (target, inv) = match target_by_rules(&g.vertices[u].model, &e, q.degree as usize) {
                Ok(x) => x,
                Err(err) => {
                    g.skipped.push(format!("{}: {}", label, err));
                    continue;
                }
            };
            let mut consumed = g.vertices[u].consumed.clone();
            consumed.push(q.name.clone());
            let name = format!("{}/{}", g.vertices[u].name, q.name);
            match g.place(&target, name, level + 1, consumed, level < depth) {
                Some(to) => {
                    g.add_pair(u, to, label, q.degree as usize, EdgeKind::Transported { point: q.name.clone() }, e, inv, target);
                }
                None => g.skipped.push(format!("{}: the target is a new model beyond depth {}", label, depth)),
            }
        }
    }
    g
}

/// Orientation of an edge: an almost involution when a witnessed
/// automorphism of the base sends the base point of the self-link to a point
/// carrying the data of the inverse link's base point; otherwise the sign of
/// the graph's labeling, with reference links positive.
pub fn classify_edge(g: &BirGraph, e: usize, witnesses: &[AutWitness]) -> Orientation {
    let edge = &g.edges[e];
    if edge.orientation == Orientation::AlmostInvolution || edge.orientation == Orientation::Unknown {
        return edge.orientation;
    }
    if let (true, Some(rec)) = (edge.is_self_loop() && edge.from == 0, link_record(g, e)) {
        if witnesses.iter().any(|w| witness_holds(&g.base, rec, w)) {
            return Orientation::AlmostInvolution;
        }
    }
    if g.reference.contains(&Some(e)) {
        return Orientation::Positive;
    }
    edge.orientation
}

/// The computed link behind an edge or its partner.
pub fn link_record(g: &BirGraph, e: usize) -> Option<&LinkRecord> {
    let edge = &g.edges[e];
    match (&edge.kind, &g.edges[edge.partner].kind) {
        (EdgeKind::Link(r), _) | (EdgeKind::Inverse, EdgeKind::Link(r)) => Some(r),
        _ => None,
    }
}

fn witness_holds(s: &SurfaceSpec, rec: &LinkRecord, w: &AutWitness) -> bool {
    if !is_automorphism(s, &w.aut) {
        return false;
    }
    let Ok(q) = image_under(s, &rec.point, &w.aut) else { return false };
    if w.aut.is_identity() || !validate_point(s, &q).unwrap_or(false) || !general_position(s, &q) {
        return false;
    }
    let Some(field) = point_field(s, &q) else { return false };
    if fields_equal(&s.tower, &field, &rec.inverse_point_field) != Tri::Yes {
        return false;
    }
    match link(s, &q) {
        Ok(r2) => model_iso(&r2.target, &rec.source_model).verdict == Tri::Yes,
        Err(_) => false,
    }
}
