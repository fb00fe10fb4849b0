//! Words in the generating tours A, B, C, D, the decomposition of tours into
//! such words, and data-level checks of relations.

use super::graph::{target_by_rules, BirGraph, EdgeKind};
use crate::error::{Error, Result};
use crate::sarkisov::{fields_equal, model_iso};
use crate::Tri;
use std::fmt;

/// A generating tour, carrying the edge of its link or automorphism.
///
/// With χ_v the reference link into S_v:
/// `A(χ) = χ_v⁻¹∘χ∘χ_u` for χ: S_u → S_v between distinct non-base models,
/// `B(χ) = χ_v⁻¹∘χ` for χ: S → S_v, `BInv(χ)` its inverse,
/// `C(φ) = φ` for a self-link or automorphism of S,
/// `D(φ) = χ_v⁻¹∘φ∘χ_v` for a self-link or automorphism of S_v.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    A(usize),
    B(usize),
    BInv(usize),
    C(usize),
    D(usize),
}

impl Token {
    pub fn edge(&self) -> usize {
        match *self {
            Token::A(e) | Token::B(e) | Token::BInv(e) | Token::C(e) | Token::D(e) => e,
        }
    }

    pub fn render(&self, g: &BirGraph) -> String {
        let l = &g.edges[self.edge()].label;
        match self {
            Token::A(_) => format!("A[{}]", l),
            Token::B(_) => format!("B[{}]", l),
            Token::BInv(_) => format!("B[{}]^-1", l),
            Token::C(_) => format!("C[{}]", l),
            Token::D(_) => format!("D[{}]", l),
        }
    }
}

/// A product of generating tours, in the order in which they are applied.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BirWord {
    pub tokens: Vec<Token>,
}

impl BirWord {
    pub fn new(tokens: Vec<Token>) -> BirWord {
        BirWord { tokens }
    }

    /// The word applied after `self`.
    pub fn then(&self, other: &BirWord) -> BirWord {
        let mut tokens = self.tokens.clone();
        tokens.extend(other.tokens.iter().copied());
        BirWord { tokens }
    }

    pub fn inverse(&self, g: &BirGraph) -> BirWord {
        let tokens = self
            .tokens
            .iter()
            .rev()
            .map(|t| match *t {
                Token::A(e) => Token::A(g.edges[e].partner),
                Token::B(e) => Token::BInv(e),
                Token::BInv(e) => Token::B(e),
                Token::C(e) => Token::C(g.edges[e].partner),
                Token::D(e) => Token::D(g.edges[e].partner),
            })
            .collect();
        BirWord { tokens }
    }

    pub fn render(&self, g: &BirGraph) -> String {
        if self.tokens.is_empty() {
            return "id".into();
        }
        self.tokens.iter().map(|t| t.render(g)).collect::<Vec<_>>().join(" . ")
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::A(e) => write!(f, "A(e{})", e),
            Token::B(e) => write!(f, "B(e{})", e),
            Token::BInv(e) => write!(f, "B(e{})^-1", e),
            Token::C(e) => write!(f, "C(e{})", e),
            Token::D(e) => write!(f, "D(e{})", e),
        }
    }
}

fn reference(g: &BirGraph, v: usize) -> Result<usize> {
    g.reference[v].ok_or_else(|| Error::Precondition(format!("no reference link from the base into {}", g.vertices[v].name)))
}

/// Check that consecutive edges compose and that the path runs from the
/// base back to the base.
pub fn check_tour(g: &BirGraph, tour: &[usize]) -> Result<()> {
    let mut at = g.base_vertex();
    for (i, &e) in tour.iter().enumerate() {
        let edge = g.edges.get(e).ok_or_else(|| Error::Precondition(format!("no edge e{}", e)))?;
        if edge.from != at {
            return Err(Error::NotClosed(format!("step {} ({}) starts at {} instead of {}", i, edge.label, g.vertices[edge.from].name, g.vertices[at].name)));
        }
        at = edge.to;
    }
    if at != g.base_vertex() {
        return Err(Error::NotClosed(format!("the path ends at {}", g.vertices[at].name)));
    }
    Ok(())
}

/// The edges of a word in the order they are traversed.
pub fn expand(g: &BirGraph, w: &BirWord) -> Result<Vec<usize>> {
    let base = g.base_vertex();
    let mut out = Vec::new();
    for t in &w.tokens {
        let e = &g.edges[t.edge()];
        let bad = |what: &str| Error::Precondition(format!("{} does not support {}", e.label, what));
        match *t {
            Token::A(x) => {
                if e.from == base || e.to == base || e.from == e.to {
                    return Err(bad("a token of type A"));
                }
                let (ru, rv) = (reference(g, e.from)?, reference(g, e.to)?);
                out.extend([ru, x, g.edges[rv].partner]);
            }
            Token::B(x) | Token::BInv(x) => {
                if e.from != base || e.to == base {
                    return Err(bad("a token of type B"));
                }
                let rv = reference(g, e.to)?;
                if matches!(t, Token::B(_)) {
                    out.extend([x, g.edges[rv].partner]);
                } else {
                    out.extend([rv, e.partner]);
                }
            }
            Token::C(x) => {
                if e.from != base || e.to != base {
                    return Err(bad("a token of type C"));
                }
                out.push(x);
            }
            Token::D(x) => {
                if e.from == base || e.from != e.to {
                    return Err(bad("a token of type D"));
                }
                let rv = reference(g, e.from)?;
                out.extend([rv, x, g.edges[rv].partner]);
            }
        }
    }
    Ok(out)
}

/// Cancel each edge followed by its inverse.
pub fn free_reduce(g: &BirGraph, path: &[usize]) -> Vec<usize> {
    let mut st: Vec<usize> = Vec::new();
    for &e in path {
        if st.last().map(|&l| g.edges[l].partner == e).unwrap_or(false) {
            st.pop();
        } else {
            st.push(e);
        }
    }
    st
}

/// The token of one step of a tour, after inserting reference links around
/// the non-base endpoints; `None` for the steps that are reference links
/// themselves.
fn step_token(g: &BirGraph, e: usize) -> Option<Token> {
    let base = g.base_vertex();
    let edge = &g.edges[e];
    match (edge.from == base, edge.to == base) {
        (true, true) => Some(Token::C(e)),
        (true, false) => (g.reference[edge.to] != Some(e)).then_some(Token::B(e)),
        (false, true) => (g.reference[edge.from] != Some(edge.partner)).then_some(Token::BInv(edge.partner)),
        (false, false) if edge.from == edge.to => Some(Token::D(e)),
        (false, false) => Some(Token::A(e)),
    }
}

/// Split a tour into loops based at the base surface: at the first vertex
/// that repeats an earlier one without closing a self-loop, the reference
/// link into the previous vertex and its inverse are inserted.
pub fn tour_loops(g: &BirGraph, tour: &[usize]) -> Result<Vec<Vec<usize>>> {
    check_tour(g, tour)?;
    let base = g.base_vertex();
    let mut rest: Vec<usize> = tour.to_vec();
    let mut loops = Vec::new();
    while !rest.is_empty() {
        let mut verts = vec![base];
        let mut cut = None;
        for (i, &e) in rest.iter().enumerate() {
            let v = g.edges[e].to;
            let prev = *verts.last().unwrap();
            if v == base {
                cut = Some((i + 1, None));
                break;
            }
            if v != prev && verts.contains(&v) {
                cut = Some((i, Some(prev)));
                break;
            }
            verts.push(v);
        }
        match cut {
            Some((n, None)) => {
                loops.push(rest[..n].to_vec());
                rest.drain(..n);
            }
            Some((n, Some(u))) => {
                let r = reference(g, u)?;
                let mut lp = rest[..n].to_vec();
                lp.push(g.edges[r].partner);
                loops.push(lp);
                let mut tail = vec![r];
                tail.extend_from_slice(&rest[n..]);
                rest = tail;
            }
            None => unreachable!("a checked tour returns to the base"),
        }
    }
    Ok(loops)
}

/// Rewrite a tour at the base surface as a product of generating tours.
pub fn word_to_generators(g: &BirGraph, tour: &[usize]) -> Result<BirWord> {
    let loops = tour_loops(g, tour)?;
    let mut tokens = Vec::new();
    for lp in &loops {
        for &e in lp {
            if let Some(t) = step_token(g, e) {
                tokens.push(t);
            }
        }
    }
    Ok(BirWord { tokens })
}

/// Outcome of a data-level relation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub holds: bool,
    pub lines: Vec<String>,
}

/// Data-level check of a closed word: each link, recomputed from the data of
/// its source model and its base-point field, lands on the model of the next
/// step, the base fields match the recorded inverse fields, and the path
/// returns to the base.
pub fn check_relation(g: &BirGraph, w: &BirWord) -> Result<RelationCheck> {
    let path = expand(g, w)?;
    check_tour(g, &path)?;
    let t = &g.base.tower;
    let mut lines = Vec::new();
    let mut holds = true;
    for &e in &path {
        let edge = &g.edges[e];
        if edge.is_automorphism() || edge.is_geiser() {
            continue;
        }
        let src = &g.vertices[edge.from].model;
        let base = edge.base_field.as_ref().expect("links carry a base field");
        let (m, inv) = target_by_rules(src, base, edge.degree)?;
        let lands = model_iso(&m, &g.vertices[edge.to].model).verdict;
        let inv_ok = fields_equal(t, &inv, edge.inverse_field.as_ref().expect("links carry an inverse field"));
        let partner_ok = match &g.edges[edge.partner].base_field {
            Some(f) => fields_equal(t, f, &inv),
            None => Tri::No,
        };
        let ok = lands == Tri::Yes && inv_ok == Tri::Yes && partner_ok == Tri::Yes;
        holds &= ok;
        lines.push(format!(
            "{}: lands on {} {}, inverse base field {}",
            edge.label,
            g.vertices[edge.to].name,
            lands,
            inv_ok.and(partner_ok)
        ));
    }
    lines.push(format!("closed at {}", g.vertices[g.base_vertex()].name));
    Ok(RelationCheck { holds, lines })
}

/// Check the six-term pattern χ6∘…∘χ1 of links at 2-points: the cycle
/// closes, χi and χ(i+3) are in the same class, and the base point of
/// χ(i+1) carries the field of the base point of χ(i−1)⁻¹.
pub fn check_hexagon(g: &BirGraph, chi: &[usize; 6]) -> Result<RelationCheck> {
    let t = &g.base.tower;
    let mut lines = Vec::new();
    let mut holds = true;
    for i in 0..6 {
        let (a, b) = (&g.edges[chi[i]], &g.edges[chi[(i + 1) % 6]]);
        if a.to != b.from {
            return Err(Error::NotClosed(format!("{} does not end where {} starts", a.label, b.label)));
        }
        if a.degree != 2 {
            return Err(Error::Precondition(format!("{} is not a link at a 2-point", a.label)));
        }
    }
    for i in 0..3 {
        let same = g.edges[chi[i]].class == g.edges[chi[i + 3]].class;
        holds &= same;
        lines.push(format!("chi{} ~ chi{}: {}", i + 1, i + 4, same));
    }
    for i in 0..6 {
        let prev = &g.edges[chi[(i + 5) % 6]];
        let next = &g.edges[chi[(i + 1) % 6]];
        let v = match (&next.base_field, &prev.inverse_field) {
            (Some(a), Some(b)) => fields_equal(t, a, b),
            _ => Tri::No,
        };
        holds &= v == Tri::Yes;
        lines.push(format!("field of Ind(chi{}) = field of chi{}(Ind(chi{}^-1)): {}", (i + 1) % 6 + 1, i + 1, (i + 5) % 6 + 1, v));
    }
    let w = hexagon_word(g, chi)?;
    let r = check_relation(g, &w)?;
    holds &= r.holds;
    lines.extend(r.lines);
    Ok(RelationCheck { holds, lines })
}

/// The six-term cycle as a word at the base, conjugated by the reference
/// link when the cycle sits at another model.
pub fn hexagon_word(g: &BirGraph, chi: &[usize; 6]) -> Result<BirWord> {
    let z = g.edges[chi[0]].from;
    let mut tour = Vec::new();
    if z != g.base_vertex() {
        tour.push(reference(g, z)?);
    }
    tour.extend_from_slice(chi);
    if z != g.base_vertex() {
        tour.push(g.edges[reference(g, z)?].partner);
    }
    word_to_generators(g, &tour)
}

/// Instances of the relation templates on the explored fragment, labeled by
/// their type.
pub fn relation_templates(g: &BirGraph) -> Vec<(String, BirWord)> {
    let base = g.base_vertex();
    let mut out = Vec::new();
    for e in &g.edges {
        let p = e.partner;
        if e.is_automorphism() {
            let kind = if e.from == base { Token::C as fn(usize) -> Token } else { Token::D };
            if e.from != base && g.reference[e.from].is_none() {
                continue;
            }
            out.push(("1".to_string(), BirWord::new(vec![kind(e.id), kind(p)])));
            continue;
        }
        if e.is_geiser() {
            out.push(("geiser".to_string(), BirWord::new(vec![Token::C(e.id), Token::C(e.id)])));
            continue;
        }
        let has_ref = |v: usize| v == base || g.reference[v].is_some();
        if !has_ref(e.from) || !has_ref(e.to) {
            continue;
        }
        match (e.from == base, e.to == base, e.from == e.to) {
            (true, false, _) => {
                if g.reference[e.to] == Some(e.id) {
                    out.push(("2".into(), BirWord::new(vec![Token::B(e.id)])));
                }
                out.push(("3b".into(), BirWord::new(vec![Token::B(e.id), Token::BInv(e.id)])));
            }
            (true, true, _) => out.push(("3c".into(), BirWord::new(vec![Token::C(e.id), Token::C(p)]))),
            (false, false, true) => out.push(("3d".into(), BirWord::new(vec![Token::D(e.id), Token::D(p)]))),
            (false, false, false) => out.push(("3a".into(), BirWord::new(vec![Token::A(e.id), Token::A(p)]))),
            (false, true, _) => {}
        }
    }
    // equivalent links: an almost involution χ with χ∘α∘χ∘β = id
    for e in &g.edges {
        if e.is_self_loop() && !e.is_automorphism() && !e.is_geiser() && e.class == g.edges[e.partner].class && e.id < e.partner {
            let auts: Vec<usize> = g.edges.iter().filter(|a| a.is_automorphism() && a.from == e.from).map(|a| a.id).collect();
            let Some(&alpha) = auts.first() else { continue };
            let beta = g.edges[alpha].partner;
            if e.from == base {
                out.push(("4c".into(), BirWord::new(vec![Token::C(beta), Token::C(e.id), Token::C(alpha), Token::C(e.id)])));
            } else if g.reference[e.from].is_some() {
                out.push(("4d".into(), BirWord::new(vec![Token::D(beta), Token::D(e.id), Token::D(alpha), Token::D(e.id)])));
            }
        }
    }
    out
}

/// Base points carried by the links of a path, for reports.
pub fn describe_path(g: &BirGraph, path: &[usize]) -> String {
    path.iter()
        .map(|&e| {
            let edge = &g.edges[e];
            match &edge.kind {
                EdgeKind::Automorphism { .. } => format!("aut {}", edge.label),
                _ => edge.label.clone(),
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}
