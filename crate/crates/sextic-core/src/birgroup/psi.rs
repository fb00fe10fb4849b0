//! The quotient homomorphisms of the birational group onto free products,
//! evaluated on words in the generating tours.

use super::graph::BirGraph;
use super::words::{BirWord, Token};
use crate::error::{Error, Result};
use crate::sarkisov::Orientation;
use crate::surface::SurfaceIndex;
use std::collections::BTreeSet;
use std::fmt;

/// A nontrivial element of one free factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Syllable {
    /// A power of the generator of a factor Z.
    Free { letter: String, exp: i64 },
    /// The generator of a factor Z/2.
    Involution { letter: String },
    /// A nonzero element of the direct sum of copies of Z/2 (index 2).
    Abelian { letters: BTreeSet<String> },
}

impl Syllable {
    fn inverse(&self) -> Syllable {
        match self {
            Syllable::Free { letter, exp } => Syllable::Free { letter: letter.clone(), exp: -exp },
            s => s.clone(),
        }
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Syllable::Free { letter, exp } if *exp == 1 => write!(f, "{}", letter),
            Syllable::Free { letter, exp } => write!(f, "{}^{}", letter, exp),
            Syllable::Involution { letter } => write!(f, "{}", letter),
            Syllable::Abelian { letters } => write!(f, "({})", letters.iter().cloned().collect::<Vec<_>>().join(" + ")),
        }
    }
}

/// A reduced word in the free product of the factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuotientImage {
    pub syllables: Vec<Syllable>,
}

impl QuotientImage {
    pub fn identity() -> QuotientImage {
        QuotientImage::default()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Multiply on the right by one syllable, keeping the word reduced.
    pub fn push(&mut self, s: Syllable) {
        let merged = match (self.syllables.last(), &s) {
            (Some(Syllable::Free { letter: a, exp: x }), Syllable::Free { letter: b, exp: y }) if a == b => {
                Some((x + y != 0).then(|| Syllable::Free { letter: a.clone(), exp: x + y }))
            }
            (Some(Syllable::Involution { letter: a }), Syllable::Involution { letter: b }) if a == b => Some(None),
            (Some(Syllable::Abelian { letters: a }), Syllable::Abelian { letters: b }) => {
                let c: BTreeSet<String> = a.symmetric_difference(b).cloned().collect();
                Some((!c.is_empty()).then_some(Syllable::Abelian { letters: c }))
            }
            _ => None,
        };
        match merged {
            Some(m) => {
                self.syllables.pop();
                if let Some(m) = m {
                    self.syllables.push(m);
                }
            }
            None => self.syllables.push(s),
        }
    }

    pub fn mul(&self, other: &QuotientImage) -> QuotientImage {
        let mut out = self.clone();
        for s in &other.syllables {
            out.push(s.clone());
        }
        out
    }

    /// Whether no two neighbouring syllables lie in the same factor.
    pub fn is_reduced(&self) -> bool {
        self.syllables.windows(2).all(|w| match (&w[0], &w[1]) {
            (Syllable::Free { letter: a, .. }, Syllable::Free { letter: b, .. }) => a != b,
            (Syllable::Involution { letter: a }, Syllable::Involution { letter: b }) => a != b,
            (Syllable::Abelian { .. }, Syllable::Abelian { .. }) => false,
            _ => true,
        }) && self.syllables.iter().all(|s| match s {
            Syllable::Free { exp, .. } => *exp != 0,
            Syllable::Abelian { letters } => !letters.is_empty(),
            Syllable::Involution { .. } => true,
        })
    }

    /// Letters of factors Z that occur.
    pub fn free_letters(&self) -> BTreeSet<String> {
        self.syllables
            .iter()
            .filter_map(|s| match s {
                Syllable::Free { letter, .. } => Some(letter.clone()),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for QuotientImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.syllables.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

fn supported_index(g: &BirGraph) -> Result<u32> {
    match g.index {
        SurfaceIndex::Known(n @ (2 | 3)) => Ok(n),
        other => Err(Error::Unsupported(format!("the quotient maps are defined for indices 2 and 3, not {}", other))),
    }
}

/// The image of the generating tour of one edge, before inversion.
pub fn edge_image(g: &BirGraph, e: usize) -> Result<Option<Syllable>> {
    let index = supported_index(g)?;
    let edge = &g.edges[e];
    if edge.is_automorphism() || g.is_reference(e) {
        return Ok(None);
    }
    if let super::graph::EdgeKind::Geiser { point } = &edge.kind {
        return Ok(Some(Syllable::Involution { letter: format!("g[{}]", point) }));
    }
    let abelian = |l: String| Syllable::Abelian { letters: BTreeSet::from([l]) };
    let s = match edge.orientation {
        Orientation::Unknown => return Err(Error::UnknownOrientation(edge.label.clone())),
        Orientation::AlmostInvolution => {
            let l = g.class_label(e);
            if index == 3 {
                Syllable::Involution { letter: l }
            } else {
                abelian(l)
            }
        }
        Orientation::Positive => {
            let l = g.class_label(e);
            if index == 3 {
                Syllable::Free { letter: l, exp: 1 }
            } else {
                abelian(l)
            }
        }
        Orientation::Negative => {
            let l = g.class_label(edge.partner);
            if index == 3 {
                Syllable::Free { letter: l, exp: -1 }
            } else {
                abelian(l)
            }
        }
    };
    Ok(Some(s))
}

/// Ψ of a word: each generating tour goes to the letter of its link.
pub fn psi_image(g: &BirGraph, w: &BirWord) -> Result<QuotientImage> {
    supported_index(g)?;
    let mut out = QuotientImage::identity();
    for t in &w.tokens {
        let s = edge_image(g, t.edge())?;
        if let Some(s) = s {
            out.push(if matches!(t, Token::BInv(_)) { s.inverse() } else { s });
        }
    }
    Ok(out)
}

/// Ψ computed link by link along the expanded path; agrees with
/// [`psi_image`] on every word.
pub fn psi_of_path(g: &BirGraph, path: &[usize]) -> Result<QuotientImage> {
    supported_index(g)?;
    let mut out = QuotientImage::identity();
    for &e in path {
        if let Some(s) = edge_image(g, e)? {
            out.push(s);
        }
    }
    Ok(out)
}
