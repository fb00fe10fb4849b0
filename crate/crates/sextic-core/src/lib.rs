//! Sextic del Pezzo surfaces of Picard rank one over explicit function fields.
//!
//! The crate provides exact field arithmetic with finite Galois actions
//! ([`fieldtower`]), the exceptional-curve configurations ([`curveconfig`]),
//! surfaces given by twist parameters ([`surface`]), closed points of degree 2
//! and 3 ([`points`]), Sarkisov links ([`sarkisov`]) and finite fragments of
//! the graph of birational models with the quotient homomorphisms of the
//! birational group ([`birgroup`]).

pub mod birgroup;
pub mod curveconfig;
pub mod error;
pub mod fieldtower;
pub mod points;
pub mod sarkisov;
pub mod surface;

pub use error::{Error, Result};

/// Three-valued answer of a decision procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn and(self, o: Tri) -> Tri {
        match (self, o) {
            (Tri::No, _) | (_, Tri::No) => Tri::No,
            (Tri::Yes, Tri::Yes) => Tri::Yes,
            _ => Tri::Unknown,
        }
    }

    pub fn or(self, o: Tri) -> Tri {
        match (self, o) {
            (Tri::Yes, _) | (_, Tri::Yes) => Tri::Yes,
            (Tri::No, Tri::No) => Tri::No,
            _ => Tri::Unknown,
        }
    }

    pub fn not(self) -> Tri {
        match self {
            Tri::Yes => Tri::No,
            Tri::No => Tri::Yes,
            Tri::Unknown => Tri::Unknown,
        }
    }

    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

impl std::fmt::Display for Tri {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        };
        write!(f, "{}", s)
    }
}
