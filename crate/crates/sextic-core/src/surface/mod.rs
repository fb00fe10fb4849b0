//! Sextic G-del Pezzo surfaces from twist parameters.

pub mod monomial;
pub mod sampling;
pub mod spec;
pub mod twisted;

pub use spec::{
    apply_move, are_cohomologous, automorphism_description, check_conditions, cocycle_assignments, commutes_with_twisted_action,
    conjugate_cocycle, extend_cocycle, in_torus_set, index, is_automorphism, is_isomorphic, make_surface, make_surface_from_eta,
    move_formula, normalize_cocycle, relator_words, sb_class_equivalent, severi_brauer_data, Amitsur, AutDescriptor, CocycleReport,
    IsoVerdict, Move, SeveriBrauerData, SurfaceIndex, SurfaceSpec, TorusSet,
};
pub use twisted::{hexagon_act, TwistedAutomorphism};
