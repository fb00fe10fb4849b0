//! (−1)-curves on del Pezzo surfaces of degrees 6, 4 and 3, their intersection
//! graphs, hexagon symmetries and induced Galois actions.

pub mod action;
pub mod hexagon;
pub mod lattice;

pub use action::{
    all_patterns, contracted_labels, d6_closure, hexagon_action, image_type, induced_action_of_group, induced_sigma_prime_action,
    invariant_picard_rank, invariant_picard_rank_of, link_group, predicted_kernel, presentation_relators,
    sigma_prime_labels, standard_image, subgroups_of, GaloisCurveAction, ImageType, InducedAction, LinkElement,
    PointGroup, PointPattern,
};
pub use hexagon::{hex_adjacent, D6, HEX_LABELS};
pub use lattice::{geiser_pairing_labels, intersection, CurveClass, CurveConfig, LatticeMap};
