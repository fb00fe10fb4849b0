//! Finite fragments of the graph of birational models of a surface, the
//! generating tours A, B, C, D of its birational group, relation checks, and
//! the quotient homomorphisms onto free products for indices 2 and 3.

pub mod graph;
pub mod psi;
pub mod words;

#[cfg(test)]
mod tests;

pub use graph::{classify_edge, explore_graph, link_record, target_by_rules, AutWitness, BirGraph, Edge, EdgeKind, Vertex};
pub use psi::{edge_image, psi_image, psi_of_path, QuotientImage, Syllable};
pub use words::{
    check_hexagon, check_relation, check_tour, describe_path, expand, free_reduce, hexagon_word, relation_templates, tour_loops,
    word_to_generators, BirWord, RelationCheck, Token,
};
