use super::*;
use crate::fieldtower::{ExtensionDescriptor, GaloisTower};
use crate::points::{construct_2point, construct_3point, ClosedPointSpec};
use crate::sarkisov::{model_iso, Orientation};
use crate::surface::{make_surface, SurfaceSpec};
use crate::error::Error;
use crate::Tri;

fn example() -> SurfaceSpec {
    let t = GaloisTower::standard_s3();
    make_surface("S", &t, t.var("s").unwrap(), None, vec![]).unwrap()
}

fn example_point(s: &SurfaceSpec, z: i64) -> ClosedPointSpec {
    let rad = s.tower.parse_element(&format!("s*(t1+{z})*(t2+{z})*(t3+{z})")).unwrap();
    let ext = ExtensionDescriptor::kummer_cubic(&format!("E_{z}"), rad);
    ClosedPointSpec::parse(s, &format!("q{z}"), 3, &ext, &[format!("(t3+{z})/r")]).unwrap()
}

fn example_graph() -> BirGraph {
    let s = example();
    let pts: Vec<ClosedPointSpec> = (0..4).map(|z| example_point(&s, z)).collect();
    explore_graph(&s, &pts, 1)
}

fn z6_index2() -> SurfaceSpec {
    let t = GaloisTower::standard_z6();
    make_surface("S2", &t, t.one(), Some(t.parse_element("x1/x2").unwrap()), vec![]).unwrap()
}

fn z6_points_over_k(s: &SurfaceSpec) -> Vec<ClosedPointSpec> {
    let t = &s.tower;
    let ext = ExtensionDescriptor::subfield("K", t.subgroup(&[t.generator('g').unwrap()]));
    let mut pts = construct_2point(s).unwrap();
    pts.push(ClosedPointSpec::parse(s, "p2b", 2, &ext, &["(x1+1)/(x2+1)".to_string()]).unwrap());
    pts
}

fn by_label(g: &BirGraph, label: &str) -> usize {
    g.edges
        .iter()
        .position(|e| e.label == label)
        .unwrap_or_else(|| panic!("no edge {} in\n{}", label, g.dump()))
}

fn alpha_h(s: &SurfaceSpec) -> AutWitness {
    AutWitness { label: "alpha_h".into(), aut: s.alpha('h').unwrap().clone() }
}

#[test]
fn example_fragment_has_five_distinct_models() {
    let g = example_graph();
    assert_eq!(g.vertices.len(), 5, "{}", g.dump());
    for a in &g.vertices {
        for b in &g.vertices {
            assert_eq!(model_iso(&a.model, &b.model).verdict, Tri::from_bool(a.id == b.id));
        }
    }
    for z in 0..4 {
        let e = by_label(&g, &format!("S[q{z}]"));
        assert!(g.is_reference(e));
        assert_eq!(classify_edge(&g, e, &[]), Orientation::Positive);
        assert_eq!(g.edges[g.edges[e].partner].orientation, Orientation::Negative);
    }
    assert!(g.edges.iter().all(|e| e.orientation != Orientation::Unknown));
}

#[test]
fn index_six_has_no_links() {
    let t = GaloisTower::standard_z6();
    let s = make_surface("V", &t, t.parse_element("(y+x1+x2+x3)/(x1+x2+x3-y)").unwrap(), Some(t.parse_element("x1/x2").unwrap()), vec![]).unwrap();
    let p = example_point_z6(&s);
    let g = explore_graph(&s, &p, 2);
    assert_eq!(g.vertices.len(), 1);
    assert!(g.edges.is_empty());
}

fn example_point_z6(s: &SurfaceSpec) -> Vec<ClosedPointSpec> {
    let t = &s.tower;
    let ext = ExtensionDescriptor::subfield("K", t.subgroup(&[t.generator('g').unwrap()]));
    ClosedPointSpec::parse(s, "p", 2, &ext, &["x1/x2".to_string()]).into_iter().collect()
}

#[test]
fn index_three_self_link() {
    let t = GaloisTower::standard_z6();
    let s = make_surface("T", &t, t.parse_element("(y+x1+x2+x3)/(x1+x2+x3-y)").unwrap(), Some(t.one()), vec![]).unwrap();
    let p = construct_3point(&s).unwrap();
    let g = explore_graph(&s, &[p], 1);
    assert_eq!(g.vertices.len(), 1);
    assert_eq!(g.edges.len(), 2);
    assert!(g.edges.iter().all(|e| e.is_self_loop()));
    let w = word_to_generators(&g, &[0]).unwrap();
    assert_eq!(w.tokens, vec![Token::C(0)]);
    let img = psi_image(&g, &w).unwrap();
    assert_eq!(img.syllables.len(), 1);
    assert!(matches!(img.syllables[0], Syllable::Free { exp: 1, .. }));
    let back = psi_image(&g, &word_to_generators(&g, &[1]).unwrap()).unwrap();
    assert!(img.mul(&back).is_identity());
}

#[test]
fn almost_involution_from_a_witness() {
    let s = z6_index2();
    let mut g = explore_graph(&s, &construct_2point(&s).unwrap(), 1);
    let e = g.edges.iter().position(|e| e.is_self_loop()).unwrap();
    assert_eq!(classify_edge(&g, e, &[]), Orientation::Positive);
    let identity = AutWitness { label: "id".into(), aut: crate::surface::TwistedAutomorphism::identity(s.tower.nvars()) };
    assert_eq!(classify_edge(&g, e, &[identity]), Orientation::Positive);
    assert_eq!(g.apply_witness(e, &alpha_h(&s)), Orientation::AlmostInvolution);
    let p = g.edges[e].partner;
    assert_eq!(g.edges[e].class, g.edges[p].class);
    let img = psi_image(&g, &BirWord::new(vec![Token::C(e)])).unwrap();
    assert!(!img.is_identity());
    for (name, w) in relation_templates(&g) {
        assert!(psi_image(&g, &w).unwrap().is_identity(), "{}", name);
        assert!(check_relation(&g, &w).unwrap().holds, "{}", name);
    }
    assert!(relation_templates(&g).iter().any(|(n, _)| n == "4c"));
}

#[test]
fn generating_tours_of_the_example() {
    let g = example_graph();
    let (a, b, c) = (by_label(&g, "S[q0]"), by_label(&g, "S/q0[q1]"), by_label(&g, "S[q1]"));
    let cb = g.edges[c].partner;
    let w = word_to_generators(&g, &[a, b, cb]).unwrap();
    assert_eq!(w.tokens, vec![Token::A(b)]);
    assert_eq!(free_reduce(&g, &expand(&g, &w).unwrap()), vec![a, b, cb]);
    let open = word_to_generators(&g, &[a, b]);
    assert!(matches!(open, Err(Error::NotClosed(_))));
    let img = psi_image(&g, &w).unwrap();
    assert_eq!(img.to_string(), format!("{}", g.class_label(b)));
    let back = BirWord::new(vec![Token::A(g.edges[b].partner)]);
    assert!(psi_image(&g, &w.then(&back)).unwrap().is_identity());
}

#[test]
fn back_and_forth_tour_splits_into_three_loops() {
    let g = example_graph();
    let s1 = by_label(&g, "S[q0]");
    let x = by_label(&g, "S/q0[q1]");
    let xb = g.edges[x].partner;
    let home = g.edges[by_label(&g, "S[q1]")].partner;
    let tour = [s1, x, xb, x, home];
    let loops = tour_loops(&g, &tour).unwrap();
    assert_eq!(loops.len(), 3);
    let w = word_to_generators(&g, &tour).unwrap();
    assert_eq!(w.tokens, vec![Token::A(x), Token::A(xb), Token::A(x)]);
    let direct = word_to_generators(&g, &[s1, x, home]).unwrap();
    assert_eq!(psi_image(&g, &w).unwrap(), psi_image(&g, &direct).unwrap());
}

#[test]
fn word_through_two_targets_has_two_letters() {
    let g = example_graph();
    let mut tour = Vec::new();
    for (u, v) in [(0, 1), (2, 3)] {
        tour.push(by_label(&g, &format!("S[q{u}]")));
        tour.push(by_label(&g, &format!("S/q{u}[q{v}]")));
        tour.push(g.edges[by_label(&g, &format!("S[q{v}]"))].partner);
    }
    let w = word_to_generators(&g, &tour).unwrap();
    let img = psi_image(&g, &w).unwrap();
    assert!(img.is_reduced());
    assert!(!img.is_identity());
    assert!(img.free_letters().len() >= 2, "{}", img);
    assert_eq!(psi_of_path(&g, &expand(&g, &w).unwrap()).unwrap(), img);
}

#[test]
fn example_relations_hold() {
    let g = example_graph();
    let templates = relation_templates(&g);
    assert!(templates.iter().any(|(n, _)| n == "2"));
    assert!(templates.iter().any(|(n, _)| n == "3a"));
    for (name, w) in templates {
        assert!(psi_image(&g, &w).unwrap().is_identity(), "{} {}", name, w.render(&g));
        let r = check_relation(&g, &w).unwrap();
        assert!(r.holds, "{} {:?}", name, r.lines);
    }
}

#[test]
fn hexagon_of_self_links() {
    let s = z6_index2();
    let g = explore_graph(&s, &z6_points_over_k(&s), 1);
    assert_eq!(g.vertices.len(), 1);
    let loops: Vec<usize> = g.edges.iter().filter(|e| e.orientation == Orientation::Positive).map(|e| e.id).collect();
    assert_eq!(loops.len(), 2, "{}", g.dump());
    let (p, q) = (loops[0], loops[1]);
    let chi = [p, q, p, p, q, p];
    let r = check_hexagon(&g, &chi).unwrap();
    assert!(r.holds, "{:?}", r.lines);
    let w = hexagon_word(&g, &chi).unwrap();
    assert!(psi_image(&g, &w).unwrap().is_identity());
    let broken = [p, q, p, q, q, p];
    assert!(!check_hexagon(&g, &broken).unwrap().holds);
}

#[test]
fn psi_needs_a_supported_index() {
    let s = example();
    let g = explore_graph(&s, &[example_point(&s, 0)], 1);
    assert!(psi_image(&g, &BirWord::new(vec![Token::B(0)])).unwrap().is_identity());
    let t = GaloisTower::standard_z6();
    let six = make_surface("V", &t, t.parse_element("(y+x1+x2+x3)/(x1+x2+x3-y)").unwrap(), Some(t.parse_element("x1/x2").unwrap()), vec![]).unwrap();
    let g6 = explore_graph(&six, &[], 1);
    assert!(matches!(psi_image(&g6, &BirWord::default()), Err(Error::Unsupported(_))));
}

mod props {
    use super::*;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn graph() -> &'static BirGraph {
        static G: OnceLock<BirGraph> = OnceLock::new();
        G.get_or_init(example_graph)
    }

    /// A random walk from the base of the given length, closed by the
    /// partner of a reference link when it ends elsewhere.
    fn tour(choices: &[usize]) -> Vec<usize> {
        let g = graph();
        let mut at = g.base_vertex();
        let mut out = Vec::new();
        for &c in choices {
            let outs: Vec<usize> = g.out_edges(at).map(|e| e.id).collect();
            let e = outs[c % outs.len()];
            out.push(e);
            at = g.edges[e].to;
        }
        if at != g.base_vertex() {
            out.push(g.edges[g.reference[at].unwrap()].partner);
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn psi_is_multiplicative(a in prop::collection::vec(0usize..64, 0..8), b in prop::collection::vec(0usize..64, 0..8)) {
            let g = graph();
            let (ta, tb) = (tour(&a), tour(&b));
            let wa = word_to_generators(g, &ta).unwrap();
            let wb = word_to_generators(g, &tb).unwrap();
            let mut tab = ta.clone();
            tab.extend_from_slice(&tb);
            let wab = word_to_generators(g, &tab).unwrap();
            let pa = psi_image(g, &wa).unwrap();
            let pb = psi_image(g, &wb).unwrap();
            prop_assert_eq!(psi_image(g, &wab).unwrap(), pa.mul(&pb));
            prop_assert!(pa.is_reduced());
            prop_assert!(psi_image(g, &wa.then(&wa.inverse(g))).unwrap().is_identity());
        }

        #[test]
        fn psi_agrees_with_the_expanded_path(a in prop::collection::vec(0usize..64, 0..10)) {
            let g = graph();
            let t = tour(&a);
            let w = word_to_generators(g, &t).unwrap();
            let path = expand(g, &w).unwrap();
            prop_assert!(check_tour(g, &path).is_ok());
            prop_assert_eq!(psi_of_path(g, &path).unwrap(), psi_image(g, &w).unwrap());
            prop_assert_eq!(psi_of_path(g, &t).unwrap(), psi_image(g, &w).unwrap());
            prop_assert_eq!(free_reduce(g, &path), free_reduce(g, &t));
        }
    }
}
