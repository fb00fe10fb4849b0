//! Acceptance criteria: one PASS/FAIL line per criterion; the process fails
//! when any criterion fails.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sextic_cli::{run_file, Options};
use sextic_core::birgroup::{
    check_hexagon, check_relation, explore_graph, hexagon_word, psi_image, relation_templates, word_to_generators, AutWitness,
    BirGraph, Syllable,
};
use sextic_core::curveconfig::{
    all_patterns, d6_closure, image_type, induced_action_of_group, link_group, predicted_kernel, standard_image, CurveConfig,
    InducedAction, LinkElement, D6,
};
use sextic_core::fieldtower::{ExtensionDescriptor, GType, GaloisTower, Provenance};
use sextic_core::points::{construct_2point, construct_3point, general_position, validate_point, ClosedPointSpec};
use sextic_core::sarkisov::{is_birationally_rigid, link, model_iso, Orientation, Rigidity};
use sextic_core::surface::sampling::{torus_member, torus_non_member, valid_params, violating_params};
use sextic_core::surface::{
    apply_move, cocycle_assignments, in_torus_set, index, is_automorphism, is_isomorphic, make_surface, relator_words, IsoVerdict,
    Move, SurfaceIndex, SurfaceSpec,
};
use sextic_core::Tri;
use std::path::PathBuf;
use std::time::{Duration, Instant};

const TYPES: [GType; 3] = [GType::Z6, GType::S3, GType::D6];

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {:?}, limit {:?}", t, limit))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    for gt in TYPES {
        let tower = GaloisTower::standard(gt);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for i in 0..100 {
            let (xi, rho) = valid_params(gt, &mut rng);
            let s = make_surface("S", &tower, xi, rho, vec![]).map_err(|e| format!("{} sample {}: {}", gt, i, e))?;
            let rep = cocycle_assignments(&s).map_err(|e| format!("{} sample {}: {}", gt, i, e))?;
            ensure(rep.relators_checked.len() == relator_words(gt).len(), || format!("{} sample {}: relations skipped", gt, i))?;
        }
        for i in 0..100 {
            let (xi, rho) = violating_params(gt, &mut rng);
            ensure(make_surface("S", &tower, xi, rho, vec![]).is_err(), || format!("{} violating set {} accepted", gt, i))?;
        }
    }
    within(start, Duration::from_secs(30))
}

fn criterion_2() -> Check {
    for gt in TYPES {
        let tower = GaloisTower::standard(gt);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let lambda = match gt {
            GType::Z6 => tower.parse_element("x1^2*y/x3").unwrap(),
            GType::S3 => tower.parse_element("t2*t3").unwrap(),
            GType::D6 => tower.parse_element("t3*y").unwrap(),
        };
        for i in 0..10 {
            let (xi, rho) = valid_params(gt, &mut rng);
            let s = make_surface("S", &tower, xi, rho, vec![]).unwrap();
            let mut moves = vec![Move::Invert, Move::NormTwist { lambda: lambda.clone() }];
            if gt == GType::Z6 {
                moves.push(Move::RotateRho);
            }
            for mv in moves {
                let what = || format!("{} sample {} move {}", gt, i, mv.render(&tower));
                let (t, _) = apply_move(&s, &mv).map_err(|e| format!("{}: {}", what(), e))?;
                match is_isomorphic(&s, &t) {
                    IsoVerdict::Yes { moves, .. } => ensure(moves.len() <= 1, || format!("{}: witness {:?}", what(), moves))?,
                    v => return Err(format!("{}: verdict {:?}", what(), v.tri())),
                }
                ensure(index(&s) == index(&t), || format!("{}: index changed", what()))?;
                ensure(s.sb_data().am_k == t.sb_data().am_k && s.sb_data().am_l == t.sb_data().am_l, || {
                    format!("{}: Amitsur flags changed {:?} {:?} -> {:?} {:?} (xi {} rho {:?})", what(), s.sb_data().am_k, s.sb_data().am_l, t.sb_data().am_k, t.sb_data().am_l, tower.render(&s.xi), s.rho.as_ref().map(|r| tower.render(r)))
                })?;
            }
        }
    }
    Ok(())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    for (n, count, degree) in [(3, 6, 2), (5, 16, 5), (6, 27, 10)] {
        let c = CurveConfig::enumerate(n).map_err(|e| e.to_string())?;
        ensure(c.len() == count, || format!("n = {}: {} classes", n, c.len()))?;
        for i in 0..c.len() {
            ensure(c.neighbors(i).len() == degree, || format!("n = {}: {} has {} neighbours", n, c.label(i), c.neighbors(i).len()))?;
        }
    }
    let c6 = CurveConfig::enumerate(6).unwrap();
    let new: Vec<usize> = ["C4", "L45", "C5", "L56", "C6", "L46"].iter().map(|l| c6.index_of(l).unwrap()).collect();
    ensure(is_hexagon(&c6, &new), || "the curves C4 L45 C5 L56 C6 L46 do not form a hexagon".into())?;
    for c in ["C1", "C2", "C3"] {
        let j = c6.index_of(c).unwrap();
        ensure(new.iter().all(|&i| c6.intersect(i, j) == 0), || format!("{} meets the new hexagon", c))?;
    }
    ensure(is_hexagon(&c6, &c6.hexagon().unwrap()), || "the original hexagon is not a cycle".into())?;
    let c5 = CurveConfig::enumerate(5).unwrap();
    let new5: Vec<usize> = ["L35", "L14", "L25", "L34", "L15", "L24"].iter().map(|l| c5.index_of(l).unwrap()).collect();
    ensure(is_hexagon(&c5, &new5), || "the lines L35 L14 L25 L34 L15 L24 do not form a hexagon".into())?;
    for c in ["C", "L45"] {
        let j = c5.index_of(c).unwrap();
        ensure(new5.iter().all(|&i| c5.intersect(i, j) == 0), || format!("{} meets the new hexagon", c))?;
    }
    within(start, Duration::from_secs(5))
}

/// Whether the curves, taken in some order, form a cycle in the intersection graph.
fn is_hexagon(c: &CurveConfig, ids: &[usize]) -> bool {
    let meets = |a: usize| ids.iter().filter(|&&b| b != a && c.intersect(a, b) != 0).count();
    if ids.iter().any(|&a| meets(a) != 2) {
        return false;
    }
    let mut order = vec![ids[0]];
    while order.len() < ids.len() {
        let last = *order.last().unwrap();
        match ids.iter().find(|&&b| !order.contains(&b) && c.intersect(last, b) != 0) {
            Some(&b) => order.push(b),
            None => return false,
        }
    }
    c.is_cycle(&order)
}

fn kernel_f_parts(group: &[LinkElement], ind: &InducedAction) -> Option<Vec<D6>> {
    let mut v = Vec::new();
    for &k in &ind.kernel {
        if group[k].e.iter().enumerate().any(|(i, &j)| i != j) {
            return None;
        }
        v.push(group[k].f);
    }
    v.sort();
    Some(v)
}

fn criterion_4() -> Check {
    let mut cells = 0;
    let mut outside = Vec::new();
    for gtype in TYPES {
        for d in [2, 3] {
            for (desc, pat) in all_patterns(gtype, d) {
                let what = format!("{} d = {} {}", gtype, d, desc);
                let group = link_group(&standard_image(gtype), d, &pat).map_err(|e| format!("{}: {}", what, e))?;
                let ind = induced_action_of_group(d, &group).map_err(|e| format!("{}: {}", what, e))?;
                let Some((kernel, img)) = predicted_kernel(gtype, d, &pat) else {
                    outside.push(what);
                    continue;
                };
                ensure(kernel_f_parts(&group, &ind) == Some(kernel), || format!("{}: kernel differs", what))?;
                let gens: Vec<D6> = ind.sigma_prime.iter().map(|x| x.1).collect();
                ensure(image_type(&d6_closure(&gens)) == img, || format!("{}: new Galois group differs", what))?;
                cells += 1;
            }
        }
    }
    ensure(cells >= 16, || format!("only {} cases", cells))?;
    println!("  {} cases agree; outside the case analysis: {}", cells, outside.join("; "));
    Ok(())
}

fn example() -> SurfaceSpec {
    let t = GaloisTower::standard_s3();
    make_surface("S", &t, t.var("s").unwrap(), None, vec![]).unwrap()
}

fn example_point(s: &SurfaceSpec, z: i64) -> ClosedPointSpec {
    let rad = s.tower.parse_element(&format!("s*(t1+{z})*(t2+{z})*(t3+{z})")).unwrap();
    let ext = ExtensionDescriptor::kummer_cubic(&format!("E_{z}"), rad);
    ClosedPointSpec::parse(s, &format!("q{z}"), 3, &ext, &[format!("(t3+{z})/r")]).unwrap()
}

fn by_label(g: &BirGraph, label: &str) -> Result<usize, String> {
    g.edges.iter().position(|e| e.label == label).ok_or_else(|| format!("no edge {}", label))
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/example-main.json");
    let out = run_file(&path, &Options { depth: 1, ..Options::default() });
    ensure(out.code == 0, || format!("example-main exits with {}", out.code))?;
    ensure(out.report.contains("depth 1: 5 vertices"), || "scenario graph size".into())?;
    let s = example();
    let fact = s.sb_data().sb_status.fact().cloned().ok_or("xi = s is undecided")?;
    ensure(
        fact.verdict == sextic_core::fieldtower::Verdict::NotNorm && matches!(fact.provenance, Provenance::Valuation { .. }),
        || "xi = s is not proven NotNorm by a degree argument".into(),
    )?;
    ensure(index(&s) == SurfaceIndex::Known(3), || format!("index {}", index(&s)))?;
    let pts: Vec<ClosedPointSpec> = (0..4).map(|z| example_point(&s, z)).collect();
    for p in &pts {
        ensure(validate_point(&s, p) == Ok(true) && general_position(&s, p), || format!("{} invalid", p.name))?;
    }
    let recs = pts.iter().map(|p| link(&s, p).map_err(|e| e.to_string())).collect::<Result<Vec<_>, _>>()?;
    for i in 0..4 {
        for j in 0..4 {
            let v = model_iso(&recs[i].target, &recs[j].target).verdict;
            ensure(v == Tri::from_bool(i == j), || format!("targets {} and {}: {}", i, j, v))?;
        }
    }
    let g = explore_graph(&s, &pts, 1);
    ensure(g.vertices.len() >= 5, || format!("{} vertices", g.vertices.len()))?;
    let mut tour = Vec::new();
    for (u, v) in [(0, 1), (2, 3)] {
        tour.push(by_label(&g, &format!("S[q{u}]"))?);
        tour.push(by_label(&g, &format!("S/q{u}[q{v}]"))?);
        tour.push(g.edges[by_label(&g, &format!("S[q{v}]"))?].partner);
    }
    let w = word_to_generators(&g, &tour).map_err(|e| e.to_string())?;
    let img = psi_image(&g, &w).map_err(|e| e.to_string())?;
    ensure(img.is_reduced() && !img.is_identity() && img.free_letters().len() >= 2, || format!("psi image {}", img))?;
    within(start, Duration::from_secs(60))
}

fn z6_index2() -> SurfaceSpec {
    let t = GaloisTower::standard_z6();
    make_surface("S2", &t, t.one(), Some(t.parse_element("x1/x2").unwrap()), vec![]).unwrap()
}

fn templates_hold(g: &BirGraph) -> Check {
    for (name, w) in relation_templates(g) {
        let r = check_relation(g, &w).map_err(|e| format!("type {}: {}", name, e))?;
        ensure(r.holds, || format!("type {} {}: {:?}", name, w.render(g), r.lines))?;
        let img = psi_image(g, &w).map_err(|e| e.to_string())?;
        ensure(img.is_identity(), || format!("type {} {} maps to {}", name, w.render(g), img))?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let s = example();
    let pts: Vec<ClosedPointSpec> = (0..4).map(|z| example_point(&s, z)).collect();
    let g = explore_graph(&s, &pts, 1);
    ensure(relation_templates(&g).len() >= 20, || "too few relation instances".into())?;
    templates_hold(&g)?;
    let z = z6_index2();
    let fact = z.sb_data().conic_status.as_ref().and_then(|c| c.fact().cloned()).ok_or("rho undecided")?;
    ensure(matches!(fact.provenance, Provenance::Residue { .. }), || "rho is not NotNorm by the residue test".into())?;
    let t = &z.tower;
    let ext = ExtensionDescriptor::subfield("K", t.subgroup(&[t.generator('g').unwrap()]));
    let mut zp = construct_2point(&z).map_err(|e| e.to_string())?;
    zp.push(ClosedPointSpec::parse(&z, "p2b", 2, &ext, &["(x1+1)/(x2+1)".to_string()]).map_err(|e| e.to_string())?);
    let mut g2 = explore_graph(&z, &zp, 1);
    let p = by_label(&g2, &format!("S2[{}]", zp[0].name))?;
    let q = by_label(&g2, "S2[p2b]")?;
    let chi = [p, q, p, p, q, p];
    let r = check_hexagon(&g2, &chi).map_err(|e| e.to_string())?;
    ensure(r.holds, || format!("hexagon {:?}", r.lines))?;
    let img = psi_image(&g2, &hexagon_word(&g2, &chi).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(img.is_identity(), || format!("hexagon maps to {}", img))?;
    let o = g2.apply_witness(p, &AutWitness { label: "alpha_h".into(), aut: z.alpha('h').unwrap().clone() });
    ensure(o == Orientation::AlmostInvolution, || format!("self-link classified {}", o))?;
    let single = psi_image(&g2, &word_to_generators(&g2, &[p]).unwrap()).unwrap();
    ensure(matches!(single.syllables.as_slice(), [Syllable::Abelian { .. }]), || format!("self-link maps to {}", single))?;
    templates_hold(&g2)
}

fn criterion_7() -> Check {
    let z6 = GaloisTower::standard_z6();
    let e = |s: &str| z6.parse_element(s).unwrap();
    let xi = "(y+x1+x2+x3)/(x1+x2+x3-y)";
    let cases = [("two", "1", "x1/x2", 2), ("three", xi, "1", 3), ("six", xi, "x1/x2", 6)];
    for (name, x, r, n) in cases {
        let s = make_surface(name, &z6, e(x), Some(e(r)), vec![]).map_err(|e| e.to_string())?;
        ensure(index(&s) == SurfaceIndex::Known(n), || format!("{}: index {}", name, index(&s)))?;
        let two = construct_2point(&s);
        let three = construct_3point(&s);
        ensure(two.is_ok() == (n == 2), || format!("{}: 2-point construction {:?}", name, two.as_ref().err()))?;
        ensure(three.is_ok() == (n == 3), || format!("{}: 3-point construction {:?}", name, three.as_ref().err()))?;
        let mut pts = two.unwrap_or_default();
        pts.extend(three.ok());
        for p in &pts {
            ensure(validate_point(&s, p) == Ok(true), || format!("{}: constructed {} invalid", name, p.name))?;
            ensure(link(&s, p).is_ok(), || format!("{}: no link at {}", name, p.name))?;
        }
        if n == 6 {
            // a 2-point over K parses but is not a point of the surface
            let ext = ExtensionDescriptor::subfield("K", z6.subgroup(&[z6.generator('g').unwrap()]));
            if let Ok(p) = ClosedPointSpec::parse(&s, "p", 2, &ext, &["x1/x2".to_string()]) {
                ensure(link(&s, &p).is_err(), || "index 6 admits a link".into())?;
            }
            ensure(explore_graph(&s, &[], 2).edges.is_empty(), || "index 6 graph has edges".into())?;
            ensure(matches!(is_birationally_rigid(&s, &[], false), Rigidity::SuperRigid), || "index 6 not superrigid".into())?;
        }
    }
    Ok(())
}

fn criterion_8() -> Check {
    for gt in TYPES {
        let tower = GaloisTower::standard(gt);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let (xi, rho) = valid_params(gt, &mut rng);
        let s = make_surface("S", &tower, xi, rho, vec![]).unwrap();
        for i in 0..50 {
            let m = torus_member(&tower, &mut rng);
            ensure(in_torus_set(&s, &m) && is_automorphism(&s, &m), || format!("{} member {} rejected", gt, i))?;
            let n = torus_non_member(&tower, &mut rng);
            ensure(!in_torus_set(&s, &n) && !is_automorphism(&s, &n), || format!("{} non-member {} accepted", gt, i))?;
        }
    }
    for gt in [GType::Z6, GType::D6] {
        let tower = GaloisTower::standard(gt);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut seen = [false; 2];
        for _ in 0..50 {
            let (xi, rho) = valid_params(gt, &mut rng);
            let s = make_surface("S", &tower, xi, rho, vec![]).unwrap();
            let trivial = s.xi.is_one();
            seen[trivial as usize] = true;
            let ah = s.alpha('h').unwrap().clone();
            ensure(is_automorphism(&s, &ah) == trivial, || format!("{}: alpha_h with xi = {}", gt, tower.render(&s.xi)))?;
        }
        let rho = if gt == GType::Z6 { "x1/x2" } else { "t1*t2/t3^2" };
        let s = make_surface("S", &tower, tower.one(), Some(tower.parse_element(rho).unwrap()), vec![]).unwrap();
        ensure(is_automorphism(&s, s.alpha('h').unwrap()), || format!("{}: alpha_h rejected with xi = 1", gt))?;
        ensure(seen[0], || format!("{}: no sample with nontrivial xi", gt))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("cocycle soundness", criterion_1),
        ("equivalence-move invariance", criterion_2),
        ("lattice oracle", criterion_3),
        ("table reproduction", criterion_4),
        ("example reproduction", criterion_5),
        ("relation kill-test", criterion_6),
        ("index consistency", criterion_7),
        ("automorphism membership", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match f() {
            Ok(()) => println!("PASS {} {} ({:.1}s)", i + 1, name, start.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {}: {}", i + 1, name, e);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
