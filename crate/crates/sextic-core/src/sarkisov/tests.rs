use super::*;
use crate::fieldtower::{ExtensionDescriptor, GaloisTower};
use crate::points::construct_2point;
use crate::surface::make_surface;

fn example() -> SurfaceSpec {
    let t = GaloisTower::standard_s3();
    make_surface("S", &t, t.var("s").unwrap(), None, vec![]).unwrap()
}

fn example_point(s: &SurfaceSpec, z: i64) -> ClosedPointSpec {
    let rad = s.tower.parse_element(&format!("s*(t1+{z})*(t2+{z})*(t3+{z})")).unwrap();
    let ext = ExtensionDescriptor::kummer_cubic(&format!("E_{z}"), rad);
    ClosedPointSpec::parse(s, &format!("q{z}"), 3, &ext, &[format!("(t3+{z})/r")]).unwrap()
}

fn z6_index2() -> SurfaceSpec {
    let t = GaloisTower::standard_z6();
    make_surface("S2", &t, t.one(), Some(t.parse_element("x1/x2").unwrap()), vec![]).unwrap()
}

#[test]
fn example_links_have_the_predicted_data() {
    let s = example();
    let recs: Vec<LinkRecord> = (0..4).map(|z| link(&s, &example_point(&s, z)).unwrap()).collect();
    let t = &s.tower;
    for (z, rec) in recs.iter().enumerate() {
        assert_eq!(rec.target.gtype, GType::Z6);
        assert_eq!(fields_equal(t, &rec.target.k, &rec.source_model.k), Tri::Yes);
        let e = FieldDesc::of_extension(t, &rec.group);
        assert_eq!(fields_equal(t, rec.target.l.as_ref().unwrap(), &e), Tri::Yes);
        assert_eq!(rec.kernel.len(), 3);
        let g = t.subgroup(&[t.generator('g').unwrap()]);
        assert!(rec.kernel.iter().all(|x| g.contains(&x.f)));
        assert_eq!(rec.target.index(), SurfaceIndex::Known(3));
        assert!(!rec.reconstructed);
        assert_eq!(inverse_round_trip(rec), Tri::Yes);
        assert_eq!(paired_key(&rec.inverse_key), rec.key);
        assert!(rec.checks.iter().all(|c| c.holds == Tri::Yes), "{} {:?}", z, rec.checks);
        assert!(rec.report().contains("K' = k") || rec.report().contains("K' = F^<g>"));
    }
    for i in 0..4 {
        for j in 0..4 {
            let v = model_iso(&recs[i].target, &recs[j].target).verdict;
            assert_eq!(v, Tri::from_bool(i == j), "{} {}", i, j);
        }
    }
}

#[test]
fn example_targets_are_birational_through_the_source() {
    let s = example();
    let recs: Vec<LinkRecord> = (0..2).map(|z| link(&s, &example_point(&s, z)).unwrap()).collect();
    match are_birational(&recs[0].target, &recs[1].target, &recs, &[]) {
        BirVerdict::Yes { chain, .. } => {
            assert_eq!(chain.len(), 2);
            assert!(chain[0].inverse && !chain[1].inverse);
        }
        v => panic!("{:?}", v.tri()),
    }
    let src = ModelData::from_surface(&s);
    assert!(matches!(are_birational(&src, &src, &[], &[]), BirVerdict::Yes { ref chain, .. } if chain.is_empty()));
}

#[test]
fn example_against_an_inequivalent_class() {
    let s = example();
    let t = &s.tower;
    let other = make_surface("S'", t, t.parse_element("s*(t1+t2+t3)").unwrap(), None, vec![]).unwrap();
    let v = are_birational(&ModelData::from_surface(&s), &ModelData::from_surface(&other), &[], &[]);
    match v {
        BirVerdict::No(reason) => assert!(reason.contains("Brauer classes"), "{}", reason),
        v => panic!("{:?}", v.tri()),
    }
}

#[test]
fn z6_self_link_at_a_point_over_k() {
    let s = z6_index2();
    let pts = construct_2point(&s).unwrap();
    let rec = link(&s, &pts[0]).unwrap();
    assert_eq!(rec.kernel.len(), 1);
    assert_eq!(rec.target.gtype, GType::Z6);
    assert_eq!(fields_equal(&s.tower, &rec.target.f, &FieldDesc::whole(&s.tower)), Tri::Yes);
    assert!(rec.reconstructed);
    assert_eq!(inverse_round_trip(&rec), Tri::Yes);
    assert_eq!(rec.target.index(), SurfaceIndex::Known(2));
}

#[test]
fn preconditions_are_enforced() {
    let s = example();
    let z6 = z6_index2();
    let p = construct_2point(&z6).unwrap().remove(0);
    assert!(matches!(link(&s, &p), Err(_)));
    let t = &s.tower;
    let ext = ExtensionDescriptor::subfield("F", vec![t.identity()]);
    let special = ClosedPointSpec::parse(&s, "q", 3, &ext, &["t3".to_string()]).unwrap();
    assert_eq!(link(&s, &special).unwrap_err(), Error::NotInGeneralPosition);
    let d6 = GaloisTower::standard_d6();
    let idx3 = make_surface("T", &d6, d6.parse_element("(y+t1+t2+t3)/(t1+t2+t3-y)").unwrap(), Some(d6.one()), vec![]).unwrap();
    let d6_idx2 = make_surface("U", &d6, d6.one(), Some(d6.parse_element("t1*t2/t3^2").unwrap()), vec![]).unwrap();
    let q = construct_2point(&d6_idx2).unwrap().remove(0);
    assert!(matches!(link(&idx3, &q), Err(_)));
}

#[test]
fn d6_two_point_over_fgf_changes_the_embedding() {
    let d6 = GaloisTower::standard_d6();
    let s = make_surface("U", &d6, d6.one(), Some(d6.parse_element("t1*t2/t3^2").unwrap()), vec![]).unwrap();
    let pts = construct_2point(&s).unwrap();
    let fgf = link(&s, &pts[0]).unwrap();
    assert_eq!(fields_equal(&d6, &fgf.target.k, &fgf.source_model.k), Tri::No);
    assert!(!fgf.reconstructed);
    let k = link(&s, &pts[1]).unwrap();
    assert!(k.reconstructed);
    assert!(matches!(is_birationally_rigid(&s, &[], false), Rigidity::NotRigid(_)));
}

#[test]
fn rigidity_verdicts() {
    let s = example();
    let q0 = example_point(&s, 0);
    assert!(matches!(is_birationally_rigid(&s, &[q0], false), Rigidity::NotRigid(_)));
    assert!(matches!(is_birationally_rigid(&s, &[], false), Rigidity::Conditional(_)));
    assert!(matches!(is_birationally_rigid(&s, &[], true), Rigidity::Rigid));
    let z6 = GaloisTower::standard_z6();
    let six = make_surface("V", &z6, z6.parse_element("(y+x1+x2+x3)/(x1+x2+x3-y)").unwrap(), Some(z6.parse_element("x1/x2").unwrap()), vec![]);
    if let Ok(six) = six {
        if index(&six) == SurfaceIndex::Known(6) {
            assert!(matches!(is_birationally_rigid(&six, &[], false), Rigidity::SuperRigid));
        }
    }
}

#[test]
fn probe_finds_no_violation() {
    let s = example();
    let pts: Vec<ClosedPointSpec> = (0..3).map(|z| example_point(&s, z)).collect();
    let recs: Vec<LinkRecord> = pts.iter().map(|p| link(&s, p).unwrap()).collect();
    let rep = fields_d_probe(&s, &recs, &pts);
    assert!(rep.violations.is_empty(), "{:?}", rep.violations);
    assert_eq!(rep.entries.iter().filter(|e| e.attestation == "transported point").count(), 6);
    assert!(fields_d_probe(&s, &[], &pts).entries.is_empty());
    let z6 = z6_index2();
    let p = construct_2point(&z6).unwrap();
    let rec = link(&z6, &p[0]).unwrap();
    assert!(fields_d_probe(&z6, &[rec], &p).violations.is_empty());
}
