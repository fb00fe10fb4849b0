use super::*;
use crate::fieldtower::GaloisTower;
use crate::surface::make_surface;

fn example() -> SurfaceSpec {
    let t = GaloisTower::standard_s3();
    make_surface("S", &t, t.var("s").unwrap(), None, vec![]).unwrap()
}

fn radicand(t: &GaloisTower, z: i64) -> RatFn {
    t.parse_element(&format!("s*(t1+{z})*(t2+{z})*(t3+{z})")).unwrap()
}

fn example_point(s: &SurfaceSpec, z: i64, scale: &str) -> Result<ClosedPointSpec> {
    let ext = ExtensionDescriptor::kummer_cubic("E_z", radicand(&s.tower, z));
    ClosedPointSpec::parse(s, "p", 3, &ext, &[format!("{scale}*(t3+{z})/r")])
}

#[test]
fn example_points_over_e_z() {
    let s = example();
    for z in 0..4 {
        let p = example_point(&s, z, "1").unwrap();
        assert_eq!(p.case, PointCase::ThreeOutside);
        let conds = point_conditions(&s, &p).unwrap();
        assert!(conds.iter().all(|c| c.holds), "{:?}", conds);
        assert!(conds.iter().any(|c| c.label == "Norm_g(λ1) = 1/ξ"));
        assert_eq!(p.components.len(), 3);
        assert!(general_position(&s, &p));
    }
    for z in 0..4 {
        for v in 0..4 {
            let same = cubic_kummer_fields_equal(&s.tower, &radicand(&s.tower, z), &radicand(&s.tower, v));
            assert_eq!(same, Tri::from_bool(z == v), "{} {}", z, v);
        }
    }
}

#[test]
fn wrong_norm_is_rejected() {
    let s = example();
    let p = example_point(&s, 1, "2").unwrap();
    assert!(!validate_point(&s, &p).unwrap());
}

#[test]
fn s3_construction_uses_t1() {
    let s = example();
    let p = construct_3point(&s).unwrap();
    assert_eq!(p.case, PointCase::ThreeOverF);
    assert_eq!(p.coords.as_ref().unwrap()[0].in_f().unwrap(), &s.tower.var("t1").unwrap());
    assert!(validate_point(&s, &p).unwrap());
    assert!(general_position(&s, &p));
}

#[test]
fn s3_point_with_gf_fixed_lambda_is_special() {
    let s = example();
    let ext = ExtensionDescriptor::subfield("F", vec![s.tower.identity()]);
    let p = ClosedPointSpec::parse(&s, "q", 3, &ext, &["t3".to_string()]).unwrap();
    assert!(validate_point(&s, &p).unwrap());
    assert!(!general_position(&s, &p));
}

#[test]
fn z6_two_point_over_k() {
    let t = GaloisTower::standard_z6();
    let s = make_surface("S", &t, t.one(), Some(t.parse_element("x1/x2").unwrap()), vec![]).unwrap();
    let pts = construct_2point(&s).unwrap();
    assert_eq!(pts.len(), 1);
    let p = &pts[0];
    assert_eq!(p.case, PointCase::TwoOverK);
    let one = p.radical().unwrap().one();
    assert_eq!(p.coords.as_ref().unwrap(), &[one.clone(), one]);
    assert!(validate_point(&s, p).unwrap());
    assert!(general_position(&s, p));
    let rad = p.radical().unwrap();
    let rho = s.rho.clone().unwrap();
    let g = t.generator('g').unwrap();
    let other = [rad.from_f(&rho), rad.from_f(&rho.mul(&t.apply(g, &rho)))];
    assert!(p.components.contains(&other));
}

#[test]
fn alpha_g_fixed_points() {
    let t = GaloisTower::standard_z6();
    let s = make_surface("S", &t, t.one(), Some(t.parse_element("x1/x2").unwrap()), vec![]).unwrap();
    let ext = ExtensionDescriptor::subfield("F", vec![t.identity()]);
    let cg = composite_group(&t, &ext).unwrap();
    let rad = cg.radical.clone().unwrap();
    let g = lift(t.generator('g').unwrap());
    let l = t.parse_element("x1/x2").unwrap();
    let fixed = [rad.from_f(&l), rad.from_f(&l.mul(&t.apply(g.f, &l)))];
    assert_eq!(twisted_apply(&s, &cg, &g, &fixed).unwrap(), fixed);
    let generic = [rad.from_f(&t.parse_element("x1").unwrap()), rad.from_f(&t.parse_element("y").unwrap())];
    assert_eq!(twisted_orbit(&s, &generic, &cg, &[g]).unwrap().len(), 3);
    let zero = [rad.from_f(&RatFn::zero(4)), rad.one()];
    assert!(twisted_apply(&s, &cg, &g, &zero).is_err());
}

#[test]
fn excluded_combinations() {
    let t = GaloisTower::standard_d6();
    let g = t.generator('g').unwrap();
    let h = t.generator('h').unwrap();
    let s = make_surface("S", &t, t.one(), Some(t.one()), vec![]).unwrap();
    let ext = ExtensionDescriptor::subfield("F^<g,h>", t.subgroup(&[g, h]));
    match ClosedPointSpec::parse(&s, "p", 2, &ext, &["1".to_string()]) {
        Err(Error::Unsupported(m)) => assert!(m.contains("F^<g,h>")),
        r => panic!("{:?}", r.map(|p| p.case)),
    }
    let e = example();
    let ext = ExtensionDescriptor::quadratic("E", e.tower.parse_element("s").unwrap());
    assert!(matches!(ClosedPointSpec::parse(&e, "p", 2, &ext, &["1".to_string()]), Err(Error::Unsupported(_))));
    assert!(matches!(construct_2point(&e), Err(Error::Unsupported(_))));
}

fn surface(gt: GType, xi: &str, rho: &str) -> SurfaceSpec {
    let t = GaloisTower::standard(gt);
    make_surface("S", &t, t.parse_element(xi).unwrap(), Some(t.parse_element(rho).unwrap()), vec![]).unwrap()
}

fn check_constructed(s: &SurfaceSpec, p: &ClosedPointSpec) {
    let conds = point_conditions(s, p).unwrap();
    assert!(conds.iter().all(|c| c.holds), "{:?}", conds);
    assert!(general_position(s, p));
    assert_eq!(p.components.len(), p.degree as usize);
}

#[test]
fn z6_three_points() {
    let s = surface(GType::Z6, "(y+x1+x2+x3)/(x1+x2+x3-y)", "1");
    assert_eq!(index(&s), SurfaceIndex::Known(3));
    let p = construct_3point(&s).unwrap();
    assert_eq!(p.case, PointCase::ThreeOverL);
    check_constructed(&s, &p);
    let cg = p.group.as_ref().unwrap();
    let h = lift(s.tower.generator('h').unwrap());
    let g = lift(s.tower.generator('g').unwrap());
    let c = p.coords.clone().unwrap();
    assert_eq!(twisted_orbit(&s, &c, cg, &[g]).unwrap().len(), 3);
    for comp in &p.components {
        assert_eq!(&twisted_apply(&s, cg, &h, comp).unwrap(), comp);
    }
    let (twisted, _) = apply_move(&s, &Move::NormTwist { lambda: s.tower.parse_element("x1").unwrap() }).unwrap();
    assert!(!twisted.rho.as_ref().unwrap().is_one());
    let q = construct_3point(&twisted).unwrap();
    check_constructed(&twisted, &q);
}

#[test]
fn d6_three_points() {
    let s = surface(GType::D6, "(y+t1+t2+t3)/(t1+t2+t3-y)", "1");
    let p = construct_3point(&s).unwrap();
    assert_eq!(p.case, PointCase::ThreeOverL);
    check_constructed(&s, &p);
}

#[test]
fn d6_two_points() {
    let s = surface(GType::D6, "1", "t1*t2/t3^2");
    assert_eq!(index(&s), SurfaceIndex::Known(2));
    let pts = construct_2point(&s).unwrap();
    let cases: Vec<PointCase> = pts.iter().map(|p| p.case).collect();
    assert_eq!(cases, vec![PointCase::TwoOverFgf, PointCase::TwoOverK]);
    for p in &pts {
        check_constructed(&s, p);
    }
    let t = &s.tower;
    let g = t.generator('g').unwrap();
    let want = t.apply(g, &s.rho.as_ref().unwrap().inv().unwrap());
    assert_eq!(pts[1].coords.as_ref().unwrap()[0].in_f().unwrap(), &want);
    let z6 = surface(GType::Z6, "(y+x1+x2+x3)/(x1+x2+x3-y)", "1");
    assert!(matches!(construct_2point(&z6), Err(Error::IndexMismatch(_))));
}
