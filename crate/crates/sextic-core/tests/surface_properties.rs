use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sextic_core::fieldtower::{GType, GaloisTower};
use sextic_core::surface::sampling::{torus_member, torus_non_member, valid_params, violating_params};
use sextic_core::surface::*;
use sextic_core::Tri;

const TYPES: [GType; 3] = [GType::Z6, GType::S3, GType::D6];

#[test]
fn sampled_parameters_give_cocycles() {
    for gt in TYPES {
        let tower = GaloisTower::standard(gt);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (xi, rho) = valid_params(gt, &mut rng);
            let s = make_surface("S", &tower, xi, rho, vec![]).expect("valid parameters");
            let rep = cocycle_assignments(&s).unwrap();
            assert_eq!(rep.relators_checked.len(), relator_words(gt).len());
            let (xi, rho) = violating_params(gt, &mut rng);
            assert!(make_surface("S", &tower, xi, rho, vec![]).is_err());
        }
    }
}

#[test]
fn single_moves_are_recognized() {
    for gt in TYPES {
        let tower = GaloisTower::standard(gt);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..6 {
            let (xi, rho) = valid_params(gt, &mut rng);
            let s = make_surface("S", &tower, xi, rho, vec![]).unwrap();
            let lambda = match gt {
                GType::Z6 => tower.parse_element("x1^2*y/x3").unwrap(),
                GType::S3 => tower.parse_element("t2*t3").unwrap(),
                GType::D6 => tower.parse_element("t3*y").unwrap(),
            };
            let mut moves = vec![Move::Invert, Move::NormTwist { lambda }];
            if gt == GType::Z6 {
                moves.push(Move::RotateRho);
            }
            for mv in moves {
                let (t, beta) = apply_move(&s, &mv).unwrap();
                let (xi2, rho2) = move_formula(&s, &mv).unwrap();
                assert_eq!((&t.xi, &t.rho), (&xi2, &rho2), "{:?} {:?}", gt, mv);
                assert!(are_cohomologous(&s, &t, &beta));
                match is_isomorphic(&s, &t) {
                    IsoVerdict::Yes { moves, .. } => assert!(moves.len() <= 2, "{:?}", moves),
                    v => panic!("{:?}: {:?}", mv, v),
                }
                assert_eq!(is_isomorphic(&t, &s).tri(), Tri::Yes);
                assert_eq!(index(&s), index(&t));
                assert_eq!(s.sb_data().am_k, t.sb_data().am_k);
                assert_eq!(s.sb_data().am_l, t.sb_data().am_l);
            }
        }
    }
}

#[test]
fn automorphism_sets_agree_with_the_commutation_oracle() {
    for gt in TYPES {
        let tower = GaloisTower::standard(gt);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (xi, rho) = valid_params(gt, &mut rng);
        let s = make_surface("S", &tower, xi, rho, vec![]).unwrap();
        for _ in 0..10 {
            let m = torus_member(&tower, &mut rng);
            assert!(is_automorphism(&s, &m));
            assert!(commutes_with_twisted_action(&s, &m));
            let n = torus_non_member(&tower, &mut rng);
            assert!(!is_automorphism(&s, &n));
            assert!(!commutes_with_twisted_action(&s, &n));
            let m2 = torus_member(&tower, &mut rng);
            assert!(is_automorphism(&s, &m.compose(&m2)));
        }
    }
}

#[test]
fn alpha_h_is_an_automorphism_exactly_when_xi_is_one() {
    let z6 = GaloisTower::standard_z6();
    let s = make_surface("S", &z6, z6.one(), Some(z6.parse_element("x1/x2").unwrap()), vec![]).unwrap();
    let ah = s.alpha('h').unwrap().clone();
    assert!(is_automorphism(&s, &ah));
    assert!(commutes_with_twisted_action(&s, &ah));
    assert_eq!(automorphism_description(&s).extension, vec!["alpha_h".to_string()]);
    let xi = z6.parse_element("y^2").unwrap();
    let rho = z6.parse_element("-y^-4/x1^0").unwrap();
    let rho = rho.scale(&sextic_core::fieldtower::Qw::from_int(-1));
    let t = make_surface("T", &z6, xi, Some(rho.clone()), vec![]);
    let t = t.or_else(|_| make_surface("T", &z6, z6.parse_element("-y^2").unwrap(), Some(rho.clone()), vec![]));
    if let Ok(t) = t {
        let ah = t.alpha('h').unwrap().clone();
        assert!(!is_automorphism(&t, &ah));
        assert!(!commutes_with_twisted_action(&t, &ah));
    }
}

#[test]
fn severi_brauer_fields() {
    let d6 = GaloisTower::standard_d6();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (xi, rho) = valid_params(GType::D6, &mut rng);
    let s = make_surface("S", &d6, xi, rho, vec![]).unwrap();
    let sb = severi_brauer_data(&s);
    assert_eq!(sb.k_fixing.len(), 6);
    assert_eq!(sb.l_fixing.as_ref().unwrap().len(), 2);
    assert_eq!(sb.l_cubic.len(), 3);
    assert!(sb.l_cubic.iter().all(|v| v.len() == 4));
    let s_elem = d6.parse_word("s").unwrap();
    assert!(sb.k_fixing.contains(&s_elem));
    assert!(!sb.k_fixing.contains(&d6.generator('f').unwrap()));
}
