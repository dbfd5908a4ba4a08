mod common;

use common::{segment, surfaces, wall_case};
use proptest::prelude::*;
use wallcross::rational::q;
use wallcross::walls::{
    enumerate_walls, is_wall_class, oracle_enumerate_box, wall_class_data, WallError,
};

proptest! {
    #![proptest_config(common::config(1000))]

    #[test]
    fn h_identity_and_integral_ell(c in wall_case(surfaces())) {
        prop_assert!(is_wall_class(&c.lat, &c.zeta, &c.wt));
        let w = wall_class_data(&c.lat, &c.zeta, &c.wt).unwrap();
        prop_assert_eq!(w.h_plus + w.h_minus, -w.zeta_sq - 2);
        prop_assert_eq!(w.ell, c.ell);
        prop_assert_eq!(4 * w.ell, w.zeta_sq - c.wt.p);
        prop_assert_eq!(w.n_plus + w.n_minus + 2 * w.ell, -c.wt.p - 4);
        let neg = wall_class_data(&c.lat, &c.zeta.neg(), &c.wt).unwrap();
        prop_assert_eq!(neg, w.negated());
    }

    #[test]
    fn reversing_the_segment_negates_walls(s in segment(surfaces(), 8)) {
        let fwd = enumerate_walls(&s.lat, &s.l_minus, &s.l_plus, &s.wt);
        let bwd = enumerate_walls(&s.lat, &s.l_plus, &s.l_minus, &s.wt);
        match (fwd, bwd) {
            (Ok(f), Ok(b)) => {
                prop_assert_eq!(f.walls.len(), b.walls.len());
                for (x, y) in f.walls.iter().zip(b.walls.iter().rev()) {
                    prop_assert_eq!(&x.t + &y.t, q(1));
                    let xs: Vec<_> = x.classes.iter().map(|c| c.zeta.neg()).collect();
                    let ys: Vec<_> = y.classes.iter().map(|c| c.zeta.clone()).collect();
                    prop_assert_eq!(xs, ys);
                }
            }
            (Err(WallError::EndpointOnWall { .. }), Err(WallError::EndpointOnWall { .. })) => {}
            (f, b) => prop_assert!(false, "asymmetric outcome: {:?} vs {:?}", f.err(), b.err()),
        }
    }

    #[test]
    fn walls_separate_the_endpoints(s in segment(surfaces(), 8)) {
        let Ok(en) = enumerate_walls(&s.lat, &s.l_minus, &s.l_plus, &s.wt) else { return Ok(()) };
        for g in &en.walls {
            prop_assert!(g.t > q(0) && g.t < q(1));
            for c in &g.classes {
                prop_assert!(s.lat.pair(&c.zeta, &s.l_minus).unwrap() < 0);
                prop_assert!(s.lat.pair(&c.zeta, &s.l_plus).unwrap() > 0);
            }
        }
    }
}

proptest! {
    #![proptest_config(common::config(200))]

    #[test]
    fn enumeration_matches_box(s in segment(surfaces(), 5)) {
        let Ok(en) = enumerate_walls(&s.lat, &s.l_minus, &s.l_plus, &s.wt) else { return Ok(()) };
        let boxed = oracle_enumerate_box(&s.lat, &s.l_minus, &s.l_plus, &s.wt, 15).unwrap();
        prop_assert_eq!(en.class_set(), boxed.class_set());
    }
}
