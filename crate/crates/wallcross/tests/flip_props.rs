mod common;

use common::{surfaces, wall_case};
use proptest::prelude::*;
use wallcross::flips::{
    classify_k_semistable, critical_values, flip_schedule, k_floor, k_of_t, safe_epsilon,
    Direction, ExtensionDatum, KValue, Multiple, Semistability,
};
use wallcross::rational::{q, qr};
use wallcross::walls::wall_class_data;

fn multiples() -> impl Strategy<Value = Vec<Multiple>> {
    prop::collection::vec((0i64..=4, 1i64..=4, 1i64..=3), 1..=3).prop_map(|v| {
        v.into_iter()
            .map(|(ell, n, d)| Multiple::new(ell, qr(n, d)))
            .collect()
    })
}

proptest! {
    #![proptest_config(common::config(1000))]

    #[test]
    fn k_steps_by_one_at_critical_values(m in multiples()) {
        let cv = critical_values(&m).unwrap();
        let eps = safe_epsilon(&cv);
        prop_assert!(eps > q(0));
        for v in &cv {
            prop_assert_eq!(k_of_t(&v.t, &m), KValue::Critical(v.indices.clone()));
            // k ≤ −2 and k ≥ ℓ describe the same moduli space, so compare clamped values
            let below = k_floor(&(&v.t - &eps), &m);
            let above = k_floor(&(&v.t + &eps), &m);
            for i in 0..m.len() {
                let clamp = |k: i64| k.clamp(-2, m[i].ell);
                prop_assert_eq!(clamp(above[i]) - clamp(below[i]), i64::from(v.indices.contains(&i)));
            }
        }
        // between consecutive critical values k is constant and regular
        for w in cv.windows(2) {
            let mid = (&w[0].t + &w[1].t) / q(2);
            prop_assert!(matches!(k_of_t(&mid, &m), KValue::Regular(_)));
        }
    }

    #[test]
    fn schedule_dimensions(c in wall_case(surfaces())) {
        let w = wall_class_data(&c.lat, &c.zeta, &c.wt).unwrap();
        let stages = flip_schedule(&w, &c.wt).unwrap();
        prop_assert_eq!(stages.len() as i64, w.ell + 1);
        let formula = 3 * w.ell + w.h_plus - 1;
        prop_assert_eq!(formula + w.n_minus + 1, c.wt.d);
        for s in &stages {
            prop_assert!(s.adds_component || s.center_dim == formula);
        }
    }

    #[test]
    fn semistability_is_monotone_in_k(ell in 0u32..=5, n2 in 0u32..=5, k in -1i64..=5) {
        prop_assume!(n2 <= ell);
        let plus = ExtensionDatum::new(Direction::PlusZeta, ell - n2, n2);
        let minus = ExtensionDatum::new(Direction::MinusZeta, ell - n2, n2);
        let acc = |d: &ExtensionDatum, k| classify_k_semistable(d, ell, k).unwrap() == Semistability::Accepted;
        // +ζ extensions only get accepted as k grows, −ζ ones only get rejected
        if acc(&plus, k) { prop_assert!(acc(&plus, k + 1)); }
        if !acc(&minus, k) { prop_assert!(!acc(&minus, k + 1)); }
    }
}

#[test]
fn ell_two_critical_set() {
    let cv = critical_values(&[Multiple::new(2, q(1))]).unwrap();
    let ts: Vec<_> = cv.into_iter().map(|c| c.t).collect();
    assert_eq!(ts, vec![q(-4), q(-2), q(0), q(2)]);
}
