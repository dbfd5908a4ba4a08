#![allow(dead_code)]

use proptest::prelude::*;
use wallcross::lattice::{blown_up_plane, hirzebruch, DivisorClass, SurfaceLattice};
use wallcross::walls::WallType;

pub fn surfaces() -> Vec<SurfaceLattice> {
    vec![
        blown_up_plane(1).unwrap(),
        blown_up_plane(2).unwrap(),
        hirzebruch(0).unwrap(),
    ]
}

pub fn all_presets() -> Vec<SurfaceLattice> {
    let mut v: Vec<_> = (0..=5).map(|n| blown_up_plane(n).unwrap()).collect();
    v.extend((0..=4).map(|e| hirzebruch(e).unwrap()));
    v
}

pub fn vec_of(rank: usize, r: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-r..=r, rank)
}

/// A wall type built around a class ζ with ζ² < 0: Δ ≡ ζ (mod 2), p = ζ² − 4ℓ.
#[derive(Debug, Clone)]
pub struct WallCase {
    pub lat: SurfaceLattice,
    pub wt: WallType,
    pub zeta: DivisorClass,
    pub ell: i64,
}

pub fn wall_case(surfs: Vec<SurfaceLattice>) -> impl Strategy<Value = WallCase> {
    (0..surfs.len(), vec_of(3, 6), vec_of(3, 2), 0i64..=3).prop_filter_map(
        "ζ² < 0 and p ≤ −3",
        move |(i, z, v, ell)| {
            let lat = surfs[i].clone();
            let zeta = DivisorClass::new(z[..lat.rank].to_vec());
            let z2 = lat.square(&zeta).unwrap();
            let p = z2 - 4 * ell;
            if z2 >= 0 || p > -3 {
                return None;
            }
            let delta = zeta.add(&DivisorClass::new(v[..lat.rank].to_vec()).scale(2));
            let dd = lat.square(&delta).unwrap();
            let wt = WallType::new(&lat, delta, (dd - p) / 4).ok()?;
            Some(WallCase { lat, wt, zeta, ell })
        },
    )
}

/// Two ample endpoints and a wall type with −12 ≤ p ≤ −3.
#[derive(Debug, Clone)]
pub struct Segment {
    pub lat: SurfaceLattice,
    pub wt: WallType,
    pub l_minus: DivisorClass,
    pub l_plus: DivisorClass,
}

pub fn segment(surfs: Vec<SurfaceLattice>, r: i64) -> impl Strategy<Value = Segment> {
    (
        0..surfs.len(),
        vec_of(3, 2),
        -12i64..=-3,
        vec_of(3, r),
        vec_of(3, r),
    )
        .prop_filter_map(
            "ample endpoints and a valid wall type",
            move |(i, d, p, a, b)| {
                let lat = surfs[i].clone();
                let n = lat.rank;
                let delta = DivisorClass::new(d[..n].to_vec());
                let dd = lat.square(&delta).unwrap();
                if (dd - p).rem_euclid(4) != 0 {
                    return None;
                }
                let wt = WallType::new(&lat, delta, (dd - p) / 4).ok()?;
                let (l_minus, l_plus) = (
                    DivisorClass::new(a[..n].to_vec()),
                    DivisorClass::new(b[..n].to_vec()),
                );
                if l_minus == l_plus
                    || !lat.is_ample_candidate(&l_minus)
                    || !lat.is_ample_candidate(&l_plus)
                {
                    return None;
                }
                Some(Segment {
                    lat,
                    wt,
                    l_minus,
                    l_plus,
                })
            },
        )
}

/// 1000 cases, with room for the filters above to discard draws.
pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        max_global_rejects: 1_000_000,
        max_local_rejects: 1_000_000,
        ..Default::default()
    }
}
