//! Wall classes of type (Δ,c), their invariants, and complete enumeration along a segment.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{DivisorClass, LatticeError, SurfaceLattice};
use crate::rational::{gcd_vec, q, qr, Q};
use crate::shortvec::short_vectors;
use crate::Warning;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WallError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("d = 4c − Δ² − 3 = {d} is negative")]
    NegativeDimension { d: i64 },
    #[error("{zeta:?} is not a wall class of this type")]
    NotWallClass { zeta: Vec<i64> },
    #[error("zero class")]
    ZeroClass,
    #[error("no sign change: ζ·L₋ = {minus}, ζ·L₊ = {plus}")]
    NoSignChange { minus: i64, plus: i64 },
    #[error("endpoint lies on the wall of {zeta:?}")]
    EndpointOnWall { zeta: Vec<i64> },
    #[error("{which} is not in the forward positive cone")]
    NotInPositiveCone { which: &'static str },
    #[error("search did not terminate within the bisection budget")]
    SearchBudget,
}

/// Type (Δ,c) with p = Δ² − 4c and d = −p − 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallType {
    pub delta: DivisorClass,
    pub c: i64,
    pub p: i64,
    pub d: i64,
    pub w_parity: Vec<i64>,
}

impl WallType {
    pub fn new(lat: &SurfaceLattice, delta: DivisorClass, c: i64) -> Result<Self, WallError> {
        let dd = lat.square(&delta)?;
        let p = dd - 4 * c;
        let d = -p - 3;
        if d < 0 {
            return Err(WallError::NegativeDimension { d });
        }
        let w_parity = delta.coords.iter().map(|x| x.rem_euclid(2)).collect();
        Ok(WallType {
            delta,
            c,
            p,
            d,
            w_parity,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallClassData {
    pub zeta: DivisorClass,
    pub zeta_sq: i64,
    pub zeta_k: i64,
    pub ell: i64,
    pub h_plus: i64,
    pub h_minus: i64,
    pub n_plus: i64,
    pub n_minus: i64,
    #[serde(skip)]
    pub crossing_t: Option<Q>,
    /// h(ζ) + ℓ_ζ = 0.
    pub degenerate: bool,
}

impl WallClassData {
    /// h(−ζ) + ℓ_ζ = 0: the mirror degenerate case on the −ζ side.
    pub fn degenerate_minus(&self) -> bool {
        self.h_minus + self.ell == 0
    }

    /// Invariants of −ζ (same wall crossed in the opposite direction).
    pub fn negated(&self) -> WallClassData {
        WallClassData {
            zeta: self.zeta.neg(),
            zeta_sq: self.zeta_sq,
            zeta_k: -self.zeta_k,
            ell: self.ell,
            h_plus: self.h_minus,
            h_minus: self.h_plus,
            n_plus: self.n_minus,
            n_minus: self.n_plus,
            crossing_t: self.crossing_t.as_ref().map(|t| q(1) - t),
            degenerate: self.h_minus + self.ell == 0,
        }
    }
}

/// h(ζ) = ζ·K/2 − ζ²/2 − 1.
pub fn h_of(zeta_sq: i64, zeta_k: i64) -> i64 {
    debug_assert!((zeta_k - zeta_sq).rem_euclid(2) == 0);
    (zeta_k - zeta_sq) / 2 - 1
}

fn parity_matches(zeta: &DivisorClass, wt: &WallType) -> bool {
    zeta.coords
        .iter()
        .zip(&wt.delta.coords)
        .all(|(a, b)| (a - b).rem_euclid(2) == 0)
}

/// ζ ≡ Δ (mod 2) and Δ² − 4c ≤ ζ² < 0.
pub fn is_wall_class(lat: &SurfaceLattice, zeta: &DivisorClass, wt: &WallType) -> bool {
    let Ok(z2) = lat.square(zeta) else {
        return false;
    };
    parity_matches(zeta, wt) && wt.p <= z2 && z2 < 0
}

pub fn wall_class_data(
    lat: &SurfaceLattice,
    zeta: &DivisorClass,
    wt: &WallType,
) -> Result<WallClassData, WallError> {
    if !is_wall_class(lat, zeta, wt) {
        return Err(WallError::NotWallClass {
            zeta: zeta.coords.clone(),
        });
    }
    let zeta_sq = lat.square(zeta)?;
    let zeta_k = lat.pair(zeta, &lat.canonical_class())?;
    // ζ ≡ Δ (mod 2) forces ζ² ≡ Δ² ≡ p (mod 4)
    let ell = (zeta_sq - wt.p) / 4;
    let h_plus = h_of(zeta_sq, zeta_k);
    let h_minus = h_of(zeta_sq, -zeta_k);
    Ok(WallClassData {
        zeta: zeta.clone(),
        zeta_sq,
        zeta_k,
        ell,
        h_plus,
        h_minus,
        n_plus: h_plus + ell - 1,
        n_minus: h_minus + ell - 1,
        crossing_t: None,
        degenerate: h_plus + ell == 0,
    })
}

/// z2 is a positive rational multiple of z1.
pub fn same_wall(z1: &DivisorClass, z2: &DivisorClass) -> Result<bool, WallError> {
    if z1.is_zero() || z2.is_zero() {
        return Err(WallError::ZeroClass);
    }
    if z1.rank() != z2.rank() {
        return Ok(false);
    }
    Ok(primitive(&z1.coords) == primitive(&z2.coords))
}

pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_vec(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

/// The t* ∈ (0,1) with ζ·((1−t*)L₋ + t*L₊) = 0.
pub fn crossing_parameter(
    lat: &SurfaceLattice,
    zeta: &DivisorClass,
    l_minus: &DivisorClass,
    l_plus: &DivisorClass,
) -> Result<Q, WallError> {
    let a = lat.pair(zeta, l_minus)?;
    let b = lat.pair(zeta, l_plus)?;
    crossing_from_pairings(a, b)
}

pub fn crossing_from_pairings(minus: i64, plus: i64) -> Result<Q, WallError> {
    if !(minus < 0 && plus > 0) {
        return Err(WallError::NoSignChange { minus, plus });
    }
    Ok(qr(-minus, plus - minus))
}

/// One wall: all integral type-(Δ,c) classes on a common ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallGroup {
    pub primitive: Vec<i64>,
    pub t: Q,
    pub classes: Vec<WallClassData>,
    /// Another, non-proportional wall crosses the segment at the same t.
    pub coincident: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WallEnumeration {
    pub walls: Vec<WallGroup>,
    pub warnings: Vec<Warning>,
}

impl WallEnumeration {
    /// Flat, sorted list of all classes.
    pub fn class_set(&self) -> BTreeSet<Vec<i64>> {
        self.walls
            .iter()
            .flat_map(|w| w.classes.iter().map(|c| c.zeta.coords.clone()))
            .collect()
    }
}

fn check_endpoints(
    lat: &SurfaceLattice,
    l_minus: &DivisorClass,
    l_plus: &DivisorClass,
) -> Result<(), WallError> {
    if !lat.in_positive_cone(l_minus)? {
        return Err(WallError::NotInPositiveCone { which: "L_minus" });
    }
    if !lat.in_positive_cone(l_plus)? {
        return Err(WallError::NotInPositiveCone { which: "L_plus" });
    }
    Ok(())
}

/// Orients and classifies a candidate; `Ok(None)` when it is not a crossed wall.
fn classify_candidate(
    lat: &SurfaceLattice,
    v: &[i64],
    l_minus: &DivisorClass,
    l_plus: &DivisorClass,
    wt: &WallType,
    strict_endpoints: bool,
) -> Result<Option<Vec<i64>>, WallError> {
    let z = DivisorClass::new(v.to_vec());
    if z.is_zero() || !is_wall_class(lat, &z, wt) {
        return Ok(None);
    }
    let a = lat.pair_raw(v, &l_minus.coords);
    let b = lat.pair_raw(v, &l_plus.coords);
    if a == 0 || b == 0 {
        if strict_endpoints {
            return Err(WallError::EndpointOnWall { zeta: v.to_vec() });
        }
        return Ok(None);
    }
    if a < 0 && b > 0 {
        Ok(Some(v.to_vec()))
    } else if a > 0 && b < 0 {
        Ok(Some(v.iter().map(|x| -x).collect()))
    } else {
        Ok(None)
    }
}

fn group(
    lat: &SurfaceLattice,
    classes: BTreeSet<Vec<i64>>,
    l_minus: &DivisorClass,
    l_plus: &DivisorClass,
    wt: &WallType,
) -> Result<WallEnumeration, WallError> {
    let mut groups: Vec<WallGroup> = Vec::new();
    let mut warnings = Vec::new();
    let mut by_prim: std::collections::BTreeMap<Vec<i64>, Vec<Vec<i64>>> = Default::default();
    for c in classes {
        by_prim.entry(primitive(&c)).or_default().push(c);
    }
    let ample_ends = lat.is_ample_candidate(l_minus) && lat.is_ample_candidate(l_plus);
    for (prim, mut members) in by_prim {
        members.sort_by_key(|m| gcd_vec(m));
        let mut datas = Vec::new();
        for m in members {
            let z = DivisorClass::new(m);
            let mut data = wall_class_data(lat, &z, wt)?;
            data.crossing_t = Some(crossing_parameter(lat, &z, l_minus, l_plus)?);
            if ample_ends && (data.h_plus < 0 || data.h_minus < 0) {
                warnings.push(Warning::new(
                    "NEGATIVE_H",
                    format!(
                        "ζ={:?}: h(ζ)={}, h(−ζ)={} although both endpoints pass the ample test",
                        data.zeta.coords, data.h_plus, data.h_minus
                    ),
                ));
            }
            datas.push(data);
        }
        let t = datas[0].crossing_t.clone().expect("set above");
        groups.push(WallGroup {
            primitive: prim,
            t,
            classes: datas,
            coincident: false,
        });
    }
    groups.sort_by(|x, y| x.t.cmp(&y.t).then_with(|| x.primitive.cmp(&y.primitive)));
    for i in 0..groups.len() {
        let before = i > 0 && groups[i - 1].t == groups[i].t;
        let after = i + 1 < groups.len() && groups[i + 1].t == groups[i].t;
        groups[i].coincident = before || after;
    }
    for g in &groups {
        if g.coincident {
            warnings.push(Warning::new(
                "COINCIDENT_CROSSING",
                format!(
                    "wall {:?} shares t={} with another wall",
                    g.primitive,
                    crate::rational::render(&g.t)
                ),
            ));
        }
    }
    Ok(WallEnumeration {
        walls: groups,
        warnings,
    })
}

/// Exhaustive scan of the max-norm box of the given radius.
pub fn oracle_enumerate_box(
    lat: &SurfaceLattice,
    l_minus: &DivisorClass,
    l_plus: &DivisorClass,
    wt: &WallType,
    radius: i64,
) -> Result<WallEnumeration, WallError> {
    let n = lat.rank;
    let mut found = BTreeSet::new();
    let mut v = vec![-radius; n];
    if radius >= 0 {
        loop {
            if let Some(z) = classify_candidate(lat, &v, l_minus, l_plus, wt, false)? {
                found.insert(z);
            }
            let mut k = 0;
            loop {
                if k == n {
                    return group(lat, found, l_minus, l_plus, wt);
                }
                v[k] += 1;
                if v[k] > radius {
                    v[k] = -radius;
                    k += 1;
                } else {
                    break;
                }
            }
        }
    }
    group(lat, found, l_minus, l_plus, wt)
}

fn point_on_segment(l_minus: &DivisorClass, l_plus: &DivisorClass, t: &Q) -> Vec<Q> {
    l_minus
        .coords
        .iter()
        .zip(&l_plus.coords)
        .map(|(a, b)| (q(1) - t) * q(*a) + t * q(*b))
        .collect()
}

/// Upper bound for Q_m(ζ) over all ζ with ζ² ≥ p orthogonal to some point of [x(t0), x(t1)].
///
/// For x on the subsegment, Cauchy–Schwarz in the positive form Q_x gives
/// (ζ·m)² ≤ Q_x(ζ)·Q_x(m) ≤ (−p)·Q_x(m), hence
/// Q_m(ζ) = 2(ζ·m)²/m² − ζ² ≤ (−p)(1 + 2·max_x Q_x(m)/m²).
fn height_bound(
    lat: &SurfaceLattice,
    l_minus: &DivisorClass,
    l_plus: &DivisorClass,
    t0: &Q,
    t1: &Q,
    m: &[Q],
    neg_p: &Q,
) -> (Q, Q) {
    let x0 = point_on_segment(l_minus, l_plus, t0);
    let x1 = point_on_segment(l_minus, l_plus, t1);
    let m2 = lat.pair_q(m, m);
    // m·x(t) is affine in t and positive on the forward cone: max at an endpoint
    let mx = lat.pair_q(m, &x0).max(lat.pair_q(m, &x1));
    // x(t)² = A s² + B s + C on s ∈ [0,1] parametrizing the subsegment
    let dx: Vec<Q> = x1.iter().zip(&x0).map(|(a, b)| a - b).collect();
    let qa = lat.pair_q(&dx, &dx);
    let qb = lat.pair_q(&dx, &x0) * q(2);
    let qc = lat.pair_q(&x0, &x0);
    let mut min_sq = qc.clone().min(&qa + &qb + &qc);
    if qa.is_positive() {
        let s = -&qb / (q(2) * &qa);
        if s.is_positive() && s < q(1) {
            let v = &qa * &s * &s + &qb * &s + &qc;
            min_sq = min_sq.min(v);
        }
    }
    let u = q(2) * &mx * &mx / &min_sq - &m2;
    let ratio = q(2) * &u / &m2;
    let bound = neg_p * &(q(1) + &ratio);
    (bound, ratio)
}

/// Complete enumeration by adaptive bisection and exact short-vector search.
pub fn enumerate_walls(
    lat: &SurfaceLattice,
    l_minus: &DivisorClass,
    l_plus: &DivisorClass,
    wt: &WallType,
) -> Result<WallEnumeration, WallError> {
    lat.check(l_minus)?;
    lat.check(l_plus)?;
    lat.check(&wt.delta)?;
    check_endpoints(lat, l_minus, l_plus)?;
    let neg_p = q(-wt.p);
    let mut found = BTreeSet::new();
    let mut stack: Vec<(Q, Q, u32)> = vec![(q(0), q(1), 0)];
    let mut budget = 1u32 << 16;
    while let Some((t0, t1, depth)) = stack.pop() {
        budget = budget.checked_sub(1).ok_or(WallError::SearchBudget)?;
        let tm = (&t0 + &t1) / q(2);
        let m = point_on_segment(l_minus, l_plus, &tm);
        let (bound, ratio) = height_bound(lat, l_minus, l_plus, &t0, &t1, &m, &neg_p);
        // ratio → 2 as the subsegment shrinks; past slack 8 a search beats further splitting
        if ratio - q(2) >= q(8) && depth < 48 {
            stack.push((tm.clone(), t1, depth + 1));
            stack.push((t0, tm, depth + 1));
            continue;
        }
        let gm = height_form(lat, &m);
        let vs = short_vectors(&gm, &bound).ok_or(WallError::SearchBudget)?;
        for v in vs {
            if let Some(z) = classify_candidate(lat, &v, l_minus, l_plus, wt, true)? {
                found.insert(z);
            }
        }
    }
    group(lat, found, l_minus, l_plus, wt)
}

/// Gram matrix of Q_m(v) = 2(v·m)²/m² − v², positive definite for m² > 0.
fn height_form(lat: &SurfaceLattice, m: &[Q]) -> Vec<Vec<Q>> {
    let n = lat.rank;
    let gm: Vec<Q> = (0..n)
        .map(|i| {
            let mut s = Q::zero();
            for (j, mj) in m.iter().enumerate() {
                s += q(lat.gram[i][j]) * mj;
            }
            s
        })
        .collect();
    let m2 = lat.pair_q(m, m);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| q(2) * &gm[i] * &gm[j] / &m2 - q(lat.gram[i][j]))
                .collect()
        })
        .collect()
}
