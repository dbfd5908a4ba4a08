//! Semistability bookkeeping across a wall: the k(t) step function, critical
//! values, and the blowup/blowdown dimension ledger.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::rational::{floor_i64, q, Q};
use crate::walls::{WallClassData, WallGroup, WallType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlipError {
    #[error("extension lengths {n1}+{n2} do not add up to ℓ = {ell}")]
    LengthMismatch { n1: u32, n2: u32, ell: u32 },
    #[error("inconsistent wall data: {0}")]
    Inconsistent(String),
    #[error("multiple r = {0} must be positive")]
    NonPositiveMultiple(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Direction {
    /// 0 → O(F)⊗I_{Z₁} → V → O(Δ−F)⊗I_{Z₂} → 0 with ζ = 2F − Δ.
    PlusZeta,
    MinusZeta,
}

/// Lengths of the two zero-dimensional schemes in a nonsplit extension along ±ζ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtensionDatum {
    pub direction: Direction,
    pub n1: u32,
    pub n2: u32,
    /// 2F ≡ Δ: such sheaves are excluded from the model altogether.
    pub universally_semistable: bool,
}

impl ExtensionDatum {
    pub fn new(direction: Direction, n1: u32, n2: u32) -> Self {
        ExtensionDatum {
            direction,
            n1,
            n2,
            universally_semistable: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Semistability {
    Accepted,
    Rejected,
    UniversallySemistableExcluded,
}

/// (L₀,ζ,k)-semistability of an extension on a wall with ℓ_ζ = `ell`.
pub fn classify_k_semistable(
    datum: &ExtensionDatum,
    ell: u32,
    k: i64,
) -> Result<Semistability, FlipError> {
    if datum.n1 + datum.n2 != ell {
        return Err(FlipError::LengthMismatch {
            n1: datum.n1,
            n2: datum.n2,
            ell,
        });
    }
    if datum.universally_semistable {
        return Ok(Semistability::UniversallySemistableExcluded);
    }
    let ok = match datum.direction {
        Direction::PlusZeta => i64::from(datum.n2) <= k,
        Direction::MinusZeta => i64::from(datum.n1) > k,
    };
    Ok(if ok {
        Semistability::Accepted
    } else {
        Semistability::Rejected
    })
}

/// A class ζ_i = r_i·ζ on the wall, with its ℓ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiple {
    pub ell: i64,
    pub r: Q,
}

impl Multiple {
    pub fn new(ell: i64, r: Q) -> Self {
        Multiple { ell, r }
    }

    fn half_value(&self, t: &Q) -> Q {
        (q(self.ell) + &self.r * t) / q(2)
    }

    fn critical_at(&self, t: &Q) -> bool {
        let v = self.half_value(t);
        v.is_integer() && v >= q(-1) && v <= q(self.ell)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KValue {
    Regular(Vec<i64>),
    /// Indices I(t) of the classes hitting an integer in [−1, ℓ_i].
    Critical(Vec<usize>),
}

/// k_i(t) = ⌊(ℓ_i + r_i t)/2⌋, or the critical index set.
pub fn k_of_t(t: &Q, multiples: &[Multiple]) -> KValue {
    let crit: Vec<usize> = multiples
        .iter()
        .enumerate()
        .filter(|(_, m)| m.critical_at(t))
        .map(|(i, _)| i)
        .collect();
    if !crit.is_empty() {
        return KValue::Critical(crit);
    }
    KValue::Regular(
        multiples
            .iter()
            .map(|m| floor_i64(&m.half_value(t)).expect("k fits in i64"))
            .collect(),
    )
}

/// Unchecked floor values, used for one-sided limits.
pub fn k_floor(t: &Q, multiples: &[Multiple]) -> Vec<i64> {
    multiples
        .iter()
        .map(|m| floor_i64(&m.half_value(t)).expect("k fits in i64"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalValue {
    pub t: Q,
    pub indices: Vec<usize>,
}

/// The classes ζ_i = m_i·ζ₀ on one wall as multiples r_i = m_i/m_1 of the first.
pub fn wall_multiples(g: &WallGroup) -> Vec<Multiple> {
    let Some(i) = g.primitive.iter().position(|&x| x != 0) else {
        return Vec::new();
    };
    let m: Vec<i64> = g
        .classes
        .iter()
        .map(|c| c.zeta.coords[i] / g.primitive[i])
        .collect();
    g.classes
        .iter()
        .zip(&m)
        .map(|(c, mi)| Multiple::new(c.ell, crate::rational::qr(*mi, m[0])))
        .collect()
}

pub fn critical_values(multiples: &[Multiple]) -> Result<Vec<CriticalValue>, FlipError> {
    let mut map: BTreeMap<Q, Vec<usize>> = BTreeMap::new();
    for (i, m) in multiples.iter().enumerate() {
        if m.r <= q(0) {
            return Err(FlipError::NonPositiveMultiple(crate::rational::render(
                &m.r,
            )));
        }
        for k in -1..=m.ell {
            let t = (q(2 * k) - q(m.ell)) / &m.r;
            map.entry(t).or_default().push(i);
        }
    }
    Ok(map
        .into_iter()
        .map(|(t, mut indices)| {
            indices.sort_unstable();
            indices.dedup();
            CriticalValue { t, indices }
        })
        .collect())
}

/// Half the smallest gap between consecutive critical values (or 1/2 if fewer than two).
pub fn safe_epsilon(values: &[CriticalValue]) -> Q {
    values
        .windows(2)
        .map(|w| (&w[1].t - &w[0].t) / q(2))
        .min()
        .unwrap_or_else(|| crate::rational::qr(1, 2))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlipStage {
    pub k: i64,
    /// dim E_ζ^{ℓ−k,k}; −1 when empty.
    pub center_dim: i64,
    /// (N_ζ, N_{−ζ}).
    pub fiber_dims: (i64, i64),
    pub moduli_dim: i64,
    pub adds_component: bool,
    pub removes_component: bool,
    /// Dimension of the added/removed ℙ^{d} component, if any.
    pub component_dim: Option<i64>,
}

pub fn flip_schedule(wcd: &WallClassData, wt: &WallType) -> Result<Vec<FlipStage>, FlipError> {
    let ell = wcd.ell;
    if ell < 0 || 4 * ell != wcd.zeta_sq - wt.p {
        return Err(FlipError::Inconsistent(format!(
            "ℓ = {ell} but (ζ² − p)/4 = ({} − {})/4",
            wcd.zeta_sq, wt.p
        )));
    }
    if wcd.h_plus + wcd.h_minus != -wcd.zeta_sq - 2 {
        return Err(FlipError::Inconsistent(format!(
            "h(ζ) + h(−ζ) = {} ≠ −ζ² − 2 = {}",
            wcd.h_plus + wcd.h_minus,
            -wcd.zeta_sq - 2
        )));
    }
    if wcd.n_plus != wcd.h_plus + ell - 1 || wcd.n_minus != wcd.h_minus + ell - 1 {
        return Err(FlipError::Inconsistent("N_±ζ ≠ h(±ζ) + ℓ − 1".into()));
    }
    let d = wt.d;
    let adds = wcd.h_plus + ell == 0;
    let removes = wcd.h_minus + ell == 0;
    let center_dim = if adds { -1 } else { 3 * ell + wcd.h_plus - 1 };
    Ok((0..=ell)
        .rev()
        .map(|k| FlipStage {
            k,
            center_dim,
            fiber_dims: (wcd.n_plus, wcd.n_minus),
            moduli_dim: d,
            adds_component: adds,
            removes_component: removes,
            component_dim: (adds || removes).then_some(d),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{blown_up_plane, DivisorClass};
    use crate::rational::qr;
    use crate::walls::wall_class_data;

    fn single(ell: i64) -> Vec<Multiple> {
        vec![Multiple::new(ell, q(1))]
    }

    #[test]
    fn classify_examples() {
        let ell = 3;
        let k = 1;
        let acc = ExtensionDatum::new(Direction::PlusZeta, (ell - k) as u32, k as u32);
        assert_eq!(
            classify_k_semistable(&acc, 3, k as i64).unwrap(),
            Semistability::Accepted
        );
        let rej = ExtensionDatum::new(Direction::PlusZeta, 1, 2);
        assert_eq!(
            classify_k_semistable(&rej, 3, 1).unwrap(),
            Semistability::Rejected
        );
        let minus = ExtensionDatum::new(Direction::MinusZeta, 2, 1);
        assert_eq!(
            classify_k_semistable(&minus, 3, 1).unwrap(),
            Semistability::Accepted
        );
        let bad = ExtensionDatum::new(Direction::MinusZeta, 2, 2);
        assert!(classify_k_semistable(&bad, 3, 1).is_err());
        let mut us = acc;
        us.universally_semistable = true;
        assert_eq!(
            classify_k_semistable(&us, 3, 1).unwrap(),
            Semistability::UniversallySemistableExcluded
        );
    }

    #[test]
    fn k_of_t_examples() {
        assert_eq!(k_of_t(&qr(1, 2), &single(2)), KValue::Regular(vec![1]));
        assert_eq!(k_of_t(&q(0), &single(2)), KValue::Critical(vec![0]));
        match k_of_t(&q(1000), &single(2)) {
            KValue::Regular(k) => assert!(k[0] > 2),
            KValue::Critical(_) => panic!("t ≫ 0 is regular"),
        }
    }

    #[test]
    fn critical_value_sets() {
        let ts = |ell| -> Vec<Q> {
            critical_values(&single(ell))
                .unwrap()
                .into_iter()
                .map(|c| c.t)
                .collect()
        };
        assert_eq!(ts(2), vec![q(-4), q(-2), q(0), q(2)]);
        assert_eq!(ts(0), vec![q(-2), q(0)]);
        let two = vec![Multiple::new(2, q(1)), Multiple::new(1, q(2))];
        let cv = critical_values(&two).unwrap();
        let got: Vec<Q> = cv.iter().map(|c| c.t.clone()).collect();
        // ℓ=1, r=2: t ∈ {−3/2, −1/2, 1/2}
        assert_eq!(
            got,
            vec![q(-4), q(-2), qr(-3, 2), qr(-1, 2), q(0), qr(1, 2), q(2)]
        );
    }

    #[test]
    fn running_example_schedule() {
        let lat = blown_up_plane(1).unwrap();
        let wt = WallType::new(&lat, DivisorClass::new(vec![1, 0]), 2).unwrap();
        let w = wall_class_data(&lat, &DivisorClass::new(vec![1, -2]), &wt).unwrap();
        let s = flip_schedule(&w, &wt).unwrap();
        assert_eq!(s.iter().map(|x| x.k).collect::<Vec<_>>(), vec![1, 0]);
        for st in &s {
            assert_eq!(st.center_dim, 2);
            assert_eq!(st.fiber_dims, (0, 1));
            assert_eq!(st.center_dim + st.fiber_dims.1 + 1, wt.d);
        }
    }

    #[test]
    fn degenerate_schedule() {
        let lat = blown_up_plane(1).unwrap();
        let wt = WallType::new(&lat, DivisorClass::new(vec![1, 0]), 1).unwrap();
        let w = wall_class_data(&lat, &DivisorClass::new(vec![1, -2]), &wt).unwrap();
        let s = flip_schedule(&w, &wt).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].adds_component && !s[0].removes_component);
        assert_eq!(s[0].component_dim, Some(wt.d));
        let r = flip_schedule(&w.negated(), &wt).unwrap();
        assert!(r[0].removes_component);
        assert_eq!(r[0].center_dim, wt.d);
    }

    #[test]
    fn inconsistent_rejected() {
        let lat = blown_up_plane(1).unwrap();
        let wt = WallType::new(&lat, DivisorClass::new(vec![1, 0]), 2).unwrap();
        let mut w = wall_class_data(&lat, &DivisorClass::new(vec![1, -2]), &wt).unwrap();
        w.ell = 2;
        assert!(flip_schedule(&w, &wt).is_err());
    }
}
