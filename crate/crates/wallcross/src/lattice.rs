//! Integral model of H²(X;ℤ) for a rational surface.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{q, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("vector has length {got}, lattice rank is {rank}")]
    RankMismatch { rank: usize, got: usize },
    #[error("gram matrix must be square and symmetric")]
    NotSymmetric,
    #[error("intersection form has signature ({pos},{neg}) with {zero} null directions; expected (1,{expected_neg})")]
    BadSignature {
        pos: usize,
        neg: usize,
        zero: usize,
        expected_neg: usize,
    },
    #[error("canonical class is not characteristic: e{index}·e{index} ≢ e{index}·K (mod 2)")]
    NotCharacteristic { index: usize },
    #[error("reference ample class must have positive square")]
    BadReferenceAmple,
    #[error("invalid preset parameters: {0}")]
    InvalidPreset(String),
}

/// Whether −K_X is known to be effective for the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnticanonicalStatus {
    Guaranteed,
    UserMustAssert,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    pub coords: Vec<i64>,
}

impl DivisorClass {
    pub fn new(coords: Vec<i64>) -> Self {
        DivisorClass { coords }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass {
            coords: vec![0; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Self {
        DivisorClass::new(self.coords.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        DivisorClass::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        DivisorClass::new(self.coords.iter().map(|c| c * k).collect())
    }
}

impl From<Vec<i64>> for DivisorClass {
    fn from(v: Vec<i64>) -> Self {
        DivisorClass::new(v)
    }
}

/// JSON surface descriptor: a named preset or an explicit lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SurfaceSpec {
    Preset {
        preset: String,
        #[serde(default)]
        params: PresetParams,
    },
    Custom {
        gram: Vec<Vec<i64>>,
        #[serde(rename = "K")]
        canonical: Vec<i64>,
        ample: Vec<i64>,
        #[serde(default)]
        name: Option<String>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetParams {
    /// Hirzebruch index for `F`.
    #[serde(default)]
    pub e: Option<i64>,
    /// Number of blown-up points for `BlP2`.
    #[serde(default)]
    pub n: Option<usize>,
}

impl SurfaceSpec {
    pub fn preset(name: &str) -> Self {
        SurfaceSpec::Preset {
            preset: name.into(),
            params: PresetParams::default(),
        }
    }

    pub fn hirzebruch(e: i64) -> Self {
        SurfaceSpec::Preset {
            preset: "F".into(),
            params: PresetParams {
                e: Some(e),
                n: None,
            },
        }
    }

    pub fn blown_up_plane(n: usize) -> Self {
        SurfaceSpec::Preset {
            preset: "BlP2".into(),
            params: PresetParams {
                e: None,
                n: Some(n),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceLattice {
    pub name: String,
    pub rank: usize,
    pub gram: Vec<Vec<i64>>,
    pub canonical: Vec<i64>,
    pub reference_ample: Vec<i64>,
    /// χ(𝒪_X); always 1 for rational surfaces.
    pub euler_char_structure_sheaf: i64,
    pub anticanonical: AnticanonicalStatus,
    /// Curve classes an ample class must meet positively (presets only).
    pub extremal_curves: Vec<Vec<i64>>,
}

impl SurfaceLattice {
    /// Validates and builds a lattice from raw data.
    pub fn new(
        name: impl Into<String>,
        gram: Vec<Vec<i64>>,
        canonical: Vec<i64>,
        reference_ample: Vec<i64>,
    ) -> Result<Self, LatticeError> {
        let rank = gram.len();
        if rank == 0 || gram.iter().any(|row| row.len() != rank) {
            return Err(LatticeError::NotSymmetric);
        }
        for i in 0..rank {
            for j in 0..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        for v in [&canonical, &reference_ample] {
            if v.len() != rank {
                return Err(LatticeError::RankMismatch { rank, got: v.len() });
            }
        }
        let (pos, neg, zero) = signature(&gram);
        if pos != 1 || neg != rank - 1 || zero != 0 {
            return Err(LatticeError::BadSignature {
                pos,
                neg,
                zero,
                expected_neg: rank - 1,
            });
        }
        let lat = SurfaceLattice {
            name: name.into(),
            rank,
            gram,
            canonical,
            reference_ample,
            euler_char_structure_sheaf: 1,
            anticanonical: AnticanonicalStatus::UserMustAssert,
            extremal_curves: Vec::new(),
        };
        for i in 0..rank {
            let e = lat.basis(i);
            let k = lat.canonical_class();
            if (lat.pair_raw(&e.coords, &e.coords) - lat.pair_raw(&e.coords, &k.coords))
                .rem_euclid(2)
                != 0
            {
                return Err(LatticeError::NotCharacteristic { index: i });
            }
        }
        if lat.pair_raw(&lat.reference_ample, &lat.reference_ample) <= 0 {
            return Err(LatticeError::BadReferenceAmple);
        }
        Ok(lat)
    }

    pub fn basis(&self, i: usize) -> DivisorClass {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        DivisorClass::new(v)
    }

    pub fn canonical_class(&self) -> DivisorClass {
        DivisorClass::new(self.canonical.clone())
    }

    pub fn reference_ample_class(&self) -> DivisorClass {
        DivisorClass::new(self.reference_ample.clone())
    }

    pub fn check(&self, x: &DivisorClass) -> Result<(), LatticeError> {
        if x.rank() != self.rank {
            return Err(LatticeError::RankMismatch {
                rank: self.rank,
                got: x.rank(),
            });
        }
        Ok(())
    }

    /// xᵀ·gram·y.
    pub fn pair(&self, x: &DivisorClass, y: &DivisorClass) -> Result<i64, LatticeError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.pair_raw(&x.coords, &y.coords))
    }

    /// Unchecked pairing on raw coordinate slices of the right length.
    pub fn pair_raw(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0i64;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += xi * self.gram[i][j] * yj;
            }
        }
        s
    }

    /// Exact pairing of rational vectors.
    pub fn pair_q(&self, x: &[Q], y: &[Q]) -> Q {
        let mut s = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if self.gram[i][j] != 0 {
                    s += xi * yj * q(self.gram[i][j]);
                }
            }
        }
        s
    }

    pub fn square(&self, x: &DivisorClass) -> Result<i64, LatticeError> {
        self.pair(x, x)
    }

    pub fn k_squared(&self) -> i64 {
        self.pair_raw(&self.canonical, &self.canonical)
    }

    /// In the forward component of the positive cone.
    pub fn in_positive_cone(&self, l: &DivisorClass) -> Result<bool, LatticeError> {
        Ok(self.square(l)? > 0 && self.pair(l, &self.reference_ample_class())? > 0)
    }

    /// Open-cone test plus positivity on the stored extremal curves.
    pub fn is_ample_candidate(&self, l: &DivisorClass) -> bool {
        if self.check(l).is_err() {
            return false;
        }
        if !self.in_positive_cone(l).unwrap_or(false) {
            return false;
        }
        self.extremal_curves
            .iter()
            .all(|c| self.pair_raw(&l.coords, c) > 0)
    }

    pub fn signature(&self) -> (usize, usize) {
        let (p, n, _) = signature(&self.gram);
        (p, n)
    }
}

/// Builds a lattice from a JSON-style descriptor.
pub fn make_surface(spec: &SurfaceSpec) -> Result<SurfaceLattice, LatticeError> {
    match spec {
        SurfaceSpec::Custom {
            gram,
            canonical,
            ample,
            name,
        } => SurfaceLattice::new(
            name.clone().unwrap_or_else(|| "custom".into()),
            gram.clone(),
            canonical.clone(),
            ample.clone(),
        ),
        SurfaceSpec::Preset { preset, params } => match preset.as_str() {
            "P2" => blown_up_plane(0),
            "F" | "Hirzebruch" => {
                let e = params
                    .e
                    .ok_or_else(|| LatticeError::InvalidPreset("F requires params.e".into()))?;
                hirzebruch(e)
            }
            "F0" => hirzebruch(0),
            "F1" => hirzebruch(1),
            "BlP2" => {
                let n = params
                    .n
                    .ok_or_else(|| LatticeError::InvalidPreset("BlP2 requires params.n".into()))?;
                blown_up_plane(n)
            }
            other => {
                if let Some(n) = other.strip_prefix("Bl").and_then(|s| s.strip_suffix("P2")) {
                    let n: usize = n
                        .parse()
                        .map_err(|_| LatticeError::InvalidPreset(other.into()))?;
                    blown_up_plane(n)
                } else {
                    Err(LatticeError::InvalidPreset(format!(
                        "unknown preset {other}"
                    )))
                }
            }
        },
    }
}

/// Hirzebruch surface F_e in the basis (C₀, f) with C₀² = −e, f² = 0, C₀·f = 1.
pub fn hirzebruch(e: i64) -> Result<SurfaceLattice, LatticeError> {
    if e < 0 {
        return Err(LatticeError::InvalidPreset("F_e needs e ≥ 0".into()));
    }
    let mut lat = SurfaceLattice::new(
        format!("F{e}"),
        vec![vec![-e, 1], vec![1, 0]],
        vec![-2, -(e + 2)],
        vec![1, e + 1],
    )?;
    lat.anticanonical = AnticanonicalStatus::Guaranteed;
    lat.extremal_curves = vec![vec![1, 0], vec![0, 1]];
    Ok(lat)
}

/// P² blown up in n general points, basis (H, E₁, …, E_n), K = −3H + ΣE_i.
pub fn blown_up_plane(n: usize) -> Result<SurfaceLattice, LatticeError> {
    let rank = n + 1;
    let mut gram = vec![vec![0; rank]; rank];
    gram[0][0] = 1;
    for (i, row) in gram.iter_mut().enumerate().skip(1) {
        row[i] = -1;
    }
    let mut k = vec![1; rank];
    k[0] = -3;
    let mut m = 1i64;
    while m * m <= n as i64 {
        m += 1;
    }
    let mut ample = vec![-1; rank];
    ample[0] = if n <= 8 { 3.max(m) } else { m };
    let name = if n == 0 {
        "P2".to_string()
    } else {
        format!("Bl{n}P2")
    };
    let mut lat = SurfaceLattice::new(name, gram, k, ample)?;
    lat.anticanonical = if n <= 8 {
        AnticanonicalStatus::Guaranteed
    } else {
        AnticanonicalStatus::UserMustAssert
    };
    lat.extremal_curves = match n {
        0 => Vec::new(),
        1 => vec![vec![0, 1], vec![1, -1]],
        2..=8 => minus_one_curves(n),
        _ => {
            let mut cs = Vec::new();
            for i in 1..=n {
                let mut e = vec![0; rank];
                e[i] = 1;
                cs.push(e);
            }
            for i in 1..=n {
                for j in (i + 1)..=n {
                    let mut c = vec![0; rank];
                    c[0] = 1;
                    c[i] = -1;
                    c[j] = -1;
                    cs.push(c);
                }
            }
            cs
        }
    };
    Ok(lat)
}

/// All (−1)-curves dH − Σm_iE_i on Bl_n P² for 2 ≤ n ≤ 8: Σm = 3d−1, Σm² = d²+1.
fn minus_one_curves(n: usize) -> Vec<Vec<i64>> {
    fn rec(
        n: usize,
        d: i64,
        idx: usize,
        max: i64,
        sum: i64,
        sq: i64,
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let target_sum = 3 * d - 1;
        let target_sq = d * d + 1;
        if idx == n {
            if sum == target_sum && sq == target_sq {
                out.push(cur.clone());
            }
            return;
        }
        for m in (0..=max).rev() {
            if sum + m > target_sum || sq + m * m > target_sq {
                continue;
            }
            cur.push(m);
            // non-increasing multiplicities; permutations added afterwards
            rec(n, d, idx + 1, m, sum + m, sq + m * m, cur, out);
            cur.pop();
        }
    }
    let mut out: Vec<Vec<i64>> = Vec::new();
    for i in 1..=n {
        let mut e = vec![0; n + 1];
        e[i] = 1;
        out.push(e);
    }
    for d in 1..=6 {
        let mut sorted = Vec::new();
        rec(n, d, 0, d, 0, 0, &mut Vec::new(), &mut sorted);
        for ms in sorted {
            for perm in distinct_permutations(&ms) {
                let mut c = vec![d];
                c.extend(perm.iter().map(|m| -m));
                out.push(c);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn distinct_permutations(v: &[i64]) -> Vec<Vec<i64>> {
    let mut v = v.to_vec();
    v.sort();
    let mut out = vec![v.clone()];
    // lexicographic next-permutation
    loop {
        let n = v.len();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
            break;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| v[j] > v[i])
            .expect("successor exists");
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
    out
}

/// Inertia (pos, neg, zero) of a symmetric integer matrix by exact congruence diagonalization.
pub fn signature(gram: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = gram.len();
    let mut a: Vec<Vec<Q>> = gram
        .iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut alive: Vec<usize> = (0..n).collect();
    while !alive.is_empty() {
        let pivot = alive.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // all diagonal entries vanish: e_i ← e_i + e_j creates a pivot
                let pair = alive.iter().copied().find_map(|i| {
                    alive
                        .iter()
                        .copied()
                        .find(|&j| j != i && !a[i][j].is_zero())
                        .map(|j| (i, j))
                });
                match pair {
                    Some((i, j)) => {
                        for k in 0..n {
                            let v = a[j][k].clone();
                            a[i][k] += v;
                        }
                        for k in 0..n {
                            let v = a[k][j].clone();
                            a[k][i] += v;
                        }
                        i
                    }
                    None => {
                        zero += alive.len();
                        break;
                    }
                }
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        alive.retain(|&i| i != p);
        for &i in &alive {
            let f = &a[i][p] / &d;
            for &j in &alive {
                let v = &f * &a[p][j];
                a[i][j] -= v;
            }
        }
        for &i in &alive {
            a[i][p] = Q::zero();
            a[p][i] = Q::zero();
        }
    }
    (pos, neg, zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dc(v: &[i64]) -> DivisorClass {
        DivisorClass::new(v.to_vec())
    }

    #[test]
    fn pair_examples() {
        let bl1 = blown_up_plane(1).unwrap();
        assert_eq!(bl1.pair(&dc(&[1, 0]), &dc(&[0, 1])).unwrap(), 0);
        assert_eq!(bl1.k_squared(), 8);
        let p2 = blown_up_plane(0).unwrap();
        assert_eq!(p2.pair(&dc(&[1]), &dc(&[1])).unwrap(), 1);
    }

    #[test]
    fn pair_rank_mismatch() {
        let bl1 = blown_up_plane(1).unwrap();
        assert!(matches!(
            bl1.pair(&dc(&[1]), &dc(&[1, 0])),
            Err(LatticeError::RankMismatch { .. })
        ));
    }

    #[test]
    fn presets() {
        let p2 = make_surface(&SurfaceSpec::preset("P2")).unwrap();
        assert_eq!((p2.rank, p2.k_squared()), (1, 9));
        assert_eq!(p2.canonical, vec![-3]);
        let bl1 = make_surface(&SurfaceSpec::preset("Bl1P2")).unwrap();
        assert_eq!(bl1.gram, vec![vec![1, 0], vec![0, -1]]);
        assert_eq!(bl1.canonical, vec![-3, 1]);
        for e in 0..5 {
            assert_eq!(hirzebruch(e).unwrap().k_squared(), 8);
        }
        for n in 0..=10 {
            let l = blown_up_plane(n).unwrap();
            assert_eq!(l.k_squared(), 9 - n as i64);
            assert!(l.in_positive_cone(&l.reference_ample_class()).unwrap());
        }
    }

    #[test]
    fn custom_signature_error() {
        let spec = SurfaceSpec::Custom {
            gram: vec![vec![1, 0], vec![0, 1]],
            canonical: vec![1, 1],
            ample: vec![1, 0],
            name: None,
        };
        assert!(matches!(
            make_surface(&spec),
            Err(LatticeError::BadSignature { pos: 2, neg: 0, .. })
        ));
    }

    #[test]
    fn custom_non_characteristic() {
        let spec = SurfaceSpec::Custom {
            gram: vec![vec![1, 0], vec![0, -1]],
            canonical: vec![-2, 1],
            ample: vec![2, -1],
            name: None,
        };
        assert!(matches!(
            make_surface(&spec),
            Err(LatticeError::NotCharacteristic { index: 0 })
        ));
    }

    #[test]
    fn ample_candidates_bl1() {
        let bl1 = blown_up_plane(1).unwrap();
        assert!(bl1.is_ample_candidate(&dc(&[3, -1])));
        assert!(!bl1.is_ample_candidate(&dc(&[3, 1])));
        assert!(!bl1.is_ample_candidate(&dc(&[0, 0])));
    }

    #[test]
    fn minus_one_curve_counts() {
        // classical counts of exceptional curves on del Pezzo surfaces
        let expect = [(2, 3), (3, 6), (4, 10), (5, 16), (6, 27), (7, 56), (8, 240)];
        for (n, count) in expect {
            assert_eq!(
                blown_up_plane(n).unwrap().extremal_curves.len(),
                count,
                "n={n}"
            );
        }
    }

    #[test]
    fn hyperbolic_plane_signature() {
        assert_eq!(signature(&[vec![0, 1], vec![1, 0]]), (1, 1, 0));
        assert_eq!(signature(&[vec![0, 0], vec![0, 0]]), (0, 0, 2));
    }

    #[test]
    fn anticanonical_flags() {
        assert_eq!(
            blown_up_plane(8).unwrap().anticanonical,
            AnticanonicalStatus::Guaranteed
        );
        assert_eq!(
            blown_up_plane(9).unwrap().anticanonical,
            AnticanonicalStatus::UserMustAssert
        );
    }
}
