//! Wall-crossing polynomials: closed forms for ℓ ≤ 2, the general evaluators
//! fed by the engine's S_j/T_j, leading terms, and accumulation along a segment.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::cohomology::engine::{all_s, all_t, EngineOptions};
use crate::cohomology::{pair, sym, to_a_form, Base, EngineError, PairingPoly, Sym};
use crate::lattice::{DivisorClass, LatticeError, SurfaceLattice};
use crate::poly::{Monomial, Poly};
use crate::rational::{q, qr, sign_pow, Q};
use crate::walls::{enumerate_walls, WallClassData, WallError, WallType};
use crate::Warning;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransitionError {
    #[error(transparent)]
    Wall(#[from] WallError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("Δ² + Δ·K = {0} is odd; the lattice is not characteristic")]
    Parity(i64),
    #[error("expected {expected} S/T values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("S_{j} has a term a^{m}·(α²)^{n} with m + 2n ≠ j")]
    NotInBasis { j: usize, m: u32, n: u32 },
    #[error("closed forms exist only for ℓ ≤ 2 (ζ = {zeta:?}, ℓ = {ell}); use the leading term")]
    NotImplemented { zeta: Vec<i64>, ell: i64 },
    #[error("wall {zeta:?} mixes a degenerate class with ℓ ≥ 1 classes; no formula is available")]
    DegenerateMixedWall { zeta: Vec<i64> },
    #[error("inserting the point class needs d ≥ 2, got d = {0}")]
    DimensionTooSmall(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Kind {
    /// μ₊(α)^d − μ₋(α)^d.
    #[serde(rename = "MU_POWER")]
    MuPower,
    /// μ₊(α)^{d−2}ν₊ − μ₋(α)^{d−2}ν₋.
    #[serde(rename = "MU_NU")]
    MuNu,
}

impl Kind {
    /// Exponent e of the basis (ζ/2)^{e−2i} q_X^i.
    pub fn exponent(self, d: i64) -> i64 {
        match self {
            Kind::MuPower => d,
            Kind::MuNu => d - 2,
        }
    }
}

/// Which formulas feed the per-wall polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum FormulaPath {
    /// General sums over engine-computed S_j, T_j.
    #[default]
    Engine,
    /// Tabulated closed forms for ℓ ≤ 2.
    Closed,
}

/// Σ_i γ_i (ζ/2)^{e−2i} q_X^i, i = 0..=ℓ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallCrossingPolynomial {
    pub d: i64,
    pub ell: i64,
    pub kind: Kind,
    /// γ_0..γ_ℓ, polynomials in ZZ, KK, CHI.
    pub coeffs: Vec<PairingPoly>,
    /// Set for leading terms: only valid modulo a^this.
    pub modulo_a_power: Option<i64>,
}

impl WallCrossingPolynomial {
    pub fn exponent(&self) -> i64 {
        self.kind.exponent(self.d)
    }

    /// Polynomial in a and AA.
    pub fn evaluated(&self) -> PairingPoly {
        let e = self.exponent();
        let mut out = Poly::zero();
        for (i, g) in self.coeffs.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let pa = e - 2 * i as i64;
            assert!(pa >= 0, "nonzero coefficient on a negative power of a");
            let m = Monomial::from_pairs([
                (Sym::A, pa as u32),
                (Sym::Pair(Base::Alpha, Base::Alpha), i as u32),
            ]);
            out += g * &Poly::term(q(1), m);
        }
        out
    }

    /// Substitutes ζ², K², χ.
    pub fn specialize(&self, zz: i64, kk: i64, chi: i64) -> Self {
        let f = |p: &PairingPoly| {
            p.replace(|s| match s {
                Sym::Pair(Base::Zeta, Base::Zeta) => Some(Poly::int(zz)),
                Sym::Pair(Base::K, Base::K) => Some(Poly::int(kk)),
                Sym::Chi => Some(Poly::int(chi)),
                _ => None,
            })
        };
        WallCrossingPolynomial {
            coeffs: self.coeffs.iter().map(f).collect(),
            ..self.clone()
        }
    }

    /// Numeric value at a, α², once all coefficient symbols are gone.
    pub fn value_at(&self, a: &Q, aa: &Q) -> Option<Q> {
        let e = self.exponent();
        let mut total = Q::zero();
        for (i, g) in self.coeffs.iter().enumerate() {
            let c = g.as_constant()?;
            if c.is_zero() {
                continue;
            }
            let pa = e - 2 * i as i64;
            total += c * pow_q(a, pa as u32) * pow_q(aa, i as u32);
        }
        Some(total)
    }

    /// Constant coefficients, if fully specialized.
    pub fn numeric_coeffs(&self) -> Option<Vec<Q>> {
        self.coeffs.iter().map(|c| c.as_constant()).collect()
    }
}

fn pow_q(x: &Q, e: u32) -> Q {
    (0..e).fold(q(1), |acc, _| acc * x)
}

/// δ(Δ) = (−1)^{(Δ² + Δ·K)/2}.
pub fn orientation_sign(
    lat: &SurfaceLattice,
    delta: &DivisorClass,
) -> Result<i64, TransitionError> {
    let s = lat.square(delta)? + lat.pair(delta, &lat.canonical_class())?;
    if s.rem_euclid(2) != 0 {
        return Err(TransitionError::Parity(s));
    }
    Ok(sign_pow(s / 2))
}

/// C(n, j) as the polynomial n(n−1)…(n−j+1)/j!.
pub fn binom_poly(n: &PairingPoly, j: u32) -> PairingPoly {
    let mut out = Poly::one();
    for i in 0..j {
        out = &out * &(n - &Poly::int(i64::from(i)));
    }
    out.scale(&qr(1, (1..=i64::from(j)).product::<i64>().max(1)))
}

pub fn d_sym() -> PairingPoly {
    sym(Sym::D)
}

fn kk() -> PairingPoly {
    pair(Base::K, Base::K)
}

fn lin(terms: &[(i64, PairingPoly)], c: i64) -> PairingPoly {
    let mut out = Poly::int(c);
    for (k, p) in terms {
        out += p.scale(&q(*k));
    }
    out
}

/// Collects Σ_j w_j · a^{e−j} · P_j into basis coefficients γ_i, P_j in a-form.
fn collect(
    ell: u32,
    parts: &[(usize, PairingPoly, PairingPoly)],
) -> Result<Vec<PairingPoly>, TransitionError> {
    let aa = Sym::Pair(Base::Alpha, Base::Alpha);
    let mut out = vec![PairingPoly::zero(); ell as usize + 1];
    for (j, weight, p) in parts {
        for (m, c) in p.terms() {
            for (v, _) in m.factors() {
                match v {
                    Sym::Pair(Base::Zeta, Base::Zeta) | Sym::Pair(Base::K, Base::K) => {}
                    Sym::Chi | Sym::A | Sym::D => {}
                    s if *s == aa => {}
                    s => return Err(EngineError::UnexpectedSymbol(s.to_string()).into()),
                }
            }
            let ma = m.exponent(&Sym::A);
            let n = m.exponent(&aa);
            if ma + 2 * n != *j as u32 || n > ell {
                return Err(TransitionError::NotInBasis { j: *j, m: ma, n });
            }
            let rest = m.without(&Sym::A).without(&aa);
            out[n as usize] += weight * &Poly::term(c.clone(), rest);
        }
    }
    Ok(out)
}

/// Basis coefficients of μ₊^d − μ₋^d from S_0..S_{2ℓ} (AZ or a-form); `d` may be symbolic.
pub fn mu_general_coeffs(
    ell: u32,
    h: i64,
    d: &PairingPoly,
    s: &[PairingPoly],
) -> Result<Vec<PairingPoly>, TransitionError> {
    if s.len() != 2 * ell as usize + 1 {
        return Err(TransitionError::LengthMismatch {
            expected: 2 * ell as usize + 1,
            got: s.len(),
        });
    }
    let parts: Vec<_> = s
        .iter()
        .enumerate()
        .map(|(j, sj)| {
            let sign = sign_pow(h + i64::from(ell) + j as i64);
            (j, binom_poly(d, j as u32).scale(&q(sign)), to_a_form(sj))
        })
        .collect();
    collect(ell, &parts)
}

/// Basis coefficients of μ₊^{d−2}ν₊ − μ₋^{d−2}ν₋ from S_0..S_{2ℓ} and T_0..T_{2ℓ−2}.
pub fn nu_general_coeffs(
    ell: u32,
    h: i64,
    d: &PairingPoly,
    s: &[PairingPoly],
    t: &[PairingPoly],
) -> Result<Vec<PairingPoly>, TransitionError> {
    let expect_t = if ell == 0 { 0 } else { 2 * ell as usize - 1 };
    if s.len() != 2 * ell as usize + 1 || t.len() != expect_t {
        return Err(TransitionError::LengthMismatch {
            expected: 2 * ell as usize + 1 + expect_t,
            got: s.len() + t.len(),
        });
    }
    let dm2 = d - &Poly::int(2);
    let mut parts = Vec::new();
    for (j, sj) in s.iter().enumerate() {
        let sign = sign_pow(h + i64::from(ell) - 1 + j as i64);
        parts.push((
            j,
            binom_poly(&dm2, j as u32).scale(&qr(sign, 4)),
            to_a_form(sj),
        ));
    }
    for (j, tj) in t.iter().enumerate() {
        let sign = sign_pow(h + i64::from(ell) - 1 + j as i64);
        parts.push((
            j,
            binom_poly(&dm2, j as u32).scale(&q(-sign)),
            to_a_form(tj),
        ));
    }
    collect(ell, &parts)
}

/// Closed-form coefficients of μ₊^d − μ₋^d in d and K² (ℓ ≤ 2).
pub fn mu_closed_coeffs(ell: u32, h: i64, d: &PairingPoly) -> Option<Vec<PairingPoly>> {
    let k = kk();
    Some(match ell {
        0 => vec![Poly::int(sign_pow(h))],
        1 => {
            let s = q(sign_pow(h + 1));
            vec![
                lin(&[(2, k), (2, d.clone())], 6).scale(&s),
                binom_poly(d, 2).scale(&(q(2) * &s)),
            ]
        }
        2 => {
            let s = q(sign_pow(h));
            let g2 = binom_poly(d, 4).scale(&q(12));
            let g1 = &binom_poly(d, 2) * &lin(&[(4, k.clone()), (4, d.clone())], 8);
            let g0 = &(&(&d.pow(2).scale(&q(2)) + &(d * &k).scale(&q(2))) + &k.pow(2).scale(&q(2)))
                + &lin(&[(13, d.clone()), (20, k)], 21);
            vec![g0.scale(&s), g1.scale(&s), g2.scale(&s)]
        }
        _ => return None,
    })
}

/// Closed-form coefficients of μ₊^{d−2}ν₊ − μ₋^{d−2}ν₋ (ℓ ≤ 2).
pub fn nu_closed_coeffs(ell: u32, h: i64, d: &PairingPoly) -> Option<Vec<PairingPoly>> {
    let k = kk();
    let dm2 = d - &Poly::int(2);
    Some(match ell {
        0 => vec![Poly::constant(qr(sign_pow(h - 1), 4))],
        1 => {
            let s = qr(sign_pow(h), 4);
            vec![
                lin(&[(2, k), (2, d.clone())], -18).scale(&s),
                binom_poly(&dm2, 2).scale(&(q(2) * &s)),
            ]
        }
        2 => {
            let s = qr(sign_pow(h + 1), 4);
            let g2 = binom_poly(&dm2, 4).scale(&q(12));
            let g1 = &binom_poly(&dm2, 2) * &lin(&[(4, k.clone()), (4, d.clone())], -40);
            let g0 = &(&(&d.pow(2).scale(&q(2)) + &(d * &k).scale(&q(2))) + &k.pow(2).scale(&q(2)))
                + &lin(&[(-35, d.clone()), (-28, k)], -99);
            vec![g0.scale(&s), g1.scale(&s), g2.scale(&s)]
        }
        _ => return None,
    })
}

/// Leading basis coefficient; all lower indices are zero (valid modulo a power).
pub fn leading_coeffs(kind: Kind, ell: u32, h: i64, d: &PairingPoly) -> Vec<PairingPoly> {
    let ellf: i64 = (1..=i64::from(ell)).product::<i64>().max(1);
    let mut out = vec![PairingPoly::zero(); ell as usize + 1];
    out[ell as usize] = match kind {
        Kind::MuPower => binom_poly(d, 2 * ell)
            .scale(&(fact(2 * ell) * q(sign_pow(h + i64::from(ell))) / q(ellf))),
        Kind::MuNu => binom_poly(&(d - &Poly::int(2)), 2 * ell)
            .scale(&(fact(2 * ell) * qr(sign_pow(h + i64::from(ell) - 1), 4) / q(ellf))),
    };
    out
}

fn fact(n: u32) -> Q {
    (1..=i64::from(n)).fold(q(1), |a, k| a * q(k))
}

/// Rewrites ζ² = 4ℓ − 3 − d and χ = 1, so coefficients live in d and K² only.
pub fn normalize_coeffs(ell: u32, coeffs: &[PairingPoly]) -> Vec<PairingPoly> {
    let zz = &Poly::int(4 * i64::from(ell) - 3) - &d_sym();
    coeffs
        .iter()
        .map(|c| {
            c.replace(|s| match s {
                Sym::Pair(Base::Zeta, Base::Zeta) => Some(zz.clone()),
                Sym::Chi => Some(Poly::one()),
                _ => None,
            })
        })
        .collect()
}

fn at_d(coeffs: Vec<PairingPoly>, d: i64) -> Vec<PairingPoly> {
    coeffs
        .into_iter()
        .map(|c| c.replace(|s| (*s == Sym::D).then(|| Poly::int(d))))
        .collect()
}

/// Engine-fed polynomial for a wall class (d concrete).
pub fn delta_general(
    kind: Kind,
    wt: &WallType,
    wcd: &WallClassData,
    opts: EngineOptions,
) -> Result<WallCrossingPolynomial, TransitionError> {
    let ell = check_ell(wcd)?;
    let d = Poly::int(wt.d);
    let s = all_s(ell, opts)?;
    let coeffs = match kind {
        Kind::MuPower => mu_general_coeffs(ell, wcd.h_plus, &d, &s)?,
        Kind::MuNu => {
            let t = all_t(ell, opts)?;
            nu_general_coeffs(ell, wcd.h_plus, &d, &s, &t)?
        }
    };
    Ok(WallCrossingPolynomial {
        d: wt.d,
        ell: wcd.ell,
        kind,
        coeffs,
        modulo_a_power: None,
    })
}

/// Closed-form polynomial for a wall class (ℓ ≤ 2).
pub fn delta_closed(
    kind: Kind,
    wt: &WallType,
    wcd: &WallClassData,
) -> Result<WallCrossingPolynomial, TransitionError> {
    let ell = check_ell(wcd)?;
    let d = d_sym();
    let coeffs = match kind {
        Kind::MuPower => mu_closed_coeffs(ell, wcd.h_plus, &d),
        Kind::MuNu => nu_closed_coeffs(ell, wcd.h_plus, &d),
    }
    .expect("ℓ checked");
    Ok(WallCrossingPolynomial {
        d: wt.d,
        ell: wcd.ell,
        kind,
        coeffs: at_d(coeffs, wt.d),
        modulo_a_power: None,
    })
}

pub fn leading_term(kind: Kind, wt: &WallType, wcd: &WallClassData) -> WallCrossingPolynomial {
    let ell = wcd.ell as u32;
    let coeffs = at_d(leading_coeffs(kind, ell, wcd.h_plus, &d_sym()), wt.d);
    let modulo = match kind {
        Kind::MuPower => wt.d - 2 * wcd.ell + 2,
        Kind::MuNu => wt.d - 2 * wcd.ell,
    };
    WallCrossingPolynomial {
        d: wt.d,
        ell: wcd.ell,
        kind,
        coeffs,
        modulo_a_power: Some(modulo),
    }
}

fn check_ell(wcd: &WallClassData) -> Result<u32, TransitionError> {
    if !(0..=2).contains(&wcd.ell) {
        return Err(TransitionError::NotImplemented {
            zeta: wcd.zeta.coords.clone(),
            ell: wcd.ell,
        });
    }
    Ok(wcd.ell as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TransitionOptions {
    pub path: FormulaPath,
    pub km_normalization: bool,
    pub engine: EngineOptions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallEntry {
    pub data: WallClassData,
    pub t: Q,
    pub sign: i64,
    pub polynomial: WallCrossingPolynomial,
    pub a: Q,
    pub value: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionReport {
    pub kind: Kind,
    pub delta_sign: i64,
    pub alpha_sq: i64,
    pub walls: Vec<WallEntry>,
    pub total: Q,
    pub warnings: Vec<Warning>,
}

/// D(𝒞₊) − D(𝒞₋) for the chambers of L₊ and L₋, summed over every wall crossed.
pub fn donaldson_difference(
    lat: &SurfaceLattice,
    l_minus: &DivisorClass,
    l_plus: &DivisorClass,
    wt: &WallType,
    alpha: &DivisorClass,
    insert_point: bool,
    opts: TransitionOptions,
) -> Result<TransitionReport, TransitionError> {
    lat.check(alpha)?;
    let kind = if insert_point {
        Kind::MuNu
    } else {
        Kind::MuPower
    };
    if insert_point && wt.d < 2 {
        return Err(TransitionError::DimensionTooSmall(wt.d));
    }
    let en = enumerate_walls(lat, l_minus, l_plus, wt)?;
    let delta_sign = orientation_sign(lat, &wt.delta)?;
    let kk = lat.k_squared();
    let alpha_sq = lat.square(alpha)?;
    let mut warnings = en.warnings.clone();
    let mut cache: BTreeMap<(i64, i64), WallCrossingPolynomial> = BTreeMap::new();
    let mut walls = Vec::new();
    let mut total = Q::zero();
    for g in &en.walls {
        let has_degenerate = g
            .classes
            .iter()
            .any(|c| c.degenerate || c.degenerate_minus());
        if has_degenerate && g.classes.iter().any(|c| c.ell >= 1) {
            return Err(TransitionError::DegenerateMixedWall {
                zeta: g.primitive.clone(),
            });
        }
        if g.classes.len() > 1 {
            warnings.push(Warning::new(
                "MULTI_CLASS_WALL",
                format!(
                    "wall {:?} carries {} integral classes; contributions summed class by class",
                    g.primitive,
                    g.classes.len()
                ),
            ));
        }
        for c in &g.classes {
            let key = (c.ell, c.h_plus);
            let poly = match cache.get(&key) {
                Some(p) => p.clone(),
                None => {
                    let p = match opts.path {
                        FormulaPath::Engine => delta_general(kind, wt, c, opts.engine)?,
                        FormulaPath::Closed => delta_closed(kind, wt, c)?,
                    }
                    .specialize(c.zeta_sq, kk, lat.euler_char_structure_sheaf);
                    cache.insert(key, p.clone());
                    p
                }
            };
            let a = qr(lat.pair(&c.zeta, alpha)?, 2);
            let mut value = poly
                .value_at(&a, &q(alpha_sq))
                .expect("specialized coefficients are numeric")
                * q(delta_sign);
            if opts.km_normalization {
                value *= pow_q(&q(2), poly.exponent().max(0) as u32);
            }
            total += &value;
            walls.push(WallEntry {
                data: c.clone(),
                t: g.t.clone(),
                sign: delta_sign,
                polynomial: poly,
                a,
                value,
            });
        }
    }
    Ok(TransitionReport {
        kind,
        delta_sign,
        alpha_sq,
        walls,
        total,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::render;
    use crate::lattice::{blown_up_plane, make_surface, SurfaceSpec};
    use crate::walls::wall_class_data;

    fn dc(v: &[i64]) -> DivisorClass {
        DivisorClass::new(v.to_vec())
    }

    fn running() -> (SurfaceLattice, WallType, WallClassData) {
        let lat = blown_up_plane(1).unwrap();
        let wt = WallType::new(&lat, dc(&[1, 0]), 2).unwrap();
        let w = wall_class_data(&lat, &dc(&[1, -2]), &wt).unwrap();
        (lat, wt, w)
    }

    #[test]
    fn orientation_examples() {
        let lat = blown_up_plane(1).unwrap();
        assert_eq!(orientation_sign(&lat, &dc(&[0, 0])).unwrap(), 1);
        assert_eq!(orientation_sign(&lat, &dc(&[1, 0])).unwrap(), -1);
        let p2 = make_surface(&SurfaceSpec::preset("P2")).unwrap();
        assert_eq!(orientation_sign(&p2, &dc(&[1])).unwrap(), -1);
    }

    #[test]
    fn closed_ell_one_running_example() {
        let (lat, wt, w) = running();
        let p =
            delta_closed(Kind::MuPower, &wt, &w)
                .unwrap()
                .specialize(w.zeta_sq, lat.k_squared(), 1);
        // (−1)^{h+1} = −1 times {30, 12}
        assert_eq!(p.numeric_coeffs().unwrap(), vec![q(-30), q(-12)]);
        assert_eq!(render(&p.evaluated()), "-30*a^4 - 12*AA*a^2");
    }

    #[test]
    fn closed_ell_two_g2() {
        let g = mu_closed_coeffs(2, 0, &Poly::int(7)).unwrap();
        assert_eq!(g[2], Poly::int(420));
    }

    #[test]
    fn nu_ell_one_small_d() {
        let (_, _, w) = running();
        let lat = blown_up_plane(1).unwrap();
        let wt = WallType::new(&lat, dc(&[1, 0]), 2).unwrap();
        let p = delta_closed(Kind::MuNu, &wt, &w)
            .unwrap()
            .specialize(-3, 8, 1);
        // ¼(−1)^0 [6 a² + 2 α²]
        assert_eq!(p.numeric_coeffs().unwrap(), vec![qr(6, 4), qr(2, 4)]);
        // d = 2: the α² term vanishes identically
        let c = nu_closed_coeffs(1, 0, &Poly::int(2)).unwrap();
        assert!(c[1].is_zero());
    }

    #[test]
    fn leading_examples() {
        let l = leading_coeffs(Kind::MuPower, 1, 0, &Poly::int(4));
        assert_eq!(l, vec![Poly::zero(), Poly::int(-12)]);
        let l3 = leading_coeffs(Kind::MuPower, 3, 0, &Poly::int(10));
        assert_eq!(l3[3], Poly::int(-25200));
    }

    #[test]
    fn general_equals_closed_ell_le_one() {
        let opts = EngineOptions::default();
        for ell in 0..=1u32 {
            let s = all_s(ell, opts).unwrap();
            let t = all_t(ell, opts).unwrap();
            for h in 0..2 {
                let g = normalize_coeffs(ell, &mu_general_coeffs(ell, h, &d_sym(), &s).unwrap());
                assert_eq!(g, mu_closed_coeffs(ell, h, &d_sym()).unwrap(), "mu ℓ={ell}");
                let g =
                    normalize_coeffs(ell, &nu_general_coeffs(ell, h, &d_sym(), &s, &t).unwrap());
                assert_eq!(g, nu_closed_coeffs(ell, h, &d_sym()).unwrap(), "nu ℓ={ell}");
            }
        }
    }

    #[test]
    fn running_example_total() {
        let (lat, wt, _) = running();
        for path in [FormulaPath::Engine, FormulaPath::Closed] {
            let opts = TransitionOptions {
                path,
                ..Default::default()
            };
            let r = donaldson_difference(
                &lat,
                &dc(&[3, -2]),
                &dc(&[3, -1]),
                &wt,
                &dc(&[1, 0]),
                false,
                opts,
            )
            .unwrap();
            assert_eq!(r.walls.len(), 1);
            assert_eq!(r.total, qr(39, 8));
            let rev = donaldson_difference(
                &lat,
                &dc(&[3, -1]),
                &dc(&[3, -2]),
                &wt,
                &dc(&[1, 0]),
                false,
                opts,
            )
            .unwrap();
            assert_eq!(rev.total, -qr(39, 8));
        }
    }

    #[test]
    fn empty_segment_total_zero() {
        let (lat, wt, _) = running();
        let r = donaldson_difference(
            &lat,
            &dc(&[3, -1]),
            &dc(&[3, -1]),
            &wt,
            &dc(&[1, 0]),
            false,
            Default::default(),
        )
        .unwrap();
        assert!(r.walls.is_empty() && r.total.is_zero());
    }
}
