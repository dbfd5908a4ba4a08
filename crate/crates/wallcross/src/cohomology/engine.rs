//! The sums S_j and T_j over the parameter varieties of a wall with ℓ_ζ ≤ 2.

use super::bundles::{chern_of_e, BundleClassData, DiagonalC4, Sign};
use super::{evaluate_top, gen, Base, Class, EngineError, Gen, PairingPoly, Variety};
use crate::poly::Poly;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct EngineOptions {
    pub c4: DiagonalC4,
}

/// One summand k of S_j / T_j: the variety, the sum bundle, the slant class and point class.
struct Piece {
    variety: Variety,
    bundle: BundleClassData,
    slant: Class,
    point: Class,
}

/// 𝓔_ζ^{ℓ−k,k} ⊕ (𝓔_{−ζ}^{k,ℓ−k})^∨ on Hilb^{ℓ−k}X × Hilb^kX.
fn piece(ell: u32, k: u32, opts: EngineOptions) -> Result<Piece, EngineError> {
    let plus = chern_of_e(ell - k, k, Sign::Plus, opts.c4)?;
    let mut minus = chern_of_e(k, ell - k, Sign::Minus, opts.c4)?;
    let variety = plus.variety;
    if variety == Variety::XxX {
        // 𝓔_{−ζ}^{k,ℓ−k} lives on H_k × H_{ℓ−k}; bring it to H_{ℓ−k} × H_k
        minus = minus.swap();
    }
    let bundle = plus.sum(&minus.dual());
    let (slant, point) = match variety {
        Variety::Point => (Poly::zero(), Poly::zero()),
        Variety::X => (gen(Gen::Cls(Base::Alpha)), gen(Gen::Pt)),
        Variety::Hilb2 => (gen(Gen::Slant(Base::Alpha)), gen(Gen::Xx)),
        Variety::XxX => (
            &gen(Gen::Tau(1, Base::Alpha)) + &gen(Gen::Tau(2, Base::Alpha)),
            &gen(Gen::TauPt(1)) + &gen(Gen::TauPt(2)),
        ),
    };
    Ok(Piece {
        variety,
        bundle,
        slant,
        point,
    })
}

fn check_ell(ell: u32) -> Result<(), EngineError> {
    if ell > 2 {
        return Err(EngineError::NotImplemented(format!(
            "S_j/T_j for ℓ = {ell} (only ℓ ≤ 2 has Chern data)"
        )));
    }
    Ok(())
}

/// Per-k summands S_{j,k}, in the symbols AA, AZ, ZZ, KK, CHI (AK, ZK cancel in the sum).
pub fn s_j_pieces(ell: u32, j: u32, opts: EngineOptions) -> Result<Vec<PairingPoly>, EngineError> {
    check_ell(ell)?;
    if j > 2 * ell {
        return Err(EngineError::OutOfRange(format!(
            "j = {j} > 2ℓ = {}",
            2 * ell
        )));
    }
    (0..=ell)
        .map(|k| {
            let p = piece(ell, k, opts)?;
            let s = p.bundle.segre();
            let v = p.variety;
            let cls = v.mul(&v.pow(&p.slant, j), &s[(2 * ell - j) as usize]);
            evaluate_top(v, &cls)
        })
        .collect()
}

/// S_j = Σ_k ([𝒵_{ℓ−k}]/α + [𝒵_k]/α)^j · s_{2ℓ−j}(𝓔_ζ^{ℓ−k,k} ⊕ (𝓔_{−ζ}^{k,ℓ−k})^∨).
pub fn compute_s_j(ell: u32, j: u32, opts: EngineOptions) -> Result<PairingPoly, EngineError> {
    Ok(s_j_pieces(ell, j, opts)?
        .into_iter()
        .fold(Poly::zero(), |a, b| &a + &b))
}

/// T_j = Σ_k (slant)^j · ([𝒵_{ℓ−k}] + [𝒵_k])/x · s_{2ℓ−2−j}(…), for 0 ≤ j ≤ 2ℓ−2.
pub fn compute_t_j(ell: u32, j: u32, opts: EngineOptions) -> Result<PairingPoly, EngineError> {
    check_ell(ell)?;
    if ell == 0 || j + 2 > 2 * ell {
        return Err(EngineError::OutOfRange(format!(
            "T_j needs 0 ≤ j ≤ 2ℓ − 2; got j = {j}, ℓ = {ell}"
        )));
    }
    let mut out = Poly::zero();
    for k in 0..=ell {
        let p = piece(ell, k, opts)?;
        let s = p.bundle.segre();
        let v = p.variety;
        let cls = v.mul(
            &v.mul(&v.pow(&p.slant, j), &p.point),
            &s[(2 * ell - 2 - j) as usize],
        );
        out += evaluate_top(v, &cls)?;
    }
    Ok(out)
}

type Memo = Mutex<HashMap<(bool, u32, EngineOptions), Vec<PairingPoly>>>;

fn memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

fn memoized(
    key: (bool, u32, EngineOptions),
    f: impl FnOnce() -> Result<Vec<PairingPoly>, EngineError>,
) -> Result<Vec<PairingPoly>, EngineError> {
    if let Some(v) = memo().lock().expect("memo poisoned").get(&key) {
        return Ok(v.clone());
    }
    let v = f()?;
    memo().lock().expect("memo poisoned").insert(key, v.clone());
    Ok(v)
}

/// All S_0..S_{2ℓ} (memoized per process).
pub fn all_s(ell: u32, opts: EngineOptions) -> Result<Vec<PairingPoly>, EngineError> {
    check_ell(ell)?;
    memoized((false, ell, opts), || {
        (0..=2 * ell).map(|j| compute_s_j(ell, j, opts)).collect()
    })
}

/// All T_0..T_{2ℓ−2} (empty for ℓ = 0; memoized).
pub fn all_t(ell: u32, opts: EngineOptions) -> Result<Vec<PairingPoly>, EngineError> {
    check_ell(ell)?;
    if ell == 0 {
        return Ok(Vec::new());
    }
    memoized((true, ell, opts), || {
        (0..=2 * ell - 2)
            .map(|j| compute_t_j(ell, j, opts))
            .collect()
    })
}

/// Segre classes of a single 𝓔_ζ^{n₁,n₂}, evaluated in top degree.
pub fn top_segre_of(n1: u32, n2: u32, opts: EngineOptions) -> Result<PairingPoly, EngineError> {
    let b = chern_of_e(n1, n2, Sign::Plus, opts.c4)?;
    let s = b.segre();
    evaluate_top(b.variety, &s[b.variety.top_degree() as usize])
}

#[cfg(test)]
mod tests {
    use super::super::{render, sym, to_a_form, Sym};
    use super::*;
    use crate::rational::q;

    fn e() -> EngineOptions {
        EngineOptions::default()
    }

    fn a_form(ell: u32, j: u32) -> String {
        render(&to_a_form(&compute_s_j(ell, j, e()).unwrap()))
    }

    #[test]
    fn ell_zero() {
        assert_eq!(compute_s_j(0, 0, e()).unwrap(), Poly::one());
        assert!(all_t(0, e()).unwrap().is_empty());
    }

    #[test]
    fn ell_one() {
        assert_eq!(a_form(1, 0), "2*KK + 6*ZZ");
        assert_eq!(a_form(1, 1), "-8*a");
        assert_eq!(a_form(1, 2), "2*AA");
        assert_eq!(compute_t_j(1, 0, e()).unwrap(), Poly::int(2));
    }

    #[test]
    fn ell_two_high_j() {
        assert_eq!(a_form(2, 4), "12*AA^2");
        assert_eq!(a_form(2, 3), "-48*AA*a");
        assert_eq!(a_form(2, 2), "64*a^2 + 4*AA*KK + 12*AA*ZZ - 20*AA");
        assert_eq!(a_form(2, 1), "120*a - 16*KK*a - 48*ZZ*a");
    }

    #[test]
    fn ell_two_t() {
        let t: Vec<String> = (0..3)
            .map(|j| render(&to_a_form(&compute_t_j(2, j, e()).unwrap())))
            .collect();
        assert_eq!(t, vec!["4*KK + 12*ZZ - 10", "-16*a", "4*AA"]);
    }

    #[test]
    fn out_of_range() {
        assert!(compute_s_j(1, 3, e()).is_err());
        assert!(compute_t_j(2, 3, e()).is_err());
        assert!(matches!(
            compute_s_j(3, 0, e()),
            Err(EngineError::NotImplemented(_))
        ));
    }

    #[test]
    fn s0_ell_two_with_chi() {
        // CHI kept symbolic; at CHI=1 this is the engine's ℓ=2 constant term
        let s0 = compute_s_j(2, 0, e()).unwrap();
        assert!(s0.contains_var(&Sym::Chi));
        let one = super::super::chi_one(&s0);
        let zz = sym(Sym::Pair(Base::Zeta, Base::Zeta));
        let kk = sym(Sym::Pair(Base::K, Base::K));
        let expect = &(&(&(&zz.pow(2).scale(&q(18)) + &(&kk * &zz).scale(&q(12)))
            - &zz.scale(&q(105)))
            + &(&kk.pow(2).scale(&q(2)) - &kk.scale(&q(50))))
            + &Poly::int(96);
        assert_eq!(one, expect);
    }
}
