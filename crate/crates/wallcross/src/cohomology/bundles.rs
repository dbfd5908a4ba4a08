//! Chern data of the bundles 𝓔_{±ζ}^{n₁,n₂} and the Chern/Segre calculus.

use serde::Serialize;

use super::{component, gen, half, scalar, Base, Class, EngineError, Gen, Lin, Variety};
use crate::poly::Poly;
use crate::rational::{q, qr, Q};

/// Which ζ the bundle is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn zeta(self) -> Lin {
        match self {
            Sign::Plus => Lin::base(Base::Zeta),
            Sign::Minus => Lin::new(&[(Base::Zeta, -1)]),
        }
    }

    /// ±ζ − K.
    fn zeta_minus_k(self) -> Lin {
        let mut l = self.zeta();
        l.0.push((Base::K, -1));
        l
    }
}

/// Source of c₄(𝓔^{1,1}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash, Serialize)]
pub enum DiagonalC4 {
    /// Total Chern class derived from the filtration and ch(I_{Δ₀}).
    #[default]
    Derived,
    /// c₁…c₃ as derived, c₄ = −j_*(K²)/2.
    Tabulated,
}

/// rank = ℓ + h_plus·h(ζ) + h_minus·h(−ζ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rank {
    pub ell: i64,
    pub h_plus: i64,
    pub h_minus: i64,
}

impl Rank {
    fn add(self, o: Rank) -> Rank {
        Rank {
            ell: self.ell + o.ell,
            h_plus: self.h_plus + o.h_plus,
            h_minus: self.h_minus + o.h_minus,
        }
    }
}

/// Total Chern class c = c₀ + c₁ + … on a variety, c₀ = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleClassData {
    pub variety: Variety,
    pub rank: Rank,
    /// c[i] homogeneous of degree i, up to the top degree.
    pub chern: Vec<Class>,
}

impl BundleClassData {
    fn from_parts(variety: Variety, rank: Rank, parts: Vec<Class>) -> Self {
        let top = variety.top_degree() as usize;
        let mut chern = parts;
        chern.resize(top + 1, Poly::zero());
        chern.truncate(top + 1);
        BundleClassData {
            variety,
            rank,
            chern,
        }
    }

    pub fn c(&self, i: usize) -> Class {
        self.chern.get(i).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> Class {
        self.chern.iter().fold(Poly::zero(), |acc, c| &acc + c)
    }

    pub fn dual(&self) -> Self {
        let chern = self
            .chern
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
            .collect();
        BundleClassData {
            variety: self.variety,
            rank: self.rank,
            chern,
        }
    }

    /// Whitney sum.
    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(
            self.variety, other.variety,
            "bundles on different varieties"
        );
        let v = self.variety;
        let tot = v.mul(&self.total(), &other.total());
        let parts = (0..=v.top_degree()).map(|k| component(&tot, k)).collect();
        Self::from_parts(v, self.rank.add(other.rank), parts)
    }

    /// Pullback under the factor exchange of X×X.
    pub fn swap(&self) -> Self {
        let chern = self
            .chern
            .iter()
            .map(|c| {
                c.replace(|v| match v {
                    super::Var::G(g) => Some(gen(g.swapped())),
                    _ => None,
                })
            })
            .collect();
        BundleClassData {
            variety: self.variety,
            rank: self.rank,
            chern,
        }
    }

    /// s₀ = 1, sₙ = −c₁sₙ₋₁ − … − cₙ.
    pub fn segre(&self) -> Vec<Class> {
        segre_from_chern(self.variety, &self.chern)
    }
}

pub fn segre_from_chern(v: Variety, c: &[Class]) -> Vec<Class> {
    let top = v.top_degree() as usize;
    let mut s: Vec<Class> = vec![Poly::one()];
    for n in 1..=top {
        let mut acc = Poly::zero();
        for i in 1..=n {
            if let Some(ci) = c.get(i) {
                acc -= &v.mul(ci, &s[n - i]);
            }
        }
        s.push(acc);
    }
    s
}

/// Newton's identities: Chern classes from the Chern character (ch₀ unused).
pub fn chern_from_ch(v: Variety, ch: &[Class]) -> Vec<Class> {
    let top = v.top_degree() as usize;
    let mut fact = Q::from_integer(1.into());
    let mut p: Vec<Class> = vec![Poly::zero()];
    for k in 1..=top {
        fact *= q(k as i64);
        p.push(ch.get(k).cloned().unwrap_or_default().scale(&fact));
    }
    let mut e: Vec<Class> = vec![Poly::one()];
    for k in 1..=top {
        let mut acc = Poly::zero();
        for i in 1..=k {
            let t = v.mul(&e[k - i], &p[i]);
            if i % 2 == 1 {
                acc += t;
            } else {
                acc -= &t;
            }
        }
        e.push(acc.scale(&qr(1, k as i64)));
    }
    e
}

fn exp_class(v: Variety, x: &Class) -> Class {
    let mut out = Poly::one();
    let mut term = Poly::one();
    for k in 1..=v.top_degree() {
        term = v.mul(&term, x).scale(&qr(1, k as i64));
        out += &term;
    }
    out
}

/// ch(I_{Δ₀}) = 1 − Δ₀ − j_*K/2 − (K²/4 − χ)·[pt×pt], by Grothendieck–Riemann–Roch.
fn ch_ideal_diagonal() -> Vec<Class> {
    let kk = scalar(&super::pair(Base::K, Base::K));
    let chi = scalar(&super::sym(super::Sym::Chi));
    let ptpt = &gen(Gen::TauPt(1)) * &gen(Gen::TauPt(2));
    let c4 = &(&kk.scale(&qr(-1, 4)) + &chi) * &ptpt;
    vec![
        Poly::one(),
        Poly::zero(),
        -gen(Gen::Diag),
        gen(Gen::JK).scale(&qr(-1, 2)),
        c4,
    ]
}

/// Total Chern class of 𝓔_{±ζ}^{1,1}: (1 + τ₁*ζ)·c(τ₂*O(ζ − K) ⊗ I_{Δ₀}).
fn chern_11(sign: Sign, c4: DiagonalC4) -> Vec<Class> {
    let v = Variety::XxX;
    let z1 = sign.zeta().map(|b| Gen::Tau(1, b));
    let w2 = sign.zeta_minus_k().map(|b| Gen::Tau(2, b));
    let ch = ch_ideal_diagonal();
    let ch_total = ch.iter().fold(Poly::zero(), |a, c| &a + c);
    let twisted = v.mul(&exp_class(v, &w2), &ch_total);
    let tw_parts: Vec<Class> = (0..=4).map(|k| component(&twisted, k)).collect();
    let c_tw = chern_from_ch(v, &tw_parts);
    let c_tw_total = c_tw.iter().fold(Poly::zero(), |a, c| &a + c);
    let tot = v.mul(&(&Poly::one() + &z1), &c_tw_total);
    let mut parts: Vec<Class> = (0..=4).map(|k| component(&tot, k)).collect();
    if c4 == DiagonalC4::Tabulated {
        parts[4] = gen(Gen::JKK).scale(&qr(-1, 2));
    }
    parts
}

/// Chern classes of 𝓔_{±ζ}^{n₁,n₂} on Hilb^{n₁}X × Hilb^{n₂}X.
pub fn chern_of_e(
    n1: u32,
    n2: u32,
    sign: Sign,
    c4: DiagonalC4,
) -> Result<BundleClassData, EngineError> {
    let ell = i64::from(n1 + n2);
    let rank = match sign {
        Sign::Plus => Rank {
            ell,
            h_plus: 1,
            h_minus: 0,
        },
        Sign::Minus => Rank {
            ell,
            h_plus: 0,
            h_minus: 1,
        },
    };
    let z = sign.zeta();
    let w = sign.zeta_minus_k();
    let b = |v, parts| Ok(BundleClassData::from_parts(v, rank, parts));
    match (n1, n2) {
        (0, 0) => b(Variety::Point, vec![Poly::one()]),
        (1, 0) => b(Variety::X, vec![Poly::one(), z.map(Gen::Cls)]),
        (0, 1) => b(Variety::X, vec![Poly::one(), w.map(Gen::Cls)]),
        (2, 0) => {
            let v = Variety::Hilb2;
            let s = z.map(Gen::Slant);
            let l = gen(Gen::L);
            let c1 = &s - &l;
            let c2 = half(
                &(&(&v.mul(&s, &s) - &(&scalar(&z.square()) * &gen(Gen::Xx))) - &v.mul(&s, &l)),
            );
            b(v, vec![Poly::one(), c1, c2])
        }
        (0, 2) => {
            let v = Variety::Hilb2;
            let s = w.map(Gen::Slant);
            let l = gen(Gen::L);
            let c1 = &s + &l;
            let c2 = half(
                &(&(&v.mul(&l, &s) + &v.mul(&s, &s)) - &(&scalar(&w.square()) * &gen(Gen::Xx))),
            );
            b(v, vec![Poly::one(), c1, c2])
        }
        (1, 1) => b(Variety::XxX, chern_11(sign, c4)),
        _ => Err(EngineError::NotImplemented(format!(
            "Chern data of E^({n1},{n2}) (ℓ ≥ 3)"
        ))),
    }
}

/// c₁…c₄ of 𝓔_ζ^{1,1} exactly as tabulated in closed form (c₄ tabulated variant).
pub fn tabulated_chern_11(sign: Sign) -> Vec<Class> {
    let v = Variety::XxX;
    let z1 = sign.zeta().map(|b| Gen::Tau(1, b));
    let w2 = sign.zeta_minus_k().map(|b| Gen::Tau(2, b));
    let diag = gen(Gen::Diag);
    vec![
        Poly::one(),
        &z1 + &w2,
        &v.mul(&z1, &w2) + &diag,
        &(&v.mul(&z1, &diag) - &v.mul(&w2, &diag)) - &gen(Gen::JK),
        gen(Gen::JKK).scale(&qr(-1, 2)),
    ]
}

#[cfg(test)]
mod tests {
    use super::super::{evaluate_top, pair, render, sym, Sym};
    use super::*;

    #[test]
    fn segre_small_cases() {
        let v = Variety::X;
        let c1 = gen(Gen::Cls(Base::Alpha));
        let s = segre_from_chern(v, &[Poly::one(), c1.clone()]);
        assert_eq!(s[1], -c1.clone());
        assert_eq!(s[2], v.mul(&c1, &c1));
        let c2 = gen(Gen::Pt);
        let s = segre_from_chern(v, &[Poly::one(), c1.clone(), c2.clone()]);
        assert_eq!(s[2], &v.mul(&c1, &c1) - &c2);
    }

    #[test]
    fn dual_and_sum() {
        let x = gen(Gen::Cls(Base::Alpha));
        let y = gen(Gen::Cls(Base::Beta));
        let bx = BundleClassData::from_parts(
            Variety::X,
            Rank {
                ell: 1,
                h_plus: 0,
                h_minus: 0,
            },
            vec![Poly::one(), x.clone()],
        );
        let by = BundleClassData::from_parts(
            Variety::X,
            Rank {
                ell: 1,
                h_plus: 0,
                h_minus: 0,
            },
            vec![Poly::one(), y.clone()],
        );
        assert_eq!(bx.dual().c(1), -x.clone());
        let s = bx.sum(&by);
        assert_eq!(s.c(1), &x + &y);
        assert_eq!(s.c(2), &x * &y);
        assert_eq!(s.rank.ell, 2);
        // s₁(E ⊕ F^∨) = c₁(F) − c₁(E)
        let sd = bx.sum(&by.dual()).segre();
        assert_eq!(sd[1], &y - &x);
    }

    #[test]
    fn derived_11_matches_closed_form_through_c3() {
        for sign in [Sign::Plus, Sign::Minus] {
            let d = chern_of_e(1, 1, sign, DiagonalC4::Derived).unwrap();
            let p = tabulated_chern_11(sign);
            for i in 0..=3 {
                assert_eq!(d.c(i), p[i], "c{i} sign {sign:?}");
            }
            let c4 = evaluate_top(Variety::XxX, &d.c(4)).unwrap();
            assert!(c4.is_zero(), "derived c4 = {}", render(&c4));
            let pr = chern_of_e(1, 1, sign, DiagonalC4::Tabulated).unwrap();
            let c4p = evaluate_top(Variety::XxX, &pr.c(4)).unwrap();
            assert_eq!(c4p, pair(Base::K, Base::K).scale(&qr(-1, 2)));
        }
    }

    #[test]
    fn e20_top_chern_vanish_and_s4() {
        let e = chern_of_e(2, 0, Sign::Plus, DiagonalC4::Derived).unwrap();
        assert!(e.c(3).is_zero() && e.c(4).is_zero());
        let s4 = evaluate_top(Variety::Hilb2, &e.segre()[4]).unwrap();
        let zz = pair(Base::Zeta, Base::Zeta);
        let expect = &(&(&zz.pow(2).scale(&qr(1, 2)) - &zz.scale(&q(5)))
            - &pair(Base::Zeta, Base::K).scale(&qr(5, 2)))
            + &(&sym(Sym::Chi).scale(&q(6)) - &pair(Base::K, Base::K));
        assert_eq!(s4, expect);
    }

    #[test]
    fn unsupported_lengths() {
        assert!(matches!(
            chern_of_e(3, 0, Sign::Plus, DiagonalC4::Derived),
            Err(EngineError::NotImplemented(_))
        ));
    }
}
