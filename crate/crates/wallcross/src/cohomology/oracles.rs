//! Independent checks of the Hilbert-scheme rule table.

use super::{
    evaluate_top, evaluate_with, gen, pair, scalar, sym, Base, Class, EngineError, Gen,
    PairingPoly, Sym, Variety,
};
use crate::poly::Poly;
use crate::rational::{q, Q};

fn factorial(n: u32) -> Q {
    (1..=n).fold(q(1), |acc, k| acc * q(i64::from(k)))
}

/// ∫_{Hilb^k X} Π ([𝒵_k]/γᵢ), computed on X^k: each of the k slots must receive
/// exactly two of the factors, contributing their pairing; the sum is divided by k!.
pub fn slant_oracle(k: u32, multidegree: &[(Base, u32)]) -> Result<PairingPoly, EngineError> {
    if k > 4 {
        return Err(EngineError::OutOfRange(format!(
            "slant oracle supports k ≤ 4, got {k}"
        )));
    }
    let factors: Vec<Base> = multidegree
        .iter()
        .flat_map(|(b, e)| std::iter::repeat_n(*b, *e as usize))
        .collect();
    if factors.len() != 2 * k as usize {
        return Ok(Poly::zero());
    }
    let mut slots: Vec<Vec<Base>> = vec![Vec::new(); k as usize];
    let mut total = Poly::zero();
    fn rec(i: usize, factors: &[Base], slots: &mut Vec<Vec<Base>>, total: &mut PairingPoly) {
        if i == factors.len() {
            let mut prod = Poly::one();
            for s in slots.iter() {
                prod = &prod * &pair(s[0], s[1]);
            }
            *total += prod;
            return;
        }
        for j in 0..slots.len() {
            if slots[j].len() < 2 {
                slots[j].push(factors[i]);
                rec(i + 1, factors, slots, total);
                slots[j].pop();
            }
        }
    }
    rec(0, &factors, &mut slots, &mut total);
    Ok(total.scale(&(q(1) / factorial(k))))
}

/// (2k)!/(2^k k!) · (α²)^k.
pub fn lemma58_first(k: u32) -> PairingPoly {
    let c = factorial(2 * k) / (factorial(k) * pow2(k));
    pair(Base::Alpha, Base::Alpha).pow(k).scale(&c)
}

/// (2k)!/(2^k k!) · (α²)^{k−1} (α·β).
pub fn lemma58_second(k: u32) -> PairingPoly {
    if k == 0 {
        return Poly::zero();
    }
    let c = factorial(2 * k) / (factorial(k) * pow2(k));
    &pair(Base::Alpha, Base::Alpha).pow(k - 1) * &pair(Base::Alpha, Base::Beta).scale(&c)
}

/// (2k−2)!/(2^{k−1}(k−1)!) (α²)^{k−1} β² + (2k−2)!/(2^{k−2}(k−2)!) (α²)^{k−2} (α·β)².
pub fn lemma58_third(k: u32) -> PairingPoly {
    if k == 0 {
        return Poly::zero();
    }
    let aa = pair(Base::Alpha, Base::Alpha);
    let c1 = factorial(2 * k - 2) / (pow2(k - 1) * factorial(k - 1));
    let mut out = &aa.pow(k - 1) * &pair(Base::Beta, Base::Beta).scale(&c1);
    if k >= 2 {
        let c2 = factorial(2 * k - 2) / (pow2(k - 2) * factorial(k - 2));
        out += &aa.pow(k - 2) * &pair(Base::Alpha, Base::Beta).pow(2).scale(&c2);
    }
    out
}

fn pow2(k: u32) -> Q {
    q(1i64 << k)
}

/// Evaluates a top monomial on Hilb²X through the blowup B = Bl_{Δ₀}(X×X) → Hilb²X,
/// a double cover branched along the exceptional divisor E:
/// [𝒵₂]/γ ↦ τ₁*γ + τ₂*γ, X_x ↦ τ₁*pt + τ₂*pt, L ↦ E, and
/// E^k·P = (−1)^{k−1} ∫_X s_{k−2}(T_X)·P|_Δ for k ≥ 1; the result is halved.
pub fn blowup_hilb2(gens: &[Gen]) -> Option<PairingPoly> {
    let v = Variety::XxX;
    let mut k = 0u32;
    let mut p: Class = Poly::one();
    for g in gens {
        let img = match g {
            Gen::Slant(b) => &gen(Gen::Tau(1, *b)) + &gen(Gen::Tau(2, *b)),
            Gen::Xx => &gen(Gen::TauPt(1)) + &gen(Gen::TauPt(2)),
            Gen::L => {
                k += 1;
                continue;
            }
            _ => return None,
        };
        p = &p * &img;
    }
    let val = if k == 0 {
        evaluate_top(v, &v.truncate(&p)).ok()?
    } else {
        // restrict to the diagonal: both τᵢ become the identity
        let restricted = p.replace(|var| match var {
            super::Var::G(Gen::Tau(_, b)) => Some(gen(Gen::Cls(*b))),
            super::Var::G(Gen::TauPt(_)) => Some(gen(Gen::Pt)),
            _ => None,
        });
        let kk = pair(Base::K, Base::K);
        let seg: Class = match k {
            1 => Poly::zero(),
            2 => Poly::one(),
            3 => gen(Gen::Cls(Base::K)),
            4 => &scalar(&(&kk.scale(&q(2)) - &sym(Sym::Chi).scale(&q(12)))) * &gen(Gen::Pt),
            _ => return None,
        };
        let sign = if k % 2 == 1 { q(1) } else { q(-1) };
        let x = Variety::X;
        evaluate_top(x, &x.truncate(&(&restricted * &seg)))
            .ok()?
            .scale(&sign)
    };
    Some(val.scale(&crate::rational::qr(1, 2)))
}

/// Evaluates a Hilb² class with the blowup model instead of the rule table.
pub fn evaluate_hilb2_blowup(g: &Class) -> Result<PairingPoly, EngineError> {
    evaluate_with(Variety::Hilb2, g, blowup_hilb2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slant_oracle_examples() {
        let aa = pair(Base::Alpha, Base::Alpha);
        assert_eq!(
            slant_oracle(2, &[(Base::Alpha, 4)]).unwrap(),
            aa.pow(2).scale(&q(3))
        );
        assert_eq!(slant_oracle(1, &[(Base::Alpha, 2)]).unwrap(), aa);
        assert_eq!(
            slant_oracle(3, &[(Base::Alpha, 6)]).unwrap(),
            aa.pow(3).scale(&q(15))
        );
        assert_eq!(
            slant_oracle(4, &[(Base::Alpha, 8)]).unwrap(),
            aa.pow(4).scale(&q(105))
        );
        assert!(slant_oracle(5, &[(Base::Alpha, 10)]).is_err());
    }

    #[test]
    fn lemma58_against_oracle() {
        for k in 1..=4 {
            assert_eq!(
                slant_oracle(k, &[(Base::Alpha, 2 * k)]).unwrap(),
                lemma58_first(k)
            );
            assert_eq!(
                slant_oracle(k, &[(Base::Alpha, 2 * k - 1), (Base::Beta, 1)]).unwrap(),
                lemma58_second(k)
            );
            assert_eq!(
                slant_oracle(k, &[(Base::Alpha, 2 * k - 2), (Base::Beta, 2)]).unwrap(),
                lemma58_third(k)
            );
        }
    }

    #[test]
    fn blowup_model_reproduces_rule_table() {
        let bases = [Base::Alpha, Base::Beta, Base::Zeta, Base::K];
        let mut gens_all: Vec<Gen> = bases.iter().map(|b| Gen::Slant(*b)).collect();
        gens_all.push(Gen::L);
        gens_all.push(Gen::Xx);
        // every multiset of generators of total degree 4
        fn rec(start: usize, deg: u32, cur: &mut Vec<Gen>, all: &[Gen], out: &mut Vec<Vec<Gen>>) {
            if deg == 4 {
                out.push(cur.clone());
                return;
            }
            for i in start..all.len() {
                if deg + all[i].degree() <= 4 {
                    cur.push(all[i]);
                    rec(i, deg + all[i].degree(), cur, all, out);
                    cur.pop();
                }
            }
        }
        let mut monos = Vec::new();
        rec(0, 0, &mut Vec::new(), &gens_all, &mut monos);
        assert!(monos.len() > 50);
        for m in monos {
            let table = Variety::Hilb2.evaluate_gens(&m).expect("table covers all");
            let model = blowup_hilb2(&m).expect("model covers all");
            assert_eq!(table, model, "{}", super::super::render_gens(&m));
        }
    }
}
