//! Symbolic intersection calculus on the parameter varieties Hilbⁿ¹X × Hilbⁿ²X (n ≤ 2).
//!
//! Classes are polynomials over two kinds of variables: generators of the
//! cohomology ring of a [`Variety`] (graded), and scalar pairing symbols
//! ([`Sym`], degree 0). Top-degree monomials are evaluated by explicit rule
//! tables; anything outside the tables is an error, never silently zero.

pub mod bundles;
pub mod engine;
pub mod oracles;

use std::fmt;

use thiserror::Error;

use crate::poly::{Monomial, Poly};
use crate::rational::{q, qr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("no evaluation rule on {variety} for top monomial {monomial}")]
    UnknownMonomial { variety: Variety, monomial: String },
    #[error("class on {variety} has a term of degree {degree}, expected {top}")]
    NonHomogeneous {
        variety: Variety,
        degree: u32,
        top: u32,
    },
    #[error("not implemented: {0}")]
    NotImplemented(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("unexpected symbol {0} in result")]
    UnexpectedSymbol(String),
}

/// Surface classes that may appear inside pairings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    Alpha,
    Beta,
    Gamma,
    Zeta,
    K,
}

impl Base {
    fn letter(self) -> char {
        match self {
            Base::Alpha => 'A',
            Base::Beta => 'B',
            Base::Gamma => 'C',
            Base::Zeta => 'Z',
            Base::K => 'K',
        }
    }
}

/// Degree-0 scalar symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    /// x·y, stored with x ≤ y.
    Pair(Base, Base),
    /// χ(O_X).
    Chi,
    /// a = ζ·α/2.
    A,
    /// d = −p − 3.
    D,
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Pair(x, y) => write!(f, "{}{}", x.letter(), y.letter()),
            Sym::Chi => f.write_str("CHI"),
            Sym::A => f.write_str("a"),
            Sym::D => f.write_str("d"),
        }
    }
}

/// Exact polynomial in pairing symbols.
pub type PairingPoly = Poly<Sym>;

pub fn pair(x: Base, y: Base) -> PairingPoly {
    Poly::var(Sym::Pair(x.min(y), x.max(y)))
}

pub fn sym(s: Sym) -> PairingPoly {
    Poly::var(s)
}

/// Integer combination of base classes, e.g. ζ − K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lin(pub Vec<(Base, i64)>);

impl Lin {
    pub fn base(b: Base) -> Self {
        Lin(vec![(b, 1)])
    }

    pub fn new(terms: &[(Base, i64)]) -> Self {
        Lin(terms.to_vec())
    }

    pub fn neg(&self) -> Self {
        Lin(self.0.iter().map(|(b, c)| (*b, -c)).collect())
    }

    pub fn pair(&self, other: &Lin) -> PairingPoly {
        let mut out = Poly::zero();
        for (b1, c1) in &self.0 {
            for (b2, c2) in &other.0 {
                out += pair(*b1, *b2).scale(&q(c1 * c2));
            }
        }
        out
    }

    pub fn square(&self) -> PairingPoly {
        self.pair(self)
    }

    /// Image under a linear map b ↦ gen(b), as a graded class.
    pub fn map(&self, gen: impl Fn(Base) -> Gen) -> Class {
        let mut out = Poly::zero();
        for (b, c) in &self.0 {
            out.add_term(Monomial::var(Var::G(gen(*b))), q(*c));
        }
        out
    }
}

/// Cohomology generators; complex degree in [`Gen::degree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    /// Class on X.
    Cls(Base),
    /// Point class on X.
    Pt,
    /// τᵢ*γ on X×X (i ∈ {1,2}).
    Tau(u8, Base),
    /// τᵢ*(pt) on X×X.
    TauPt(u8),
    /// Diagonal Δ₀.
    Diag,
    /// j_*K_{Δ₀}.
    JK,
    /// j_*(K²), read as a degree-4 class.
    JKK,
    /// [𝒵₂]/γ on Hilb²X.
    Slant(Base),
    /// L on Hilb²X (half the boundary divisor, up to sign).
    L,
    /// X_x = [𝒵₂]/x on Hilb²X.
    Xx,
}

impl Gen {
    pub fn degree(&self) -> u32 {
        match self {
            Gen::Cls(_) | Gen::Tau(..) | Gen::Slant(_) | Gen::L => 1,
            Gen::Pt | Gen::TauPt(_) | Gen::Diag | Gen::Xx => 2,
            Gen::JK => 3,
            Gen::JKK => 4,
        }
    }

    /// Exchange of the two factors of X×X.
    pub fn swapped(&self) -> Gen {
        match *self {
            Gen::Tau(i, b) => Gen::Tau(3 - i, b),
            Gen::TauPt(i) => Gen::TauPt(3 - i),
            g => g,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Cls(b) => write!(f, "x{}", b.letter()),
            Gen::Pt => f.write_str("pt"),
            Gen::Tau(i, b) => write!(f, "t{}{}", i, b.letter()),
            Gen::TauPt(i) => write!(f, "t{}pt", i),
            Gen::Diag => f.write_str("Diag"),
            Gen::JK => f.write_str("jK"),
            Gen::JKK => f.write_str("jKK"),
            Gen::Slant(b) => write!(f, "Z/{}", b.letter()),
            Gen::L => f.write_str("L"),
            Gen::Xx => f.write_str("Xx"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    S(Sym),
    G(Gen),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::S(s) => s.fmt(f),
            Var::G(g) => g.fmt(f),
        }
    }
}

/// Cohomology class with pairing-polynomial coefficients.
pub type Class = Poly<Var>;

pub fn gen(g: Gen) -> Class {
    Poly::var(Var::G(g))
}

/// Lifts a scalar into a class.
pub fn scalar(p: &PairingPoly) -> Class {
    p.substitute(|s| Poly::var(Var::S(*s)))
}

pub fn var_degree(v: &Var) -> u32 {
    match v {
        Var::S(_) => 0,
        Var::G(g) => g.degree(),
    }
}

pub fn degree_of(m: &Monomial<Var>) -> u32 {
    m.degree_by(var_degree)
}

/// Degree-`k` part of a class.
pub fn component(c: &Class, k: u32) -> Class {
    c.filter(|m| degree_of(m) == k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variety {
    Point,
    X,
    XxX,
    Hilb2,
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variety::Point => "POINT",
            Variety::X => "X",
            Variety::XxX => "XxX",
            Variety::Hilb2 => "HILB2",
        })
    }
}

impl Variety {
    pub fn top_degree(&self) -> u32 {
        match self {
            Variety::Point => 0,
            Variety::X => 2,
            Variety::XxX | Variety::Hilb2 => 4,
        }
    }

    pub fn admits(&self, g: &Gen) -> bool {
        match self {
            Variety::Point => false,
            Variety::X => matches!(g, Gen::Cls(_) | Gen::Pt),
            Variety::XxX => matches!(
                g,
                Gen::Tau(..) | Gen::TauPt(_) | Gen::Diag | Gen::JK | Gen::JKK
            ),
            Variety::Hilb2 => matches!(g, Gen::Slant(_) | Gen::L | Gen::Xx),
        }
    }

    /// Whether a monomial survives in the cohomology ring (by degree alone,
    /// plus the Künneth vanishing τᵢ*(H^{>4}X) = 0 on X×X).
    fn survives(&self, m: &Monomial<Var>) -> bool {
        if degree_of(m) > self.top_degree() {
            return false;
        }
        if *self == Variety::XxX {
            for side in 1..=2u8 {
                let deg: u32 = m
                    .factors()
                    .iter()
                    .map(|(v, e)| match v {
                        Var::G(Gen::Tau(i, _)) if *i == side => *e,
                        Var::G(Gen::TauPt(i)) if *i == side => 2 * e,
                        _ => 0,
                    })
                    .sum();
                if deg > 2 {
                    return false;
                }
            }
        }
        true
    }

    pub fn truncate(&self, c: &Class) -> Class {
        c.filter(|m| self.survives(m))
    }

    pub fn mul(&self, x: &Class, y: &Class) -> Class {
        self.truncate(&(x * y))
    }

    pub fn pow(&self, x: &Class, e: u32) -> Class {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Rule-table evaluation of a single top-degree product of generators.
    pub fn evaluate_gens(&self, gens: &[Gen]) -> Option<PairingPoly> {
        match self {
            Variety::Point => gens.is_empty().then(PairingPoly::one),
            Variety::X => eval_x(gens),
            Variety::XxX => eval_xx(gens),
            Variety::Hilb2 => eval_hilb2(gens),
        }
    }
}

fn eval_x(gens: &[Gen]) -> Option<PairingPoly> {
    match gens {
        [Gen::Pt] => Some(Poly::one()),
        [Gen::Cls(a), Gen::Cls(b)] => Some(pair(*a, *b)),
        _ => None,
    }
}

/// Restriction of a τ-monomial of degree 2 to the diagonal, evaluated on X.
fn diagonal_restriction(rest: &[Gen]) -> Option<PairingPoly> {
    let on_x: Option<Vec<Gen>> = rest
        .iter()
        .map(|g| match g {
            Gen::Tau(_, b) => Some(Gen::Cls(*b)),
            Gen::TauPt(_) => Some(Gen::Pt),
            _ => None,
        })
        .collect();
    eval_x(&on_x?)
}

fn eval_xx(gens: &[Gen]) -> Option<PairingPoly> {
    let count = |p: &dyn Fn(&Gen) -> bool| gens.iter().filter(|g| p(g)).count();
    let n_diag = count(&|g| *g == Gen::Diag);
    let n_jk = count(&|g| *g == Gen::JK);
    let n_jkk = count(&|g| *g == Gen::JKK);
    match (n_diag, n_jk, n_jkk) {
        (0, 0, 1) if gens.len() == 1 => Some(sym_pair(Base::K, Base::K)),
        (0, 1, 0) => match gens.iter().find(|g| **g != Gen::JK) {
            Some(Gen::Tau(_, b)) if gens.len() == 2 => Some(pair(Base::K, *b)),
            _ => None,
        },
        (2, 0, 0) if gens.len() == 2 => {
            Some(&sym(Sym::Chi).scale(&q(12)) - &sym_pair(Base::K, Base::K))
        }
        (1, 0, 0) => {
            let rest: Vec<Gen> = gens.iter().copied().filter(|g| *g != Gen::Diag).collect();
            diagonal_restriction(&rest)
        }
        (0, 0, 0) => {
            // Künneth: both sides must carry exactly degree 2
            let mut sides: [Vec<Gen>; 2] = [Vec::new(), Vec::new()];
            for g in gens {
                match g {
                    Gen::Tau(i, b) => sides[(*i - 1) as usize].push(Gen::Cls(*b)),
                    Gen::TauPt(i) => sides[(*i - 1) as usize].push(Gen::Pt),
                    _ => return None,
                }
            }
            let deg = |s: &Vec<Gen>| s.iter().map(Gen::degree).sum::<u32>();
            if deg(&sides[0]) != 2 || deg(&sides[1]) != 2 {
                return Some(Poly::zero());
            }
            Some(&eval_x(&sides[0])? * &eval_x(&sides[1])?)
        }
        _ => None,
    }
}

fn sym_pair(x: Base, y: Base) -> PairingPoly {
    pair(x, y)
}

fn eval_hilb2(gens: &[Gen]) -> Option<PairingPoly> {
    let mut slants = Vec::new();
    let (mut nl, mut nx) = (0, 0);
    for g in gens {
        match g {
            Gen::Slant(b) => slants.push(*b),
            Gen::L => nl += 1,
            Gen::Xx => nx += 1,
            _ => return None,
        }
    }
    let s = slants.len();
    let kk = || pair(Base::K, Base::K);
    let chi = || sym(Sym::Chi);
    Some(match (nx, s, nl) {
        (2, 0, 0) => Poly::one(),
        (1, 2, 0) => pair(slants[0], slants[1]),
        (1, 1, 1) => Poly::zero(),
        (1, 0, 2) => Poly::int(-1),
        (0, 4, 0) => {
            // polarization of ([𝒵₂]/α)⁴ = 3(α²)²
            let [a, b, c, d] = [slants[0], slants[1], slants[2], slants[3]];
            &(&(&pair(a, b) * &pair(c, d)) + &(&pair(a, c) * &pair(b, d)))
                + &(&pair(a, d) * &pair(b, c))
        }
        (0, 3, 1) => Poly::zero(),
        (0, 2, 2) => pair(slants[0], slants[1]).scale(&q(-2)),
        (0, 1, 3) => pair(slants[0], Base::K),
        (0, 0, 4) => &chi().scale(&q(6)) - &kk(),
        _ => return None,
    })
}

/// Splits a monomial into its scalar part and generator list.
pub fn split_monomial(m: &Monomial<Var>) -> (Monomial<Sym>, Vec<Gen>) {
    let mut scal = Vec::new();
    let mut gens = Vec::new();
    for (v, e) in m.factors() {
        match v {
            Var::S(s) => scal.push((*s, *e)),
            Var::G(g) => {
                for _ in 0..*e {
                    gens.push(*g);
                }
            }
        }
    }
    (Monomial::from_pairs(scal), gens)
}

pub fn render_gens(gens: &[Gen]) -> String {
    if gens.is_empty() {
        return "1".into();
    }
    gens.iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join("*")
}

/// Integral of a class of pure top degree.
pub fn evaluate_top(v: Variety, g: &Class) -> Result<PairingPoly, EngineError> {
    evaluate_with(v, g, |gens| v.evaluate_gens(gens))
}

/// Same as [`evaluate_top`] with a caller-supplied monomial evaluator.
pub fn evaluate_with(
    v: Variety,
    g: &Class,
    rule: impl Fn(&[Gen]) -> Option<PairingPoly>,
) -> Result<PairingPoly, EngineError> {
    let top = v.top_degree();
    let mut out = PairingPoly::zero();
    for (m, c) in g.terms() {
        let deg = degree_of(m);
        if deg != top {
            return Err(EngineError::NonHomogeneous {
                variety: v,
                degree: deg,
                top,
            });
        }
        let (scal, gens) = split_monomial(m);
        if let Some(bad) = gens.iter().find(|x| !v.admits(x)) {
            return Err(EngineError::UnknownMonomial {
                variety: v,
                monomial: format!("{} (generator {} not on {})", render_gens(&gens), bad, v),
            });
        }
        let val = rule(&gens).ok_or_else(|| EngineError::UnknownMonomial {
            variety: v,
            monomial: render_gens(&gens),
        })?;
        out += &Poly::term(c.clone(), scal) * &val;
    }
    Ok(out)
}

/// Substitutes a = ζ·α/2, i.e. AZ ↦ 2a.
pub fn to_a_form(p: &PairingPoly) -> PairingPoly {
    p.replace(|s| match s {
        Sym::Pair(Base::Alpha, Base::Zeta) => Some(sym(Sym::A).scale(&q(2))),
        _ => None,
    })
}

/// Sets χ(O_X) = 1.
pub fn chi_one(p: &PairingPoly) -> PairingPoly {
    p.replace(|s| (*s == Sym::Chi).then(PairingPoly::one))
}

/// Renders with conventional names (ZZ, KK, AA, a, d, CHI, …).
pub fn render(p: &PairingPoly) -> String {
    p.to_string()
}

/// (1/2)·x convenience.
pub fn half(p: &Class) -> Class {
    p.scale(&qr(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(x: Gen) -> Class {
        gen(x)
    }

    #[test]
    fn hilb2_examples() {
        let s = g(Gen::Slant(Base::Alpha));
        let v = evaluate_top(Variety::Hilb2, &s.pow(4)).unwrap();
        assert_eq!(v, pair(Base::Alpha, Base::Alpha).pow(2).scale(&q(3)));
        let xl2 = &g(Gen::Xx) * &g(Gen::L).pow(2);
        assert_eq!(evaluate_top(Variety::Hilb2, &xl2).unwrap(), Poly::int(-1));
        let l4 = evaluate_top(Variety::Hilb2, &g(Gen::L).pow(4)).unwrap();
        assert_eq!(render(&l4), "6*CHI - KK");
    }

    #[test]
    fn diagonal_square() {
        let v = evaluate_top(Variety::XxX, &g(Gen::Diag).pow(2)).unwrap();
        assert_eq!(v, &sym(Sym::Chi).scale(&q(12)) - &pair(Base::K, Base::K));
    }

    #[test]
    fn kunneth() {
        let c = &(&g(Gen::Tau(1, Base::Alpha)) * &g(Gen::Tau(1, Base::Zeta))) * &g(Gen::TauPt(2));
        assert_eq!(
            evaluate_top(Variety::XxX, &c).unwrap(),
            pair(Base::Alpha, Base::Zeta)
        );
        let lopsided = &g(Gen::TauPt(1)) * &g(Gen::TauPt(1));
        assert!(evaluate_top(Variety::XxX, &lopsided).unwrap().is_zero());
        assert!(Variety::XxX.truncate(&lopsided).is_zero());
    }

    #[test]
    fn unknown_and_nonhomogeneous() {
        let bad = &g(Gen::Diag) * &g(Gen::Slant(Base::Alpha)).pow(2);
        assert!(matches!(
            evaluate_top(Variety::XxX, &bad),
            Err(EngineError::UnknownMonomial { .. })
        ));
        assert!(matches!(
            evaluate_top(Variety::X, &g(Gen::Cls(Base::K))),
            Err(EngineError::NonHomogeneous { .. })
        ));
        assert!(evaluate_top(Variety::X, &g(Gen::Cls(Base::K)).pow(2)).is_ok());
    }

    #[test]
    fn scalar_coefficients_ride_along() {
        let c = &scalar(&pair(Base::Zeta, Base::Zeta)) * &g(Gen::Pt);
        assert_eq!(
            evaluate_top(Variety::X, &c).unwrap(),
            pair(Base::Zeta, Base::Zeta)
        );
    }
}
