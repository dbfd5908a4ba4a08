//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by sorted monomials, so two polynomials are
//! equal iff they are syntactically equal after canonicalization.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::rational::{render, Q};

/// Product of variables with positive exponents, sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial<V: Ord>(Vec<(V, u32)>);

impl<V: Ord + Clone> Monomial<V> {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: V) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (V, u32)>) -> Self {
        let mut m: BTreeMap<V, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *m.entry(v).or_insert(0) += e;
            }
        }
        Monomial(m.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(V, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: &V) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Weighted total degree.
    pub fn degree_by(&self, w: impl Fn(&V) -> u32) -> u32 {
        self.0.iter().map(|(v, e)| w(v) * e).sum()
    }

    /// Variables repeated according to their exponents.
    pub fn expanded(&self) -> Vec<V> {
        let mut out = Vec::new();
        for (v, e) in &self.0 {
            for _ in 0..*e {
                out.push(v.clone());
            }
        }
        out
    }

    pub fn without(&self, v: &V) -> Self {
        Monomial(self.0.iter().filter(|(w, _)| w != v).cloned().collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<V: Ord> {
    terms: BTreeMap<Monomial<V>, Q>,
}

impl<V: Ord + Clone> Default for Poly<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Ord + Clone> Poly<V> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(crate::rational::q(n))
    }

    pub fn var(v: V) -> Self {
        Self::term(Q::one(), Monomial::var(v))
    }

    pub fn term(c: Q, m: Monomial<V>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<V>, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial<V>) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// `Some(c)` iff the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn variables(&self) -> Vec<V> {
        let mut vs: Vec<V> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: &V) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial<V>) -> bool) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Ring homomorphism induced by a substitution of each variable.
    pub fn substitute<W: Ord + Clone>(&self, f: impl Fn(&V) -> Poly<W>) -> Poly<W> {
        let mut cache: BTreeMap<V, Poly<W>> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::<W>::constant(c.clone());
            for (v, e) in m.factors() {
                let base = cache.entry(v.clone()).or_insert_with(|| f(v)).clone();
                t = &t * &base.pow(*e);
            }
            out += t;
        }
        out
    }

    /// Substitutes some variables and leaves the rest untouched.
    pub fn replace(&self, f: impl Fn(&V) -> Option<Poly<V>>) -> Poly<V> {
        self.substitute(|v| f(v).unwrap_or_else(|| Poly::var(v.clone())))
    }

    /// Collects coefficients of powers of `v`: `self = Σ_e c_e · v^e`.
    pub fn coefficients_in(&self, v: &V) -> BTreeMap<u32, Poly<V>> {
        let mut out: BTreeMap<u32, Poly<V>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            out.entry(e).or_default().add_term(m.without(v), c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    pub fn max_degree_by(&self, w: impl Fn(&V) -> u32) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_by(&w)).max()
    }

    /// Renders with a caller-supplied variable formatter.
    pub fn render_with(&self, name: impl Fn(&V) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Q::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .factors()
                .iter()
                .map(|(v, e)| {
                    if *e == 1 {
                        name(v)
                    } else {
                        format!("{}^{}", name(v), e)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&render(&abs));
            } else if abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", render(&abs), mono.join("*")));
            }
        }
        out
    }
}

impl<V: Ord + Clone + fmt::Display> fmt::Display for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|v| v.to_string()))
    }
}

impl<V: Ord + Clone> AddAssign<Poly<V>> for Poly<V> {
    fn add_assign(&mut self, rhs: Poly<V>) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<V: Ord + Clone> AddAssign<&Poly<V>> for Poly<V> {
    fn add_assign(&mut self, rhs: &Poly<V>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<V: Ord + Clone> SubAssign<&Poly<V>> for Poly<V> {
    fn sub_assign(&mut self, rhs: &Poly<V>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<V: Ord + Clone> Add for &Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<V: Ord + Clone> Add for Poly<V> {
    type Output = Poly<V>;
    fn add(mut self, rhs: Poly<V>) -> Poly<V> {
        self += rhs;
        self
    }
}

impl<V: Ord + Clone> Sub for &Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<V: Ord + Clone> Sub for Poly<V> {
    type Output = Poly<V>;
    fn sub(mut self, rhs: Poly<V>) -> Poly<V> {
        self -= &rhs;
        self
    }
}

impl<V: Ord + Clone> Neg for &Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<V: Ord + Clone> Neg for Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        -&self
    }
}

impl<V: Ord + Clone> Mul for &Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: &Poly<V>) -> Poly<V> {
        let mut acc: BTreeMap<Monomial<V>, Q> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { terms: acc }
    }
}

impl<V: Ord + Clone> Mul for Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: Poly<V>) -> Poly<V> {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn x() -> Poly<char> {
        Poly::var('x')
    }
    fn y() -> Poly<char> {
        Poly::var('y')
    }

    #[test]
    fn binomial_square() {
        let s = (&x() + &y()).pow(2);
        let expect = x().pow(2) + y().pow(2) + (&x() * &y()).scale(&q(2));
        assert_eq!(s, expect);
    }

    #[test]
    fn cancellation_leaves_zero() {
        let p = &(&x() + &y()) - &(&y() + &x());
        assert!(p.is_zero());
        assert_eq!(p.as_constant(), Some(q(0)));
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        let p = &x().pow(2) - &y();
        let s: Poly<char> = p.substitute(|v| {
            if *v == 'x' {
                Poly::int(3)
            } else {
                Poly::int(4)
            }
        });
        assert_eq!(s.as_constant(), Some(q(5)));
    }

    #[test]
    fn coefficients_in_variable() {
        let p = &(&x().pow(2) * &y()) + &x().scale(&q(3));
        let cs = p.coefficients_in(&'x');
        assert_eq!(cs[&2], y());
        assert_eq!(cs[&1], Poly::int(3));
    }

    #[test]
    fn render_is_stable() {
        let p = &x().pow(2).scale(&q(2)) - &Poly::int(1);
        assert_eq!(p.to_string(), "2*x^2 - 1");
    }
}
