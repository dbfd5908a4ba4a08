//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational; factorial-sized coefficients overflow `i64` quickly.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `p/q` rendering in lowest terms; integers render without a denominator.
pub fn render(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

pub fn floor_i64(x: &Q) -> Option<i64> {
    x.floor().to_integer().to_i64()
}

pub fn ceil_i64(x: &Q) -> Option<i64> {
    x.ceil().to_integer().to_i64()
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `(-1)^e` for any integer exponent.
pub fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn is_even(x: i64) -> bool {
    x.is_even()
}

pub fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

pub fn one() -> Q {
    Q::one()
}

pub fn zero() -> Q {
    Q::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_lowest_terms() {
        assert_eq!(render(&qr(78, 16)), "39/8");
        assert_eq!(render(&qr(-6, 3)), "-2");
        assert_eq!(render(&q(0)), "0");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["39/8", "-2", "0", "7/3"] {
            assert_eq!(render(&parse(s).unwrap()), s);
        }
        assert!(parse("1/0").is_none());
    }

    #[test]
    fn sign_pow_negative_exponent() {
        assert_eq!(sign_pow(-1), -1);
        assert_eq!(sign_pow(-2), 1);
    }
}
