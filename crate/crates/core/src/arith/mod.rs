// SPDX-License-Identifier: Apache-2.0

//! Exact integer and rational arithmetic.
//!
//! [`Rational`] is `num_rational::BigRational`, which already keeps every value in
//! lowest terms with a positive denominator, so equal values hash equally.

mod factor;
mod roots;

pub use factor::{factorize, is_probable_prime, FactoredInteger};
pub use roots::{rational_roots, rational_roots_by_divisors, simplest_between, RationalRoot};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `num/den`, omitting the denominator when it is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Squarefree integer `s` with `q / s` a square in Q. Computed as the kernel of
/// `num * den`, one factorization per coprime part.
pub fn squarefree_kernel(q: &Rational) -> Result<BigInt> {
    if q.is_zero() {
        return Err(Error::Domain("squarefree kernel of zero".into()));
    }
    let num = factorize(q.numer())?;
    let den = factorize(q.denom())?;
    Ok(num.squarefree_part() * den.squarefree_part())
}

fn exact_nth_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return exact_nth_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

/// The nonnegative square root of `q` when `q` is a rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    rational_nth_root(q, 2)
}

/// A rational `r` with `r^k = q`, nonnegative for even `k`.
pub fn rational_nth_root(q: &Rational, k: u32) -> Option<Rational> {
    assert!(k >= 1);
    let n = exact_nth_root(q.numer(), k)?;
    let d = exact_nth_root(q.denom(), k)?;
    Some(Rational::new(n, d))
}

pub fn is_square(q: &Rational) -> bool {
    rational_sqrt(q).is_some()
}

pub(crate) fn sign_of(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub(crate) fn lcm_of_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Serde adapter writing a [`Rational`] as its `num/den` string.
pub mod serde_rational {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

/// Serde adapter for sequences of rationals as strings.
pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(qs.len()))?;
        for q in qs {
            seq.serialize_element(&format_rational(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(de::Error::custom))
            .collect()
    }
}

/// Serde adapter writing a [`BigInt`] as a decimal string.
pub mod serde_bigint {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        assert_eq!(squarefree_kernel(&int(1)).unwrap(), BigInt::from(1));
        assert_eq!(squarefree_kernel(&rat(4, 9)).unwrap(), BigInt::from(1));
        assert_eq!(squarefree_kernel(&rat(-5, 27)).unwrap(), BigInt::from(-15));
        assert!(squarefree_kernel(&int(0)).is_err());
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(rational_sqrt(&int(625)), Some(int(25)));
        assert_eq!(rational_sqrt(&rat(4, 9)), Some(rat(2, 3)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
        assert_eq!(rational_sqrt(&int(0)), Some(int(0)));
        assert_eq!(rational_nth_root(&rat(-8, 27), 3), Some(rat(-2, 3)));
        assert_eq!(rational_nth_root(&int(16), 4), Some(int(2)));
        assert_eq!(rational_nth_root(&int(-16), 4), None);
    }

    #[test]
    fn string_forms() {
        assert_eq!(format_rational(&rat(-1, 3)), "-1/3");
        assert_eq!(format_rational(&int(25)), "25");
        assert_eq!(parse_rational("2/-6").unwrap(), rat(-1, 3));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
