// SPDX-License-Identifier: Apache-2.0

//! Integer factorization: trial division by the primes below 10^6, then a
//! strong-probable-prime test and Brent's variant of Pollard rho on whatever
//! cofactor remains.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 1_000_000;
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// `sign * prod(p^e)` with primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactoredInteger {
    pub sign: i8,
    #[serde(serialize_with = "serialize_factors")]
    pub factors: Vec<(BigInt, u32)>,
}

fn serialize_factors<S: serde::Serializer>(
    f: &[(BigInt, u32)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(f.len()))?;
    for (p, e) in f {
        seq.serialize_element(&(p.to_string(), *e))?;
    }
    seq.end()
}

impl FactoredInteger {
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            v *= num_traits::pow(p.clone(), *e as usize);
        }
        v
    }

    /// Signed product of the primes appearing to an odd power.
    pub fn squarefree_part(&self) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            if e % 2 == 1 {
                v *= p;
            }
        }
        v
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

pub fn factorize(n: &BigInt) -> Result<FactoredInteger> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor zero".into()));
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut primes: Vec<BigUint> = Vec::new();
    let m = n.magnitude().clone();
    match m.to_u64() {
        Some(m) => factor_u64(m, &mut primes),
        None => factor_big(m, &mut primes),
    }
    primes.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        let p = BigInt::from(p);
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(FactoredInteger { sign, factors })
}

fn factor_u64(mut m: u64, out: &mut Vec<BigUint>) {
    for &p in small_primes() {
        let p = p as u64;
        if p * p > m {
            break;
        }
        while m % p == 0 {
            out.push(BigUint::from(p));
            m /= p;
        }
    }
    if m == 1 {
        return;
    }
    let limit = TRIAL_LIMIT as u64;
    if m < limit * limit || is_prime_u64(m) {
        out.push(BigUint::from(m));
        return;
    }
    split_u64(m, out);
}

fn split_u64(m: u64, out: &mut Vec<BigUint>) {
    if m == 1 {
        return;
    }
    if is_prime_u64(m) {
        out.push(BigUint::from(m));
        return;
    }
    let d = rho_u64(m);
    split_u64(d, out);
    split_u64(m / d, out);
}

fn factor_big(mut m: BigUint, out: &mut Vec<BigUint>) {
    for &p in small_primes() {
        if let Some(small) = m.to_u64() {
            return factor_u64(small, out);
        }
        loop {
            let (q, r) = m.div_rem(&BigUint::from(p));
            if !r.is_zero() {
                break;
            }
            out.push(BigUint::from(p));
            m = q;
        }
    }
    if let Some(small) = m.to_u64() {
        return factor_u64(small, out);
    }
    split_big(m, out);
}

fn split_big(m: BigUint, out: &mut Vec<BigUint>) {
    if let Some(small) = m.to_u64() {
        return split_u64(small, out);
    }
    if is_prime_big(&m) {
        out.push(m);
        return;
    }
    let d = rho_big(&m);
    let q = &m / &d;
    split_big(d, out);
    split_big(q, out);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Strong probable prime test to the first twelve prime bases. Deterministic
/// below 3.3 * 10^24.
fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

pub fn is_probable_prime(n: &BigInt) -> bool {
    n.sign() == Sign::Plus && is_prime_big(n.magnitude())
}

fn rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1usize;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(r - k).min(128) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn rho_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    if !n.bit(0) {
        return BigUint::from(2u32);
    }
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = one.clone();
        let mut q = one.clone();
        let mut r = 1usize;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..(r - k).min(128) {
                    y = f(&y);
                    q = (&q * diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = diff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    fn small(f: &FactoredInteger) -> Vec<(u64, u32)> {
        f.factors.iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect()
    }

    #[test]
    fn examples() {
        let one = factorize(&BigInt::from(1)).unwrap();
        assert_eq!((one.sign, one.factors.len()), (1, 0));
        let twelve = factorize(&BigInt::from(12)).unwrap();
        assert_eq!(small(&twelve), vec![(2, 2), (3, 1)]);
        let f = factorize(&BigInt::from(-135)).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(small(&f), trial_division(135));
        assert_eq!(small(&f), vec![(3, 3), (5, 1)]);
        assert!(factorize(&BigInt::from(0)).is_err());
    }

    #[test]
    fn matches_trial_division() {
        for n in (1u64..5000).chain([999_983 * 999_979, 1 << 40, 600_851_475_143]) {
            let f = factorize(&BigInt::from(n)).unwrap();
            assert_eq!(small(&f), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn large_semiprimes() {
        // primes above the trial-division limit, product beyond u64
        let p: BigInt = "1000000000039".parse().unwrap();
        let q: BigInt = "1000000007".parse().unwrap();
        let r: BigInt = "2147483647".parse().unwrap(); // 2^31 - 1
        let n = &p * &q * &r * &r * BigInt::from(-12);
        let f = factorize(&n).unwrap();
        assert_eq!(f.value(), n);
        assert_eq!(f.sign, -1);
        for (p, _) in &f.factors {
            assert!(is_probable_prime(p));
        }
        assert_eq!(f.factors.len(), 5);
        assert_eq!(f.squarefree_part(), -(BigInt::from(3) * &p * &q));
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2) && is_prime_u64(999_983) && !is_prime_u64(1));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
        let m127: BigUint = (BigUint::one() << 127u32) - 1u32;
        assert!(is_prime_big(&m127));
        assert!(!is_prime_big(&(&m127 * 3u32)));
    }
}
