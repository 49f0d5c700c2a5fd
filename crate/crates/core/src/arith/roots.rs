// SPDX-License-Identifier: Apache-2.0

//! Rational roots of integer polynomials.
//!
//! Real roots of the squarefree part are isolated with a Sturm sequence and
//! narrowed by exact bisection until the interval is shorter than `1/L^2`,
//! `L` the absolute leading coefficient. A rational root `p/q` in lowest terms
//! has `q | L`, and two distinct rationals with denominators at most `L` are
//! at least `1/L^2` apart, so the simplest rational in such an interval is the
//! only possible candidate. Every candidate is confirmed by exact substitution.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{factorize, sign_of, Rational};
use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, RatPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RationalRoot {
    #[serde(with = "super::serde_rational")]
    pub value: Rational,
    pub multiplicity: usize,
}

const FILTER_PRIMES: [u64; 16] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59];

/// All rational roots of `p`, ascending, each with its multiplicity.
pub fn rational_roots(p: &IntPolynomial) -> Result<Vec<RationalRoot>> {
    if p.is_zero() {
        return Err(Error::Domain("rational roots of the zero polynomial".into()));
    }
    let rp = p.primitive_part().to_rational();
    let squarefree = match rp.degree() {
        Some(0) => return Ok(Vec::new()),
        _ => rp.div_exact(&rp.gcd(&rp.derivative()))?,
    };
    let distinct = isolate_rational(&IntPolynomial::from_rational(&squarefree).primitive_part());
    Ok(with_multiplicities(&rp, distinct))
}

fn with_multiplicities(p: &RatPolynomial, roots: BTreeSet<Rational>) -> Vec<RationalRoot> {
    roots
        .into_iter()
        .map(|r| {
            let lin = RatPolynomial::linear_root(&r);
            let mut q = p.clone();
            let mut multiplicity = 0;
            while let Ok(next) = q.div_exact(&lin) {
                multiplicity += 1;
                q = next;
            }
            debug_assert!(multiplicity > 0);
            RationalRoot { value: r, multiplicity }
        })
        .collect()
}

fn eval_sign(p: &IntPolynomial, x: &Rational) -> i32 {
    sign_of(&p.eval_homogeneous(x.numer(), x.denom()))
}

/// Signed primitive integer multiple of `p` (the sign of every value kept).
fn signed_primitive(p: &RatPolynomial) -> IntPolynomial {
    let ip = IntPolynomial::from_rational(p);
    let g = ip.content();
    IntPolynomial::new(ip.coeffs().iter().map(|c| c / &g).collect())
}

/// Distinct rational roots of a primitive squarefree integer polynomial.
fn isolate_rational(s: &IntPolynomial) -> BTreeSet<Rational> {
    let mut found = BTreeSet::new();
    let mut s = s.clone();
    if s.degree().unwrap_or(0) == 0 {
        return found;
    }
    if s.coeffs()[0].is_zero() {
        found.insert(Rational::zero());
        s = IntPolynomial::new(s.coeffs()[1..].to_vec());
    }
    match s.degree() {
        Some(0) | None => return found,
        Some(1) => {
            let c = s.coeffs();
            found.insert(Rational::new(-c[0].clone(), c[1].clone()));
            return found;
        }
        _ => {}
    }
    if !has_roots_mod_small_primes(&s) {
        return found;
    }

    let sturm = sturm_sequence(&s);
    let variations = |x: &Rational| {
        let mut last = 0;
        let mut v = 0usize;
        for q in &sturm {
            let sg = eval_sign(q, x);
            if sg != 0 {
                if last != 0 && sg != last {
                    v += 1;
                }
                last = sg;
            }
        }
        v
    };

    let lead = s.leading().unwrap().abs();
    let max_ratio = s.coeffs()[..s.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default()
        .div_ceil(&lead);
    let bound = Rational::from_integer(BigInt::one() << (max_ratio.bits() + 1));
    let threshold = Rational::new(BigInt::one(), &lead * &lead);

    let lo = -bound.clone();
    let (vlo, vhi) = (variations(&lo), variations(&bound));
    let mut stack = vec![(lo, bound, vlo, vhi)];
    let two = Rational::from_integer(2.into());
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        let count = vlo - vhi;
        if count == 0 {
            continue;
        }
        if count == 1 {
            if let Some(r) = refine(&s, lo, hi, &threshold, &lead, &variations) {
                found.insert(r);
            }
            continue;
        }
        let mid = (&lo + &hi) / &two;
        if eval_sign(&s, &mid) == 0 {
            found.insert(mid.clone());
        }
        let vmid = variations(&mid);
        stack.push((lo, mid.clone(), vlo, vmid));
        stack.push((mid, hi, vmid, vhi));
    }
    found
}

/// Narrows `(lo, hi]`, known to hold exactly one real root, and returns that
/// root if it is rational.
fn refine(
    s: &IntPolynomial,
    mut lo: Rational,
    mut hi: Rational,
    threshold: &Rational,
    lead: &BigInt,
    variations: &dyn Fn(&Rational) -> usize,
) -> Option<Rational> {
    if eval_sign(s, &hi) == 0 {
        return Some(hi);
    }
    let two = Rational::from_integer(2.into());
    let vhi = variations(&hi);
    // `lo` can be another (already recorded) root; step off it first.
    while eval_sign(s, &lo) == 0 {
        let mid = (&lo + &hi) / &two;
        if eval_sign(s, &mid) == 0 {
            return Some(mid);
        }
        if variations(&mid) - vhi == 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let slo = eval_sign(s, &lo);
    let mut steps = 0u32;
    while &hi - &lo >= *threshold {
        let mid = (&lo + &hi) / &two;
        let sm = eval_sign(s, &mid);
        if sm == 0 {
            return Some(mid);
        }
        if sm == slo {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
        if steps % 32 == 0 {
            let c = simplest_between(&lo, &hi);
            if c.denom() <= lead && eval_sign(s, &c) == 0 {
                return Some(c);
            }
        }
    }
    let c = simplest_between(&lo, &hi);
    (c.denom() <= lead && eval_sign(s, &c) == 0).then_some(c)
}

fn sturm_sequence(s: &IntPolynomial) -> Vec<IntPolynomial> {
    let p0 = s.to_rational();
    let p1 = p0.derivative();
    let mut seq = vec![s.clone(), signed_primitive(&p1)];
    let (mut a, mut b) = (p0, p1);
    loop {
        let (_, r) = a.div_rem(&b).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        let next = signed_primitive(&-&r);
        a = b;
        b = next.to_rational();
        seq.push(next);
    }
    seq
}

fn has_roots_mod_small_primes(s: &IntPolynomial) -> bool {
    let lead = s.leading().unwrap();
    for &ell in &FILTER_PRIMES {
        let m = BigInt::from(ell);
        if (lead % &m).is_zero() {
            continue;
        }
        let c: Vec<u64> = s
            .coeffs()
            .iter()
            .map(|a| a.mod_floor(&m).to_u64().unwrap())
            .collect();
        let any_root = (0..ell).any(|x| c.iter().rev().fold(0u64, |acc, a| (acc * x + a) % ell) == 0);
        if !any_root {
            return false;
        }
    }
    true
}

/// The rational with the smallest denominator (then smallest magnitude) in
/// the closed interval `[lo, hi]`, by continued fraction descent.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "empty interval");
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if next <= *hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

fn divisors(n: &BigInt, budget: usize) -> Option<Vec<BigInt>> {
    let f = factorize(n).ok()?;
    let count: usize = f.factors.iter().map(|(_, e)| *e as usize + 1).product();
    if count > budget {
        return None;
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in &f.factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=*e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        out = next;
    }
    Some(out)
}

/// Rational roots by testing every `±a/b` with `a | constant` and
/// `b | leading`. Returns `None` when either coefficient has more than
/// `budget` divisors.
pub fn rational_roots_by_divisors(p: &IntPolynomial, budget: usize) -> Option<Vec<RationalRoot>> {
    if p.is_zero() {
        return None;
    }
    let rp = p.primitive_part();
    let mut found = BTreeSet::new();
    let zeros = rp.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        found.insert(Rational::zero());
    }
    let trimmed = IntPolynomial::new(rp.coeffs()[zeros..].to_vec());
    if trimmed.degree().unwrap_or(0) > 0 {
        let nums = divisors(&trimmed.coeffs()[0], budget)?;
        let dens = divisors(trimmed.leading().unwrap(), budget)?;
        for a in &nums {
            for b in &dens {
                for cand in [Rational::new(a.clone(), b.clone()), Rational::new(-a.clone(), b.clone())] {
                    if eval_sign(&trimmed, &cand) == 0 {
                        found.insert(cand);
                    }
                }
            }
        }
    }
    Some(with_multiplicities(&rp.to_rational(), found))
}
