// SPDX-License-Identifier: Apache-2.0

//! Dense univariate polynomials over Q and Z.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, lcm_of_denominators, serde_rational_vec, Rational};
use crate::error::{Error, Result};

/// Polynomial over Q, constant term first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatPolynomial {
    #[serde(with = "serde_rational_vec")]
    coeffs: Vec<Rational>,
}

/// Polynomial over Z, constant term first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The linear polynomial `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn evaluate(&self, r: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * r + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d
            .leading()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / dl;
            if !q.is_zero() {
                for (j, c) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * c;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Domain("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_rescale();
        }
        a.monic()
    }

    /// Positive rational multiple with integer coprime coefficients, useful
    /// to keep remainder sequences small without changing any sign.
    fn primitive_rescale(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let ip = IntPolynomial::from_rational(self).primitive_part().to_rational();
        if self.leading().unwrap().is_negative() {
            -&ip
        } else {
            ip
        }
    }

    /// `x^n p(1/x)` for a declared degree `n >= deg p`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut v = vec![Rational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[n - i] = c.clone();
        }
        Self::new(v)
    }

    /// `p(c x)`
    pub fn scale_variable(&self, c: &Rational) -> Self {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Self::new(out)
    }

    /// `p(q(x))`
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Self::constant(c.clone());
        }
        acc
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = format_rational(&c.abs());
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = if mag == "1" && i > 0 { String::new() } else { mag };
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}x")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;
    fn add(self, rhs: Self) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;
    fn sub(self, rhs: Self) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &RatPolynomial {
    type Output = RatPolynomial;
    fn neg(self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;
    fn mul(self, rhs: Self) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::new(out)
    }
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Integer polynomial obtained by clearing the denominators of `p` (the
    /// lcm of the denominators times `p`).
    pub fn from_rational(p: &RatPolynomial) -> Self {
        let l = lcm_of_denominators(p.coeffs());
        Self::new(
            p.coeffs()
                .iter()
                .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                .collect(),
        )
    }

    pub fn to_rational(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, sign-normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::default();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// `den^n * p(num/den)` for `n = deg p`, exact and with the sign of
    /// `p(num/den)` when `den > 0`.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut pow = BigInt::one();
        for (idx, c) in self.coeffs.iter().rev().enumerate() {
            if idx == 0 {
                acc = c.clone();
            } else {
                pow *= den;
                acc = acc * num + c * &pow;
            }
        }
        acc
    }

    pub fn evaluate(&self, r: &Rational) -> Rational {
        self.to_rational().evaluate(r)
    }
}

fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn sylvester(p: &[BigInt], q: &[BigInt]) -> Vec<Vec<BigInt>> {
    let (m, n) = (p.len() - 1, q.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in p.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in q.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant as the determinant of the Sylvester matrix, computed by
/// fraction-free elimination on the cleared-denominator polynomials.
pub fn resultant(p: &RatPolynomial, q: &RatPolynomial) -> Result<Rational> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Domain("resultant with the zero polynomial".into()));
    }
    let (dp, dq) = (p.degree().unwrap(), q.degree().unwrap());
    if dp == 0 && dq == 0 {
        return Ok(Rational::one());
    }
    let lp = lcm_of_denominators(p.coeffs());
    let lq = lcm_of_denominators(q.coeffs());
    let ip = IntPolynomial::from_rational(p);
    let iq = IntPolynomial::from_rational(q);
    let det = det_bareiss(sylvester(ip.coeffs(), iq.coeffs()));
    // res(lp p, lq q) = lp^dq lq^dp res(p, q)
    let scale = num_traits::pow(lp, dq) * num_traits::pow(lq, dp);
    Ok(Rational::new(det, scale))
}

pub fn discriminant(p: &RatPolynomial) -> Result<Rational> {
    let n = match p.degree() {
        Some(n) if n >= 2 => n,
        _ => return Err(Error::Domain("discriminant needs degree at least 2".into())),
    };
    let r = resultant(p, &p.derivative())?;
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(r / p.leading().unwrap() * Rational::from_integer(sign.into()))
}

/// True iff `gcd(p, p')` is constant. The zero polynomial is not separable.
pub fn is_separable(p: &RatPolynomial) -> bool {
    match p.degree() {
        None => false,
        Some(0) | Some(1) => true,
        Some(_) => p.gcd(&p.derivative()).degree() == Some(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p(c: &[i64]) -> RatPolynomial {
        RatPolynomial::from_ints(c)
    }

    #[test]
    fn ring_ops() {
        let xp1 = p(&[1, 1]);
        let xm1 = p(&[-1, 1]);
        assert_eq!(&xp1 * &xm1, p(&[-1, 0, 1]));
        assert_eq!(p(&[1, 0, 1]).evaluate(&int(2)), int(5));
        assert_eq!(p(&[-1, 2]).evaluate(&rat(2, 3)), rat(1, 3));
        assert_eq!(&xp1 - &xp1, RatPolynomial::zero());
        assert_eq!(p(&[5, 0, 3]).derivative(), p(&[0, 6]));
    }

    #[test]
    fn division() {
        let f = p(&[-1, 0, 0, 1]);
        let (q, r) = f.div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        let (_, r) = p(&[1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(r, p(&[2]));
        assert!(f.div_rem(&RatPolynomial::zero()).is_err());
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[2, 2])), p(&[1, 1]));
    }

    #[test]
    fn resultant_examples() {
        // Sylvester determinant convention: res(x - a, x - b) = a - b
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-3, 1])).unwrap(), int(-2));
        assert_eq!(resultant(&p(&[-3, 1]), &p(&[-1, 1])).unwrap(), int(2));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[-1, 1])).unwrap(), int(2));
        assert!(resultant(&p(&[1]), &RatPolynomial::zero()).is_err());
        assert_eq!(resultant(&p(&[3]), &p(&[0, 0, 1])).unwrap(), int(9));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[1, 0, 1])).unwrap(), int(-4));
        assert_eq!(discriminant(&p(&[0, -1, 0, 1])).unwrap(), int(4));
        assert!(discriminant(&p(&[1, 1])).is_err());
        // rational coefficients: disc(x^2/4 - 1) = 0 - 4 * (1/4) * (-1)
        let q = RatPolynomial::new(vec![int(-1), int(0), rat(1, 4)]);
        assert_eq!(discriminant(&q).unwrap(), int(1));
    }

    #[test]
    fn separability() {
        assert!(!is_separable(&p(&[1, -2, 1])));
        assert!(is_separable(&p(&[1, 0, 1])));
        assert!(!is_separable(&RatPolynomial::zero()));
        assert!(is_separable(&p(&[7])));
    }

    #[test]
    fn int_poly_helpers() {
        let q = RatPolynomial::new(vec![rat(1, 2), rat(-1, 3), int(1)]);
        let ip = IntPolynomial::from_rational(&q);
        assert_eq!(ip, IntPolynomial::from_ints(&[3, -2, 6]));
        let f = IntPolynomial::from_ints(&[-4, 6, -2]);
        assert_eq!(f.content(), BigInt::from(2));
        assert_eq!(f.primitive_part(), IntPolynomial::from_ints(&[2, -3, 1]));
        // 3^2 * f(2/3) = 9 * (-4 + 4 - 8/9) = -8
        assert_eq!(f.eval_homogeneous(&BigInt::from(2), &BigInt::from(3)), BigInt::from(-8));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[2576, 8392, 0, -1, 1]).to_string(), "x^4 - x^3 + 8392x + 2576");
    }
}
