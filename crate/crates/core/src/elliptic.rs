// SPDX-License-Identifier: Apache-2.0

//! Elliptic curves over Q in long Weierstrass form
//! `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{ser::SerializeSeq, Serialize, Serializer};

use crate::arith::{format_rational, int, rational_nth_root, rational_sqrt, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EllipticCurve {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ECPoint {
    Infinity,
    Affine { x: Rational, y: Rational },
}

impl ECPoint {
    pub fn affine(x: Rational, y: Rational) -> Self {
        ECPoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ECPoint::Infinity)
    }
}

impl std::fmt::Display for ECPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ECPoint::Infinity => write!(f, "O"),
            ECPoint::Affine { x, y } => write!(f, "({}, {})", format_rational(x), format_rational(y)),
        }
    }
}

/// Serializes as `[a1, a2, a3, a4, a6]`.
impl Serialize for EllipticCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(5))?;
        for c in self.ainvs() {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }
}

impl EllipticCurve {
    pub fn new(a1: Rational, a2: Rational, a3: Rational, a4: Rational, a6: Rational) -> Result<Self> {
        let e = Self { a1, a2, a3, a4, a6 };
        if e.discriminant().is_zero() {
            return Err(Error::Domain("singular Weierstrass equation".into()));
        }
        Ok(e)
    }

    /// `y^2 = x^3 + a2 x^2 + a4 x + a6`
    pub fn short(a2: Rational, a4: Rational, a6: Rational) -> Result<Self> {
        Self::new(Rational::zero(), a2, Rational::zero(), a4, a6)
    }

    pub fn ainvs(&self) -> [&Rational; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    fn b_invariants(&self) -> (Rational, Rational, Rational, Rational) {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + int(4) * a2;
        let b4 = int(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + int(4) * a6;
        let b8 = a1 * a1 * a6 + int(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        (b2, b4, b6, b8)
    }

    pub fn c4(&self) -> Rational {
        let (b2, b4, _, _) = self.b_invariants();
        &b2 * &b2 - int(24) * b4
    }

    pub fn c6(&self) -> Rational {
        let (b2, b4, b6, _) = self.b_invariants();
        -(&b2 * &b2 * &b2) + int(36) * &b2 * b4 - int(216) * b6
    }

    pub fn discriminant(&self) -> Rational {
        let (b2, b4, b6, b8) = self.b_invariants();
        -(&b2 * &b2 * &b8) - int(8) * &b4 * &b4 * &b4 - int(27) * &b6 * &b6 + int(9) * &b2 * &b4 * &b6
    }

    pub fn j_invariant(&self) -> Rational {
        let c4 = self.c4();
        &c4 * &c4 * &c4 / self.discriminant()
    }

    pub fn is_on_curve(&self, p: &ECPoint) -> bool {
        match p {
            ECPoint::Infinity => true,
            ECPoint::Affine { x, y } => {
                let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
                let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
                lhs == rhs
            }
        }
    }

    fn check(&self, p: &ECPoint) -> Result<()> {
        if self.is_on_curve(p) {
            Ok(())
        } else {
            Err(Error::Domain("point is not on the curve".into()))
        }
    }

    pub fn neg(&self, p: &ECPoint) -> Result<ECPoint> {
        self.check(p)?;
        Ok(self.neg_unchecked(p))
    }

    fn neg_unchecked(&self, p: &ECPoint) -> ECPoint {
        match p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine { x, y } => ECPoint::affine(x.clone(), -y - &self.a1 * x - &self.a3),
        }
    }

    pub fn add(&self, p: &ECPoint, q: &ECPoint) -> Result<ECPoint> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &ECPoint, q: &ECPoint) -> ECPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (ECPoint::Infinity, _) => return q.clone(),
            (_, ECPoint::Infinity) => return p.clone(),
            (ECPoint::Affine { x: x1, y: y1 }, ECPoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let (slope, intercept) = if x1 == x2 {
            let denom = y1 + y2 + &self.a1 * x2 + &self.a3;
            if denom.is_zero() {
                return ECPoint::Infinity;
            }
            let num = int(3) * x1 * x1 + int(2) * &self.a2 * x1 + &self.a4 - &self.a1 * y1;
            let nu = -(x1 * x1 * x1) + &self.a4 * x1 + int(2) * &self.a6 - &self.a3 * y1;
            let d = int(2) * y1 + &self.a1 * x1 + &self.a3;
            (num / &d, nu / d)
        } else {
            let dx = x2 - x1;
            ((y2 - y1) / &dx, (y1 * x2 - y2 * x1) / dx)
        };
        let x3 = &slope * &slope + &self.a1 * &slope - &self.a2 - x1 - x2;
        let y3 = -(&slope + &self.a1) * &x3 - intercept - &self.a3;
        ECPoint::affine(x3, y3)
    }

    /// `n P` by double-and-add; negative `n` multiplies the negation.
    pub fn scalar_mul(&self, n: &BigInt, p: &ECPoint) -> Result<ECPoint> {
        self.check(p)?;
        let base = if n.is_negative() { self.neg_unchecked(p) } else { p.clone() };
        let n = n.magnitude();
        let mut acc = ECPoint::Infinity;
        for i in (0..n.bits()).rev() {
            acc = self.add_unchecked(&acc, &acc);
            if n.bit(i) {
                acc = self.add_unchecked(&acc, &base);
            }
        }
        Ok(acc)
    }

    /// Least `n <= cap` with `n P = O`.
    pub fn order_of_point(&self, p: &ECPoint, cap: u32) -> Result<Option<u32>> {
        self.check(p)?;
        let mut acc = p.clone();
        for n in 1..=cap {
            if acc.is_infinity() {
                return Ok(Some(n));
            }
            acc = self.add_unchecked(&acc, p);
        }
        Ok(None)
    }

    /// Whether `other` is isomorphic to `self` over Q: a rational `l != 0` with
    /// `c4' = l^4 c4` and `c6' = l^6 c6`.
    pub fn is_isomorphic_over_q(&self, other: &Self) -> bool {
        self.isomorphism_scale(other).is_some()
    }

    /// The square `l^2` of the scaling factor of a Q-isomorphism, if one exists.
    pub fn isomorphism_scale(&self, other: &Self) -> Option<Rational> {
        let (c4, c6) = (self.c4(), self.c6());
        let (d4, d6) = (other.c4(), other.c6());
        if c4.is_zero() != d4.is_zero() || c6.is_zero() != d6.is_zero() {
            return None;
        }
        if c4.is_zero() {
            // j = 0: need c6'/c6 to be a sixth power
            let l = rational_nth_root(&(d6 / c6), 6)?;
            return Some(&l * &l);
        }
        if c6.is_zero() {
            // j = 1728: need c4'/c4 to be a fourth power
            let l = rational_nth_root(&(d4 / c4), 4)?;
            return Some(&l * &l);
        }
        let s = (&d6 / &c6) / (&d4 / &c4);
        rational_sqrt(&s)?;
        (d4 == &s * &s * &c4 && d6 == &s * &s * &s * &c6).then_some(s)
    }
}

/// The curve `y^2 = c3 x^3 + c2 x^2 + c1 x + c0` together with its monic model
/// `Y^2 = X^3 + c2 X^2 + c1 c3 X + c0 c3^2`, related by `X = c3 x`, `Y = c3 y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicModel {
    pub cubic: [Rational; 4],
    pub curve: EllipticCurve,
}

impl Serialize for CubicModel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.curve.serialize(s)
    }
}

pub fn from_nonmonic_cubic(c3: &Rational, c2: &Rational, c1: &Rational, c0: &Rational) -> Result<CubicModel> {
    if c3.is_zero() {
        return Err(Error::Domain("leading coefficient of the cubic is zero".into()));
    }
    let curve = EllipticCurve::short(c2.clone(), c1 * c3, c0 * c3 * c3)?;
    Ok(CubicModel {
        cubic: [c0.clone(), c1.clone(), c2.clone(), c3.clone()],
        curve,
    })
}

impl CubicModel {
    pub fn leading(&self) -> &Rational {
        &self.cubic[3]
    }

    /// `(x, y)` on the cubic model to the monic model.
    pub fn to_monic(&self, x: &Rational, y: &Rational) -> ECPoint {
        ECPoint::affine(x * self.leading(), y * self.leading())
    }

    /// A point of the monic model back to `(x, y)` on the cubic model.
    pub fn from_monic(&self, p: &ECPoint) -> Option<(Rational, Rational)> {
        match p {
            ECPoint::Infinity => None,
            ECPoint::Affine { x, y } => Some((x / self.leading(), y / self.leading())),
        }
    }

    pub fn on_cubic(&self, x: &Rational, y: &Rational) -> bool {
        let [c0, c1, c2, c3] = &self.cubic;
        y * y == ((c3 * x + c2) * x + c1) * x + c0
    }

    pub fn cubic_polynomial(&self) -> crate::poly::RatPolynomial {
        crate::poly::RatPolynomial::new(self.cubic.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn short(a2: i64, a4: i64, a6: i64) -> EllipticCurve {
        EllipticCurve::short(int(a2), int(a4), int(a6)).unwrap()
    }

    fn pt(x: i64, y: i64) -> ECPoint {
        ECPoint::affine(int(x), int(y))
    }

    #[test]
    fn nonmonic_conversion() {
        let m = from_nonmonic_cubic(&int(1), &int(0), &int(-1), &int(0)).unwrap();
        assert_eq!(m.curve, short(0, -1, 0));
        let m = from_nonmonic_cubic(&int(4), &int(0), &int(0), &int(-4)).unwrap();
        assert_eq!(m.curve, short(0, 0, -64));
        assert!(m.on_cubic(&int(1), &int(0)));
        let p = m.to_monic(&int(1), &int(0));
        assert!(m.curve.is_on_curve(&p));
        assert_eq!(m.from_monic(&p), Some((int(1), int(0))));
        // y^2 = 4x^3 + 5 through (1, 3)
        let m = from_nonmonic_cubic(&int(4), &int(0), &int(0), &int(5)).unwrap();
        let p = m.to_monic(&int(1), &int(3));
        assert_eq!(p, pt(4, 12));
        assert!(m.curve.is_on_curve(&p));
        assert!(from_nonmonic_cubic(&int(0), &int(1), &int(1), &int(1)).is_err());
        assert!(from_nonmonic_cubic(&int(1), &int(0), &int(0), &int(0)).is_err());
    }

    #[test]
    fn group_law_basics() {
        let e = short(25, -512, 0);
        let p = pt(-32, -96);
        assert!(e.is_on_curve(&p));
        assert_eq!(e.add(&p, &ECPoint::Infinity).unwrap(), p);
        assert_eq!(e.add(&p, &e.neg(&p).unwrap()).unwrap(), ECPoint::Infinity);
        assert_eq!(e.scalar_mul(&BigInt::from(10), &p).unwrap(), ECPoint::Infinity);
        assert!(!e.scalar_mul(&BigInt::from(5), &p).unwrap().is_infinity());
        assert!(!e.scalar_mul(&BigInt::from(2), &p).unwrap().is_infinity());
        assert!(e.add(&p, &pt(1, 1)).is_err());
        assert_eq!(
            e.scalar_mul(&BigInt::from(-3), &p).unwrap(),
            e.neg(&e.scalar_mul(&BigInt::from(3), &p).unwrap()).unwrap()
        );
    }

    #[test]
    fn orders() {
        let e = short(25, -512, 0);
        assert_eq!(e.order_of_point(&ECPoint::Infinity, 16).unwrap(), Some(1));
        assert_eq!(e.order_of_point(&pt(0, 0), 16).unwrap(), Some(2));
        assert_eq!(e.order_of_point(&pt(-32, -96), 16).unwrap(), Some(10));
        assert_eq!(e.order_of_point(&pt(-32, -96), 9).unwrap(), None);
        // y^2 = x^3 + 1 has (2, 3) of order 6
        assert_eq!(short(0, 0, 1).order_of_point(&pt(2, 3), 16).unwrap(), Some(6));
    }

    #[test]
    fn j_invariants() {
        assert_eq!(short(0, 0, 1).j_invariant(), int(0));
        assert_eq!(short(0, 1, 0).j_invariant(), int(1728));
    }

    #[test]
    fn isomorphism() {
        let e = short(0, -1, 0);
        assert!(e.is_isomorphic_over_q(&e));
        assert!(e.is_isomorphic_over_q(&short(0, -16, 0)));
        assert!(!e.is_isomorphic_over_q(&short(0, 1, 0)));
        // quadratic twists by -1 of a j != 0, 1728 curve share j but are not isomorphic
        let f = short(25, -512, 0);
        let twist = short(-25, -512, 0);
        assert_eq!(f.j_invariant(), twist.j_invariant());
        assert!(!f.is_isomorphic_over_q(&twist));
        // twist by 4 is trivial
        assert!(f.is_isomorphic_over_q(&short(100, -8192, 0)));
        // j = 0: y^2 = x^3 + 1 vs y^2 = x^3 + 64 (l = 2) and x^3 + 2 (not)
        assert!(short(0, 0, 1).is_isomorphic_over_q(&short(0, 0, 64)));
        assert!(!short(0, 0, 1).is_isomorphic_over_q(&short(0, 0, 2)));
        // y^2 = x^3 - x: c4 = 48; c4 of x^3 + x is -48, ratio -1 is not a fourth power
        assert_eq!(e.c4(), int(48));
    }
}
