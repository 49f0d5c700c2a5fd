// SPDX-License-Identifier: Apache-2.0

//! The universal elliptic curve with a rational point of order 10,
//!
//! ```text
//! E_t: y^2 = x (x^2 - (2t^2 - 2t + 1)(4t^4 - 12t^3 + 6t^2 + 2t - 1) x
//!               + 16 (t^2 - 3t + 1)(t - 1)^5 t^5)
//! ```
//!
//! its marked 10-torsion point, and the matching condition between two
//! members whose discriminants agree modulo squares.

use num_traits::{One, Zero};

use crate::arith::{int, rat, rational_sqrt, Rational};
use crate::elliptic::{ECPoint, EllipticCurve};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub t: Rational,
    pub curve: EllipticCurve,
    pub torsion_point: ECPoint,
}

pub fn is_excluded(t: &Rational) -> bool {
    t.is_zero() || t.is_one() || *t == rat(1, 2)
}

fn check_parameter(name: &str, t: &Rational) -> Result<()> {
    if is_excluded(t) {
        return Err(Error::Domain(format!("{name} must avoid 0, 1/2 and 1")));
    }
    Ok(())
}

/// `E_t` with its point of order 10, both verified.
pub fn universal_curve(t: &Rational) -> Result<FamilyMember> {
    check_parameter("t", t)?;
    let t2 = t * t;
    let t3 = &t2 * t;
    let t4 = &t2 * &t2;
    let t5 = &t4 * t;
    let tm1 = t - int(1);
    let tm1_5 = num_traits::pow(tm1.clone(), 5);
    let quad = &t2 - int(3) * t + int(1);

    let a2 = -((int(2) * &t2 - int(2) * t + int(1))
        * (int(4) * &t4 - int(12) * &t3 + int(6) * &t2 + int(2) * t - int(1)));
    let a4 = int(16) * &quad * tm1_5 * &t5;
    let curve = EllipticCurve::short(a2, a4, Rational::zero())?;

    let x = int(4) * &tm1 * &quad * &t3;
    let y = &x * (int(2) * t - int(1));
    let torsion_point = ECPoint::affine(x, y);
    if !curve.is_on_curve(&torsion_point) {
        return Err(Error::Verification(format!("marked point not on E_t at t = {t}")));
    }
    if curve.order_of_point(&torsion_point, 16)? != Some(10) {
        return Err(Error::Verification(format!("marked point does not have order 10 at t = {t}")));
    }
    Ok(FamilyMember { t: t.clone(), curve, torsion_point })
}

/// `(2t - 1)(4t^2 - 2t - 1)`, the discriminant of `E_t` modulo squares.
pub fn delta10(t: &Rational) -> Rational {
    (int(2) * t - int(1)) * (int(4) * t * t - int(2) * t - int(1))
}

/// `(2t - 1)^5 (4t^2 - 2t - 1)`
pub fn matching_side(t: &Rational) -> Rational {
    num_traits::pow(int(2) * t - int(1), 5) * (int(4) * t * t - int(2) * t - int(1))
}

/// The nonnegative `z` with `(2t-1)^5 (4t^2-2t-1) z^2 = (2u-1)^5 (4u^2-2u-1)`,
/// if the ratio is a rational square.
pub fn solve_z(t: &Rational, u: &Rational) -> Result<Option<Rational>> {
    check_parameter("t", t)?;
    check_parameter("u", u)?;
    Ok(rational_sqrt(&(matching_side(u) / matching_side(t))))
}

/// Whether `(t, u, z)` satisfies the matching equation exactly.
pub fn satisfies_matching(t: &Rational, u: &Rational, z: &Rational) -> bool {
    matching_side(t) * z * z == matching_side(u)
}
