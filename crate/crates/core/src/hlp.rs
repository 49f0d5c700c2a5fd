// SPDX-License-Identifier: Apache-2.0

//! Genus-2 curves from a solution `(t, u, z)` of the matching equation
//! `(2t-1)^5 (4t^2-2t-1) z^2 = (2u-1)^5 (4u^2-2u-1)`.
//!
//! The curve is `y^2 = a (a6 x^6 + a4 x^4 + a2 x^2 + a0)`. It covers
//! `E_t': y^2 = a (a0 x^3 + a2 x^2 + a4 x + a6)` through `(x, y) -> (1/x^2, y/x^3)`
//! and `E_u': y^2 = a (a6 x^3 + a4 x^2 + a2 x + a0)` through `(x, y) -> (x^2, y)`,
//! with `E_t' ~ E_t` and `E_u' ~ E_u`, so its Jacobian is (2,2)-isogenous to
//! `E_t x E_u` and inherits two independent rational 5-torsion points.
//!
//! The coefficient polynomials are evaluated from the term tables below. Every
//! constructed record is checked three independent ways (the `zx^2 - 1` factor
//! and both quotient isomorphisms), so a wrong table entry cannot go unnoticed.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, serde_rational, Rational};
use crate::elliptic::{from_nonmonic_cubic, CubicModel};
use crate::error::{Error, Result};
use crate::poly::{discriminant, RatPolynomial};
use crate::x1ten::{is_excluded, satisfies_matching, universal_curve, FamilyMember};

/// `(coefficient, deg_t, deg_u, deg_z)`
type Term = (i64, usize, usize, usize);

// a = 2 * A, a2 = 2 * A2, a4 = A4, a6 = z * A6

const A_TERMS: &[Term] = &[
    (8, 6, 0, 1), (-32, 5, 0, 1), (40, 4, 0, 1), (-20, 3, 0, 1), (4, 1, 0, 1), (-8, 0, 6, 0),
    (32, 0, 5, 0), (-40, 0, 4, 0), (20, 0, 3, 0), (-4, 0, 1, 0), (-1, 0, 0, 1), (1, 0, 0, 0),
];

const A2_TERMS: &[Term] = &[
    (32, 12, 0, 1), (-256, 11, 0, 1), (832, 10, 0, 1), (-1440, 9, 0, 1), (1440, 8, 0, 1),
    (-960, 7, 0, 1), (64, 6, 6, 0), (-256, 6, 5, 0), (320, 6, 4, 0), (-160, 6, 3, 0),
    (32, 6, 1, 0), (640, 6, 0, 1), (-8, 6, 0, 0), (-256, 5, 6, 0), (1024, 5, 5, 0),
    (-1280, 5, 4, 0), (640, 5, 3, 0), (-128, 5, 1, 0), (-480, 5, 0, 1), (32, 5, 0, 0),
    (320, 4, 6, 0), (-1280, 4, 5, 0), (1600, 4, 4, 0), (-800, 4, 3, 0), (160, 4, 1, 0),
    (240, 4, 0, 1), (-40, 4, 0, 0), (-160, 3, 6, 0), (640, 3, 5, 0), (-800, 3, 4, 0),
    (400, 3, 3, 0), (-80, 3, 1, 0), (-40, 3, 0, 1), (20, 3, 0, 0), (-16, 2, 0, 1),
    (32, 1, 6, 0), (-128, 1, 5, 0), (160, 1, 4, 0), (-80, 1, 3, 0), (16, 1, 1, 0), (8, 1, 0, 1),
    (-4, 1, 0, 0), (-8, 0, 6, 0), (32, 0, 5, 0), (-40, 0, 4, 0), (20, 0, 3, 0), (-4, 0, 1, 0),
    (-1, 0, 0, 1), (1, 0, 0, 0),
];

const A4_TERMS: &[Term] = &[
    (384, 7, 0, 2), (-128, 6, 6, 1), (512, 6, 5, 1), (-640, 6, 4, 1), (320, 6, 3, 1),
    (-64, 6, 1, 1), (-1152, 6, 0, 2), (16, 6, 0, 1), (512, 5, 6, 1), (-2048, 5, 5, 1),
    (2560, 5, 4, 1), (-1280, 5, 3, 1), (256, 5, 1, 1), (1344, 5, 0, 2), (-64, 5, 0, 1),
    (-640, 4, 6, 1), (2560, 4, 5, 1), (-3200, 4, 4, 1), (1600, 4, 3, 1), (-320, 4, 1, 1),
    (-720, 4, 0, 2), (80, 4, 0, 1), (320, 3, 6, 1), (-1280, 3, 5, 1), (1600, 3, 4, 1),
    (-800, 3, 3, 1), (160, 3, 1, 1), (120, 3, 0, 2), (-40, 3, 0, 1), (48, 2, 0, 2),
    (-64, 1, 6, 1), (256, 1, 5, 1), (-320, 1, 4, 1), (160, 1, 3, 1), (-32, 1, 1, 1),
    (-24, 1, 0, 2), (8, 1, 0, 1), (-64, 0, 12, 0), (512, 0, 11, 0), (-1664, 0, 10, 0),
    (2880, 0, 9, 0), (-2880, 0, 8, 0), (1536, 0, 7, 0), (16, 0, 6, 1), (-128, 0, 6, 0),
    (-64, 0, 5, 1), (-384, 0, 5, 0), (80, 0, 4, 1), (240, 0, 4, 0), (-40, 0, 3, 1),
    (-40, 0, 3, 0), (-16, 0, 2, 0), (8, 0, 1, 1), (8, 0, 1, 0), (3, 0, 0, 2), (-2, 0, 0, 1),
    (-1, 0, 0, 0),
];

const A6_TERMS: &[Term] = &[
    (-128, 7, 0, 2), (384, 6, 0, 2), (-448, 5, 0, 2), (240, 4, 0, 2), (-40, 3, 0, 2),
    (-16, 2, 0, 2), (8, 1, 0, 2), (64, 0, 12, 0), (-512, 0, 11, 0), (1664, 0, 10, 0),
    (-2880, 0, 9, 0), (2880, 0, 8, 0), (-1536, 0, 7, 0), (128, 0, 6, 0), (384, 0, 5, 0),
    (-240, 0, 4, 0), (40, 0, 3, 0), (16, 0, 2, 0), (-8, 0, 1, 0), (-1, 0, 0, 2), (1, 0, 0, 0),
];

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    #[serde(with = "serde_rational")]
    pub t: Rational,
    #[serde(with = "serde_rational")]
    pub u: Rational,
    #[serde(with = "serde_rational")]
    pub z: Rational,
}

impl Seed {
    pub fn new(t: Rational, u: Rational, z: Rational) -> Self {
        Self { t, u, z }
    }

    /// `(u, t, 1/z)`, which solves the matching equation whenever `self` does.
    pub fn swapped(&self) -> Self {
        Self::new(self.u.clone(), self.t.clone(), self.z.recip())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HlpCoefficients {
    pub a: Rational,
    pub a0: Rational,
    pub a2: Rational,
    pub a4: Rational,
    pub a6: Rational,
    pub seed: Seed,
}

fn powers(x: &Rational, n: usize) -> Vec<Rational> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(Rational::one());
    for i in 0..n {
        v.push(&v[i] * x);
    }
    v
}

fn evaluate(terms: &[Term], tp: &[Rational], up: &[Rational], zp: &[Rational]) -> Rational {
    terms.iter().fold(Rational::zero(), |acc, &(c, i, j, k)| {
        acc + int(c) * &tp[i] * &up[j] * &zp[k]
    })
}

pub fn coefficients(t: &Rational, u: &Rational, z: &Rational) -> HlpCoefficients {
    let tp = powers(t, 12);
    let up = powers(u, 12);
    let zp = powers(z, 3);
    let a = int(2) * evaluate(A_TERMS, &tp, &up, &zp);
    // closed form: a0 = -64 t^5 (t - 1)^5 (t^2 - 3t + 1)
    let a0 = int(-64) * &tp[5] * num_traits::pow(t - int(1), 5) * (&tp[2] - int(3) * t + int(1));
    let a2 = int(2) * evaluate(A2_TERMS, &tp, &up, &zp);
    let a4 = evaluate(A4_TERMS, &tp, &up, &zp);
    let a6 = z * evaluate(A6_TERMS, &tp, &up, &zp);
    HlpCoefficients { a, a0, a2, a4, a6, seed: Seed::new(t.clone(), u.clone(), z.clone()) }
}

/// Checks `t, u` outside `{0, 1/2, 1}`, the matching equation, and `a != 0`.
pub fn check_hypotheses(t: &Rational, u: &Rational, z: &Rational) -> Result<()> {
    if is_excluded(t) {
        return Err(Error::Hypothesis("t must avoid 0, 1/2 and 1".into()));
    }
    if is_excluded(u) {
        return Err(Error::Hypothesis("u must avoid 0, 1/2 and 1".into()));
    }
    if !satisfies_matching(t, u, z) {
        return Err(Error::Hypothesis("(t, u, z) does not satisfy the matching equation".into()));
    }
    let tp = powers(t, 12);
    let up = powers(u, 12);
    let zp = powers(z, 3);
    if evaluate(A_TERMS, &tp, &up, &zp).is_zero() {
        return Err(Error::Hypothesis("degenerate a: a = 0".into()));
    }
    Ok(())
}

pub fn hypotheses_ok(t: &Rational, u: &Rational, z: &Rational) -> bool {
    check_hypotheses(t, u, z).is_ok()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationFlags {
    /// `z x^2 - 1` divides `a6 x^6 + a4 x^4 + a2 x^2 + a0`.
    pub quadratic_factor: bool,
    /// `E_t'` is isomorphic to `E_t` over Q.
    pub et_isomorphic: bool,
    /// `E_u'` is isomorphic to `E_u` over Q.
    pub eu_isomorphic: bool,
    /// The sextic has nonzero discriminant.
    pub separable: bool,
    /// `sextic(x) = cubic_u(x^2)`
    pub bielliptic_u: bool,
    /// `sextic(x) = x^6 cubic_t(1/x^2)`
    pub bielliptic_t: bool,
}

impl VerificationFlags {
    pub fn all(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.quadratic_factor, "quadratic_factor"),
            (self.et_isomorphic, "et_isomorphic"),
            (self.eu_isomorphic, "eu_isomorphic"),
            (self.separable, "separable"),
            (self.bielliptic_u, "bielliptic_u"),
            (self.bielliptic_t, "bielliptic_t"),
        ]
        .into_iter()
        .filter_map(|(ok, name)| (!ok).then_some(name))
        .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HlpCurveRecord {
    pub seed: Seed,
    pub coefficients: HlpCoefficients,
    /// `a6 x^6 + a4 x^4 + a2 x^2 + a0`
    pub inner: RatPolynomial,
    /// `a * inner`
    pub sextic: RatPolynomial,
    pub et_prime: CubicModel,
    pub eu_prime: CubicModel,
    pub flags: VerificationFlags,
}

#[derive(Serialize)]
struct RecordWire<'a> {
    seed: &'a Seed,
    sextic: &'a RatPolynomial,
    et: &'a CubicModel,
    eu: &'a CubicModel,
    flags: &'a VerificationFlags,
}

impl Serialize for HlpCurveRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RecordWire {
            seed: &self.seed,
            sextic: &self.sextic,
            et: &self.et_prime,
            eu: &self.eu_prime,
            flags: &self.flags,
        }
        .serialize(s)
    }
}

impl HlpCurveRecord {
    /// Errors naming every failed verification flag.
    pub fn ensure_verified(&self) -> Result<()> {
        let failed = self.flags.failures();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Error::Verification(format!(
                "seed ({}, {}, {}): {}",
                self.seed.t,
                self.seed.u,
                self.seed.z,
                failed.join(", ")
            )))
        }
    }
}

pub fn build_curve(t: &Rational, u: &Rational, z: &Rational) -> Result<HlpCurveRecord> {
    check_hypotheses(t, u, z)?;
    let et = universal_curve(t)?;
    let eu = universal_curve(u)?;
    build_curve_with(z, &et, &eu)
}

/// As [`build_curve`], reusing already constructed family members for `t` and `u`.
pub fn build_curve_with(z: &Rational, et: &FamilyMember, eu: &FamilyMember) -> Result<HlpCurveRecord> {
    let (t, u) = (&et.t, &eu.t);
    check_hypotheses(t, u, z)?;
    let c = coefficients(t, u, z);
    if c.a6.is_zero() {
        return Err(Error::Verification(format!("a6 = 0 at ({t}, {u}, {z})")));
    }
    let zero = Rational::zero();
    let inner = RatPolynomial::new(vec![
        c.a0.clone(),
        zero.clone(),
        c.a2.clone(),
        zero.clone(),
        c.a4.clone(),
        zero,
        c.a6.clone(),
    ]);
    let sextic = inner.scale(&c.a);
    let a = &c.a;
    let et_prime = from_nonmonic_cubic(&(a * &c.a0), &(a * &c.a2), &(a * &c.a4), &(a * &c.a6))
        .map_err(|e| Error::Verification(format!("E_t' at ({t}, {u}, {z}): {e}")))?;
    let eu_prime = from_nonmonic_cubic(&(a * &c.a6), &(a * &c.a4), &(a * &c.a2), &(a * &c.a0))
        .map_err(|e| Error::Verification(format!("E_u' at ({t}, {u}, {z}): {e}")))?;
    let mut rec = HlpCurveRecord {
        seed: c.seed.clone(),
        coefficients: c,
        inner,
        sextic,
        et_prime,
        eu_prime,
        flags: VerificationFlags::default(),
    };
    rec.flags = verify_record_with(&rec, et, eu);
    Ok(rec)
}

pub fn verify_record(rec: &HlpCurveRecord) -> Result<VerificationFlags> {
    let et = universal_curve(&rec.seed.t)?;
    let eu = universal_curve(&rec.seed.u)?;
    Ok(verify_record_with(rec, &et, &eu))
}

pub fn verify_record_with(rec: &HlpCurveRecord, et: &FamilyMember, eu: &FamilyMember) -> VerificationFlags {
    let z = &rec.seed.z;
    let quadratic = RatPolynomial::new(vec![int(-1), Rational::zero(), z.clone()]);
    let quadratic_factor = rec
        .inner
        .div_rem(&quadratic)
        .map(|(_, r)| r.is_zero())
        .unwrap_or(false);
    let x_squared = RatPolynomial::monomial(Rational::one(), 2);
    let bielliptic_u = rec.eu_prime.cubic_polynomial().compose(&x_squared) == rec.sextic;
    let bielliptic_t = rec.et_prime.cubic_polynomial().compose(&x_squared).reversed(6) == rec.sextic;
    let separable = rec.sextic.degree() == Some(6)
        && discriminant(&rec.sextic).map(|d| !d.is_zero()).unwrap_or(false);
    VerificationFlags {
        quadratic_factor,
        et_isomorphic: rec.et_prime.curve.is_isomorphic_over_q(&et.curve),
        eu_isomorphic: rec.eu_prime.curve.is_isomorphic_over_q(&eu.curve),
        separable,
        bielliptic_u,
        bielliptic_t,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn seed0() -> (Rational, Rational, Rational) {
        (rat(2, 3), rat(-1, 3), int(25))
    }

    #[test]
    fn a0_closed_form() {
        let c = coefficients(&int(2), &int(3), &int(5));
        assert_eq!(c.a0, int(2048));
    }

    #[test]
    fn table_a0_agrees_at_seed() {
        let (t, u, z) = seed0();
        let c = coefficients(&t, &u, &z);
        assert_eq!(&c.a * &c.a0, rat(-20971520, 129140163));
        assert_eq!(&c.a * &c.a2, rat(41943040, 14348907));
        assert_eq!(&c.a * &c.a4, rat(373293056, 43046721));
        assert_eq!(&c.a * &c.a6, rat(63753420800, 129140163));
    }

    #[test]
    fn degenerate_a() {
        let t = rat(2, 5);
        let u = rat(-3, 7);
        let p = |s: &Rational| {
            let s2 = s * s;
            let s3 = &s2 * s;
            let s4 = &s2 * &s2;
            let s5 = &s4 * s;
            let s6 = &s3 * &s3;
            int(8) * s6 - int(32) * s5 + int(40) * s4 - int(20) * s3 + int(4) * s - int(1)
        };
        let z = p(&u) / p(&t);
        assert!(coefficients(&t, &u, &z).a.is_zero());
        assert!(coefficients(&t, &t, &int(1)).a.is_zero());
        let e = check_hypotheses(&rat(3, 4), &rat(3, 4), &int(1)).unwrap_err();
        assert!(e.to_string().contains("degenerate a"));
    }

    #[test]
    fn hypotheses() {
        let (t, u, z) = seed0();
        assert!(hypotheses_ok(&t, &u, &z));
        assert!(hypotheses_ok(&t, &u, &-&z));
        assert!(!hypotheses_ok(&t, &u, &int(24)));
        assert!(!hypotheses_ok(&rat(1, 2), &u, &z));
        assert!(!hypotheses_ok(&t, &int(1), &z));
    }

    #[test]
    fn seed_record_verifies() {
        let (t, u, z) = seed0();
        let rec = build_curve(&t, &u, &z).unwrap();
        assert!(rec.flags.all(), "{:?}", rec.flags.failures());
        assert_eq!(rec.sextic.degree(), Some(6));
        assert_eq!(
            rec.et_prime.curve.j_invariant(),
            universal_curve(&t).unwrap().curve.j_invariant()
        );
        let rec = build_curve(&t, &u, &-&z).unwrap();
        assert!(rec.flags.all(), "{:?}", rec.flags.failures());
    }

    #[test]
    fn perturbed_a6_is_caught() {
        let (t, u, z) = seed0();
        let mut rec = build_curve(&t, &u, &z).unwrap();
        rec.coefficients.a6 += int(1);
        let mut inner = rec.inner.coeffs().to_vec();
        inner[6] += int(1);
        rec.inner = RatPolynomial::new(inner);
        rec.sextic = rec.inner.scale(&rec.coefficients.a);
        let flags = verify_record(&rec).unwrap();
        assert!(!flags.quadratic_factor);
        assert!(!flags.bielliptic_u);
        assert!(rec.clone().flags.all());
        rec.flags = flags;
        let err = rec.ensure_verified().unwrap_err().to_string();
        assert!(err.contains("quadratic_factor"));
    }

    #[test]
    fn build_errors() {
        assert!(matches!(build_curve(&rat(2, 3), &rat(-1, 3), &int(7)), Err(Error::Hypothesis(_))));
        assert!(matches!(build_curve(&rat(1, 2), &int(2), &int(1)), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn json_shape() {
        let (t, u, z) = seed0();
        let rec = build_curve(&t, &u, &z).unwrap();
        let v: serde_json::Value = serde_json::to_value(&rec).unwrap();
        assert_eq!(v["seed"]["t"], "2/3");
        assert_eq!(v["seed"]["z"], "25");
        assert_eq!(v["sextic"].as_array().unwrap().len(), 7);
        assert_eq!(v["sextic"][1], "0");
        assert_eq!(v["et"].as_array().unwrap().len(), 5);
        assert_eq!(v["flags"]["quadratic_factor"], true);
    }
}
