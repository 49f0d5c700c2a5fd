// SPDX-License-Identifier: Apache-2.0

//! Class groups of imaginary quadratic orders as reduced binary quadratic
//! forms `a x^2 + b xy + c y^2`, their 5-ranks, and a harvester that
//! specializes a genus-2 curve at integers to produce imaginary quadratic
//! fields.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, serde_bigint, squarefree_kernel, Rational};
use crate::error::{Error, Result};
use crate::genus2::Genus2Curve;

/// Discriminants are limited to `|D| < 2^62` so that composition fits in `i128`.
pub const MAX_ABS_DISCRIMINANT: i64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn discriminant(&self) -> i128 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        b * b - 4 * a * c
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        a > 0 && b.abs() <= a && a <= c && !(b < 0 && (b.abs() == a || a == c))
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    /// The principal form of discriminant `d`.
    pub fn identity(d: i64) -> Result<Self> {
        check_discriminant(d)?;
        let b = d.rem_euclid(2);
        Ok(Self::new(1, b, (b * b - d) / 4))
    }

    pub fn inverse(&self) -> Self {
        reduce(Self::new(self.a, -self.b, self.c))
    }

    pub fn pow(&self, mut n: u64) -> Result<Self> {
        let d = self.discriminant() as i64;
        let mut acc = Self::identity(d)?;
        let mut base = *self;
        while n > 0 {
            if n & 1 == 1 {
                acc = compose(&acc, &base)?;
            }
            base = compose(&base, &base)?;
            n >>= 1;
        }
        Ok(acc)
    }
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn check_discriminant(d: i64) -> Result<()> {
    if d >= 0 {
        return Err(Error::Domain(format!("discriminant {d} is not negative")));
    }
    if d.rem_euclid(4) > 1 {
        return Err(Error::Domain(format!("discriminant {d} is not 0 or 1 mod 4")));
    }
    if d <= -MAX_ABS_DISCRIMINANT {
        return Err(Error::Domain(format!("discriminant {d} is out of range")));
    }
    Ok(())
}

/// `d` for `d = 1 mod 4`, else `4d`.
pub fn fundamental_discriminant(d: i64) -> Result<i64> {
    if d >= 0 {
        return Err(Error::Domain(format!("{d} is not negative")));
    }
    let fac = factorize(&BigInt::from(d))?;
    if fac.factors.iter().any(|(_, e)| *e > 1) {
        return Err(Error::Domain(format!("{d} is not squarefree")));
    }
    if d.rem_euclid(4) == 1 {
        Ok(d)
    } else {
        d.checked_mul(4).ok_or_else(|| Error::Domain(format!("4 * {d} overflows")))
    }
}

/// The unique reduced form equivalent to a positive definite form.
pub fn reduce(f: QuadForm) -> QuadForm {
    let d = f.discriminant();
    let (mut a, mut b) = (f.a as i128, f.b as i128);
    let normalize = |a: i128, b: i128| -> i128 {
        if -a < b && b <= a {
            b
        } else {
            b + 2 * a * Integer::div_floor(&(a - b), &(2 * a))
        }
    };
    b = normalize(a, b);
    let mut c = (b * b - d) / (4 * a);
    while a > c {
        a = c;
        b = normalize(a, -b);
        c = (b * b - d) / (4 * a);
    }
    if b < 0 && (a == c || -b == a) {
        b = -b;
    }
    QuadForm::new(a as i64, b as i64, c as i64)
}

/// `(g, x, y, z)` with `g = gcd(p, q, r) = x p + y q + z r`.
fn xgcd3(p: i128, q: i128, r: i128) -> (i128, i128, i128, i128) {
    let e = p.extended_gcd(&q);
    let f = e.gcd.extended_gcd(&r);
    (f.gcd, f.x * e.x, f.x * e.y, f.y)
}

/// Dirichlet composition followed by reduction.
pub fn compose(f: &QuadForm, g: &QuadForm) -> Result<QuadForm> {
    let d = f.discriminant();
    if g.discriminant() != d {
        return Err(Error::Domain(format!("forms {f} and {g} have different discriminants")));
    }
    let (a1, b1) = (f.a as i128, f.b as i128);
    let (a2, b2) = (g.a as i128, g.b as i128);
    let s = (b1 + b2) / 2;
    let (e, x, y, z) = xgcd3(a1, a2, s);
    let a3 = (a1 / e) * (a2 / e);
    let big_b = (x * a1 * b2 + y * a2 * b1 + z * ((b1 * b2 + d) / 2)) / e;
    let b3 = big_b.rem_euclid(2 * a3);
    let c3 = (b3 * b3 - d) / (4 * a3);
    Ok(reduce(QuadForm::new(a3 as i64, b3 as i64, c3 as i64)))
}

/// All primitive reduced forms of discriminant `d`, sorted.
pub fn reduced_forms(d: i64) -> Result<Vec<QuadForm>> {
    check_discriminant(d)?;
    let n = -(d as i128);
    let mut out = Vec::new();
    // |b| <= a <= c gives 3 a^2 <= |d|
    let mut b = (d.rem_euclid(2)) as i128;
    while 3 * b * b <= n {
        let m = (b * b + n) / 4;
        // a ranges over divisors of m with b <= a <= sqrt(m)
        let mut a = b.max(1);
        while a * a <= m {
            if m % a == 0 {
                let c = m / a;
                let signs: &[i128] = if b == 0 { &[1] } else { &[1, -1] };
                for sign in signs {
                    let q = QuadForm::new(a as i64, (sign * b) as i64, c as i64);
                    if q.is_reduced() && q.is_primitive() {
                        out.push(q);
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn class_number(d: i64) -> Result<usize> {
    Ok(reduced_forms(d)?.len())
}

/// The 5-rank of the class group, counting classes killed by 5.
pub fn five_rank(d: i64) -> Result<u32> {
    five_rank_of(d, &reduced_forms(d)?)
}

fn five_rank_of(d: i64, forms: &[QuadForm]) -> Result<u32> {
    let id = QuadForm::identity(d)?;
    let mut count = 0u64;
    for f in forms {
        if f.pow(5)? == id {
            count += 1;
        }
    }
    let mut k = 0;
    let mut c = count;
    while c > 1 && c % 5 == 0 {
        c /= 5;
        k += 1;
    }
    if c != 1 {
        return Err(Error::Verification(format!("{count} classes of order dividing 5 in D = {d}")));
    }
    Ok(k)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassGroupReport {
    pub d: i64,
    pub h: usize,
    pub rank5: u32,
    /// wall-clock time, kept out of serialized payloads so reruns are byte-identical
    #[serde(skip_serializing, default)]
    pub elapsed_s: f64,
}

pub fn class_group(d: i64) -> Result<(ClassGroupReport, Vec<QuadForm>)> {
    let start = Instant::now();
    let forms = reduced_forms(d)?;
    let rank5 = five_rank_of(d, &forms)?;
    let report = ClassGroupReport { d, h: forms.len(), rank5, elapsed_s: start.elapsed().as_secs_f64() };
    Ok((report, forms))
}

/// One imaginary quadratic field `Q(sqrt(f(n)))` found by the harvester.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarvestRecord {
    pub n: i64,
    #[serde(with = "crate::arith::serde_rational")]
    pub value: Rational,
    /// squarefree kernel of `f(n)`
    #[serde(with = "serde_bigint")]
    pub kernel: BigInt,
    #[serde(flatten)]
    pub report: ClassGroupReport,
    pub rank5_at_least_2: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    WeierstrassPoint,
    RealQuadratic,
    ExtraUnits,
    AboveCap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skip {
    pub n: i64,
    pub reason: SkipReason,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Harvest {
    pub records: Vec<HarvestRecord>,
    pub skipped: Vec<Skip>,
}

impl Harvest {
    pub fn rank5_at_least_2(&self) -> impl Iterator<Item = &HarvestRecord> {
        self.records.iter().filter(|r| r.rank5_at_least_2)
    }
}

enum Step {
    Record(HarvestRecord),
    Skip(Skip),
}

fn harvest_one(c: &Genus2Curve, n: i64, cap: u64) -> Result<Step> {
    let skip = |reason| Ok(Step::Skip(Skip { n, reason }));
    let value = c.polynomial().evaluate(&Rational::from_integer(n.into()));
    if value.is_zero() {
        return skip(SkipReason::WeierstrassPoint);
    }
    if value.is_positive() {
        return skip(SkipReason::RealQuadratic);
    }
    let kernel = squarefree_kernel(&value)?;
    let big_d = if kernel.mod_floor(&BigInt::from(4)) == BigInt::from(1) { kernel.clone() } else { &kernel * 4 };
    if big_d.abs() > BigInt::from(cap) {
        return skip(SkipReason::AboveCap);
    }
    let d = big_d.to_i64().expect("bounded by the cap");
    if d >= -4 {
        return skip(SkipReason::ExtraUnits);
    }
    let (report, _) = class_group(d)?;
    let rank5_at_least_2 = report.rank5 >= 2;
    Ok(Step::Record(HarvestRecord { n, value, kernel, report, rank5_at_least_2 }))
}

/// Specializes `y^2 = f(x)` at each integer `x = n` in `[lo, hi]` and computes
/// the class group of `Q(sqrt(f(n)))` when it is imaginary, not `Q(i)` or
/// `Q(sqrt(-3))`, and has discriminant at most `cap` in absolute value.
pub fn harvest(c: &Genus2Curve, lo: i64, hi: i64, cap: u64) -> Result<Harvest> {
    if c.weierstrass_points()?.is_empty() {
        return Err(Error::Hypothesis("curve has no rational Weierstrass point".into()));
    }
    if cap >= MAX_ABS_DISCRIMINANT as u64 {
        return Err(Error::Config(format!("discriminant cap {cap} is out of range")));
    }
    let steps: Vec<Step> = (lo..=hi)
        .into_par_iter()
        .map(|n| harvest_one(c, n, cap))
        .collect::<Result<_>>()?;
    let mut out = Harvest::default();
    for s in steps {
        match s {
            Step::Record(r) => out.records.push(r),
            Step::Skip(s) => out.skipped.push(s),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, is_square};

    fn brute_forms(d: i64) -> Vec<QuadForm> {
        let n = -d;
        let mut out = Vec::new();
        let mut a = 1;
        while 3 * a * a <= n {
            for b in -a..=a {
                let num = b * b - d;
                if num % (4 * a) == 0 {
                    let q = QuadForm::new(a, b, num / (4 * a));
                    if q.is_reduced() && q.is_primitive() {
                        out.push(q);
                    }
                }
            }
            a += 1;
        }
        out.sort();
        out
    }

    #[test]
    fn fundamental_discriminants() {
        assert_eq!(fundamental_discriminant(-3).unwrap(), -3);
        assert_eq!(fundamental_discriminant(-5).unwrap(), -20);
        assert_eq!(fundamental_discriminant(-1).unwrap(), -4);
        assert!(fundamental_discriminant(-12).is_err());
        assert!(fundamental_discriminant(5).is_err());
    }

    #[test]
    fn small_class_groups() {
        assert_eq!(reduced_forms(-4).unwrap(), vec![QuadForm::new(1, 0, 1)]);
        assert_eq!(
            reduced_forms(-23).unwrap(),
            vec![QuadForm::new(1, 1, 6), QuadForm::new(2, -1, 3), QuadForm::new(2, 1, 3)]
        );
        assert_eq!(class_number(-47).unwrap(), 5);
        assert!(reduced_forms(-5).is_err());
        assert!(reduced_forms(8).is_err());
    }

    #[test]
    fn forms_match_brute_force() {
        for d in (-20000..-2).filter(|d: &i64| d.rem_euclid(4) <= 1) {
            assert_eq!(reduced_forms(d).unwrap(), brute_forms(d), "D = {d}");
        }
    }

    #[test]
    fn forms_match_at_large_discriminants() {
        for d in [-99_999i64, -99_995, -100_000, -87_652, -56_099] {
            if d.rem_euclid(4) <= 1 {
                assert_eq!(reduced_forms(d).unwrap(), brute_forms(d), "D = {d}");
            }
        }
    }

    #[test]
    fn class_number_formula() {
        // h(D) = -(1/|D|) sum_{n < |D|} (D/n) n for fundamental D < -4
        fn kronecker(d: i64, n: i64) -> i64 {
            let mut n = n;
            let mut result = 1;
            while n % 2 == 0 {
                n /= 2;
                result *= match d.rem_euclid(8) {
                    0 | 4 => 0,
                    1 | 7 => 1,
                    _ => -1,
                };
            }
            // Jacobi symbol (d / n) for odd n
            let (mut a, mut m) = (d.rem_euclid(n), n);
            while a != 0 {
                while a % 2 == 0 {
                    a /= 2;
                    if m % 8 == 3 || m % 8 == 5 {
                        result = -result;
                    }
                }
                std::mem::swap(&mut a, &mut m);
                if a % 4 == 3 && m % 4 == 3 {
                    result = -result;
                }
                a %= m;
            }
            if m == 1 { result } else { 0 }
        }
        for k in [7i64, 15, 23, 31, 47, 71, 199, 401, 1007, 2003, 4099] {
            let Ok(d) = fundamental_discriminant(-k) else { continue };
            let s: i64 = (1..-d).map(|n| kronecker(d, n) * n).sum();
            assert_eq!(class_number(d).unwrap() as i64, -s / -d, "D = {d}");
        }
    }

    #[test]
    fn composition_examples() {
        let d = -23;
        let id = QuadForm::identity(d).unwrap();
        let f = QuadForm::new(2, 1, 3);
        assert_eq!(compose(&id, &f).unwrap(), f);
        assert_eq!(compose(&f, &f.inverse()).unwrap(), id);
        assert_eq!(compose(&f, &f).unwrap(), QuadForm::new(2, -1, 3));
        assert_eq!(f.pow(3).unwrap(), id);
        assert!(compose(&f, &QuadForm::new(1, 0, 1)).is_err());
    }

    #[test]
    fn cayley_tables() {
        for d in (-2000..-2).filter(|d: &i64| d.rem_euclid(4) <= 1) {
            let fs = reduced_forms(d).unwrap();
            let id = QuadForm::identity(d).unwrap();
            if fs.len() > 40 {
                continue;
            }
            for f in &fs {
                assert_eq!(compose(f, &f.inverse()).unwrap(), id);
                for g in &fs {
                    let fg = compose(f, g).unwrap();
                    assert!(fg.is_reduced() && fs.contains(&fg));
                    assert_eq!(fg, compose(g, f).unwrap());
                    for k in &fs {
                        assert_eq!(compose(&fg, k).unwrap(), compose(f, &compose(g, k).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn five_ranks() {
        assert_eq!(five_rank(-4).unwrap(), 0);
        assert_eq!(five_rank(-47).unwrap(), 1);
        assert_eq!(five_rank(-23).unwrap(), 0);
        // the smallest |D| with 5-rank 2
        assert_eq!(five_rank(-11199).unwrap(), 2);
        for d in -11198..-4 {
            if is_fundamental(d) {
                assert!(five_rank(d).unwrap() < 2, "D = {d}");
            }
        }
    }

    fn is_fundamental(d: i64) -> bool {
        match d.rem_euclid(4) {
            1 => fundamental_discriminant(d).is_ok(),
            0 => matches!((d / 4).rem_euclid(4), 2 | 3) && fundamental_discriminant(d / 4).is_ok(),
            _ => false,
        }
    }

    #[test]
    fn harvest_skips_and_provenance() {
        // y^2 = x^5 - x has Weierstrass points at 0, 1, -1
        let c = Genus2Curve::from_ints(&[0, -1, 0, 0, 0, 1]).unwrap();
        let h = harvest(&c, -30, 30, 1_000_000).unwrap();
        for n in [-1, 0, 1] {
            assert!(h.skipped.contains(&Skip { n, reason: SkipReason::WeierstrassPoint }));
        }
        assert!(h.skipped.contains(&Skip { n: 5, reason: SkipReason::RealQuadratic }));
        for r in &h.records {
            assert!(r.report.d < -4);
            assert!(is_square(&(&r.value / Rational::from_integer(r.kernel.clone()))));
            assert_eq!(r.report.h, class_number(r.report.d).unwrap());
        }
        assert_eq!(h.records.len() + h.skipped.len(), 61);
        assert!(h.records.iter().all(|r| r.value < int(0)));
    }

    #[test]
    fn harvest_requires_weierstrass_point() {
        let c = Genus2Curve::from_ints(&[1, 0, 0, 0, 0, 0, 1]).unwrap();
        assert!(matches!(harvest(&c, 0, 3, 1000), Err(Error::Hypothesis(_))));
    }
}
