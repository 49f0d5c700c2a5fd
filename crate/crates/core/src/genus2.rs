// SPDX-License-Identifier: Apache-2.0

//! Genus-2 curves `y^2 = f(x)` with `deg f` in `{5, 6}`: rational Weierstrass
//! points, odd models, and Igusa–Clebsch invariants.
//!
//! Invariants are computed from the Clebsch invariants `A, B, C, D` of the
//! binary sextic, which are themselves built from transvectants.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, format_rational, int, rational_roots, Rational};
use crate::error::{Error, Result};
use crate::poly::{is_separable, IntPolynomial, RatPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RatPolynomial", into = "RatPolynomial")]
pub struct Genus2Curve {
    f: RatPolynomial,
}

impl TryFrom<RatPolynomial> for Genus2Curve {
    type Error = Error;

    fn try_from(f: RatPolynomial) -> Result<Self> {
        Self::new(f)
    }
}

impl From<Genus2Curve> for RatPolynomial {
    fn from(c: Genus2Curve) -> Self {
        c.f
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeierstrassPoints {
    #[serde(with = "crate::arith::serde_rational_vec")]
    pub finite: Vec<Rational>,
    pub at_infinity: bool,
}

impl WeierstrassPoints {
    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && !self.at_infinity
    }
}

impl Genus2Curve {
    pub fn new(f: RatPolynomial) -> Result<Self> {
        match f.degree() {
            Some(5) | Some(6) => {}
            d => return Err(Error::Domain(format!("genus-2 model needs degree 5 or 6, got {d:?}"))),
        }
        if !is_separable(&f) {
            return Err(Error::Domain("polynomial is not separable".into()));
        }
        Ok(Self { f })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(RatPolynomial::from_ints(coeffs))
    }

    pub fn polynomial(&self) -> &RatPolynomial {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap()
    }

    pub fn weierstrass_points(&self) -> Result<WeierstrassPoints> {
        let roots = rational_roots(&IntPolynomial::from_rational(&self.f))?;
        let finite: Vec<Rational> = roots.into_iter().map(|r| r.value).collect();
        debug_assert!(finite.iter().all(|r| self.f.evaluate(r).is_zero()));
        Ok(WeierstrassPoints { finite, at_infinity: self.degree() == 5 })
    }

    /// The degree-5 model `x^6 f(root + 1/x)`, rescaled by a rational square so
    /// that its coefficients are coprime integers up to a squarefree factor.
    pub fn to_odd_model(&self, root: &Rational) -> Result<Self> {
        if !self.f.evaluate(root).is_zero() {
            return Err(Error::Domain(format!("{} is not a root of f", format_rational(root))));
        }
        let shift = RatPolynomial::new(vec![root.clone(), Rational::one()]);
        let g = self.f.compose(&shift).reversed(6);
        // scale by L^2 for L the lcm of denominators, then strip square factors
        // of the content
        let l = crate::arith::lcm_of_denominators(g.coeffs());
        let scaled = g.scale(&Rational::from_integer(&l * &l));
        let content = IntPolynomial::from_rational(&scaled).content();
        let s = square_root_of_square_part(&content)?;
        let out = scaled.scale(&Rational::new(BigInt::one(), &s * &s));
        Self::new(out)
    }

    /// `(c x + d)^6 f((a x + b) / (c x + d))`; the result is a model of an
    /// isomorphic curve when `ad - bc != 0`.
    pub fn mobius(&self, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<Self> {
        if (a * d - b * c).is_zero() {
            return Err(Error::Domain("singular substitution".into()));
        }
        let num = RatPolynomial::new(vec![b.clone(), a.clone()]);
        let den = RatPolynomial::new(vec![d.clone(), c.clone()]);
        let mut num_pows = vec![RatPolynomial::constant(Rational::one())];
        let mut den_pows = vec![RatPolynomial::constant(Rational::one())];
        for i in 0..6 {
            num_pows.push(&num_pows[i] * &num);
            den_pows.push(&den_pows[i] * &den);
        }
        let mut acc = RatPolynomial::zero();
        for i in 0..=6 {
            let c = self.f.coeff(i);
            if !c.is_zero() {
                let term = (&num_pows[i] * &den_pows[6 - i]).scale(&c);
                acc = &acc + &term;
            }
        }
        Self::new(acc)
    }

    pub fn igusa_clebsch(&self) -> IgusaClass {
        igusa_clebsch_of_sextic(&self.f)
    }
}

/// Largest `s > 0` with `s^2 | n`.
fn square_root_of_square_part(n: &BigInt) -> Result<BigInt> {
    let fac = factorize(n)?;
    let mut s = BigInt::one();
    for (p, e) in &fac.factors {
        for _ in 0..e / 2 {
            s *= p;
        }
    }
    Ok(s)
}

/// A binary form `sum c[i] x^i y^(deg - i)`.
#[derive(Clone, Debug)]
struct Form {
    deg: usize,
    c: Vec<Rational>,
}

impl Form {
    fn zero(deg: usize) -> Self {
        Self { deg, c: vec![Rational::zero(); deg + 1] }
    }

    fn dx(&self) -> Self {
        if self.deg == 0 {
            return Self::zero(0);
        }
        let c = (1..=self.deg).map(|i| &self.c[i] * int(i as i64)).collect();
        Self { deg: self.deg - 1, c }
    }

    fn dy(&self) -> Self {
        if self.deg == 0 {
            return Self::zero(0);
        }
        let c = (0..self.deg).map(|i| &self.c[i] * int((self.deg - i) as i64)).collect();
        Self { deg: self.deg - 1, c }
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.deg + o.deg);
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out.c[i + j] += a * b;
            }
        }
        out
    }

    fn add_scaled(&mut self, o: &Self, s: &Rational) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a += b * s;
        }
    }

    /// `d^(k-j)/dx d^j/dy` for `j = 0..=k`.
    fn mixed_partials(&self, k: usize) -> Vec<Self> {
        let mut xs = vec![self.clone()];
        for i in 0..k {
            xs.push(xs[i].dx());
        }
        (0..=k)
            .map(|j| {
                let mut g = xs[k - j].clone();
                for _ in 0..j {
                    g = g.dy();
                }
                g
            })
            .collect()
    }

    fn constant(&self) -> Rational {
        debug_assert_eq!(self.deg, 0);
        self.c[0].clone()
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// The `k`-th transvectant, normalized as
/// `(n-k)!(m-k)!/(n!m!) sum_j (-1)^j C(k,j) f_{x^(k-j) y^j} g_{x^j y^(k-j)}`.
fn transvectant(f: &Form, g: &Form, k: usize) -> Form {
    let (n, m) = (f.deg, g.deg);
    assert!(k <= n && k <= m);
    let fp = f.mixed_partials(k);
    let gp = g.mixed_partials(k);
    let mut out = Form::zero(n + m - 2 * k);
    for j in 0..=k {
        // f_{x^(k-j) y^j} is fp[j]; g_{x^j y^(k-j)} is gp[k-j]
        let sign = if j % 2 == 0 { 1 } else { -1 };
        out.add_scaled(&fp[j].mul(&gp[k - j]), &int(sign * binomial(k, j)));
    }
    let norm = Rational::new(factorial(n - k) * factorial(m - k), factorial(n) * factorial(m));
    for c in out.c.iter_mut() {
        *c *= &norm;
    }
    out
}

/// Clebsch invariants `(A, B, C, D)` of the sextic form.
fn clebsch(f: &Form) -> [Rational; 4] {
    let i = transvectant(f, f, 4);
    let delta = transvectant(&i, &i, 2);
    let y1 = transvectant(f, &i, 4);
    let y2 = transvectant(&i, &y1, 2);
    let y3 = transvectant(&i, &y2, 2);
    [
        transvectant(f, f, 6).constant(),
        transvectant(&i, &i, 4).constant(),
        transvectant(&i, &delta, 4).constant(),
        transvectant(&y3, &y1, 2).constant(),
    ]
}

fn igusa_clebsch_of_sextic(f: &RatPolynomial) -> IgusaClass {
    let form = Form { deg: 6, c: (0..=6).map(|i| f.coeff(i)).collect() };
    let [a, b, c, d] = clebsch(&form);
    let a2 = &a * &a;
    let a3 = &a2 * &a;
    let a5 = &a3 * &a2;
    let i2 = int(-120) * &a;
    let i4 = int(-720) * &a2 + int(6750) * &b;
    let i6 = int(8640) * &a3 - int(108000) * &a * &b + int(202500) * &c;
    let i10 = int(-62208) * &a5 + int(972000) * &a3 * &b + int(1620000) * &a2 * &c
        - int(3037500) * &a * &b * &b
        - int(6075000) * &b * &c
        - int(4556250) * &d;
    IgusaClass { i2, i4, i6, i10 }
}

/// Igusa–Clebsch invariants `(I2, I4, I6, I10)` of a binary sextic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IgusaClass {
    pub i2: Rational,
    pub i4: Rational,
    pub i6: Rational,
    pub i10: Rational,
}

impl IgusaClass {
    pub fn new(i2: Rational, i4: Rational, i6: Rational, i10: Rational) -> Self {
        Self { i2, i4, i6, i10 }
    }

    pub fn as_array(&self) -> [&Rational; 4] {
        [&self.i2, &self.i4, &self.i6, &self.i10]
    }

    /// `(l^2 I2, l^4 I4, l^6 I6, l^10 I10)`
    pub fn scaled(&self, l: &Rational) -> Self {
        let l2 = l * l;
        let l4 = &l2 * &l2;
        let l6 = &l4 * &l2;
        let l10 = &l6 * &l4;
        Self::new(&self.i2 * &l2, &self.i4 * &l4, &self.i6 * &l6, &self.i10 * &l10)
    }

    /// `(I2^5 / I10, I4^5 / I10^2, I6^5 / I10^3)`, constant on geometric
    /// classes. `None` when `I10 = 0`.
    pub fn normalized(&self) -> Option<[Rational; 3]> {
        if self.i10.is_zero() {
            return None;
        }
        let p5 = |q: &Rational| num_traits::pow(q.clone(), 5);
        let d2 = &self.i10 * &self.i10;
        let d3 = &d2 * &self.i10;
        Some([p5(&self.i2) / &self.i10, p5(&self.i4) / d2, p5(&self.i6) / d3])
    }
}

/// Whether `B_i = l^(w_i) A_i` for some `l` over the algebraic closure, with
/// weights `(2, 4, 6, 10)`.
///
/// Setting `m = l^2` this is the same as weights `(1, 2, 3, 5)` in `m`, and
/// with both `I10` nonzero the pairwise cross-product identities in those
/// weights are sufficient (5 is prime, so the fifth roots of unity left over
/// by each pair can be aligned). Cross-products in the doubled weights are
/// not: they cannot see the sign of `I6` relative to `I2 I4`.
pub fn same_geometric_class(a: &IgusaClass, b: &IgusaClass) -> bool {
    if a.i10.is_zero() || b.i10.is_zero() {
        return false;
    }
    const W: [usize; 4] = [1, 2, 3, 5];
    let xa = a.as_array();
    let xb = b.as_array();
    for i in 0..4 {
        for j in i + 1..4 {
            let lhs = num_traits::pow(xa[i].clone(), W[j]) * num_traits::pow(xb[j].clone(), W[i]);
            let rhs = num_traits::pow(xa[j].clone(), W[i]) * num_traits::pow(xb[i].clone(), W[j]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Partition `classes` into geometric classes. Returns, for each input, the
/// index of its class, numbered in order of first appearance.
pub fn classify(classes: &[IgusaClass]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..classes.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut groups: HashMap<Option<[Rational; 3]>, Vec<usize>> = HashMap::new();
    for (idx, c) in classes.iter().enumerate() {
        groups.entry(c.normalized()).or_default().push(idx);
    }
    for members in groups.values() {
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[..k] {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj && same_geometric_class(&classes[i], &classes[j]) {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut label: HashMap<usize, usize> = HashMap::new();
    (0..classes.len())
        .map(|i| {
            let r = find(&mut parent, i);
            let n = label.len();
            *label.entry(r).or_insert(n)
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct IgusaWire {
    i2: String,
    i4: String,
    i6: String,
    i10: String,
    #[serde(default, skip_deserializing)]
    normalized: Option<[String; 3]>,
}

impl Serialize for IgusaClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IgusaWire {
            i2: format_rational(&self.i2),
            i4: format_rational(&self.i4),
            i6: format_rational(&self.i6),
            i10: format_rational(&self.i10),
            normalized: self.normalized().map(|n| n.each_ref().map(format_rational)),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IgusaClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = IgusaWire::deserialize(d)?;
        let p = |s: &str| crate::arith::parse_rational(s).map_err(serde::de::Error::custom);
        Ok(Self::new(p(&w.i2)?, p(&w.i4)?, p(&w.i6)?, p(&w.i10)?))
    }
}
