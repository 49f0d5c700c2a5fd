// SPDX-License-Identifier: Apache-2.0

//! Search for seeds `(t, u, z)` in a height box, construction of the
//! corresponding genus-2 curves, and classification of those with a rational
//! Weierstrass point.
//!
//! Two parameters `t, u` admit a `z` exactly when the squarefree kernels of
//! `delta10(t)` and `delta10(u)` agree, so seeds are found by bucketing on the
//! kernel rather than by testing all pairs.
//!
//! The superset of seeds (ordered pairs, both signs of `z`) is processed once,
//! and counts for every convention are read off it.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{serde_rational_vec, squarefree_kernel, Rational};
use crate::error::{Error, Result};
use crate::genus2::{classify, Genus2Curve, IgusaClass};
use crate::hlp::{build_curve_with, check_hypotheses, Seed};
use crate::poly::RatPolynomial;
use crate::x1ten::{delta10, is_excluded, solve_z, universal_curve, FamilyMember};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ZSigns {
    /// both `z` and `-z`
    Both,
    /// `z > 0` only
    #[value(alias = "nonnegative")]
    #[serde(alias = "nonnegative")]
    Nonneg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PairOrder {
    /// `(t, u)` and `(u, t)` both counted
    Ordered,
    /// one of `(t, u, z)`, `(u, t, 1/z)`, namely the one with `t > u`, plus `t = u`
    Unordered,
}

impl ZSigns {
    pub fn admits(self, z: &Rational) -> bool {
        match self {
            ZSigns::Both => true,
            ZSigns::Nonneg => !z.is_negative(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ZSigns::Both => "both",
            ZSigns::Nonneg => "nonneg",
        }
    }
}

impl PairOrder {
    pub fn admits(self, t: &Rational, u: &Rational) -> bool {
        match self {
            PairOrder::Ordered => true,
            PairOrder::Unordered => t >= u,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PairOrder::Ordered => "ordered",
            PairOrder::Unordered => "unordered",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub height_bound: u64,
    pub z_signs: ZSigns,
    pub pair_order: PairOrder,
    pub emit_curves: bool,
    pub output: Option<PathBuf>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            height_bound: 100,
            z_signs: ZSigns::Both,
            pair_order: PairOrder::Ordered,
            emit_curves: false,
            output: None,
        }
    }
}

impl SearchConfig {
    pub fn with_height(height_bound: u64) -> Self {
        Self { height_bound, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.height_bound < 2 {
            return Err(Error::Config(format!("height bound must be at least 2, got {}", self.height_bound)));
        }
        if self.height_bound > i64::MAX as u64 {
            return Err(Error::Config("height bound too large".into()));
        }
        Ok(())
    }
}

/// All `a/b` in lowest terms with `|a| <= h`, `1 <= b <= h`, other than
/// `0, 1/2, 1`, in increasing order.
pub fn enumerate_rationals(h: u64) -> Vec<Rational> {
    let h = h as i64;
    let mut out = Vec::new();
    for b in 1..=h {
        for a in -h..=h {
            if a.gcd(&b) == 1 {
                let q = Rational::new(a.into(), b.into());
                if !is_excluded(&q) {
                    out.push(q);
                }
            }
        }
    }
    out.sort();
    out
}

/// Groups parameters by the squarefree kernel of `delta10`.
pub fn bucket_by_kernel(ts: &[Rational]) -> Result<BTreeMap<BigInt, Vec<Rational>>> {
    let keyed: Vec<(BigInt, Rational)> = ts
        .par_iter()
        .filter(|t| !delta10(t).is_zero())
        .map(|t| Ok((squarefree_kernel(&delta10(t))?, t.clone())))
        .collect::<Result<_>>()?;
    let mut map: BTreeMap<BigInt, Vec<Rational>> = BTreeMap::new();
    for (k, t) in keyed {
        map.entry(k).or_default().push(t);
    }
    for v in map.values_mut() {
        v.sort();
        v.dedup();
    }
    Ok(map)
}

/// One seed from the superset, with its curve and its rational Weierstrass points.
#[derive(Clone, Debug)]
struct SeedOutcome {
    seed: Seed,
    sextic: RatPolynomial,
    roots: Vec<Rational>,
}

/// A curve with a rational Weierstrass point, as emitted by the search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveRecord {
    pub seed: Seed,
    pub sextic: RatPolynomial,
    #[serde(with = "serde_rational_vec")]
    pub roots: Vec<Rational>,
    pub igusa: IgusaClass,
    /// index into [`SearchReport::classes`]
    pub class: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConventionCounts {
    pub z_signs: ZSigns,
    pub pair_order: PairOrder,
    /// seeds satisfying every hypothesis of the construction
    pub n_solutions: usize,
    /// seeds whose curve has a rational Weierstrass point
    pub n_rwp_curves: usize,
    /// distinct sextics among those
    pub n_distinct_sextics: usize,
    pub n_geometric_classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRepresentative {
    pub size: usize,
    pub representative: CurveRecord,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timing {
    pub enumerate_s: f64,
    pub construct_s: f64,
    pub classify_s: f64,
    pub total_s: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub height_bound: u64,
    pub z_signs: ZSigns,
    pub pair_order: PairOrder,
    pub n_seed_rationals: usize,
    pub n_buckets: usize,
    pub n_solutions: usize,
    pub n_curves_constructed: usize,
    pub n_rwp_curves: usize,
    pub n_distinct_sextics: usize,
    pub n_geometric_classes: usize,
    pub breakdown: Vec<ConventionCounts>,
    pub classes: Vec<ClassRepresentative>,
    #[serde(skip)]
    pub curves: Vec<CurveRecord>,
    /// kept out of the JSON payload so reruns are byte-identical
    #[serde(skip)]
    pub timing: Timing,
}

impl SearchReport {
    pub fn counts(&self, z_signs: ZSigns, pair_order: PairOrder) -> Option<&ConventionCounts> {
        self.breakdown.iter().find(|c| c.z_signs == z_signs && c.pair_order == pair_order)
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "height bound        {}", self.height_bound);
        let _ = writeln!(s, "seed rationals      {}", self.n_seed_rationals);
        let _ = writeln!(s, "kernel buckets      {}", self.n_buckets);
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:<8} {:<10} {:>10} {:>10} {:>10} {:>10}",
            "z signs", "pairs", "solutions", "rwp seeds", "sextics", "classes"
        );
        for c in &self.breakdown {
            let mark = if c.z_signs == self.z_signs && c.pair_order == self.pair_order { " *" } else { "" };
            let _ = writeln!(
                s,
                "{:<8} {:<10} {:>10} {:>10} {:>10} {:>10}{mark}",
                c.z_signs.label(),
                c.pair_order.label(),
                c.n_solutions,
                c.n_rwp_curves,
                c.n_distinct_sextics,
                c.n_geometric_classes
            );
        }
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "time: enumerate {:.2}s, construct {:.2}s, classify {:.2}s, total {:.2}s",
            self.timing.enumerate_s, self.timing.construct_s, self.timing.classify_s, self.timing.total_s
        );
        s
    }

    /// JSON lines: one object per curve (if `emit_curves`), then the summary.
    pub fn write_jsonl(&self, out: &mut impl std::io::Write, emit_curves: bool) -> Result<()> {
        if emit_curves {
            for c in &self.curves {
                serde_json::to_writer(&mut *out, c)?;
                out.write_all(b"\n")?;
            }
        }
        let summary = serde_json::json!({ "summary": self });
        serde_json::to_writer(&mut *out, &summary)?;
        out.write_all(b"\n")?;
        Ok(())
    }
}

fn candidate_seeds(buckets: &BTreeMap<BigInt, Vec<Rational>>) -> Result<Vec<(Rational, Rational, Rational)>> {
    let mut seeds = Vec::new();
    for ts in buckets.values() {
        for t in ts {
            for u in ts {
                let z = solve_z(t, u)?.ok_or_else(|| {
                    Error::Verification(format!("bucketed pair ({t}, {u}) has no rational z"))
                })?;
                seeds.push((t.clone(), u.clone(), -z.clone()));
                seeds.push((t.clone(), u.clone(), z));
            }
        }
    }
    Ok(seeds)
}

/// Every hypothesis-passing seed of height at most `h`, both signs of `z`,
/// ordered pairs, found through the kernel buckets. Sorted.
pub fn bucketed_solutions(h: u64) -> Result<Vec<Seed>> {
    let ts = enumerate_rationals(h);
    let buckets = bucket_by_kernel(&ts)?;
    let mut out: Vec<Seed> = candidate_seeds(&buckets)?
        .into_iter()
        .filter(|(t, u, z)| check_hypotheses(t, u, z).is_ok())
        .map(|(t, u, z)| Seed::new(t, u, z))
        .collect();
    out.sort_by(|a, b| (&a.t, &a.u, &a.z).cmp(&(&b.t, &b.u, &b.z)));
    Ok(out)
}

fn process_seed(
    t: &Rational,
    u: &Rational,
    z: &Rational,
    cache: &HashMap<Rational, FamilyMember>,
) -> Result<Option<SeedOutcome>> {
    if check_hypotheses(t, u, z).is_err() {
        return Ok(None);
    }
    let rec = build_curve_with(z, &cache[t], &cache[u])?;
    rec.ensure_verified()?;
    let curve = Genus2Curve::new(rec.sextic.clone())?;
    let roots = curve.weierstrass_points()?.finite;
    if let Some(r) = roots.iter().find(|r| !rec.sextic.evaluate(r).is_zero()) {
        return Err(Error::Verification(format!("reported root {r} does not annihilate the sextic")));
    }
    Ok(Some(SeedOutcome { seed: rec.seed, sextic: rec.sextic, roots }))
}

fn convention_counts(
    outcomes: &[SeedOutcome],
    igusa: &HashMap<RatPolynomial, IgusaClass>,
    z_signs: ZSigns,
    pair_order: PairOrder,
) -> (ConventionCounts, Vec<usize>, Vec<usize>) {
    let selected: Vec<usize> = (0..outcomes.len())
        .filter(|&i| {
            let s = &outcomes[i].seed;
            z_signs.admits(&s.z) && pair_order.admits(&s.t, &s.u)
        })
        .collect();
    let rwp: Vec<usize> = selected.iter().copied().filter(|&i| !outcomes[i].roots.is_empty()).collect();
    let mut seen = HashSet::new();
    let distinct: Vec<&RatPolynomial> = rwp
        .iter()
        .map(|&i| &outcomes[i].sextic)
        .filter(|f| seen.insert(*f))
        .collect();
    let ics: Vec<IgusaClass> = distinct.iter().map(|f| igusa[*f].clone()).collect();
    let labels = classify(&ics);
    let n_classes = labels.iter().copied().max().map_or(0, |m| m + 1);
    // class label per rwp seed
    let by_sextic: HashMap<&RatPolynomial, usize> = distinct.iter().copied().zip(labels.iter().copied()).collect();
    let seed_labels = rwp.iter().map(|&i| by_sextic[&outcomes[i].sextic]).collect();
    (
        ConventionCounts {
            z_signs,
            pair_order,
            n_solutions: selected.len(),
            n_rwp_curves: rwp.len(),
            n_distinct_sextics: distinct.len(),
            n_geometric_classes: n_classes,
        },
        rwp,
        seed_labels,
    )
}

pub fn run_search(cfg: &SearchConfig) -> Result<SearchReport> {
    cfg.validate()?;
    let start = Instant::now();
    let ts = enumerate_rationals(cfg.height_bound);
    let buckets = bucket_by_kernel(&ts)?;
    let seeds = candidate_seeds(&buckets)?;
    let cache: HashMap<Rational, FamilyMember> = ts
        .par_iter()
        .map(|t| Ok((t.clone(), universal_curve(t)?)))
        .collect::<Result<_>>()?;
    let enumerate_s = start.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let mut outcomes: Vec<SeedOutcome> = seeds
        .par_iter()
        .map(|(t, u, z)| process_seed(t, u, z, &cache))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    outcomes.sort_by(|a, b| (&a.seed.t, &a.seed.u, &a.seed.z).cmp(&(&b.seed.t, &b.seed.u, &b.seed.z)));
    let construct_s = t1.elapsed().as_secs_f64();

    let t2 = Instant::now();
    let mut rwp_sextics: Vec<&RatPolynomial> =
        outcomes.iter().filter(|o| !o.roots.is_empty()).map(|o| &o.sextic).collect();
    rwp_sextics.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    rwp_sextics.dedup();
    let igusa: HashMap<RatPolynomial, IgusaClass> = rwp_sextics
        .par_iter()
        .map(|f| Ok(((*f).clone(), Genus2Curve::new((*f).clone())?.igusa_clebsch())))
        .collect::<Result<_>>()?;

    let mut breakdown = Vec::new();
    let mut selected = None;
    for z_signs in [ZSigns::Both, ZSigns::Nonneg] {
        for pair_order in [PairOrder::Ordered, PairOrder::Unordered] {
            let (counts, rwp, labels) = convention_counts(&outcomes, &igusa, z_signs, pair_order);
            if z_signs == cfg.z_signs && pair_order == cfg.pair_order {
                selected = Some((counts.clone(), rwp, labels));
            }
            breakdown.push(counts);
        }
    }
    let (counts, rwp, labels) = selected.expect("selected convention is one of the four");
    let curves: Vec<CurveRecord> = rwp
        .iter()
        .zip(&labels)
        .map(|(&i, &class)| {
            let o = &outcomes[i];
            CurveRecord {
                seed: o.seed.clone(),
                sextic: o.sextic.clone(),
                roots: o.roots.clone(),
                igusa: igusa[&o.sextic].clone(),
                class,
            }
        })
        .collect();
    let mut classes: Vec<ClassRepresentative> = Vec::with_capacity(counts.n_geometric_classes);
    for c in &curves {
        if c.class == classes.len() {
            classes.push(ClassRepresentative { size: 0, representative: c.clone() });
        }
        classes[c.class].size += 1;
    }
    let classify_s = t2.elapsed().as_secs_f64();

    Ok(SearchReport {
        height_bound: cfg.height_bound,
        z_signs: cfg.z_signs,
        pair_order: cfg.pair_order,
        n_seed_rationals: ts.len(),
        n_buckets: buckets.len(),
        n_solutions: counts.n_solutions,
        n_curves_constructed: counts.n_solutions,
        n_rwp_curves: counts.n_rwp_curves,
        n_distinct_sextics: counts.n_distinct_sextics,
        n_geometric_classes: counts.n_geometric_classes,
        breakdown,
        classes,
        curves,
        timing: Timing { enumerate_s, construct_s, classify_s, total_s: start.elapsed().as_secs_f64() },
    })
}

/// Runs the search and writes JSON lines to `cfg.output` when set.
pub fn run_search_to_file(cfg: &SearchConfig) -> Result<SearchReport> {
    let report = run_search(cfg)?;
    if let Some(path) = &cfg.output {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        report.write_jsonl(&mut w, cfg.emit_curves)?;
        w.flush()?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_rationals(1), vec![int(-1)]);
        assert_eq!(enumerate_rationals(2), vec![int(-2), int(-1), rat(-1, 2), int(2)]);
    }

    #[test]
    fn enumeration_count_oracle() {
        // pairs (a, b) with gcd 1, |a| <= h, 1 <= b <= h, minus the three exclusions
        for h in [3u64, 10, 37, 100] {
            let h = h as i64;
            let mut n = 0;
            for b in 1..=h {
                for a in -h..=h {
                    if a.gcd(&b) == 1 {
                        n += 1;
                    }
                }
            }
            let excluded = 2 + usize::from(h >= 2);
            assert_eq!(enumerate_rationals(h as u64).len(), n - excluded);
        }
        assert_eq!(enumerate_rationals(100).len(), 12172);
    }

    #[test]
    fn bucket_examples() {
        let b = bucket_by_kernel(&[rat(2, 3), rat(-1, 3)]).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[&BigInt::from(-15)], vec![rat(-1, 3), rat(2, 3)]);
        assert_eq!(bucket_by_kernel(&[int(2), int(3)]).unwrap().len(), 2);
        assert!(bucket_by_kernel(&[]).unwrap().is_empty());
    }

    #[test]
    fn buckets_match_all_pairs_scan() {
        let ts = enumerate_rationals(12);
        let buckets = bucket_by_kernel(&ts).unwrap();
        let key: HashMap<&Rational, &BigInt> =
            buckets.iter().flat_map(|(k, v)| v.iter().map(move |t| (t, k))).collect();
        for t in &ts {
            for u in &ts {
                let solvable = solve_z(t, u).unwrap().is_some();
                assert_eq!(solvable, key[t] == key[u], "({t}, {u})");
            }
        }
    }

    #[test]
    fn height_three() {
        let cfg = SearchConfig { emit_curves: true, ..SearchConfig::with_height(3) };
        let r = run_search(&cfg).unwrap();
        assert!(r.n_solutions >= 1);
        let seeds: Vec<&Seed> = r.curves.iter().map(|c| &c.seed).collect();
        assert!(seeds.contains(&&Seed::new(rat(2, 3), rat(-1, 3), int(25))));
        for c in &r.curves {
            assert!(c.roots.iter().all(|x| c.sextic.evaluate(x).is_zero()));
        }
        assert!(r.n_geometric_classes <= r.n_rwp_curves);
        assert!(r.n_rwp_curves <= r.n_curves_constructed);
        assert!(r.n_curves_constructed <= r.n_solutions);
        assert_eq!(r.breakdown.len(), 4);
    }

    #[test]
    fn conventions_nest() {
        let r = run_search(&SearchConfig::with_height(6)).unwrap();
        let get = |z, p| r.counts(z, p).unwrap().clone();
        let ob = get(ZSigns::Both, PairOrder::Ordered);
        let ub = get(ZSigns::Both, PairOrder::Unordered);
        let on = get(ZSigns::Nonneg, PairOrder::Ordered);
        let un = get(ZSigns::Nonneg, PairOrder::Unordered);
        assert!(ub.n_solutions <= ob.n_solutions && on.n_solutions <= ob.n_solutions);
        assert!(un.n_solutions <= ub.n_solutions && un.n_solutions <= on.n_solutions);
        assert!(ub.n_geometric_classes <= ob.n_geometric_classes);
        // every off-diagonal seed has a swapped partner in the ordered set
        let m = enumerate_rationals(6).len();
        assert_eq!(ob.n_solutions - m, 2 * (ub.n_solutions - m));
    }

    #[test]
    fn deterministic_rerun() {
        let cfg = SearchConfig::with_height(5);
        let a = run_search(&cfg).unwrap();
        let b = run_search(&cfg).unwrap();
        assert_eq!(a.breakdown, b.breakdown);
        assert_eq!(a.curves, b.curves);
    }

    #[test]
    fn rejects_small_height() {
        assert!(matches!(run_search(&SearchConfig::with_height(1)), Err(Error::Config(_))));
    }

    #[test]
    fn jsonl_payload() {
        let r = run_search(&SearchConfig::with_height(3)).unwrap();
        let mut bare = Vec::new();
        r.write_jsonl(&mut bare, false).unwrap();
        assert_eq!(String::from_utf8(bare).unwrap().lines().count(), 1);
        let mut full = Vec::new();
        r.write_jsonl(&mut full, true).unwrap();
        let text = String::from_utf8(full).unwrap();
        assert_eq!(text.lines().count(), r.curves.len() + 1);
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        for k in ["seed", "sextic", "roots", "igusa"] {
            assert!(first.get(k).is_some(), "{k}");
        }
    }
}
