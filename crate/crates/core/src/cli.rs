// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: `search`, `construct`, `classify`, `harvest`,
//! `classgroup`.
//!
//! Settings come from flags, then an optional TOML file (`--config`), then
//! defaults. Every file written gets a `<file>.manifest.json` next to it.
//!
//! Exit codes: 0 success, 2 hypothesis or validation failure, 3 input parse
//! error, 4 verification failure, 1 I/O and anything else.

use std::ffi::OsString;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::{format_rational, parse_rational, serde_rational_vec, Rational};
use crate::classgroup::{class_group, harvest};
use crate::error::{Error, Result};
use crate::genus2::{classify, Genus2Curve, IgusaClass};
use crate::hlp::{build_curve, HlpCurveRecord};
use crate::poly::RatPolynomial;
use crate::search::{run_search, PairOrder, SearchConfig, ZSigns};

#[derive(Debug, Parser)]
#[command(name = "fiverank", version, about = "Genus-2 curves with rational 5-torsion rank 2 and 5-ranks of class groups")]
pub struct Cli {
    /// TOML file with defaults for any flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true, env = "FIVERANK_WORKERS")]
    workers: Option<usize>,

    /// Recorded in the manifest; only randomized test harnesses consume it
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Print the resolved configuration as TOML and exit
    #[arg(long, global = true)]
    dump_config: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search a height box for seeds and classify the resulting curves
    Search(SearchArgs),
    /// Build the curve of a single seed
    Construct(ConstructArgs),
    /// Group curve records from JSON-lines files into geometric classes
    Classify(ClassifyArgs),
    /// Specialize a curve at integers and compute class groups
    Harvest(HarvestArgs),
    /// Class group of a negative discriminant
    Classgroup(ClassgroupArgs),
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Largest numerator or denominator of t and u (default 100)
    #[arg(long)]
    height: Option<u64>,
    #[arg(long, value_enum)]
    z_signs: Option<ZSigns>,
    #[arg(long, value_enum)]
    pair_order: Option<PairOrder>,
    /// Write one record per curve before the summary
    #[arg(long)]
    emit_curves: bool,
    /// JSON-lines output; a manifest is written next to it
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    /// Rational parameter, e.g. 2/3
    #[arg(short = 't', allow_hyphen_values = true)]
    t: String,
    /// Rational parameter, e.g. -1/3
    #[arg(short = 'u', allow_hyphen_values = true)]
    u: String,
    /// Solution of the matching equation, e.g. 25
    #[arg(short = 'z', allow_hyphen_values = true)]
    z: String,
    /// Print JSON instead of the text summary
    #[arg(long)]
    json: bool,
    /// Write the JSON record here; a manifest is written next to it
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    /// JSON-lines files of curve records or coefficient arrays
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Write the class labels as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct HarvestArgs {
    /// JSON file holding a coefficient array or a record with a `sextic` field
    #[arg(long)]
    curve: Option<PathBuf>,
    /// Inclusive integer range `LO..HI`
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    /// Largest |D| to compute
    #[arg(long)]
    cap: Option<u64>,
    /// JSON-lines output; a manifest is written next to it
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct ClassgroupArgs {
    /// Negative discriminant, e.g. -47
    #[arg(short = 'D')]
    d: i64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct FileConfig {
    workers: Option<usize>,
    seed: Option<u64>,
    search: FileSearch,
    harvest: FileHarvest,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct FileSearch {
    height: Option<u64>,
    z_signs: Option<ZSigns>,
    pair_order: Option<PairOrder>,
    emit_curves: Option<bool>,
    out: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct FileHarvest {
    curve: Option<PathBuf>,
    range: Option<String>,
    cap: Option<u64>,
    out: Option<PathBuf>,
}

/// The configuration after applying flags over the file over defaults.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Config {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub search: SearchSection,
    pub harvest: HarvestSection,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchSection {
    pub height: u64,
    pub z_signs: ZSigns,
    pub pair_order: PairOrder,
    pub emit_curves: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HarvestSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<PathBuf>,
    pub range: String,
    pub cap: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            workers: None,
            seed: None,
            search: SearchSection {
                height: 100,
                z_signs: ZSigns::Both,
                pair_order: PairOrder::Ordered,
                emit_curves: false,
                out: None,
            },
            harvest: HarvestSection { curve: None, range: "-500..500".into(), cap: 10_000_000, out: None },
        }
    }
}

fn read_file_config(path: &Path) -> Result<FileConfig> {
    let at = |e: String| Error::Config(format!("{}: {e}", path.display()));
    let text = std::fs::read_to_string(path).map_err(|e| at(e.to_string()))?;
    let value: toml::Value = toml::from_str(&text).map_err(|e| at(e.message().to_string()))?;
    serde_path_to_error::deserialize(value).map_err(|e| at(format!("key `{}`: {}", e.path(), e.inner())))
}

fn resolve(cli: &Cli) -> Result<Config> {
    let file = match &cli.config {
        Some(p) => read_file_config(p)?,
        None => FileConfig::default(),
    };
    let mut cfg = Config::default();
    cfg.workers = cli.workers.or(file.workers);
    cfg.seed = cli.seed.or(file.seed);

    let fs = file.search;
    let s = &mut cfg.search;
    s.height = fs.height.unwrap_or(s.height);
    s.z_signs = fs.z_signs.unwrap_or(s.z_signs);
    s.pair_order = fs.pair_order.unwrap_or(s.pair_order);
    s.emit_curves = fs.emit_curves.unwrap_or(s.emit_curves);
    s.out = fs.out;

    let fh = file.harvest;
    let h = &mut cfg.harvest;
    h.curve = fh.curve;
    h.range = fh.range.unwrap_or(h.range.clone());
    h.cap = fh.cap.unwrap_or(h.cap);
    h.out = fh.out;

    match &cli.command {
        Some(Command::Search(a)) => {
            let s = &mut cfg.search;
            s.height = a.height.unwrap_or(s.height);
            s.z_signs = a.z_signs.unwrap_or(s.z_signs);
            s.pair_order = a.pair_order.unwrap_or(s.pair_order);
            s.emit_curves |= a.emit_curves;
            if a.out.is_some() {
                s.out = a.out.clone();
            }
        }
        Some(Command::Harvest(a)) => {
            let h = &mut cfg.harvest;
            if a.curve.is_some() {
                h.curve = a.curve.clone();
            }
            if let Some(r) = &a.range {
                h.range = r.clone();
            }
            h.cap = a.cap.unwrap_or(h.cap);
            if a.out.is_some() {
                h.out = a.out.clone();
            }
        }
        _ => {}
    }
    Ok(cfg)
}

/// Bookkeeping written next to every output file.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub config: Config,
    pub version: String,
    pub timestamp_unix: u64,
    pub inputs: Vec<InputHash>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_s: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct InputHash {
    pub path: PathBuf,
    pub sha256: String,
}

fn hash_file(path: &Path) -> Result<InputHash> {
    let bytes = std::fs::read(path)?;
    Ok(InputHash { path: path.to_path_buf(), sha256: hex::encode(Sha256::digest(&bytes)) })
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

struct Run<'a> {
    subcommand: &'static str,
    cfg: &'a Config,
    inputs: Vec<PathBuf>,
}

impl Run<'_> {
    fn write_manifest(&self, out: &Path, timing_s: Option<f64>) -> Result<()> {
        let mut inputs = Vec::new();
        for p in &self.inputs {
            inputs.push(hash_file(p)?);
        }
        let m = RunManifest {
            subcommand: self.subcommand.into(),
            config: self.cfg.clone(),
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            inputs,
            timing_s,
        };
        let mut f = std::fs::File::create(manifest_path(out))?;
        serde_json::to_writer_pretty(&mut f, &m)?;
        f.write_all(b"\n")?;
        Ok(())
    }
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Hypothesis(_) | Error::Domain(_) | Error::Config(_) => 2,
        Error::Parse(_) | Error::Json(_) => 3,
        Error::Verification(_) => 4,
        Error::Io(_) => 1,
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let cfg = resolve(cli)?;
    if cli.dump_config {
        let text = toml::to_string(&cfg).map_err(|e| Error::Config(e.to_string()))?;
        print!("{text}");
        return Ok(());
    }
    if let Some(n) = cfg.workers {
        // a second call in the same process (tests) keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let mut inputs: Vec<PathBuf> = cli.config.iter().cloned().collect();
    match &cli.command {
        None => Err(Error::Config("no subcommand given (try --help)".into())),
        Some(Command::Search(_)) => cmd_search(&cfg, inputs),
        Some(Command::Construct(a)) => cmd_construct(&cfg, a, inputs),
        Some(Command::Classify(a)) => {
            inputs.extend(a.files.iter().cloned());
            cmd_classify(&cfg, a, inputs)
        }
        Some(Command::Harvest(_)) => {
            inputs.extend(cfg.harvest.curve.iter().cloned());
            cmd_harvest(&cfg, inputs)
        }
        Some(Command::Classgroup(a)) => cmd_classgroup(a.d),
    }
}

fn cmd_search(cfg: &Config, inputs: Vec<PathBuf>) -> Result<()> {
    let s = &cfg.search;
    let sc = SearchConfig {
        height_bound: s.height,
        z_signs: s.z_signs,
        pair_order: s.pair_order,
        emit_curves: s.emit_curves,
        output: s.out.clone(),
    };
    let report = run_search(&sc)?;
    print!("{}", report.table());
    if let Some(out) = &s.out {
        let mut w = std::io::BufWriter::new(std::fs::File::create(out)?);
        report.write_jsonl(&mut w, s.emit_curves)?;
        w.flush()?;
        Run { subcommand: "search", cfg, inputs }.write_manifest(out, Some(report.timing.total_s))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ConstructOutput<'a> {
    #[serde(flatten)]
    record: &'a HlpCurveRecord,
    #[serde(with = "serde_rational_vec")]
    roots: Vec<Rational>,
    igusa: IgusaClass,
    odd_model: Option<Genus2Curve>,
}

fn cmd_construct(cfg: &Config, a: &ConstructArgs, inputs: Vec<PathBuf>) -> Result<()> {
    let t = parse_rational(&a.t)?;
    let u = parse_rational(&a.u)?;
    let z = parse_rational(&a.z)?;
    let rec = build_curve(&t, &u, &z)?;
    rec.ensure_verified()?;
    let curve = Genus2Curve::new(rec.sextic.clone())?;
    let roots = curve.weierstrass_points()?.finite;
    let igusa = curve.igusa_clebsch();
    let odd_model = roots.first().map(|r| curve.to_odd_model(r)).transpose()?;
    if let Some(m) = &odd_model {
        if !crate::genus2::same_geometric_class(&m.igusa_clebsch(), &igusa) {
            return Err(Error::Verification("odd model changed the Igusa-Clebsch class".into()));
        }
    }
    let out = ConstructOutput { record: &rec, roots, igusa, odd_model };
    if a.json {
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("seed     t = {}, u = {}, z = {}", a.t, a.u, a.z);
        println!("curve    y^2 = {}", rec.sextic);
        let flags = serde_json::to_value(rec.flags)?;
        println!("checks   {}", flags);
        let roots: Vec<String> = out.roots.iter().map(format_rational).collect();
        println!("rational Weierstrass points  [{}]", roots.join(", "));
        if let Some(m) = &out.odd_model {
            println!("odd model  y^2 = {}", m.polynomial());
        }
        let ic = out.igusa.as_array().map(format_rational);
        println!("Igusa-Clebsch  ({})", ic.join(", "));
    }
    if let Some(path) = &a.out {
        let mut f = std::fs::File::create(path)?;
        serde_json::to_writer(&mut f, &out)?;
        f.write_all(b"\n")?;
        Run { subcommand: "construct", cfg, inputs }.write_manifest(path, None)?;
    }
    Ok(())
}

/// A curve read from a JSON value: a bare coefficient array or an object whose
/// `sextic` field is one.
fn curve_from_json(v: &serde_json::Value) -> Result<Option<Genus2Curve>> {
    let poly = match v {
        serde_json::Value::Array(_) => v,
        serde_json::Value::Object(m) if m.contains_key("summary") => return Ok(None),
        serde_json::Value::Object(m) => match m.get("sextic") {
            Some(s) => s,
            None => return Err(Error::Parse("object has no `sextic` field".into())),
        },
        _ => return Err(Error::Parse("expected a JSON array or object".into())),
    };
    let f: RatPolynomial = serde_json::from_value(poly.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    Genus2Curve::new(f).map(Some).map_err(|e| Error::Parse(e.to_string()))
}

/// Reads curves from a JSON-lines file; blank lines and summary objects are skipped.
pub fn read_curves(path: &Path) -> Result<Vec<Genus2Curve>> {
    let f = std::fs::File::open(path)?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let at = |e: String| Error::Parse(format!("{}:{}: {e}", path.display(), i + 1));
        let v: serde_json::Value = serde_json::from_str(&line).map_err(|e| at(e.to_string()))?;
        if let Some(c) = curve_from_json(&v).map_err(|e| at(e.to_string()))? {
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct ClassSummary<'a> {
    class: usize,
    size: usize,
    representative: &'a Genus2Curve,
    igusa: &'a IgusaClass,
}

fn cmd_classify(cfg: &Config, a: &ClassifyArgs, inputs: Vec<PathBuf>) -> Result<()> {
    let mut curves = Vec::new();
    for p in &a.files {
        curves.extend(read_curves(p)?);
    }
    let ics: Vec<IgusaClass> = curves.iter().map(Genus2Curve::igusa_clebsch).collect();
    let labels = classify(&ics);
    let n_classes = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0usize; n_classes];
    let mut reps: Vec<usize> = Vec::with_capacity(n_classes);
    for (i, &l) in labels.iter().enumerate() {
        if l == reps.len() {
            reps.push(i);
        }
        sizes[l] += 1;
    }
    println!("{} curves, {} geometric classes", curves.len(), n_classes);
    for (l, &i) in reps.iter().enumerate() {
        println!("  class {l:>3}  size {:>4}  y^2 = {}", sizes[l], curves[i].polynomial());
    }
    if let Some(out) = &a.out {
        let mut w = std::io::BufWriter::new(std::fs::File::create(out)?);
        for (l, &i) in reps.iter().enumerate() {
            let s = ClassSummary { class: l, size: sizes[l], representative: &curves[i], igusa: &ics[i] };
            serde_json::to_writer(&mut w, &s)?;
            w.write_all(b"\n")?;
        }
        let summary = serde_json::json!({ "summary": { "n_curves": curves.len(), "n_geometric_classes": n_classes } });
        serde_json::to_writer(&mut w, &summary)?;
        w.write_all(b"\n")?;
        w.flush()?;
        Run { subcommand: "classify", cfg, inputs }.write_manifest(out, None)?;
    }
    Ok(())
}

/// Parses `LO..HI` (inclusive).
pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse(format!("expected LO..HI, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Error::Config(format!("empty range {s}")));
    }
    Ok((lo, hi))
}

fn cmd_harvest(cfg: &Config, inputs: Vec<PathBuf>) -> Result<()> {
    let h = &cfg.harvest;
    let path = h.curve.as_ref().ok_or_else(|| Error::Config("harvest needs --curve".into()))?;
    let curve = read_curves(path)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Parse(format!("{}: no curve found", path.display())))?;
    let (lo, hi) = parse_range(&h.range)?;
    let start = std::time::Instant::now();
    let result = harvest(&curve, lo, hi, h.cap)?;
    let elapsed = start.elapsed().as_secs_f64();
    for r in &result.records {
        let mark = if r.rank5_at_least_2 { "  rank5 >= 2" } else { "" };
        println!("n = {:>6}  D = {:>10}  h = {:>6}  rank5 = {}{mark}", r.n, r.report.d, r.report.h, r.report.rank5);
    }
    println!(
        "{} fields, {} skipped, {} with rank5 >= 2",
        result.records.len(),
        result.skipped.len(),
        result.rank5_at_least_2().count()
    );
    if let Some(out) = &h.out {
        let mut w = std::io::BufWriter::new(std::fs::File::create(out)?);
        for r in &result.records {
            serde_json::to_writer(&mut w, r)?;
            w.write_all(b"\n")?;
        }
        w.flush()?;
        Run { subcommand: "harvest", cfg, inputs }.write_manifest(out, Some(elapsed))?;
    }
    Ok(())
}

fn cmd_classgroup(d: i64) -> Result<()> {
    let (report, forms) = class_group(d)?;
    let forms: Vec<[i64; 3]> = forms.iter().map(|f| [f.a, f.b, f.c]).collect();
    let v = serde_json::json!({ "D": report.d, "h": report.h, "rank5": report.rank5, "forms": forms });
    println!("{}", serde_json::to_string(&v)?);
    Ok(())
}
