// SPDX-License-Identifier: Apache-2.0

//! Specializes the curve C0 at integers and lists the imaginary quadratic
//! fields it produces, marking those whose class group has 5-rank at least 2.
//!
//! cargo run --release --example harvest_fields -- -500 500 10000000

use fiverank::classgroup::harvest;
use fiverank::genus2::Genus2Curve;

fn main() -> fiverank::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (lo, hi, cap) = match args[..] {
        [lo, hi, cap] => (lo, hi, cap as u64),
        _ => (-500, 500, 10_000_000),
    };
    let c0 = Genus2Curve::from_ints(&[2576, 8392, 11729, 8878, 3641, 640])?;
    let h = harvest(&c0, lo, hi, cap)?;
    for r in &h.records {
        let mark = if r.rank5_at_least_2 { "  <- 5-rank >= 2" } else { "" };
        println!("n = {:>5}  D = {:>9}  h = {:>5}  rank5 = {}{mark}", r.n, r.report.d, r.report.h, r.report.rank5);
    }
    println!(
        "{} fields, {} skipped, {} with 5-rank >= 2",
        h.records.len(),
        h.skipped.len(),
        h.rank5_at_least_2().count()
    );
    Ok(())
}
