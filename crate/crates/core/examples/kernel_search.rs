// SPDX-License-Identifier: Apache-2.0

//! Runs the kernel-bucketed seed search and prints the count table.
//!
//! cargo run --release --example kernel_search -- 30

use fiverank::search::{run_search, SearchConfig};

fn main() -> fiverank::Result<()> {
    let height = std::env::args().nth(1).map_or(Ok(12), |s| s.parse()).unwrap_or(12);
    let report = run_search(&SearchConfig::with_height(height))?;
    print!("{}", report.table());
    for (i, c) in report.classes.iter().take(5).enumerate() {
        let s = &c.representative.seed;
        println!("class {i}: {} seeds, e.g. t = {}, u = {}, z = {}", c.size, s.t, s.u, s.z);
    }
    Ok(())
}
