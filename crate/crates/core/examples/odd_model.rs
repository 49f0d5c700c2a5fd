// SPDX-License-Identifier: Apache-2.0

//! Moves a rational Weierstrass point of an even model to infinity.

use fiverank::arith::{int, rat};
use fiverank::genus2::{same_geometric_class, Genus2Curve};
use fiverank::hlp::build_curve;

fn main() -> fiverank::Result<()> {
    let rec = build_curve(&rat(2, 3), &rat(-1, 3), &int(25))?;
    let even = Genus2Curve::new(rec.sextic)?;
    println!("even model: y^2 = {}", even.polynomial());
    for r in even.weierstrass_points()?.finite {
        let odd = even.to_odd_model(&r)?;
        let same = same_geometric_class(&odd.igusa_clebsch(), &even.igusa_clebsch());
        println!("root {r}: y^2 = {}  (same class: {same})", odd.polynomial());
    }
    let c0 = Genus2Curve::from_ints(&[2576, 8392, 11729, 8878, 3641, 640])?;
    let moved = c0.to_odd_model(&rat(-7, 5))?;
    println!("C0 with -7/5 sent to infinity: y^2 = {}", moved.polynomial());
    Ok(())
}
