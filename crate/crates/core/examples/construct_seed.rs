// SPDX-License-Identifier: Apache-2.0

//! Builds the genus-2 curve of the seed (2/3, -1/3, 25), runs every
//! verification, and checks it against C0 entered directly.

use fiverank::arith::{int, rat};
use fiverank::genus2::{same_geometric_class, Genus2Curve};
use fiverank::hlp::build_curve;

fn main() -> fiverank::Result<()> {
    let rec = build_curve(&rat(2, 3), &rat(-1, 3), &int(25))?;
    rec.ensure_verified()?;
    println!("y^2 = {}", rec.sextic);
    println!("E_t' = {:?}", rec.et_prime.curve.ainvs().map(ToString::to_string));
    println!("E_u' = {:?}", rec.eu_prime.curve.ainvs().map(ToString::to_string));
    println!("flags: {}", serde_json::to_string(&rec.flags)?);

    let even = Genus2Curve::new(rec.sextic.clone())?;
    let c0 = Genus2Curve::from_ints(&[2576, 8392, 11729, 8878, 3641, 640])?;
    println!("Weierstrass points of C0: {:?}", c0.weierstrass_points()?.finite.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("same class as C0: {}", same_geometric_class(&even.igusa_clebsch(), &c0.igusa_clebsch()));
    Ok(())
}
