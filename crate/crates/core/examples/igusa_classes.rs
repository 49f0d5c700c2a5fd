// SPDX-License-Identifier: Apache-2.0

//! Igusa-Clebsch invariants and weighted-projective classification.

use fiverank::arith::{format_rational, int, rat};
use fiverank::genus2::{classify, Genus2Curve};

fn main() -> fiverank::Result<()> {
    let c0 = Genus2Curve::from_ints(&[2576, 8392, 11729, 8878, 3641, 640])?;
    let x5 = Genus2Curve::from_ints(&[0, -1, 0, 0, 0, 1])?;
    let curves = vec![
        c0.clone(),
        x5.clone(),
        c0.mobius(&int(1), &int(3), &int(0), &int(1))?,
        c0.mobius(&int(0), &int(1), &int(1), &int(0))?,
        x5.mobius(&int(2), &int(1), &int(-1), &int(3))?,
        Genus2Curve::new(c0.polynomial().scale(&rat(-5, 3)))?,
    ];
    let ics: Vec<_> = curves.iter().map(Genus2Curve::igusa_clebsch).collect();
    let labels = classify(&ics);
    for ((c, ic), l) in curves.iter().zip(&ics).zip(&labels) {
        let key = ic.normalized().map(|k| k.map(|q| format_rational(&q)));
        println!("class {l}: y^2 = {}\n    I2^5/I10 = {}", c.polynomial(), key.map_or("-".into(), |k| k[0].clone()));
    }
    Ok(())
}
