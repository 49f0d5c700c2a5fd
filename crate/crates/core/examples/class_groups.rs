// SPDX-License-Identifier: Apache-2.0

//! Reduced forms, composition, and 5-ranks of a few imaginary quadratic
//! class groups.

use fiverank::classgroup::{class_group, compose, QuadForm};

fn main() -> fiverank::Result<()> {
    for d in [-23, -47, -11199, -113140] {
        let (report, forms) = class_group(d)?;
        println!("D = {d}: h = {}, 5-rank = {}", report.h, report.rank5);
        if forms.len() <= 5 {
            for f in &forms {
                println!("  {f}");
            }
        }
    }
    let f = QuadForm::new(2, 1, 3);
    println!("(2,1,3)^2 = {}", compose(&f, &f)?);
    println!("(2,1,3)^3 = {}", f.pow(3)?);
    Ok(())
}
