// SPDX-License-Identifier: Apache-2.0

//! Walks a few members of the universal family with a point of order 10 and
//! prints the multiples of the marked point.

use fiverank::arith::{int, rat, squarefree_kernel};
use fiverank::x1ten::{delta10, solve_z, universal_curve};

fn main() -> fiverank::Result<()> {
    for t in [int(2), rat(2, 3), rat(-1, 3), rat(7, 5)] {
        let m = universal_curve(&t)?;
        println!("t = {t}: y^2 = x^3 + ({})x^2 + ({})x, j = {}", m.curve.a2, m.curve.a4, m.curve.j_invariant());
        let mut p = m.torsion_point.clone();
        for k in 1..=10 {
            println!("  {k:>2}P = {p}");
            p = m.curve.add(&p, &m.torsion_point)?;
        }
        println!("  kernel of delta10: {}", squarefree_kernel(&delta10(&t))?);
    }
    println!("z for (2/3, -1/3): {:?}", solve_z(&rat(2, 3), &rat(-1, 3))?.map(|z| z.to_string()));
    Ok(())
}
