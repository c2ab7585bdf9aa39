// Supports of an element and Murray–von Neumann comparison of projections.

use std::error::Error;

use vnkit::algebra::{mv_equivalent, random_algebra, supports};
use vnkit::Tolerances;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = Tolerances::default();
    let (m, _) = random_algebra(&"(2,1),(1,2)".parse()?, 3)?;
    let s = m.structure_or_compute(&tol)?.into_owned();

    let big = &s.blocks[1].minimal_projection() + &s.blocks[0].minimal_projection();
    let small = s.blocks[1].minimal_projection();
    let sup = supports(&big, &m, &tol)?;
    println!("rank l(p) = {:.0}, rank z(p) = {:.0}", sup.left.trace().re, sup.central.trace().re);

    let pair = mv_equivalent(&small, &big, &m, &tol)?;
    println!("relation {:?}, witness defect {:.1e}", pair.relation, pair.witness_defect());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
