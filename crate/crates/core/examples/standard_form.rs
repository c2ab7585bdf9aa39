// Standardness by block balance, and the antilinear criterion for `J` and
// for `m′J` with invertible `m′ ∈ M′`.

use std::error::Error;

use vnkit::algebra::{commutant, random_algebra};
use vnkit::modular::{check_t_criterion, is_standard};
use vnkit::rng::seeded;
use vnkit::Tolerances;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = Tolerances::default();

    let (m, _) = random_algebra(&"(2,3)".parse()?, 1)?;
    let v = is_standard(&m, &tol)?;
    let o = v.obstruction.as_ref().expect("unbalanced");
    println!("(2,3): standard = {}, dim M = {} vs dim M' = {}", v.standard, o.dim_algebra, o.dim_commutant);

    let (m, _) = random_algebra(&"(2,2),(1,1)".parse()?, 2)?;
    let v = is_standard(&m, &tol)?;
    let j = v.j.expect("balanced blocks give J");
    let r = check_t_criterion(&m, &j, &tol)?;
    println!("(2,2),(1,1): J passes = {}, residuals {:.1e} / {:.1e}", r.passes, r.commutant_residual, r.centre_residual);

    let mc = commutant(&m, &tol)?;
    let mut rng = seeded(3);
    for _ in 0..3 {
        let t = j.before_linear(&mc.random_element(&mut rng));
        let r = check_t_criterion(&m, &t, &tol)?;
        println!("  m'J passes = {} ({:.1e})", r.passes, r.commutant_residual);
        assert!(r.passes);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
