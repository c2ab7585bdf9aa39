// Block structure of a seeded algebra and of its commutant.

use std::error::Error;

use vnkit::algebra::{commutant_report, random_algebra, structure_report, BlockSpec};
use vnkit::Tolerances;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = Tolerances::default();
    let spec: BlockSpec = "(2,3),(1,1)".parse()?;
    let (m, _) = random_algebra(&spec, 11)?;

    let s = structure_report(&m, &tol)?;
    println!("M on C^{}: dim {}, blocks {:?}, centre dim {}", s.ambient_dim, s.dim_algebra, s.shape, s.centre_dim);

    let c = commutant_report(&m, &tol)?;
    println!("M' : dim {} (Σ m² = {}), blocks {:?}", c.dim_commutant, c.expected_dim, c.commutant_shape);
    println!("M'' vs M residual {:.1e}", c.double_commutant_residual);
    println!(
        "cyclic/separating: M ({}, {}), M' ({}, {})",
        c.cyclic.has_cyclic, c.cyclic.has_separating, c.commutant_cyclic.has_cyclic, c.commutant_cyclic.has_separating
    );
    for cert in s.certificates.iter().chain(c.certificates.iter()) {
        println!("  {:<40} {:.2e} <= {:.2e}  {}", cert.name, cert.measured, cert.bound, cert.pass);
    }
    assert!(c.certificates.all_pass());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
