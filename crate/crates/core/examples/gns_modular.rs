// GNS representation of `M₂` for `ρ = diag(0.2, 0.8)`: `Δ` has spectrum
// `{λ_i/λ_j}` and `J` conjugates `π(M)` onto its commutant.

use std::error::Error;

use vnkit::algebra::VNAlgebra;
use vnkit::modular::{gns, StateDensity};
use vnkit::{ComplexMatrix, Tolerances};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = Tolerances::default();
    let m = VNAlgebra::full(2);
    let phi = StateDensity::new(ComplexMatrix::from_real_diag(&[0.2, 0.8]), &tol)?;
    let g = gns(&m, &phi, &tol)?;

    let mut spectrum = g.delta_spectrum.clone();
    spectrum.sort_by(f64::total_cmp);
    println!("dim H_phi = {}, spec Delta = {spectrum:.6?}", g.gns_dim);

    let certs = g.certificates(&tol)?;
    for c in certs.iter() {
        println!("  {:<32} {:.2e}", c.name, c.measured);
    }
    assert!(certs.all_pass());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
