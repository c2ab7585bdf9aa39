// A normalizing `T = u(m m′)^{1/2}` does not give a *-map `Ad_T`; after the
// positive correction `a ∈ M` it does, and `Ad_{Ta}` is implemented by a
// unitary `U` with `U*Ta ∈ M′`.

use std::error::Error;

use vnkit::algebra::{commutant, random_algebra};
use vnkit::modular::{random_normalizing_operator, spatial_chain};
use vnkit::Tolerances;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = Tolerances::default();
    let (m, _) = random_algebra(&"(2,2),(3,1)".parse()?, 5)?;
    let mc = commutant(&m, &tol)?;
    let s = m.structure_or_compute(&tol)?.into_owned();
    let t = random_normalizing_operator(&m, &mc, &s, 6, &tol)?;

    let chain = spatial_chain(&m, &t, &tol)?;
    let ok = &chain.okayasu;
    println!("star defect: raw {:.3e}, corrected {:.1e}", ok.raw_star_defect, ok.star_defect);
    println!("normalization defects per block {:?}", ok.normalization_defects);
    println!(
        "U implements Ad_Ta to {:.1e}; U*Ta leaves M' by {:.1e}",
        chain.spatial.implementation_residual, chain.commutant_residual
    );
    assert!(ok.certificates.all_pass() && chain.spatial.certificates.all_pass());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
