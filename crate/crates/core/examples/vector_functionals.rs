// Cyclic/separating split, minimal module generators, and `ω′ = Σ ω_ζ` on `M′`.

use std::error::Error;

use vnkit::algebra::{module_generators, random_algebra, VNAlgebra};
use vnkit::modular::{cyclic_separating_split, vector_functional_decomposition, StateDensity};
use vnkit::rng::{random_density, random_unit_vector, seeded};
use vnkit::Tolerances;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = Tolerances::default();
    let (m, _) = random_algebra(&"(2,3),(3,1)".parse()?, 8)?;
    let split = cyclic_separating_split(&m, &tol)?;
    println!("cyclic side {:?}, separating side {:?}", split.cyclic_blocks, split.separating_blocks);

    let mut rng = seeded(9);
    let xs: Vec<_> = (0..4).map(|_| random_unit_vector(m.ambient_dim(), &mut rng)).collect();
    let g = module_generators(&m, &xs, &tol)?;
    println!("4 vectors, module generated by {} (block ranks {:?})", g.count(), g.block_ranks);

    for d in [1, 3, 5] {
        let omega = StateDensity::new(random_density(d, &mut rng), &tol)?;
        let v = vector_functional_decomposition(&VNAlgebra::scalars(d), &omega, &tol)?;
        println!("C1 on C^{d}: {} vectors, residual {:.1e}", v.count(), v.residual);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
