// Lifting `ξ_k ∈ M ξ_o` to `b_k` with `b_k η_o = ξ_k` and `‖b_k‖ ≤ √γ_k`.

use std::error::Error;

use vnkit::algebra::random_algebra;
use vnkit::btlift::{bt_convergence_run, ApproximantMode};
use vnkit::rng::{seeded, random_unit_vector};
use vnkit::{ComplexMatrix, Tolerances};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = Tolerances::default();
    let (m, _) = random_algebra(&"(3,3)".parse()?, 1)?;
    let mut rng = seeded(2);
    let xi0 = random_unit_vector(m.ambient_dim(), &mut rng);
    let xis: Vec<ComplexMatrix> = (0..6)
        .map(|k| {
            let v = m.random_element(&mut rng).matmul(&xi0);
            v.scale_real(0.5f64.powi(k) / v.norm())
        })
        .collect();

    let r = bt_convergence_run(&m, &xi0, &xis, 6, ApproximantMode::Scheduled { beta: 0.5 }, &tol)?;
    println!("c = {:.4}", r.c);
    println!("  k   ‖ξ_k‖     ‖b_k‖    √γ_k   ‖b_k η_o − ξ_k‖");
    for (k, xi) in xis.iter().enumerate() {
        let err = (&r.bs[k].matmul(&r.eta0) - xi).norm();
        println!("  {k}  {:.5}  {:.5}  {:.5}  {err:.1e}", xi.norm(), r.b_norms[k], r.gammas[k].sqrt());
    }
    if let Some(c) = r.certificates.first_failure() {
        return Err(format!("{} failed", c.name).into());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
