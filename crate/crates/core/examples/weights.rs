// `φ = τ(A ·)` on `⊕ M_n`: the sup ratio `‖b‖/φ(b)` equals `1/λ_min(A)`.

use std::error::Error;

use vnkit::algebra::random_algebra;
use vnkit::modular::StateDensity;
use vnkit::rng::{random_density, seeded};
use vnkit::weights::{canonical_trace, check_complement_conditions, cutoff_profile, pt_derivative, sup_ratio};
use vnkit::{ComplexMatrix, Tolerances};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = Tolerances::default();

    let m2 = vnkit::algebra::VNAlgebra::full(2);
    let phi = StateDensity::new(ComplexMatrix::from_real_diag(&[0.2, 0.8]), &tol)?;
    let s = sup_ratio(&m2, &phi, &tol)?;
    println!("M2, rho = diag(0.2, 0.8): sup ratio {:.10}, lambda_min {:.3}", s.value, s.lambda_min);

    let (m, _) = random_algebra(&"(2,2),(1,3)".parse()?, 4)?;
    let phi = StateDensity::new(random_density(m.ambient_dim(), &mut seeded(5)), &tol)?;
    let w = check_complement_conditions(&m, &phi, &tol)?;
    println!(
        "(2,2),(1,3): lambda_min {:.4}, sup ratio {:.4}, c = {:.4}, all conditions {}",
        w.lambda_min,
        w.sup_ratio.unwrap_or(f64::NAN),
        w.closed_graph_c.unwrap_or(f64::NAN),
        w.all_conditions()
    );

    let trace = canonical_trace(&m, &tol)?;
    let pt = pt_derivative(&trace, &m, &phi, &tol)?;
    let x = m.random_element(&mut seeded(6));
    let prof = cutoff_profile(&trace, &pt.a, &x.adjoint().matmul(&x), 9, &tol)?;
    for (k, v) in prof.ks.iter().zip(&prof.values) {
        println!("  k = {k:.3}: {v:.6}");
    }
    assert!(w.certificates.all_pass() && prof.certificates.all_pass());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
