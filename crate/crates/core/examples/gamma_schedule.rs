// `γ_k = √T_k + √T_{k+1}` for `α_k = 4^{-k}`: `Σ α_k/γ_k` telescopes to
// `√T_1 − √T_{K+1}`.

use std::error::Error;

use vnkit::btlift::{gamma_schedule, gamma_schedule_with_remainder};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let alphas: Vec<f64> = (1..=8).map(|k| 0.25f64.powi(k)).collect();
    let g = gamma_schedule_with_remainder(&alphas, 0.25f64.powi(8) / 3.0)?;
    println!("gamma_1 = {:.6}", g.gammas[0]);
    println!("sum = {:.12}, telescoped = {:.12}", g.weighted_sum, g.telescoped);

    for k in [4, 8, 16, 32] {
        let a: Vec<f64> = (1..=k).map(|j| 0.25f64.powi(j)).collect();
        println!("K = {k:>2}: sum = {:.9}", gamma_schedule(&a)?.weighted_sum);
    }
    println!("limit sqrt(1/3) = {:.9}", (1.0f64 / 3.0).sqrt());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
