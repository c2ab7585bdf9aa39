//! Acceptance criteria 1–9, one line each. Runs without the test harness so
//! the lines always print; exits nonzero when any criterion fails.

mod common;

use std::fmt::Display;
use std::time::Instant;

use rand::Rng;
use vnkit::algebra::{
    commutant, commutant_report, orbit_matrix, random_algebra, random_spec, BlockSpec, VNAlgebra,
};
use vnkit::btlift::{bt_convergence_run, gamma_schedule, gamma_schedule_with_remainder, ApproximantMode};
use vnkit::cli::{self, Kind, Scenario};
use vnkit::modular::{
    check_t_criterion, gns, is_standard, okayasu_correct, random_normalizing_operator, star_defect,
    vector_functional_decomposition, StateDensity,
};
use vnkit::rng::{derived, random_density, random_unit_vector, SeededRng};
use vnkit::weights::{canonical_trace, cutoff_profile, pt_derivative, pt_weight_cutoff, sup_ratio};
use vnkit::{certificate::ids, ComplexMatrix, Tolerances, C64};

const SEED: u64 = 20_260_101;
const TOL: f64 = 1e-8;
const CORPUS: usize = 60;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ok<T, E: Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Alternates balanced shapes (standard) with unconstrained ones.
fn corpus() -> Vec<(BlockSpec, VNAlgebra)> {
    let mut rng = derived(SEED, 100);
    (0..CORPUS)
        .map(|i| {
            let spec = if i % 2 == 0 {
                let count = rng.random_range(1..=3);
                let blocks = (0..count).map(|_| rng.random_range(1..=2)).map(|n| (n, n)).collect();
                BlockSpec::new(blocks).unwrap()
            } else {
                random_spec(12, 3, &mut rng).unwrap()
            };
            let (m, _) = random_algebra(&spec, rng.random()).unwrap();
            (spec, m)
        })
        .collect()
}

fn faithful_state(d: usize, rng: &mut SeededRng) -> StateDensity {
    StateDensity::new(random_density(d, rng), &Tolerances::default()).unwrap()
}

fn c1_bt_constants() -> Outcome {
    let tol = Tolerances::default();
    let mut rng = derived(SEED, 1);
    let (k_len, depth): (usize, usize) = (6, 6);
    let mut worst_slack = f64::NEG_INFINITY;
    let mut max_d = 0;
    for inst in 0..100 {
        let spec = ok(random_spec(32, 4, &mut rng))?;
        let (m, _) = ok(random_algebra(&spec, rng.random()))?;
        let d = m.ambient_dim();
        max_d = max_d.max(d);
        let xi0 = random_unit_vector(d, &mut rng).scale_real(0.5 + 1.5 * rng.random::<f64>());
        let xis: Vec<ComplexMatrix> = (0..k_len)
            .map(|k| {
                let v = m.random_element(&mut rng).matmul(&xi0);
                v.scale_real((0.5 + rng.random::<f64>()) * 0.5f64.powi(k as i32) / v.norm())
            })
            .collect();
        let r = ok(bt_convergence_run(&m, &xi0, &xis, depth, ApproximantMode::Scheduled { beta: 0.5 }, &tol))?;
        if let Some(c) = r.certificates.first_failure() {
            return Err(format!("instance {inst} ({spec}): {} = {:.3e} vs {:.3e}", c.name, c.measured, c.bound));
        }
        let mut check = |lhs: f64, rhs: f64, what: &str| -> Result<(), String> {
            worst_slack = worst_slack.max(lhs - rhs);
            ensure(lhs <= rhs + TOL, || format!("instance {inst} ({spec}): {what}: {lhs:.3e} > {rhs:.3e}"))
        };
        let ap = &r.approximants;
        let mut y_sq = vec![xi0.norm().powi(2); k_len.max(depth)];
        for (k, xi) in xis.iter().enumerate() {
            let g = r.gammas[k];
            let mut partial = ComplexMatrix::zeros(d, 1);
            let mut b = ComplexMatrix::zeros(d, d);
            for (j, x) in ap.x[k].iter().enumerate() {
                let term = x.matmul(&xi0);
                partial += &term;
                check((&partial - xi).norm(), xi.norm() * 0.25f64.powi(j as i32 + 2), "residual")?;
                let cap = if j == 0 { 17.0 / 16.0 } else { 5.0 * 0.25f64.powi(j as i32 + 2) };
                check(term.norm(), cap * xi.norm(), "term")?;
                let xa = x.matmul(&r.a);
                check(common::op_norm(&xa), g.sqrt() * 0.5f64.powi(j as i32 + 1), "x a")?;
                b += &xa;
                for (p, y) in y_sq.iter_mut().enumerate() {
                    if k <= p && j <= p + 1 {
                        *y += 4f64.powi(j as i32 + 1) / g * term.norm().powi(2);
                    }
                }
            }
            check(common::op_norm(&b), g.sqrt(), "‖b_k‖")?;
            check((&b.matmul(&r.eta0) - xi).norm(), xi.norm() * 0.25f64.powi(8), "b η_o")?;
        }
        let bound = xi0.norm().powi(2) + 5.0 * xis.iter().zip(&r.gammas).map(|(x, g)| x.norm().powi(2) / g).sum::<f64>();
        for y in &y_sq {
            check(*y, bound, "‖y_p ξ_o‖²")?;
        }
        check((&r.a.matmul(&r.eta0) - &xi0).norm(), 0.0, "a η_o")?;
    }
    Ok(format!("100 instances, d ≤ {max_d}, worst slack {worst_slack:.2e}"))
}

fn c2_gamma() -> Outcome {
    let mut rng = derived(SEED, 2);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let len = rng.random_range(1..=40);
        let alphas: Vec<f64> = (0..len).map(|_| rng.random::<f64>().powi(3) + 1e-6).collect();
        let g = ok(gamma_schedule(&alphas))?;
        let tails: Vec<f64> = (0..=len).map(|k| alphas[k..].iter().sum()).collect();
        let lhs: f64 = alphas.iter().zip(&g.gammas).map(|(a, g)| a / g).sum();
        let rhs = tails[0].sqrt() - tails[len].sqrt();
        worst = worst.max((lhs - rhs).abs() / rhs);
    }
    ensure(worst <= 1e-12, || format!("telescoping relative error {worst:.2e}"))?;
    let alphas: Vec<f64> = (1..=8).map(|k| 0.25f64.powi(k)).collect();
    let g1 = ok(gamma_schedule_with_remainder(&alphas, 0.25f64.powi(8) / 3.0))?.gammas[0];
    ensure((g1 - 0.866025).abs() <= 1e-6, || format!("γ₁ = {g1}"))?;
    let limit = (1.0f64 / 3.0).sqrt();
    let mut prev = 0.0;
    let mut last_gap = f64::INFINITY;
    for len in [4, 8, 16, 32] {
        let alphas: Vec<f64> = (1..=len).map(|k| 0.25f64.powi(k)).collect();
        let sum = ok(gamma_schedule(&alphas))?.weighted_sum;
        ensure(sum > prev && sum <= limit + 1e-12, || format!("partial sum {sum} at K = {len}"))?;
        prev = sum;
        last_gap = limit - sum;
    }
    ensure(last_gap < 1e-6, || format!("K = 32 still {last_gap:.2e} from 0.577350"))?;
    Ok(format!("relative error {worst:.1e}, γ₁ = {g1:.6}, Σ → {prev:.6}"))
}

fn c3_standardness(corpus: &[(BlockSpec, VNAlgebra)]) -> Outcome {
    let tol = Tolerances::default();
    let mut rng = derived(SEED, 3);
    let (mut standard, mut worst) = (0, 0.0f64);
    for (spec, m) in corpus {
        let balanced = spec.is_balanced();
        let v = ok(is_standard(m, &tol))?;
        ensure(v.standard == balanced, || format!("{spec}: verdict {} vs oracle {balanced}", v.standard))?;
        if balanced {
            standard += 1;
            let j = v.j.as_ref().ok_or("standard without J")?;
            let mc = ok(commutant(m, &tol))?;
            let mut ts = vec![j.clone()];
            ts.extend((0..10).map(|_| j.before_linear(&mc.random_element(&mut rng))));
            for t in &ts {
                let r = ok(check_t_criterion(m, t, &tol))?;
                worst = worst.max(r.commutant_residual).max(r.centre_residual);
                ensure(r.passes, || format!("{spec}: T criterion fails ({r:?})"))?;
                // TBT⁻¹ must commute with M, and span a space of dimension Σ m².
                let linv = common::inverse(t.linear_part());
                let images: Vec<ComplexMatrix> = m.elements().iter().map(|b| t.conjugate_with(b, &linv)).collect();
                let comm = images
                    .iter()
                    .flat_map(|c| m.elements().iter().map(move |b| c.commutator(b).fro_norm() / c.fro_norm()))
                    .fold(0.0, f64::max);
                worst = worst.max(comm);
                ensure(comm <= TOL, || format!("{spec}: T B T⁻¹ fails to commute ({comm:.2e})"))?;
                ensure(common::span_dim(&images) == spec.commutant_dim(), || format!("{spec}: image dimension"))?;
            }
        } else {
            let o = v.obstruction.as_ref().ok_or("non-standard without obstruction")?;
            let mut expect: Vec<(usize, usize)> = spec.blocks().iter().copied().filter(|(n, k)| n != k).collect();
            expect.sort_unstable();
            ensure(o.unbalanced == expect, || format!("{spec}: obstruction {:?}", o.unbalanced))?;
            ensure(
                o.dim_algebra == spec.algebra_dim() && o.dim_commutant == spec.commutant_dim(),
                || format!("{spec}: obstruction dims {} / {}", o.dim_algebra, o.dim_commutant),
            )?;
        }
    }
    Ok(format!(
        "{} algebras, {standard} standard ({} T operators), worst residual {worst:.1e}",
        corpus.len(),
        standard * 11
    ))
}

fn c4_gns(corpus: &[(BlockSpec, VNAlgebra)]) -> Outcome {
    let tol = Tolerances::default();
    let mut rng = derived(SEED, 4);
    let mut worst: f64 = 0.0;
    for (spec, m) in corpus {
        let phi = faithful_state(m.ambient_dim(), &mut rng);
        let g = ok(gns(m, &phi, &tol))?;
        let certs = ok(g.certificates(&tol))?;
        for name in [ids::GNS_JMJ_COMMUTANT, ids::GNS_JZJ_ADJOINT] {
            let c = certs.get(name).ok_or(format!("missing {name}"))?;
            ensure(c.pass, || format!("{spec}: {name} = {:.2e}", c.measured))?;
        }
        let conj: Vec<ComplexMatrix> = g.rep_basis.iter().map(|r| g.j_conjugate(r)).collect();
        for c in &conj {
            for r in &g.rep_basis {
                worst = worst.max(c.commutator(r).fro_norm());
            }
        }
        ensure(common::span_dim(&conj) == spec.algebra_dim(), || format!("{spec}: dim Jπ(M)J"))?;
        let s = ok(m.structure_or_compute(&tol))?;
        let mut z = ComplexMatrix::zeros(m.ambient_dim(), m.ambient_dim());
        for (i, b) in s.blocks.iter().enumerate() {
            z += &b.projection.scale(C64::new(1.0 + i as f64, 0.5 - i as f64));
        }
        let pz = g.rep(&z);
        worst = worst.max((&g.j_conjugate(&pz) - &pz.adjoint()).fro_norm());
    }
    ensure(worst <= TOL, || format!("residual {worst:.2e}"))?;
    let m2 = VNAlgebra::full(2);
    let phi = ok(StateDensity::new(ComplexMatrix::from_real_diag(&[0.2, 0.8]), &tol))?;
    let g = ok(gns(&m2, &phi, &tol))?;
    let spec_ref = common::eigenvalues(&g.delta);
    let expect = [0.25, 1.0, 1.0, 4.0];
    let err = spec_ref.iter().zip(&expect).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let mut lib = g.delta_spectrum.clone();
    lib.sort_by(f64::total_cmp);
    let err_lib = lib.iter().zip(&expect).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    ensure(err.max(err_lib) <= TOL, || format!("Δ spectrum {spec_ref:?}"))?;
    Ok(format!("{} algebras, worst residual {worst:.1e}; M₂ Δ = {{0.25, 1, 1, 4}} ± {err:.0e}", corpus.len()))
}

fn c5_okayasu() -> Outcome {
    let tol = Tolerances::default();
    let mut rng = derived(SEED, 5);
    let (mut nontrivial, mut worst) = (0, 0.0f64);
    for i in 0..100 {
        // On abelian M every normalizing T already gives a *-map; draw shapes
        // with a block n ≥ 2 so the correction has work to do.
        let spec = loop {
            let s = ok(random_spec(12, 3, &mut rng))?;
            if s.blocks().iter().any(|&(n, _)| n >= 2) {
                break s;
            }
        };
        let (m, _) = ok(random_algebra(&spec, rng.random()))?;
        let mc = ok(commutant(&m, &tol))?;
        let s = ok(m.structure_or_compute(&tol))?.into_owned();
        let t = ok(random_normalizing_operator(&m, &mc, &s, rng.random(), &tol))?;
        let r = ok(okayasu_correct(&m, &t, &tol))?;
        let ta = t.matmul(&r.a);
        let corrected = star_defect(&m, &ta, &common::inverse(&ta));
        let raw = star_defect(&m, &t, &common::inverse(&t));
        worst = worst.max(corrected);
        ensure(corrected <= TOL, || format!("instance {i} ({spec}): corrected defect {corrected:.2e}"))?;
        if raw > 1e-2 {
            nontrivial += 1;
        }
    }
    ensure(nontrivial >= 90, || format!("raw defect > 1e-2 on only {nontrivial}/100"))?;
    Ok(format!("corrected defect ≤ {worst:.1e}; raw defect > 1e-2 on {nontrivial}/100"))
}

fn c6_commutant(corpus: &[(BlockSpec, VNAlgebra)]) -> Outcome {
    let tol = Tolerances::default();
    let mut worst: f64 = 0.0;
    for (spec, m) in corpus {
        let r = ok(commutant_report(m, &tol))?;
        if let Some(c) = r.certificates.first_failure() {
            return Err(format!("{spec}: {} = {:.2e}", c.name, c.measured));
        }
        worst = worst.max(r.double_commutant_residual).max(r.centre_residual);
        ensure(r.dim_commutant == spec.commutant_dim(), || format!("{spec}: dim M′ = {}", r.dim_commutant))?;
        let mc = ok(commutant(m, &tol))?;
        let mcc = ok(commutant(&mc, &tol))?;
        let mut joint = m.elements().to_vec();
        joint.extend(mcc.elements().iter().cloned());
        ensure(common::span_dim(&joint) == spec.algebra_dim(), || format!("{spec}: M″ ≠ M"))?;
        let cyclic = spec.blocks().iter().all(|&(n, k)| k <= n);
        let separating = spec.blocks().iter().all(|&(n, k)| n <= k);
        ensure(
            (r.cyclic.has_cyclic, r.cyclic.has_separating) == (cyclic, separating)
                && (r.commutant_cyclic.has_cyclic, r.commutant_cyclic.has_separating) == (separating, cyclic),
            || format!("{spec}: cyclic/separating flags"),
        )?;
        let d = m.ambient_dim();
        if let Some(w) = &r.cyclic.cyclic_witness {
            ensure(common::rank(&orbit_matrix(m, w), 1e-9) == d, || format!("{spec}: cyclic witness"))?;
        }
        if let Some(w) = &r.cyclic.separating_witness {
            ensure(common::rank(&orbit_matrix(m, w), 1e-9) == m.dim(), || format!("{spec}: separating witness"))?;
        }
    }
    ensure(worst <= TOL, || format!("residual {worst:.2e}"))?;
    Ok(format!("{} algebras, worst residual {worst:.1e}", corpus.len()))
}

fn c7_weights(corpus: &[(BlockSpec, VNAlgebra)]) -> Outcome {
    let tol = Tolerances::default();
    let mut rng = derived(SEED, 7);
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    let mut search_excess = f64::NEG_INFINITY;
    for (spec, m) in corpus.iter().take(20) {
        let d = m.ambient_dim();
        let phi = faithful_state(d, &mut rng);
        let s = ok(sup_ratio(m, &phi, &tol))?;
        if let Some(c) = s.certificates.first_failure() {
            return Err(format!("{spec}: {} = {:.2e}", c.name, c.measured));
        }
        worst = worst.max((s.value * s.lambda_min - 1.0).abs());
        let w_ratio = common::op_norm(&s.witness) / phi.eval(&s.witness).re;
        worst = worst.max((w_ratio / s.value - 1.0).abs());

        let trace = ok(canonical_trace(m, &tol))?;
        let pt = ok(pt_derivative(&trace, m, &phi, &tol))?;
        let x = m.random_element(&mut rng);
        let b = x.adjoint().matmul(&x);
        let prof = ok(cutoff_profile(&trace, &pt.a, &b, 41, &tol))?;
        let top = common::eigenvalues(&pt.a).last().copied().unwrap();
        let at_top = ok(pt_weight_cutoff(&trace, &pt.a, &b, top, &tol))?;
        for k in [1.5 * top, 10.0 * top, 1e6] {
            let v = ok(pt_weight_cutoff(&trace, &pt.a, &b, k, &tol))?;
            ensure(v.to_bits() == at_top.to_bits(), || format!("{spec}: cutoff moves past ‖A‖"))?;
        }
        let drop = prof.values.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max);
        ensure(drop <= TOL * at_top.max(1.0), || format!("{spec}: cutoff decreases by {drop:.2e}"))?;

        // Independent search: 500 draws per algebra, 10⁴ over the 20 algebras.
        // Every fifth draw is compressed to one central block.
        let blocks = &ok(m.structure_or_compute(&tol))?.blocks;
        for i in 0..500 {
            let x = m.random_element(&mut rng);
            let mut b = x.adjoint().matmul(&x);
            if i % 5 == 4 {
                let p = &blocks[i / 5 % blocks.len()].projection;
                b = p.matmul(&b).matmul(p);
            }
            let r = common::op_norm(&b) / phi.eval(&b).re;
            search_excess = search_excess.max(r - s.value);
            samples += 1;
        }
    }
    ensure(search_excess <= TOL, || format!("search exceeds sup ratio by {search_excess:.2e}"))?;
    ensure(worst <= TOL, || format!("bridge/witness error {worst:.2e}"))?;
    let m2 = VNAlgebra::full(2);
    let phi = ok(StateDensity::new(ComplexMatrix::from_real_diag(&[0.2, 0.8]), &tol))?;
    let v = ok(sup_ratio(&m2, &phi, &tol))?.value;
    ensure((v - 5.0).abs() <= TOL, || format!("M₂ sup ratio {v}"))?;
    Ok(format!(
        "bridge/witness error {worst:.1e}; {samples} independent samples, max excess {search_excess:.1e}; M₂ sup ratio {v:.10}"
    ))
}

fn c8_vector_functionals(corpus: &[(BlockSpec, VNAlgebra)]) -> Outcome {
    let tol = Tolerances::default();
    let mut rng = derived(SEED, 8);
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    let mut check = |m: &VNAlgebra, rho: ComplexMatrix, expect: usize, label: String| -> Result<(), String> {
        let omega = ok(StateDensity::new(rho, &tol))?;
        let v = ok(vector_functional_decomposition(m, &omega, &tol))?;
        ensure(v.count() == expect, || format!("{label}: {} vectors, expected {expect}", v.count()))?;
        let mc = ok(commutant(m, &tol))?;
        for x in mc.elements() {
            let sum: C64 = v.vectors.iter().map(|z| x.matmul(z).vdot(z)).sum();
            worst = worst.max((sum - omega.eval(x)).norm());
        }
        checked += 1;
        Ok(())
    };
    for (spec, m) in corpus.iter().filter(|(s, _)| s.is_balanced()) {
        let rho = random_density(m.ambient_dim(), &mut rng);
        check(m, rho, 1, spec.to_string())?;
    }
    for d in 1..=6 {
        check(&VNAlgebra::scalars(d), random_density(d, &mut rng), d, format!("ℂ1 on ℂ^{d}"))?;
    }
    ensure(worst <= TOL, || format!("reproduction residual {worst:.2e}"))?;
    Ok(format!("{checked} decompositions, reproduction residual {worst:.1e}"))
}

fn c9_determinism() -> Outcome {
    let scenario = Scenario {
        max_dim: 12,
        ..Scenario::new(Kind::Suite).with_seed(7)
    };
    let a = ok(cli::run(&scenario))?;
    let b = ok(cli::run(&scenario))?;
    ensure(a.pass && b.pass, || format!("suite failures: {:?}", a.failures))?;
    ensure(a.digest == b.digest, || format!("{} ≠ {}", a.digest, b.digest))?;
    Ok(format!("digest {} over {} certificates", &a.digest[..16], a.certificates.len()))
}

fn main() {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("quantitative lift constants", Box::new(c1_bt_constants)),
        ("γ-schedule telescoping", Box::new(c2_gamma)),
        ("standardness criterion", Box::new(|| c3_standardness(&corpus))),
        ("GNS standard form", Box::new(|| c4_gns(&corpus))),
        ("Okayasu correction", Box::new(c5_okayasu)),
        ("commutant suite", Box::new(|| c6_commutant(&corpus))),
        ("weights", Box::new(|| c7_weights(&corpus))),
        ("vector-functional decomposition", Box::new(|| c8_vector_functionals(&corpus))),
        ("determinism", Box::new(c9_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
