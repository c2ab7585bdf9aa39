use serde_json::{json, Value};

use super::io::AlgebraFile;
use super::{CliError, GammaSource, Kind, Scenario};
use crate::algebra::{commutant, commutant_report, structure_report, VNAlgebra};
use crate::btlift::{bt_convergence_run, bt_lift, gamma_schedule_with_remainder, BTInstance};
use crate::certificate::{ids, CertificateSet};
use crate::linalg::{herm_eig, Tolerances};
use crate::modular::{
    check_t_criterion, cyclic_separating_split, gns, is_standard, random_normalizing_operator, spatial_chain,
    vector_functional_decomposition, StateDensity,
};
use crate::rng::{derived, gaussian_matrix, random_density, random_unit_vector};
use crate::weights::{canonical_trace, check_complement_conditions, cutoff_profile, two_norm_equivalence};

// Independent random streams per use of the scenario seed.
const STREAM_STATE: u64 = 1;
const STREAM_T_SAMPLES: u64 = 2;
const STREAM_OKAYASU: u64 = 3;
const STREAM_COMMUTANT_STATE: u64 = 4;
const STREAM_BT: u64 = 5;
const STREAM_WEIGHTS: u64 = 6;

/// Invertible `m′ ∈ M′` tried in `T = m′J`.
pub const T_SAMPLES: usize = 10;
pub const CUTOFF_POINTS: usize = 33;

type Outcome = Result<(Value, CertificateSet), CliError>;

pub(super) fn dispatch(s: &Scenario) -> Outcome {
    match s.kind {
        Kind::Gen => gen(s),
        Kind::Info => info(s),
        Kind::Commutant => commutant_cmd(s),
        Kind::Standard => standard(s),
        Kind::Bt => bt(s),
        Kind::Gamma => gamma(s),
        Kind::Weights => weights(s),
        Kind::Suite => Err(CliError::Usage("suites do not nest".into())),
    }
}

fn gen(s: &Scenario) -> Outcome {
    let tol = s.tolerances()?;
    let (m, _) = s.algebra()?;
    let r = structure_report(&m, &tol)?;
    let summary = json!({
        "shape": r.shape,
        "ambient_dim": r.ambient_dim,
        "dim_algebra": r.dim_algebra,
        "algebra": AlgebraFile::from_algebra(&m),
    });
    Ok((summary, r.certificates))
}

fn info(s: &Scenario) -> Outcome {
    let tol = s.tolerances()?;
    let (m, _) = s.algebra()?;
    let r = structure_report(&m, &tol)?;
    let split = cyclic_separating_split(&m, &tol)?;
    let shape = &r.shape;
    let summary = json!({
        "shape": shape,
        "ambient_dim": r.ambient_dim,
        "dim_algebra": r.dim_algebra,
        "dim_commutant": shape.iter().map(|&(_, k)| k * k).sum::<usize>(),
        "centre_dim": r.centre_dim,
        "factor": r.centre_dim == 1,
        "standard": shape.iter().all(|&(n, k)| n == k),
        "has_cyclic": shape.iter().all(|&(n, k)| k <= n),
        "has_separating": shape.iter().all(|&(n, k)| n <= k),
        "cyclic_blocks": split.cyclic_blocks,
        "separating_blocks": split.separating_blocks,
        "closure_defect": r.closure_defect,
        "block_form_residual": r.block_form_residual,
    });
    Ok((summary, r.certificates))
}

fn commutant_cmd(s: &Scenario) -> Outcome {
    let tol = s.tolerances()?;
    let (m, _) = s.algebra()?;
    let st = structure_report(&m, &tol)?;
    let r = commutant_report(&m, &tol)?;
    let summary = json!({
        "shape": st.shape,
        "dim_algebra": st.dim_algebra,
        "dim_commutant": r.dim_commutant,
        "expected_dim": r.expected_dim,
        "commutant_shape": r.commutant_shape,
        "double_commutant_residual": r.double_commutant_residual,
        "centre_residual": r.centre_residual,
        "has_cyclic": r.cyclic.has_cyclic,
        "has_separating": r.cyclic.has_separating,
        "commutant_has_cyclic": r.commutant_cyclic.has_cyclic,
        "commutant_has_separating": r.commutant_cyclic.has_separating,
    });
    let mut certs = st.certificates;
    certs.extend(r.certificates);
    Ok((summary, certs))
}

fn standard(s: &Scenario) -> Outcome {
    let tol = s.tolerances()?;
    let (m, _) = s.algebra()?;
    let v = is_standard(&m, &tol)?;
    let mut certs = v.certificates.clone();
    let mut summary = serde_json::Map::new();
    summary.insert("shape".into(), json!(m.structure_or_compute(&tol)?.shape()));
    summary.insert("verdict".into(), json!(if v.standard { "standard" } else { "not standard" }));
    if let Some(o) = &v.obstruction {
        let reason = if o.dim_algebra != o.dim_commutant {
            format!("dim M = {} ≠ dim M′ = {}", o.dim_algebra, o.dim_commutant)
        } else {
            format!("blocks {:?} have n ≠ m", o.unbalanced)
        };
        summary.insert(
            "obstruction".into(),
            json!({
                "unbalanced": o.unbalanced,
                "dim_algebra": o.dim_algebra,
                "dim_commutant": o.dim_commutant,
                "reason": reason,
            }),
        );
    }
    if let Some(j) = &v.j {
        let first = check_t_criterion(&m, j, &tol)?;
        let (mut comm, mut cent, mut tried) = (first.commutant_residual, first.centre_residual, 1);
        if let Some(seed) = s.seed {
            let mc = commutant(&m, &tol)?;
            let mut rng = derived(seed, STREAM_T_SAMPLES);
            for _ in 0..T_SAMPLES {
                let t = j.before_linear(&mc.random_element(&mut rng));
                let r = check_t_criterion(&m, &t, &tol)?;
                comm = comm.max(r.commutant_residual);
                cent = cent.max(r.centre_residual);
                tried += 1;
            }
        }
        certs.at_most(ids::T_CRITERION_COMMUTANT, comm, tol.assert_tol, 0.0);
        certs.at_most(ids::T_CRITERION_CENTRE, cent, tol.assert_tol, 0.0);
        summary.insert(
            "t_criterion".into(),
            json!({"operators": tried, "commutant_residual": comm, "centre_residual": cent}),
        );
    }
    if let Some(seed) = s.seed {
        modular_checks(&m, seed, &tol, &mut summary, &mut certs)?;
    }
    Ok((Value::Object(summary), certs))
}

/// GNS standard form for a seeded faithful state, the Okayasu correction and
/// spatial chain for a seeded normalizing operator, and the vector-functional
/// decomposition of a seeded functional on `M′`.
fn modular_checks(
    m: &VNAlgebra,
    seed: u64,
    tol: &Tolerances,
    summary: &mut serde_json::Map<String, Value>,
    certs: &mut CertificateSet,
) -> Result<(), CliError> {
    let d = m.ambient_dim();
    let phi = StateDensity::new(random_density(d, &mut derived(seed, STREAM_STATE)), tol)?;
    let g = gns(m, &phi, tol)?;
    certs.extend(g.certificates(tol)?);
    summary.insert(
        "gns".into(),
        json!({"gns_dim": g.gns_dim, "delta_spectrum": g.delta_spectrum}),
    );

    let s = m.structure_or_compute(tol)?.into_owned();
    let mc = commutant(m, tol)?;
    let t = random_normalizing_operator(m, &mc, &s, seed ^ (STREAM_OKAYASU << 32), tol)?;
    let chain = spatial_chain(m, &t, tol)?;
    certs.extend(chain.okayasu.certificates.clone());
    certs.extend(chain.spatial.certificates.clone());
    certs.at_most(ids::SPATIAL_CHAIN_COMMUTANT, chain.commutant_residual, tol.assert_tol, 0.0);
    summary.insert(
        "okayasu".into(),
        json!({
            "raw_star_defect": chain.okayasu.raw_star_defect,
            "star_defect": chain.okayasu.star_defect,
            "normalization_defects": chain.okayasu.normalization_defects,
            "implementation_residual": chain.spatial.implementation_residual,
            "commutant_residual": chain.commutant_residual,
        }),
    );

    let omega = StateDensity::new(random_density(d, &mut derived(seed, STREAM_COMMUTANT_STATE)), tol)?;
    let vd = vector_functional_decomposition(m, &omega, tol)?;
    summary.insert(
        "vector_functional".into(),
        json!({"count": vd.count(), "block_ranks": vd.block_ranks, "residual": vd.residual}),
    );
    certs.extend(vd.certificates);
    Ok(())
}

fn bt(s: &Scenario) -> Outcome {
    let tol = s.tolerances()?;
    let seed = s.require_seed()?;
    let (m, _) = s.algebra()?;
    let mode = s.approximant_mode()?;
    let mut rng = derived(seed, STREAM_BT);
    let xi0 = random_unit_vector(m.ambient_dim(), &mut rng);
    let xis: Vec<_> = (0..s.k)
        .map(|k| {
            let v = m.random_element(&mut rng).matmul(&xi0);
            v.scale_real(0.5f64.powi(k as i32) / v.norm())
        })
        .collect();
    let r = match s.gamma_source()? {
        GammaSource::Schedule => bt_convergence_run(&m, &xi0, &xis, s.depth, mode, &tol)?,
        GammaSource::Constant(g) => {
            let inst = BTInstance::new(m.clone(), xi0.clone(), xis.clone(), vec![g; s.k], s.depth, mode)?;
            bt_lift(&inst, &tol)?
        }
    };
    let spectrum = herm_eig(&r.a.hermitian_part())?;
    let summary = json!({
        "shape": m.structure_or_compute(&tol)?.shape(),
        "k": s.k,
        "depth": s.depth,
        "mode": s.mode,
        "xi0_norm": xi0.norm(),
        "xi_norms": xis.iter().map(|x| x.norm()).collect::<Vec<_>>(),
        "gammas": r.gammas,
        "sqrt_gammas": r.gammas.iter().map(|g| g.sqrt()).collect::<Vec<_>>(),
        "b_norms": r.b_norms,
        "c": r.c,
        "y_prefix_norms": r.y_prefix_norms,
        "residuals": r.approximants.residuals,
        "term_norms": r.approximants.term_norms,
        "a_spectrum": [spectrum.min(), spectrum.max()],
    });
    Ok((summary, r.certificates))
}

fn gamma(s: &Scenario) -> Outcome {
    let (alphas, remainder) = match &s.alphas {
        Some(a) => (a.clone(), s.remainder.unwrap_or(0.0)),
        None => (
            (1..=s.k).map(|k| 0.25f64.powi(k as i32)).collect(),
            s.remainder.unwrap_or(0.25f64.powi(s.k as i32) / 3.0),
        ),
    };
    let g = gamma_schedule_with_remainder(&alphas, remainder)?;
    let partial_sums: Vec<f64> = alphas
        .iter()
        .zip(&g.gammas)
        .scan(0.0, |acc, (a, gm)| {
            *acc += a / gm;
            Some(*acc)
        })
        .collect();
    let summary = json!({
        "alphas": alphas,
        "remainder": remainder,
        "gammas": g.gammas,
        "tails": g.tails,
        "partial_sums": partial_sums,
        "weighted_sum": g.weighted_sum,
        "telescoped": g.telescoped,
        "limit": g.tails.first().map_or(0.0, |t| t.sqrt()),
    });
    Ok((summary, g.certificates))
}

fn weights(s: &Scenario) -> Outcome {
    let tol = s.tolerances()?;
    let seed = s.require_seed()?;
    let (m, _) = s.algebra()?;
    let d = m.ambient_dim();
    let phi = StateDensity::new(random_density(d, &mut derived(seed, STREAM_STATE)), &tol)?;
    let w = check_complement_conditions(&m, &phi, &tol)?;
    let mut certs = w.certificates.clone();

    let mut rng = derived(seed, STREAM_WEIGHTS);
    let trace = canonical_trace(&m, &tol)?;
    let x = m.random_element(&mut rng);
    let profile = cutoff_profile(&trace, &w.derivative, &x.adjoint().matmul(&x), CUTOFF_POINTS, &tol)?;
    certs.extend(profile.certificates.clone());
    let ne = two_norm_equivalence(&m, &gaussian_matrix(d, d, &mut rng), &tol)?;
    certs.extend(ne.certificates.clone());

    let summary = json!({
        "shape": w.shape,
        "lambda_min": w.lambda_min,
        "sup_ratio": w.sup_ratio,
        "closed_graph_c": w.closed_graph_c,
        "gns_rank": w.gns_rank,
        "dim_algebra": w.dim_algebra,
        "reduced_dims": w.reduced_dims,
        "lower_bound_margin": w.lower_bound_margin,
        "hs_dominance_margin": w.hs_dominance_margin,
        "conditions": {
            "gns_surjective": w.gns_surjective,
            "sup_ratio_finite": w.sup_ratio_finite,
            "reduced_finite": w.reduced_finite,
            "type_i_lower_bound": w.type_i_lower_bound,
            "all": w.all_conditions(),
        },
        "cutoff": {"ks": profile.ks, "values": profile.values},
        "norm_equivalence": {"c1": ne.c1, "c2": ne.c2, "kappa": ne.kappa, "samples": ne.samples},
    });
    Ok((summary, certs))
}
