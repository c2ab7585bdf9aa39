use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use super::report::CertificateRecord;
use super::{CliError, Kind, Report, Scenario};
use crate::algebra::{random_spec, BlockSpec};
use crate::certificate::ids;
use crate::rng::derived;

/// Caps the worker threads of `suite`; unset means one per core.
pub const THREADS_ENV: &str = "VNKIT_THREADS";

const FIXED_SPECS: &[&str] = &[
    "(1,1)",
    "(2,1)",
    "(1,2)",
    "(2,2)",
    "(3,1)",
    "(1,3)",
    "(2,3)",
    "(3,2)",
    "(3,3)",
    "(2,2),(1,1)",
    "(1,2),(2,1)",
    "(2,1),(1,3)",
    "(1,1),(1,1),(1,1)",
    "(4,1)",
    "(2,2),(2,2)",
    "(3,3),(1,1)",
    "(4,4)",
];
const RANDOM_SPECS: usize = 6;
const RANDOM_MAX_SIDE: usize = 3;
const STREAM_SUITE: u64 = 0x5017E;
const PER_SPEC: [Kind; 5] = [Kind::Info, Kind::Commutant, Kind::Standard, Kind::Weights, Kind::Bt];

/// The corpus behind `suite`: fixed and seeded block shapes up to `max_dim`,
/// each run through every per-algebra command, plus two `gamma` runs.
pub fn suite_scenarios(base: &Scenario) -> Result<Vec<Scenario>, CliError> {
    let seed = base.require_seed()?;
    if base.spec.is_some() || base.input.is_some() {
        return Err(CliError::Usage("suite builds its own corpus; drop --spec and --in".into()));
    }
    let mut rng = derived(seed, STREAM_SUITE);
    let mut specs = Vec::new();
    for s in FIXED_SPECS {
        let spec: BlockSpec = s.parse()?;
        if spec.ambient_dim() <= base.max_dim {
            specs.push(spec);
        }
    }
    for _ in 0..RANDOM_SPECS {
        specs.push(random_spec(base.max_dim, RANDOM_MAX_SIDE, &mut rng)?);
    }
    let mut out = Vec::new();
    for (i, spec) in specs.iter().enumerate() {
        let sub_seed: u64 = rng.random();
        for kind in PER_SPEC {
            out.push(Scenario {
                kind,
                id: Some(format!("{i:02}-{kind}")),
                spec: Some(spec.to_string()),
                seed: Some(sub_seed),
                ..base.clone()
            });
        }
    }
    out.push(Scenario {
        kind: Kind::Gamma,
        id: Some("gamma-geometric".into()),
        k: 8,
        ..base.clone()
    });
    out.push(Scenario {
        kind: Kind::Gamma,
        id: Some("gamma-geometric-long".into()),
        k: 30,
        remainder: Some(0.0),
        ..base.clone()
    });
    Ok(out)
}

fn thread_count() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}

/// Scenario ids whose report is recomputed serially to check determinism.
fn recheck_indices(n: usize) -> Vec<usize> {
    match n {
        0 => vec![],
        1 => vec![0],
        _ => vec![0, n / 2, n - 1],
    }
}

pub(super) fn run_suite(base: &Scenario, start: Instant) -> Result<Report, CliError> {
    let scenarios = suite_scenarios(base)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut results: Vec<(String, Result<Report, String>)> = pool.install(|| {
        scenarios
            .par_iter()
            .map(|s| (s.id.clone().unwrap_or_default(), super::run(s).map_err(|e| e.to_string())))
            .collect()
    });
    results.sort_by(|a, b| a.0.cmp(&b.0));

    let mut records = Vec::new();
    let mut entries = Vec::new();
    for (id, r) in &results {
        let completed = r.is_ok();
        match r {
            Ok(rep) => {
                records.extend(rep.certificates.iter().cloned());
                entries.push(json!({
                    "id": id,
                    "kind": rep.scenario.kind,
                    "spec": rep.scenario.spec,
                    "seed": rep.scenario.seed,
                    "pass": rep.pass,
                    "failures": rep.failures,
                    "certificates": rep.certificates.len(),
                    "digest": rep.digest,
                }));
            }
            Err(msg) => entries.push(json!({"id": id, "pass": false, "error": msg})),
        }
        records.push(CertificateRecord {
            scenario: id.clone(),
            name: ids::SUITE_COMPLETED.into(),
            measured: if completed { 0.0 } else { 1.0 },
            bound: 0.0,
            pass: completed,
        });
    }

    let mut sorted = scenarios.clone();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    let mut mismatches = 0;
    for i in recheck_indices(sorted.len()) {
        let again = super::run(&sorted[i]).ok().map(|r| r.digest);
        let first = results[i].1.as_ref().ok().map(|r| r.digest.clone());
        if again.is_none() || again != first {
            mismatches += 1;
        }
    }
    records.push(CertificateRecord {
        scenario: "suite".into(),
        name: ids::SUITE_DETERMINISM.into(),
        measured: mismatches as f64,
        bound: 0.0,
        pass: mismatches == 0,
    });

    let passed = entries.iter().filter(|e| e["pass"] == true).count();
    let summary = json!({
        "scenarios": entries.len(),
        "passed": passed,
        "max_dim": base.max_dim,
        "results": entries,
    });
    Ok(Report::from_records(
        base.id.clone().unwrap_or_else(|| "suite".into()),
        base.clone(),
        summary,
        records,
        start.elapsed(),
    ))
}
