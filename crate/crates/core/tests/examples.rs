#[allow(dead_code)]
mod commutant_structure {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/commutant_structure.rs"));
}

#[allow(dead_code)]
mod gns_modular {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gns_modular.rs"));
}

#[allow(dead_code)]
mod standard_form {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/standard_form.rs"));
}

#[allow(dead_code)]
mod okayasu_spatial {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/okayasu_spatial.rs"));
}

#[allow(dead_code)]
mod bt_lift {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bt_lift.rs"));
}

#[allow(dead_code)]
mod gamma_schedule {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gamma_schedule.rs"));
}

#[allow(dead_code)]
mod weights {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/weights.rs"));
}

#[allow(dead_code)]
mod vector_functionals {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/vector_functionals.rs"));
}

#[allow(dead_code)]
mod projections {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/projections.rs"));
}

#[allow(dead_code)]
mod scenario_report {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/scenario_report.rs"));
}

#[test]
fn commutant_structure_example_runs() {
    commutant_structure::run_example().expect("commutant_structure example should run");
}

#[test]
fn gns_modular_example_runs() {
    gns_modular::run_example().expect("gns_modular example should run");
}

#[test]
fn standard_form_example_runs() {
    standard_form::run_example().expect("standard_form example should run");
}

#[test]
fn okayasu_spatial_example_runs() {
    okayasu_spatial::run_example().expect("okayasu_spatial example should run");
}

#[test]
fn bt_lift_example_runs() {
    bt_lift::run_example().expect("bt_lift example should run");
}

#[test]
fn gamma_schedule_example_runs() {
    gamma_schedule::run_example().expect("gamma_schedule example should run");
}

#[test]
fn weights_example_runs() {
    weights::run_example().expect("weights example should run");
}

#[test]
fn vector_functionals_example_runs() {
    vector_functionals::run_example().expect("vector_functionals example should run");
}

#[test]
fn projections_example_runs() {
    projections::run_example().expect("projections example should run");
}

#[test]
fn scenario_report_example_runs() {
    scenario_report::run_example().expect("scenario_report example should run");
}
