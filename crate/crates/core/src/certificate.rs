//! Named numeric certificates: a measured quantity, the bound it must respect,
//! and the verdict.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Fixed certificate identifiers. Reports only ever carry names from [`ids::ALL`].
pub mod ids {
    pub const EIG_RECONSTRUCTION: &str = "linalg.eig_reconstruction";

    pub const ALGEBRA_CLOSURE: &str = "algebra.closure";
    pub const DOUBLE_COMMUTANT: &str = "algebra.double_commutant";
    pub const COMMUTANT_DIMENSION: &str = "algebra.commutant_dimension";
    pub const CENTRE_AGREEMENT: &str = "algebra.centre_agreement";
    pub const BLOCK_FORM: &str = "algebra.block_form";
    pub const BLOCK_DIMENSIONS: &str = "algebra.block_dimensions";
    pub const CYCLIC_DUALITY: &str = "algebra.cyclic_separating_duality";
    pub const MODULE_MEMBERSHIP: &str = "algebra.module_membership";

    pub const GNS_INNER_PRODUCT: &str = "modular.gns_inner_product";
    pub const GNS_POLAR: &str = "modular.polar_decomposition";
    pub const GNS_J_INVOLUTION: &str = "modular.j_involution";
    pub const GNS_JMJ_COMMUTANT: &str = "modular.jmj_commutant";
    pub const GNS_JZJ_ADJOINT: &str = "modular.jzj_adjoint";
    pub const GNS_VACUUM: &str = "modular.vacuum_fixed";
    pub const STANDARD_J_COMMUTANT: &str = "modular.standard_j_commutant";
    pub const STANDARD_J_CENTRE: &str = "modular.standard_j_centre";
    pub const STANDARD_J_CONJUGATION: &str = "modular.standard_j_conjugation";
    pub const T_CRITERION_COMMUTANT: &str = "modular.t_criterion_commutant";
    pub const T_CRITERION_CENTRE: &str = "modular.t_criterion_centre";
    pub const OKAYASU_STAR_DEFECT: &str = "modular.okayasu_star_defect";
    pub const OKAYASU_FACTOR_DEFECT: &str = "modular.okayasu_factorization_defect";
    pub const SPATIAL_IMPLEMENTATION: &str = "modular.spatial_implementation";
    pub const SPATIAL_UNITARY: &str = "modular.spatial_unitary";
    pub const SPATIAL_CHAIN_COMMUTANT: &str = "modular.spatial_chain_commutant";
    pub const INTERTWINING_RESIDUAL: &str = "modular.intertwining_residual";
    pub const VECTOR_FUNCTIONAL_RESIDUAL: &str = "modular.vector_functional_residual";

    pub const BT_RESIDUAL_SCHEDULE: &str = "bt.residual_schedule";
    pub const BT_FIRST_TERM: &str = "bt.first_term_17_over_16";
    pub const BT_LATER_TERMS: &str = "bt.later_terms_5_over_4pow";
    pub const BT_WEIGHTED_TERM: &str = "bt.weighted_term_bound";
    pub const BT_B_NORM: &str = "bt.b_norm_sqrt_gamma";
    pub const BT_Y_PREFIX: &str = "bt.y_prefix_bound";
    pub const BT_A_RANGE: &str = "bt.a_between_0_and_1";
    pub const BT_A_ETA: &str = "bt.a_eta_reproduces_xi0";
    pub const BT_B_ETA: &str = "bt.b_eta_reproduces_xi";
    pub const BT_Y_MONOTONE: &str = "bt.y_monotone";
    pub const BT_Y_INV_MONOTONE: &str = "bt.y_inverse_monotone";
    pub const BT_B_MEMBERSHIP: &str = "bt.b_membership";
    pub const BT_SUPPORT: &str = "bt.support_is_identity";
    pub const GAMMA_TELESCOPING: &str = "bt.gamma_telescoping";

    pub const TRACE_MINIMAL: &str = "weights.trace_minimal_projection";
    pub const PT_DERIVATIVE: &str = "weights.pt_derivative";
    pub const PT_FAITHFUL: &str = "weights.pt_faithful";
    pub const SUP_RATIO_BRIDGE: &str = "weights.sup_ratio_bridge";
    pub const SUP_RATIO_WITNESS: &str = "weights.sup_ratio_witness";
    pub const SUP_RATIO_SEARCH: &str = "weights.sup_ratio_search";
    pub const CLOSED_GRAPH: &str = "weights.closed_graph_constant";
    pub const LOWER_BOUND: &str = "weights.lower_trace_bound";
    pub const GNS_SURJECTIVE: &str = "weights.gns_surjective";
    pub const CUTOFF_MONOTONE: &str = "weights.cutoff_monotone";
    pub const NORM_ENVELOPE: &str = "weights.two_norm_envelope";

    pub const SUITE_DETERMINISM: &str = "suite.determinism";
    pub const SUITE_COMPLETED: &str = "suite.scenario_completed";

    pub const ALL: &[&str] = &[
        EIG_RECONSTRUCTION,
        ALGEBRA_CLOSURE,
        DOUBLE_COMMUTANT,
        COMMUTANT_DIMENSION,
        CENTRE_AGREEMENT,
        BLOCK_FORM,
        BLOCK_DIMENSIONS,
        CYCLIC_DUALITY,
        MODULE_MEMBERSHIP,
        GNS_INNER_PRODUCT,
        GNS_POLAR,
        GNS_J_INVOLUTION,
        GNS_JMJ_COMMUTANT,
        GNS_JZJ_ADJOINT,
        GNS_VACUUM,
        STANDARD_J_COMMUTANT,
        STANDARD_J_CENTRE,
        STANDARD_J_CONJUGATION,
        T_CRITERION_COMMUTANT,
        T_CRITERION_CENTRE,
        OKAYASU_STAR_DEFECT,
        OKAYASU_FACTOR_DEFECT,
        SPATIAL_IMPLEMENTATION,
        SPATIAL_UNITARY,
        SPATIAL_CHAIN_COMMUTANT,
        INTERTWINING_RESIDUAL,
        VECTOR_FUNCTIONAL_RESIDUAL,
        BT_RESIDUAL_SCHEDULE,
        BT_FIRST_TERM,
        BT_LATER_TERMS,
        BT_WEIGHTED_TERM,
        BT_B_NORM,
        BT_Y_PREFIX,
        BT_A_RANGE,
        BT_A_ETA,
        BT_B_ETA,
        BT_Y_MONOTONE,
        BT_Y_INV_MONOTONE,
        BT_B_MEMBERSHIP,
        BT_SUPPORT,
        GAMMA_TELESCOPING,
        TRACE_MINIMAL,
        PT_DERIVATIVE,
        PT_FAITHFUL,
        SUP_RATIO_BRIDGE,
        SUP_RATIO_WITNESS,
        SUP_RATIO_SEARCH,
        CLOSED_GRAPH,
        LOWER_BOUND,
        GNS_SURJECTIVE,
        CUTOFF_MONOTONE,
        NORM_ENVELOPE,
        SUITE_DETERMINISM,
        SUITE_COMPLETED,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
}

impl Certificate {
    /// `measured ≤ bound + slack`.
    pub fn at_most(name: &str, measured: f64, bound: f64, slack: f64) -> Self {
        debug_assert!(ids::ALL.contains(&name), "unregistered certificate {name}");
        Self {
            name: name.to_string(),
            measured,
            bound,
            pass: measured <= bound + slack,
        }
    }

    /// `measured ≥ bound − slack`.
    pub fn at_least(name: &str, measured: f64, bound: f64, slack: f64) -> Self {
        debug_assert!(ids::ALL.contains(&name), "unregistered certificate {name}");
        Self {
            name: name.to_string(),
            measured,
            bound,
            pass: measured >= bound - slack,
        }
    }

    pub fn into_result(self) -> Result<Self, Error> {
        if self.pass {
            Ok(self)
        } else {
            Err(Error::CertificateViolation {
                name: self.name,
                measured: self.measured,
                bound: self.bound,
            })
        }
    }
}

/// Ordered collection of certificates.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CertificateSet {
    pub items: Vec<Certificate>,
}

impl CertificateSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Certificate) {
        self.items.push(c);
    }

    pub fn at_most(&mut self, name: &str, measured: f64, bound: f64, slack: f64) {
        self.push(Certificate::at_most(name, measured, bound, slack));
    }

    pub fn at_least(&mut self, name: &str, measured: f64, bound: f64, slack: f64) {
        self.push(Certificate::at_least(name, measured, bound, slack));
    }

    pub fn extend(&mut self, other: CertificateSet) {
        self.items.extend(other.items);
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Certificate> {
        self.items.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Certificate> {
        self.items.iter().find(|c| !c.pass)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Certificate> {
        self.items.iter()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Errors on the first failing certificate.
    pub fn require_all(&self) -> Result<(), Error> {
        match self.first_failure() {
            Some(c) => Err(Error::CertificateViolation {
                name: c.name.clone(),
                measured: c.measured,
                bound: c.bound,
            }),
            None => Ok(()),
        }
    }
}

/// Running worst case for a family of `value ≤ bound` checks that share one
/// certificate name: keeps the pair with the largest excess `value − bound`.
#[derive(Debug, Clone, Copy, Default)]
pub struct WorstCase {
    worst: Option<(f64, f64)>,
}

impl WorstCase {
    pub fn observe(&mut self, measured: f64, bound: f64) {
        match self.worst {
            Some((m, b)) if m - b >= measured - bound => {}
            _ => self.worst = Some((measured, bound)),
        }
    }

    /// An empty family certifies `0 ≤ 0`.
    pub fn certificate(&self, name: &str, slack: f64) -> Certificate {
        let (m, b) = self.worst.unwrap_or((0.0, 0.0));
        Certificate::at_most(name, m, b, slack)
    }
}
