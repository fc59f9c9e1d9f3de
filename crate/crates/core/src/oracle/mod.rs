//! Independent ground truth for every closed-form bound: joint Gaussian
//! covariance algebra ([`cov`]), univariate quadrature over non-Gaussian
//! input laws ([`quad`]), seeded Monte Carlo ([`mc`]), and the audit suites
//! tying them together ([`audit`]).

pub mod audit;
pub mod cov;
pub mod mc;
pub mod quad;

pub use audit::{
    audit_beta_star, audit_compensation, audit_jdpt, audit_mac_dtc, mc_consistency_audit,
    theorem1_audit, theorem2_audit, AuditReport, BetaStarAudit, JdptAuditReport,
    McConsistencyReport, Theorem1Report, Theorem2Report, ORACLE_TOL_NATS,
};
pub use cov::{
    dtc_cov, jdpt_cov, mac_dtc_cov, verify_compensation_mi, verify_jdpt_bounds,
    verify_mac_dtc_bounds, CovModel, Discrepancy, RegionDiscrepancy, Var,
};
pub use mc::{mc_estimate_mi, McEstimate};
pub use quad::{linear_assignment_mi, QuadratureMi, ScalarDensity};
