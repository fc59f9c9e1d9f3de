//! Seeded audit suites: closed forms against the covariance oracle, the
//! closed-form optimizer against golden-section search, and the two
//! input-law theorems as numerical dominance properties.
//!
//! Every audit is deterministic given its seed (one counter-based stream per
//! trial) and returns a plain report record consumed by the CLI and the
//! acceptance tests.

use rand::Rng;
use serde::Serialize;

use crate::bounds::{
    compensation_rate, compensation_rate_at, optimal_beta, SingleUserParams,
};
use crate::error::{Error, Result};
use crate::oracle::cov::{
    dtc_cov, verify_compensation_mi, verify_jdpt_bounds, verify_mac_dtc_bounds, CovModel, Var,
};
use crate::oracle::mc::{mc_estimate_mi, stream_rng};
use crate::oracle::quad::{linear_assignment_mi, ScalarDensity};
use crate::regions::{JdptCoefficients, MacDtcCoefficients, MacParams};
use crate::search::scan_then_golden_max;

use nalgebra::DMatrix;

/// Oracle-equivalence tolerance for the closed forms.
pub const ORACLE_TOL_NATS: f64 = 1e-9;

/// Worst-case discrepancy over seeded random draws of one check.
#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub name: String,
    pub trials: usize,
    pub worst_abs_nats: f64,
    pub tolerance_nats: f64,
    pub pass: bool,
}

fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

fn random_single_user(rng: &mut impl Rng) -> SingleUserParams {
    SingleUserParams::new(
        log_uniform(rng, 1e-2, 1e3),
        log_uniform(rng, 1e-2, 1e3),
        log_uniform(rng, 1e-1, 1e1),
    )
    .expect("sampled powers are valid")
}

fn random_mac(rng: &mut impl Rng) -> MacParams {
    MacParams::new(
        log_uniform(rng, 1e-2, 1e3),
        log_uniform(rng, 1e-2, 1e3),
        log_uniform(rng, 1e-2, 1e3),
        log_uniform(rng, 1e-1, 1e1),
    )
    .expect("sampled powers are valid")
}

/// Compensation rate against `I(U; Y)` on the exact construction, over
/// seeded random `(p, ps, pz, β)` draws.
pub fn audit_compensation(trials: usize, seed: u64) -> Result<AuditReport> {
    let mut worst = 0.0f64;
    for t in 0..trials {
        let mut rng = stream_rng(seed, "audit-compensation", t as u64);
        let params = random_single_user(&mut rng);
        let beta = rng.gen_range(0.0..0.999) * params.beta_max();
        worst = worst.max(verify_compensation_mi(&params, beta)?.abs());
    }
    Ok(AuditReport {
        name: "compensation-vs-oracle".into(),
        trials,
        worst_abs_nats: worst,
        tolerance_nats: ORACLE_TOL_NATS,
        pass: worst <= ORACLE_TOL_NATS,
    })
}

/// All-causal MAC bounds against the conditional-information expressions,
/// over seeded random `(p1, p2, ps, pz, β1, β2)` draws.
pub fn audit_mac_dtc(trials: usize, seed: u64) -> Result<AuditReport> {
    let mut worst = 0.0f64;
    for t in 0..trials {
        let mut rng = stream_rng(seed, "audit-mac-dtc", t as u64);
        let params = random_mac(&mut rng);
        let coeffs = MacDtcCoefficients {
            beta1: rng.gen_range(0.0..0.999) * params.beta_max(1),
            beta2: rng.gen_range(0.0..0.999) * params.beta_max(2),
        };
        worst = worst.max(verify_mac_dtc_bounds(&params, coeffs)?.max_abs());
    }
    Ok(AuditReport {
        name: "mac-dtc-vs-oracle".into(),
        trials,
        worst_abs_nats: worst,
        tolerance_nats: ORACLE_TOL_NATS,
        pass: worst <= ORACLE_TOL_NATS,
    })
}

/// Per-bound audit of the joint dirty-paper/dirty-tape closed forms against
/// the information expressions. The oracle is ground truth: a systematic
/// mismatch would be reported here, not corrected.
#[derive(Debug, Clone, Serialize)]
pub struct JdptAuditReport {
    pub trials: usize,
    pub worst_r1_nats: f64,
    pub worst_r2_nats: f64,
    pub worst_sum_nats: f64,
    pub tolerance_nats: f64,
    pub pass: bool,
}

impl JdptAuditReport {
    pub fn worst_abs_nats(&self) -> f64 {
        self.worst_r1_nats
            .max(self.worst_r2_nats)
            .max(self.worst_sum_nats)
    }
}

/// Joint dirty-paper/dirty-tape audit over seeded random
/// `(p1, p2, ps, pz, α, β)` draws.
pub fn audit_jdpt(trials: usize, seed: u64) -> Result<JdptAuditReport> {
    let (mut w1, mut w2, mut ws) = (0.0f64, 0.0f64, 0.0f64);
    for t in 0..trials {
        let mut rng = stream_rng(seed, "audit-jdpt", t as u64);
        let params = random_mac(&mut rng);
        let coeffs = JdptCoefficients {
            alpha: rng.gen_range(-1.0..2.0),
            beta: rng.gen_range(-0.999..0.999) * params.beta_max(2),
        };
        let d = verify_jdpt_bounds(&params, coeffs)?;
        w1 = w1.max(d.r1.abs());
        w2 = w2.max(d.r2.abs());
        ws = ws.max(d.r_sum.abs());
    }
    let pass = w1.max(w2).max(ws) <= ORACLE_TOL_NATS;
    Ok(JdptAuditReport {
        trials,
        worst_r1_nats: w1,
        worst_r2_nats: w2,
        worst_sum_nats: ws,
        tolerance_nats: ORACLE_TOL_NATS,
        pass,
    })
}

/// Closed-form optimal coefficient against a golden-section argmax.
#[derive(Debug, Clone, Serialize)]
pub struct BetaStarAudit {
    pub trials: usize,
    pub worst_coefficient_gap: f64,
    pub worst_rate_gap_nats: f64,
    pub coefficient_tolerance: f64,
    pub rate_tolerance_nats: f64,
    pub pass: bool,
}

pub fn audit_beta_star(trials: usize, seed: u64) -> Result<BetaStarAudit> {
    let mut worst_beta = 0.0f64;
    let mut worst_rate = 0.0f64;
    for t in 0..trials {
        let mut rng = stream_rng(seed, "audit-beta-star", t as u64);
        // Interference at least comparable to the noise keeps the optimum
        // sharp enough for the argmax comparison; far below that the rate
        // is flat in β at machine precision and the argmax is meaningless.
        let params = SingleUserParams::new(
            log_uniform(&mut rng, 1e-1, 1e3),
            log_uniform(&mut rng, 1.0, 1e3),
            log_uniform(&mut rng, 1e-1, 1e1),
        )?;
        let objective =
            |beta: f64| compensation_rate_at(&params, beta).map(|r| r.nats()).unwrap_or(0.0);
        let (found_beta, found_rate) =
            scan_then_golden_max(&objective, 0.0, params.beta_max(), 1001, 1e-10);
        worst_beta = worst_beta.max((found_beta - optimal_beta(&params)).abs());
        worst_rate = worst_rate.max((compensation_rate(&params).nats() - found_rate).abs());
    }
    Ok(BetaStarAudit {
        trials,
        worst_coefficient_gap: worst_beta,
        worst_rate_gap_nats: worst_rate,
        coefficient_tolerance: 1e-7,
        rate_tolerance_nats: 1e-12,
        pass: worst_beta <= 1e-7 && worst_rate <= 1e-12,
    })
}

/// One quadrature evaluation in the input-law dominance audit.
#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Row {
    pub density: String,
    pub beta: f64,
    pub mi_nats: f64,
    pub bound_nats: f64,
    pub quadrature_error: f64,
}

/// Input-law dominance: for every admissible `(β, variance)`, the
/// linear-assignment information never exceeds the best compensation rate,
/// with near-equality only for the Gaussian input at the optimal β.
#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Report {
    pub rows: Vec<Theorem1Row>,
    pub tolerance_nats: f64,
    pub pass: bool,
}

pub fn theorem1_audit(params: &SingleUserParams) -> Result<Theorem1Report> {
    let tol = 1e-6;
    let bound = compensation_rate(params).nats();
    let beta_star = optimal_beta(params);
    let betas = [0.0, beta_star / 2.0, beta_star];
    let mut rows = Vec::new();
    let mut pass = true;
    for &beta in &betas {
        let budget = params.p() - beta * beta * params.ps();
        let laws = [
            ScalarDensity::gaussian(budget)?,
            ScalarDensity::uniform(budget)?,
            ScalarDensity::triangular(budget)?,
            ScalarDensity::two_point(budget)?,
        ];
        for law in laws {
            let q = linear_assignment_mi(&law, beta, params)?;
            let mi = q.rate.nats();
            // Never above the bound.
            pass &= mi <= bound + tol;
            let tight = (bound - mi).abs() <= tol;
            if law.name() == "gaussian" && beta == beta_star {
                // The only admissible tight case.
                pass &= tight;
            } else {
                pass &= !tight;
            }
            rows.push(Theorem1Row {
                density: law.name().into(),
                beta,
                mi_nats: mi,
                bound_nats: bound,
                quadrature_error: q.error_estimate,
            });
        }
    }
    Ok(Theorem1Report {
        rows,
        tolerance_nats: tol,
        pass,
    })
}

/// Jointly Gaussian triples never beat the best compensation rate.
#[derive(Debug, Clone, Serialize)]
pub struct Theorem2Report {
    pub trials: usize,
    pub violations: usize,
    /// Smallest observed `c1 − I(U; Y)` (may be negative up to tolerance).
    pub worst_margin_nats: f64,
    pub tolerance_nats: f64,
    pub pass: bool,
}

/// Samples random jointly Gaussian `(X, S, U)` triples with `E[X²] = p` and
/// `Var S = ps` exactly, forms `Y = X + S + Z`, and checks
/// `I(U; Y) ≤ c1 + 1e-9` per trial.
///
/// The auxiliary is independent of the state (`E[US] = 0`), as it is for
/// every causal-CSI auxiliary: `X = κ(a·U + b·S + c·W)` with `U, W` unit
/// Gaussians independent of `S` and random weights rescaled so that
/// `E[X²] = p` exactly. The decorrelating coefficient `−E[XS]/ps` then makes
/// the pair `(X + β*·S, U)` independent of `S` for every trial. Auxiliaries
/// *correlated* with `S` encode partial noncausal knowledge and genuinely
/// exceed the causal bound, so they are outside this hypothesis class.
pub fn theorem2_audit(params: &SingleUserParams, trials: usize, seed: u64) -> Result<Theorem2Report> {
    if params.ps() == 0.0 {
        return Err(Error::InvalidParameter(
            "triple sampling requires ps > 0".into(),
        ));
    }
    let bound = compensation_rate(params).nats();
    let (p, ps, pz) = (params.p(), params.ps(), params.pz());
    let mut violations = 0usize;
    let mut worst_margin = f64::INFINITY;
    for t in 0..trials {
        let mut rng = stream_rng(seed, "theorem2", t as u64);
        let mut weights = [0.0f64; 3];
        for w in weights.iter_mut() {
            *w = rand_distr::Distribution::sample(&rand_distr::StandardNormal, &mut rng);
        }
        let [a, b, c] = weights;
        let scale = (p / (a * a + b * b * ps + c * c)).sqrt();
        let exu = scale * a;
        let exs = scale * b * ps;
        let residual = scale * scale * c * c;

        let names = vec![Var::U, Var::S, Var::Z, Var::X, Var::Y];
        let vx = exu * exu + exs * exs / ps + residual; // == p up to round-off
        debug_assert!((vx - p).abs() < 1e-9 * p.max(1.0));
        #[rustfmt::skip]
        let matrix = DMatrix::from_row_slice(5, 5, &[
            1.0, 0.0,      0.0, exu,     exu,
            0.0, ps,       0.0, exs,     exs + ps,
            0.0, 0.0,      pz,  0.0,     pz,
            exu, exs,      0.0, p,       p + exs,
            exu, exs + ps, pz,  p + exs, p + ps + pz + 2.0 * exs,
        ]);
        let model = CovModel::new(names, matrix)?;
        let mi = model.mi(&[Var::U], &[Var::Y])?.nats();
        let margin = bound - mi;
        if mi > bound + ORACLE_TOL_NATS {
            violations += 1;
        }
        worst_margin = worst_margin.min(margin);
    }
    Ok(Theorem2Report {
        trials,
        violations,
        worst_margin_nats: worst_margin,
        tolerance_nats: ORACLE_TOL_NATS,
        pass: violations == 0,
    })
}

/// One Monte Carlo consistency row.
#[derive(Debug, Clone, Serialize)]
pub struct McCheckRow {
    pub name: String,
    pub estimate_nats: f64,
    pub analytic_nats: f64,
    pub std_err: f64,
    pub within_three_se: bool,
}

/// Monte Carlo agreement with analytic values on fixed constructions, plus
/// a bitwise determinism check.
#[derive(Debug, Clone, Serialize)]
pub struct McConsistencyReport {
    pub rows: Vec<McCheckRow>,
    pub samples: usize,
    pub deterministic: bool,
    pub pass: bool,
}

pub fn mc_consistency_audit(samples: usize, seed: u64) -> Result<McConsistencyReport> {
    let pair = |cov: f64| -> Result<CovModel> {
        CovModel::new(
            vec![Var::U, Var::Y],
            DMatrix::from_row_slice(2, 2, &[1.0, cov, cov, 1.0]),
        )
    };
    let params = SingleUserParams::new(100.0, 100.0, 1.0)?;
    let compensation = dtc_cov(&params, optimal_beta(&params))?;
    let cases: [(&str, CovModel, f64); 3] = [
        ("independent-pair", pair(0.0)?, 0.0),
        ("correlated-pair", pair(0.5)?, -0.5 * (1.0 - 0.25f64).ln()),
        (
            "compensation-construction",
            compensation,
            compensation_rate(&params).nats(),
        ),
    ];
    let mut rows = Vec::new();
    let mut pass = true;
    for (name, model, analytic) in &cases {
        let est = mc_estimate_mi(model, &[Var::U], &[Var::Y], samples, seed)?;
        let ok = (est.mi_nats - analytic).abs() <= 3.0 * est.std_err.max(1e-7);
        pass &= ok;
        rows.push(McCheckRow {
            name: (*name).into(),
            estimate_nats: est.mi_nats,
            analytic_nats: *analytic,
            std_err: est.std_err,
            within_three_se: ok,
        });
    }
    // Bitwise determinism on a reduced replay.
    let probe = pair(0.5)?;
    let n = samples.clamp(1000, 50_000);
    let a = mc_estimate_mi(&probe, &[Var::U], &[Var::Y], n, seed)?;
    let b = mc_estimate_mi(&probe, &[Var::U], &[Var::Y], n, seed)?;
    let deterministic =
        a.mi_nats.to_bits() == b.mi_nats.to_bits() && a.std_err.to_bits() == b.std_err.to_bits();
    pass &= deterministic;
    Ok(McConsistencyReport {
        rows,
        samples,
        deterministic,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensation_audit_passes_quickly() {
        let r = audit_compensation(100, 42).unwrap();
        assert!(r.pass, "worst {}", r.worst_abs_nats);
        // Deterministic given the seed.
        let r2 = audit_compensation(100, 42).unwrap();
        assert_eq!(r.worst_abs_nats.to_bits(), r2.worst_abs_nats.to_bits());
    }

    #[test]
    fn mac_and_jdpt_audits_pass_quickly() {
        let r = audit_mac_dtc(100, 42).unwrap();
        assert!(r.pass, "worst {}", r.worst_abs_nats);
        let j = audit_jdpt(100, 42).unwrap();
        assert!(j.pass, "worst {}", j.worst_abs_nats());
    }

    #[test]
    fn beta_star_audit_passes_quickly() {
        let r = audit_beta_star(100, 42).unwrap();
        assert!(
            r.pass,
            "coefficient gap {}, rate gap {}",
            r.worst_coefficient_gap, r.worst_rate_gap_nats
        );
    }

    #[test]
    fn theorem2_tight_case_is_reachable() {
        // The compensation construction itself is a jointly Gaussian triple
        // achieving the bound exactly.
        let params = SingleUserParams::new(100.0, 100.0, 1.0).unwrap();
        let model = dtc_cov(&params, optimal_beta(&params)).unwrap();
        let mi = model.mi(&[Var::U], &[Var::Y]).unwrap().nats();
        assert!((mi - compensation_rate(&params).nats()).abs() <= 1e-9);
    }

    #[test]
    fn theorem2_uncorrelated_aligned_case() {
        // U proportional to X with E[XS] = 0: information equals the
        // zero-compensation rate, below the optimum.
        let params = SingleUserParams::new(100.0, 100.0, 1.0).unwrap();
        let model = dtc_cov(&params, 0.0).unwrap();
        let mi = model.mi(&[Var::U], &[Var::Y]).unwrap().nats();
        let at_zero = compensation_rate_at(&params, 0.0).unwrap().nats();
        assert!((mi - at_zero).abs() <= 1e-9);
        assert!(mi <= compensation_rate(&params).nats());
    }

    #[test]
    fn theorem2_audit_small_run() {
        let params = SingleUserParams::new(100.0, 100.0, 1.0).unwrap();
        let r = theorem2_audit(&params, 500, 42).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.worst_margin_nats >= -ORACLE_TOL_NATS);
        assert!(theorem2_audit(
            &SingleUserParams::new(1.0, 0.0, 1.0).unwrap(),
            10,
            42
        )
        .is_err());
    }

    #[test]
    fn theorem1_audit_passes() {
        let params = SingleUserParams::new(100.0, 100.0, 1.0).unwrap();
        let r = theorem1_audit(&params).unwrap();
        assert!(r.pass);
        assert_eq!(r.rows.len(), 12);
    }

    #[test]
    fn mc_consistency_small_run() {
        let r = mc_consistency_audit(50_000, 42).unwrap();
        assert!(r.pass, "{:?}", r.rows);
        assert!(r.deterministic);
    }
}
