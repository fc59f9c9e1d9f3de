//! Labeled joint Gaussian covariance models and exact mutual-information
//! evaluation through covariance determinants.
//!
//! This is the ground truth the closed-form bounds are audited against: for
//! jointly Gaussian vectors,
//! `I(A; B) = ½·ln(det Σ_A · det Σ_B / det Σ_{A∪B})`, and conditional
//! information follows from the same identity on augmented groups. The
//! models built here realize the exact constructions behind each bound
//! (`X = U − βS`, dirty-paper `U1` correlated with `S`, ...), so any
//! disagreement with a closed form indicates an algebra error on one side.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::bounds::{compensation_rate_at, SingleUserParams};
use crate::error::{Error, Result};
use crate::rate::Rate;
use crate::regions::{self, JdptCoefficients, MacDtcCoefficients, MacParams};

/// Round-off allowance on MI nonnegativity and symmetry checks.
const MI_NEG_TOL: f64 = 1e-12;

/// Eigenvalues below `-1e-10` (relative to the largest variance) fail PSD
/// validation; anything in `[-1e-10, 0)` counts as round-off and is treated
/// as zero.
const PSD_TOL: f64 = 1e-10;

/// Submatrices whose determinant falls below this fraction of the product of
/// their variances are treated as singular (a deterministic dependence).
const DEGENERACY_TOL: f64 = 1e-13;

/// Variable labels of the channel constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Var {
    U,
    U1,
    U2,
    S,
    Z,
    X,
    X1,
    X2,
    Y,
}

impl Var {
    pub fn label(self) -> &'static str {
        match self {
            Var::U => "U",
            Var::U1 => "U1",
            Var::U2 => "U2",
            Var::S => "S",
            Var::Z => "Z",
            Var::X => "X",
            Var::X1 => "X1",
            Var::X2 => "X2",
            Var::Y => "Y",
        }
    }
}

/// A labeled, symmetric, positive-semidefinite covariance matrix.
#[derive(Debug, Clone)]
pub struct CovModel {
    names: Vec<Var>,
    matrix: DMatrix<f64>,
}

impl CovModel {
    /// Validates labels (unique), symmetry, and positive semidefiniteness up
    /// to round-off. Eigenvalues in `[-1e-10, 0)` relative to the matrix
    /// scale are accepted as zero; more negative values are errors, not
    /// repaired.
    pub fn new(names: Vec<Var>, matrix: DMatrix<f64>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidParameter("empty covariance model".into()));
        }
        for (i, a) in names.iter().enumerate() {
            for b in names.iter().skip(i + 1) {
                if a == b {
                    return Err(Error::InvalidParameter(format!(
                        "duplicate label {}",
                        a.label()
                    )));
                }
            }
        }
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::InvalidParameter(format!(
                "covariance must be {n}x{n}, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let scale = matrix.diagonal().iter().cloned().fold(1.0f64, f64::max);
        for i in 0..n {
            if !matrix[(i, i)].is_finite() || matrix[(i, i)] < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "variance of {} must be finite and nonnegative",
                    names[i].label()
                )));
            }
            for j in 0..i {
                if !matrix[(i, j)].is_finite() {
                    return Err(Error::InvalidParameter("non-finite covariance entry".into()));
                }
                if (matrix[(i, j)] - matrix[(j, i)]).abs() > 1e-12 * scale {
                    return Err(Error::InvalidParameter(format!(
                        "covariance not symmetric at ({}, {})",
                        names[i].label(),
                        names[j].label()
                    )));
                }
            }
        }
        let eigen = matrix.clone().symmetric_eigen();
        if let Some(min) = eigen
            .eigenvalues
            .iter()
            .cloned()
            .fold(None::<f64>, |m, v| Some(m.map_or(v, |m| m.min(v))))
        {
            if min < -PSD_TOL * scale {
                return Err(Error::InvalidParameter(format!(
                    "covariance not positive semidefinite: min eigenvalue {min}"
                )));
            }
        }
        Ok(Self { names, matrix })
    }

    pub fn names(&self) -> &[Var] {
        &self.names
    }

    pub fn variance(&self, v: Var) -> Result<f64> {
        let i = self.index(v)?;
        Ok(self.matrix[(i, i)])
    }

    pub fn covariance(&self, a: Var, b: Var) -> Result<f64> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        Ok(self.matrix[(i, j)])
    }

    fn index(&self, v: Var) -> Result<usize> {
        self.names
            .iter()
            .position(|&n| n == v)
            .ok_or_else(|| Error::InvalidParameter(format!("label {} not in model", v.label())))
    }

    /// Indices of a group, order-preserving and deduplicated.
    pub(crate) fn group_indices(&self, group: &[Var]) -> Result<Vec<usize>> {
        let mut idx = Vec::with_capacity(group.len());
        for &v in group {
            let i = self.index(v)?;
            if !idx.contains(&i) {
                idx.push(i);
            }
        }
        Ok(idx)
    }

    pub(crate) fn submatrix(&self, idx: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(idx.len(), idx.len(), |r, c| self.matrix[(idx[r], idx[c])])
    }

    /// Determinant of the submatrix on `idx`; errors when the block is
    /// singular relative to its variances (Hadamard-normalized).
    fn checked_det(&self, idx: &[usize]) -> Result<f64> {
        if idx.is_empty() {
            return Ok(1.0);
        }
        let sub = self.submatrix(idx);
        let det = sub.determinant();
        let diag_product: f64 = idx.iter().map(|&i| self.matrix[(i, i)]).product();
        if diag_product <= 0.0 || det <= DEGENERACY_TOL * diag_product {
            let labels: Vec<&str> = idx.iter().map(|&i| self.names[i].label()).collect();
            return Err(Error::Degenerate(format!(
                "singular covariance on {{{}}}",
                labels.join(", ")
            )));
        }
        Ok(det)
    }

    fn merged(&self, groups: &[&[Var]]) -> Result<Vec<usize>> {
        let mut idx = Vec::new();
        for g in groups {
            for i in self.group_indices(g)? {
                if !idx.contains(&i) {
                    idx.push(i);
                }
            }
        }
        Ok(idx)
    }

    fn check_disjoint(&self, a: &[Var], b: &[Var]) -> Result<()> {
        let ia = self.group_indices(a)?;
        let ib = self.group_indices(b)?;
        if ia.iter().any(|i| ib.contains(i)) {
            return Err(Error::InvalidParameter(
                "information groups must be disjoint".into(),
            ));
        }
        if ia.is_empty() || ib.is_empty() {
            return Err(Error::InvalidParameter("empty information group".into()));
        }
        Ok(())
    }

    /// Mutual information `I(A; B)` in nats.
    pub fn mi(&self, a: &[Var], b: &[Var]) -> Result<Rate> {
        self.cond_mi(a, b, &[])
    }

    /// Conditional mutual information `I(A; B | C)` in nats, from
    /// `½·ln(det Σ_{A∪C} · det Σ_{B∪C} / (det Σ_C · det Σ_{A∪B∪C}))`.
    /// Reduces to [`CovModel::mi`] for empty `C`; `C` may overlap `A` or `B`
    /// (conditioning on part of a group zeroes its contribution).
    pub fn cond_mi(&self, a: &[Var], b: &[Var], c: &[Var]) -> Result<Rate> {
        self.check_disjoint(a, b)?;
        let det_ac = self.checked_det(&self.merged(&[a, c])?)?;
        let det_bc = self.checked_det(&self.merged(&[b, c])?)?;
        let det_c = self.checked_det(&self.group_indices(c)?)?;
        let det_abc = self.checked_det(&self.merged(&[a, b, c])?)?;
        let mi = 0.5 * ((det_ac / det_c) * (det_bc / det_abc)).ln();
        Rate::from_nats_clamped(mi, MI_NEG_TOL)
    }
}

/// Covariance of the single-user compensation construction over
/// `(U, S, Z, X, Y)`: `U ~ N(0, p − β²ps)` independent of `S`,
/// `X = U − βS`, `Y = X + S + Z`. `E[X²] = p` exactly.
pub fn dtc_cov(params: &SingleUserParams, beta: f64) -> Result<CovModel> {
    params.check_beta(beta)?;
    let (p, ps, pz) = (params.p(), params.ps(), params.pz());
    let vu = (p - beta * beta * ps).max(0.0);
    let exs = -beta * ps;
    let names = vec![Var::U, Var::S, Var::Z, Var::X, Var::Y];
    #[rustfmt::skip]
    let matrix = DMatrix::from_row_slice(5, 5, &[
        vu,  0.0, 0.0, vu,        vu,
        0.0, ps,  0.0, exs,       (1.0 - beta) * ps,
        0.0, 0.0, pz,  0.0,       pz,
        vu,  exs, 0.0, p,         p - beta * ps,
        vu,  (1.0 - beta) * ps, pz, p - beta * ps, p + ps + pz - 2.0 * beta * ps,
    ]);
    CovModel::new(names, matrix)
}

/// Covariance of the all-causal MAC construction over `(U1, U2, S, Z, Y)`:
/// independent `Ui ~ N(0, pi − βi²ps)`, `Xi = Ui − βi·S`,
/// `Y = U1 + U2 + (1−β1−β2)S + Z`.
pub fn mac_dtc_cov(params: &MacParams, coeffs: MacDtcCoefficients) -> Result<CovModel> {
    // Reuse the pentagon's domain validation.
    regions::mac_dtc_pentagon(params, coeffs)?;
    let (p1, p2, ps, pz) = (params.p1(), params.p2(), params.ps(), params.pz());
    let (b1, b2) = (coeffs.beta1, coeffs.beta2);
    let v1 = (p1 - b1 * b1 * ps).max(0.0);
    let v2 = (p2 - b2 * b2 * ps).max(0.0);
    let k = 1.0 - b1 - b2;
    let names = vec![Var::U1, Var::U2, Var::S, Var::Z, Var::Y];
    #[rustfmt::skip]
    let matrix = DMatrix::from_row_slice(5, 5, &[
        v1,  0.0, 0.0,    0.0, v1,
        0.0, v2,  0.0,    0.0, v2,
        0.0, 0.0, ps,     0.0, k * ps,
        0.0, 0.0, 0.0,    pz,  pz,
        v1,  v2,  k * ps, pz,  v1 + v2 + k * k * ps + pz,
    ]);
    CovModel::new(names, matrix)
}

/// Covariance of the joint dirty-paper/dirty-tape construction over
/// `(U1, U2, S, Z, Y)`: `E[U1²] = p1 + α²ps`, `E[U1·S] = α·ps` (so that
/// `X1 = U1 − αS` satisfies `E[X1·S] = 0` and `E[X1²] = p1`),
/// `U2 ~ N(0, p2 − β²ps)` independent of `(U1, S)`, and
/// `Y = U1 + U2 + (1−α−β)S + Z`.
pub fn jdpt_cov(params: &MacParams, coeffs: JdptCoefficients) -> Result<CovModel> {
    regions::jdpt_pentagon(params, coeffs)?;
    let (p1, p2, ps, pz) = (params.p1(), params.p2(), params.ps(), params.pz());
    let (a, b) = (coeffs.alpha, coeffs.beta);
    let v1 = p1 + a * a * ps;
    let e1s = a * ps;
    let v2 = (p2 - b * b * ps).max(0.0);
    let k = 1.0 - a - b;
    let ey1 = v1 + k * e1s;
    let eys = e1s + k * ps;
    let vy = v1 + v2 + k * k * ps + pz + 2.0 * k * e1s;
    let names = vec![Var::U1, Var::U2, Var::S, Var::Z, Var::Y];
    #[rustfmt::skip]
    let matrix = DMatrix::from_row_slice(5, 5, &[
        v1,  0.0, e1s, 0.0, ey1,
        0.0, v2,  0.0, 0.0, v2,
        e1s, 0.0, ps,  0.0, eys,
        0.0, 0.0, 0.0, pz,  pz,
        ey1, v2,  eys, pz,  vy,
    ]);
    CovModel::new(names, matrix)
}

/// Closed form versus oracle for one scalar bound.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Discrepancy {
    pub closed_form_nats: f64,
    pub oracle_nats: f64,
}

impl Discrepancy {
    pub fn abs(&self) -> f64 {
        (self.closed_form_nats - self.oracle_nats).abs()
    }
}

/// Per-bound discrepancies of a two-user region.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RegionDiscrepancy {
    pub r1: Discrepancy,
    pub r2: Discrepancy,
    pub r_sum: Discrepancy,
}

impl RegionDiscrepancy {
    pub fn max_abs(&self) -> f64 {
        self.r1.abs().max(self.r2.abs()).max(self.r_sum.abs())
    }
}

/// Compensation-rate audit: the closed form against `I(U; Y)` evaluated on
/// the exact construction's covariance.
pub fn verify_compensation_mi(params: &SingleUserParams, beta: f64) -> Result<Discrepancy> {
    let closed = compensation_rate_at(params, beta)?.nats();
    let model = dtc_cov(params, beta)?;
    let oracle = model.mi(&[Var::U], &[Var::Y])?.nats();
    Ok(Discrepancy {
        closed_form_nats: closed,
        oracle_nats: oracle,
    })
}

/// All-causal MAC audit: the three closed-form bounds against
/// `I(U1; Y | U2)`, `I(U2; Y | U1)`, `I(U1, U2; Y)` on the construction's
/// covariance.
pub fn verify_mac_dtc_bounds(
    params: &MacParams,
    coeffs: MacDtcCoefficients,
) -> Result<RegionDiscrepancy> {
    let (c1, c2, cs) = regions::mac_dtc_bounds_nats(params, coeffs)?;
    let model = mac_dtc_cov(params, coeffs)?;
    Ok(RegionDiscrepancy {
        r1: Discrepancy {
            closed_form_nats: c1,
            oracle_nats: model.cond_mi(&[Var::U1], &[Var::Y], &[Var::U2])?.nats(),
        },
        r2: Discrepancy {
            closed_form_nats: c2,
            oracle_nats: model.cond_mi(&[Var::U2], &[Var::Y], &[Var::U1])?.nats(),
        },
        r_sum: Discrepancy {
            closed_form_nats: cs,
            oracle_nats: model.mi(&[Var::U1, Var::U2], &[Var::Y])?.nats(),
        },
    })
}

/// Joint dirty-paper/dirty-tape audit: the three closed-form bounds against
/// `I(U1; Y | U2) − I(U1; S)`, `I(U2; Y | U1)`, and
/// `I(U1, U2; Y) − I(U1; S)`. Raw (unclamped) closed forms are compared, so
/// a negative sum bound must agree with the equally negative information
/// expression. Any systematic failure is reported verbatim by the audits,
/// never corrected: the oracle side is ground truth.
pub fn verify_jdpt_bounds(
    params: &MacParams,
    coeffs: JdptCoefficients,
) -> Result<RegionDiscrepancy> {
    let (c1, c2, cs) = regions::jdpt_bounds_raw_nats(params, coeffs)?;
    let model = jdpt_cov(params, coeffs)?;
    // I(U1; S) vanishes when there is no interference process at all.
    let binning_cost = if params.ps() == 0.0 {
        0.0
    } else {
        model.mi(&[Var::U1], &[Var::S])?.nats()
    };
    Ok(RegionDiscrepancy {
        r1: Discrepancy {
            closed_form_nats: c1,
            oracle_nats: model.cond_mi(&[Var::U1], &[Var::Y], &[Var::U2])?.nats() - binning_cost,
        },
        r2: Discrepancy {
            closed_form_nats: c2,
            oracle_nats: model.cond_mi(&[Var::U2], &[Var::Y], &[Var::U1])?.nats(),
        },
        r_sum: Discrepancy {
            closed_form_nats: cs,
            oracle_nats: model.mi(&[Var::U1, Var::U2], &[Var::Y])?.nats() - binning_cost,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::optimal_beta;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn pair_model(v1: f64, v2: f64, cov: f64) -> Result<CovModel> {
        CovModel::new(
            vec![Var::U, Var::Y],
            DMatrix::from_row_slice(2, 2, &[v1, cov, cov, v2]),
        )
    }

    #[test]
    fn mi_of_independent_pair_is_zero() {
        let m = pair_model(1.0, 1.0, 0.0).unwrap();
        assert_eq!(m.mi(&[Var::U], &[Var::Y]).unwrap().nats(), 0.0);
    }

    #[test]
    fn mi_closed_form_for_correlated_pair() {
        // I = -0.5 ln(1 - rho^2) at rho = 0.5.
        let m = pair_model(1.0, 1.0, 0.5).unwrap();
        let mi = m.mi(&[Var::U], &[Var::Y]).unwrap().nats();
        assert!((mi - 0.1438410362258904).abs() < 1e-14);
    }

    #[test]
    fn perfect_correlation_is_degenerate() {
        let m = pair_model(1.0, 1.0, 1.0).unwrap();
        match m.mi(&[Var::U], &[Var::Y]) {
            Err(Error::Degenerate(_)) => {}
            other => panic!("expected degeneracy error, got {other:?}"),
        }
    }

    #[test]
    fn model_validation() {
        // Asymmetric.
        assert!(CovModel::new(
            vec![Var::U, Var::Y],
            DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.2, 1.0]),
        )
        .is_err());
        // Duplicate labels.
        assert!(CovModel::new(
            vec![Var::U, Var::U],
            DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]),
        )
        .is_err());
        // Indefinite (eigenvalue -1).
        assert!(CovModel::new(
            vec![Var::U, Var::Y],
            DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]),
        )
        .is_err());
        // Round-off negative eigenvalue is tolerated.
        let eps = 1e-12;
        assert!(CovModel::new(
            vec![Var::U, Var::Y],
            DMatrix::from_row_slice(2, 2, &[1.0, 1.0 + eps, 1.0 + eps, 1.0]),
        )
        .is_ok());
    }

    #[test]
    fn cond_mi_reduces_and_degenerates_correctly() {
        // (U, Y) correlated, S independent of both.
        let m = CovModel::new(
            vec![Var::U, Var::Y, Var::S],
            DMatrix::from_row_slice(3, 3, &[1.0, 0.5, 0.0, 0.5, 1.0, 0.0, 0.0, 0.0, 2.0]),
        )
        .unwrap();
        let plain = m.mi(&[Var::U], &[Var::Y]).unwrap().nats();
        let cond = m.cond_mi(&[Var::U], &[Var::Y], &[Var::S]).unwrap().nats();
        assert!((plain - cond).abs() < 1e-14);
        // Conditioning on B itself gives zero.
        let self_cond = m.cond_mi(&[Var::U], &[Var::Y], &[Var::Y]).unwrap().nats();
        assert_eq!(self_cond, 0.0);
        // Overlapping A and B is rejected.
        assert!(m.mi(&[Var::U], &[Var::U]).is_err());
        assert!(m.mi(&[], &[Var::U]).is_err());
    }

    #[test]
    fn chain_rule_consistency() {
        let params = MacParams::new(200.0, 100.0, 100.0, 1.0).unwrap();
        for (b1, b2) in [(0.0, 0.0), (0.3, 0.5), (1.0, 0.2)] {
            let m = mac_dtc_cov(&params, MacDtcCoefficients { beta1: b1, beta2: b2 }).unwrap();
            let lhs = m.cond_mi(&[Var::U1], &[Var::Y], &[Var::U2]).unwrap().nats()
                + m.mi(&[Var::U2], &[Var::Y]).unwrap().nats();
            let rhs = m.mi(&[Var::U1, Var::U2], &[Var::Y]).unwrap().nats();
            assert!((lhs - rhs).abs() < 1e-10, "chain rule broke at ({b1}, {b2})");
        }
        for (a, b) in [(0.0, 0.0), (0.9, 0.3), (-0.5, -0.4)] {
            let m = jdpt_cov(&params, JdptCoefficients { alpha: a, beta: b }).unwrap();
            let lhs = m.cond_mi(&[Var::U1], &[Var::Y], &[Var::U2]).unwrap().nats()
                + m.mi(&[Var::U2], &[Var::Y]).unwrap().nats();
            let rhs = m.mi(&[Var::U1, Var::U2], &[Var::Y]).unwrap().nats();
            assert!((lhs - rhs).abs() < 1e-10, "chain rule broke at ({a}, {b})");
        }
    }

    #[test]
    fn dtc_cov_moments() {
        let params = SingleUserParams::new(100.0, 100.0, 1.0).unwrap();
        let m = dtc_cov(&params, 0.5).unwrap();
        assert_eq!(m.covariance(Var::X, Var::S).unwrap(), -50.0);
        assert_eq!(m.variance(Var::X).unwrap(), 100.0);
        assert_eq!(m.variance(Var::U).unwrap(), 75.0);
        // beta = 0: X = U independent of S.
        let m0 = dtc_cov(&params, 0.0).unwrap();
        assert_eq!(m0.covariance(Var::X, Var::S).unwrap(), 0.0);
        // Domain edge: U degenerates.
        let medge = dtc_cov(&params, 1.0).unwrap();
        assert_eq!(medge.variance(Var::U).unwrap(), 0.0);
        assert!(matches!(
            medge.mi(&[Var::U], &[Var::Y]),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn dtc_cov_y_row_is_consistent_with_channel() {
        // E[Y·V] must equal E[(X+S+Z)·V] entry by entry.
        let params = SingleUserParams::new(64.0, 9.0, 2.0).unwrap();
        let m = dtc_cov(&params, 0.75).unwrap();
        for v in [Var::U, Var::S, Var::Z, Var::X, Var::Y] {
            let lhs = m.covariance(Var::Y, v).unwrap();
            let rhs = m.covariance(Var::X, v).unwrap()
                + m.covariance(Var::S, v).unwrap()
                + m.covariance(Var::Z, v).unwrap();
            assert!((lhs - rhs).abs() < 1e-12, "Y row inconsistent at {}", v.label());
        }
    }

    #[test]
    fn jdpt_cov_moments() {
        let params = MacParams::new(200.0, 100.0, 100.0, 1.0).unwrap();
        let m = jdpt_cov(&params, JdptCoefficients { alpha: 0.9, beta: 0.3 }).unwrap();
        assert_eq!(m.variance(Var::U1).unwrap(), 281.0);
        assert_eq!(m.covariance(Var::U1, Var::S).unwrap(), 90.0);
        // X1 = U1 - alpha S is uncorrelated with S.
        let ex1s =
            m.covariance(Var::U1, Var::S).unwrap() - 0.9 * m.variance(Var::S).unwrap();
        assert_eq!(ex1s, 0.0);
        // beta at the domain edge degenerates U2.
        let edge = (100.0f64 / 100.0).sqrt();
        let me = jdpt_cov(&params, JdptCoefficients { alpha: 0.0, beta: edge }).unwrap();
        assert_eq!(me.variance(Var::U2).unwrap(), 0.0);
    }

    #[test]
    fn mac_dtc_cov_power_is_exact() {
        let params = MacParams::new(200.0, 100.0, 50.0, 1.0).unwrap();
        let c = MacDtcCoefficients { beta1: 0.6, beta2: 1.0 };
        let m = mac_dtc_cov(&params, c).unwrap();
        // E[Xi^2] = Var Ui + betai^2 ps = pi exactly.
        let x1 = m.variance(Var::U1).unwrap() + 0.6 * 0.6 * 50.0;
        let x2 = m.variance(Var::U2).unwrap() + 1.0 * 50.0;
        assert_eq!(x1, 200.0);
        assert_eq!(x2, 100.0);
    }

    #[test]
    fn compensation_mi_matches_closed_form() {
        let params = SingleUserParams::new(100.0, 100.0, 1.0).unwrap();
        for beta in [0.0, 0.4, optimal_beta(&params)] {
            let d = verify_compensation_mi(&params, beta).unwrap();
            assert!(d.abs() <= 1e-9, "discrepancy {} at beta={beta}", d.abs());
        }
        // No interference: both sides are the AWGN mutual information.
        let p0 = SingleUserParams::new(100.0, 0.0, 1.0).unwrap();
        assert!(verify_compensation_mi(&p0, 0.0).unwrap().abs() <= 1e-9);
    }

    #[test]
    fn mac_dtc_bounds_match_information_expressions() {
        let params = MacParams::new(200.0, 100.0, 100.0, 1.0).unwrap();
        let d = verify_mac_dtc_bounds(&params, MacDtcCoefficients { beta1: 0.0, beta2: 0.0 })
            .unwrap();
        assert!(d.max_abs() <= 1e-9);

        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..100 {
            let params = MacParams::new(
                10f64.powf(rng.gen_range(-1.0..3.0)),
                10f64.powf(rng.gen_range(-1.0..3.0)),
                10f64.powf(rng.gen_range(-1.0..3.0)),
                10f64.powf(rng.gen_range(-1.0..1.0)),
            )
            .unwrap();
            let c = MacDtcCoefficients {
                beta1: rng.gen_range(0.0..0.999) * params.beta_max(1),
                beta2: rng.gen_range(0.0..0.999) * params.beta_max(2),
            };
            let d = verify_mac_dtc_bounds(&params, c).unwrap();
            assert!(d.max_abs() <= 1e-9, "discrepancy {}", d.max_abs());
        }
    }

    #[test]
    fn jdpt_bounds_match_information_expressions() {
        let params = MacParams::new(200.0, 100.0, 100.0, 1.0).unwrap();
        let d =
            verify_jdpt_bounds(&params, JdptCoefficients { alpha: 0.9, beta: 0.3 }).unwrap();
        assert!(d.max_abs() <= 1e-9, "worked example discrepancy {}", d.max_abs());

        let mut rng = StdRng::seed_from_u64(29);
        for _ in 0..100 {
            let params = MacParams::new(
                10f64.powf(rng.gen_range(-1.0..3.0)),
                10f64.powf(rng.gen_range(-1.0..3.0)),
                10f64.powf(rng.gen_range(-1.0..3.0)),
                10f64.powf(rng.gen_range(-1.0..1.0)),
            )
            .unwrap();
            let c = JdptCoefficients {
                alpha: rng.gen_range(-1.0..2.0),
                beta: rng.gen_range(-0.999..0.999) * params.beta_max(2),
            };
            let d = verify_jdpt_bounds(&params, c).unwrap();
            assert!(d.max_abs() <= 1e-9, "discrepancy {}", d.max_abs());
        }
    }

    #[test]
    fn state_free_interference_matches_for_both_regions() {
        let params = MacParams::new(50.0, 20.0, 0.0, 1.0).unwrap();
        let d = verify_mac_dtc_bounds(&params, MacDtcCoefficients { beta1: 0.0, beta2: 0.0 })
            .unwrap();
        assert!(d.max_abs() <= 1e-9);
        let d = verify_jdpt_bounds(&params, JdptCoefficients { alpha: 0.0, beta: 0.0 }).unwrap();
        assert!(d.max_abs() <= 1e-9);
    }
}
