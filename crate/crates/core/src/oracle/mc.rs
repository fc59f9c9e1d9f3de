//! Seeded Monte Carlo cross-check of the covariance algebra.
//!
//! Draws joint samples from a covariance model, forms the plug-in Gaussian
//! mutual information from the (known-zero-mean) sample second moments, and
//! attaches a delete-one-block jackknife standard error. Each block draws
//! from its own counter-based stream, so block-parallel evaluation would
//! reproduce the serial result bit for bit.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::cov::{CovModel, Var};

/// Number of jackknife blocks (also the number of RNG streams per call).
const JACKKNIFE_BLOCKS: usize = 100;

/// Seeded, named, counter-based RNG stream: the tag separates call sites,
/// the stream index separates parallel batches within one call.
pub(crate) fn stream_rng(seed: u64, tag: &str, stream: u64) -> ChaCha12Rng {
    // FNV-1a over the tag keeps distinct call sites on distinct keys.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in tag.bytes() {
        h = (h ^ byte as u64).wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ h);
    rng.set_stream(stream);
    rng
}

/// Monte Carlo mutual-information estimate with jackknife standard error.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct McEstimate {
    pub mi_nats: f64,
    pub std_err: f64,
    pub samples: usize,
}

fn plug_in_mi(moments: &DMatrix<f64>, na: usize) -> Result<f64> {
    let n = moments.nrows();
    let det_a = moments.view((0, 0), (na, na)).determinant();
    let det_b = moments.view((na, na), (n - na, n - na)).determinant();
    let det_ab = moments.determinant();
    if det_a <= 0.0 || det_b <= 0.0 || det_ab <= 0.0 {
        return Err(Error::Numerical("singular sample covariance".into()));
    }
    Ok(0.5 * (det_a * det_b / det_ab).ln())
}

/// Plug-in Gaussian MI between `group_a` and `group_b` from `n` seeded joint
/// samples of the model. Deterministic given `(cov, groups, n, seed)`.
pub fn mc_estimate_mi(
    cov: &CovModel,
    group_a: &[Var],
    group_b: &[Var],
    n: usize,
    seed: u64,
) -> Result<McEstimate> {
    if n < 1000 {
        return Err(Error::InvalidParameter(format!(
            "need at least 1000 samples, got {n}"
        )));
    }
    let ia = cov.group_indices(group_a)?;
    let ib = cov.group_indices(group_b)?;
    if ia.iter().any(|i| ib.contains(i)) || ia.is_empty() || ib.is_empty() {
        return Err(Error::InvalidParameter(
            "groups must be nonempty and disjoint".into(),
        ));
    }
    let idx: Vec<usize> = ia.iter().chain(ib.iter()).cloned().collect();
    let dim = idx.len();
    let sub = cov.submatrix(&idx);
    let chol = sub.clone().cholesky().ok_or_else(|| {
        Error::Degenerate("covariance not positive definite on the sampled groups".into())
    })?;
    let factor = chol.l();

    // Second-moment accumulators per jackknife block (means are known zero).
    let mut block_moments = vec![DMatrix::<f64>::zeros(dim, dim); JACKKNIFE_BLOCKS];
    let mut block_counts = vec![0usize; JACKKNIFE_BLOCKS];
    let base = n / JACKKNIFE_BLOCKS;
    let extra = n % JACKKNIFE_BLOCKS;
    let mut z = vec![0.0f64; dim];
    let mut x = vec![0.0f64; dim];
    for (b, moments) in block_moments.iter_mut().enumerate() {
        let count = base + if b < extra { 1 } else { 0 };
        let mut rng = stream_rng(seed, "mc-estimate-mi", b as u64);
        for _ in 0..count {
            for zi in z.iter_mut() {
                *zi = StandardNormal.sample(&mut rng);
            }
            for r in 0..dim {
                let mut acc = 0.0;
                for c in 0..=r {
                    acc += factor[(r, c)] * z[c];
                }
                x[r] = acc;
            }
            for r in 0..dim {
                for c in 0..=r {
                    moments[(r, c)] += x[r] * x[c];
                }
            }
        }
        block_counts[b] = count;
    }
    for moments in block_moments.iter_mut() {
        for r in 0..dim {
            for c in 0..r {
                moments[(c, r)] = moments[(r, c)];
            }
        }
    }

    let total: DMatrix<f64> = block_moments
        .iter()
        .fold(DMatrix::zeros(dim, dim), |acc, m| acc + m);
    let estimate = plug_in_mi(&(&total / n as f64), ia.len())?;

    // Delete-one-block jackknife.
    let blocks = JACKKNIFE_BLOCKS as f64;
    let mut leave_out = Vec::with_capacity(JACKKNIFE_BLOCKS);
    for b in 0..JACKKNIFE_BLOCKS {
        let m = (&total - &block_moments[b]) / (n - block_counts[b]) as f64;
        leave_out.push(plug_in_mi(&m, ia.len())?);
    }
    let mean = leave_out.iter().sum::<f64>() / blocks;
    let var = leave_out.iter().map(|v| (v - mean).powi(2)).sum::<f64>() * (blocks - 1.0) / blocks;

    Ok(McEstimate {
        mi_nats: estimate,
        std_err: var.sqrt(),
        samples: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{compensation_rate, optimal_beta, SingleUserParams};
    use crate::oracle::cov::dtc_cov;

    fn pair_model(cov_uy: f64) -> CovModel {
        CovModel::new(
            vec![Var::U, Var::Y],
            DMatrix::from_row_slice(2, 2, &[1.0, cov_uy, cov_uy, 1.0]),
        )
        .unwrap()
    }

    #[test]
    fn independent_pair_estimate_is_consistent_with_zero() {
        let m = pair_model(0.0);
        let est = mc_estimate_mi(&m, &[Var::U], &[Var::Y], 200_000, 42).unwrap();
        assert!(
            est.mi_nats.abs() <= 3.0 * est.std_err.max(1e-6),
            "estimate {} vs stderr {}",
            est.mi_nats,
            est.std_err
        );
    }

    #[test]
    fn compensation_construction_estimate_matches_analytic() {
        let params = SingleUserParams::new(100.0, 100.0, 1.0).unwrap();
        let model = dtc_cov(&params, optimal_beta(&params)).unwrap();
        let analytic = compensation_rate(&params).nats();
        let est = mc_estimate_mi(&model, &[Var::U], &[Var::Y], 200_000, 42).unwrap();
        assert!(
            (est.mi_nats - analytic).abs() <= 3.0 * est.std_err,
            "estimate {} vs analytic {analytic} (se {})",
            est.mi_nats,
            est.std_err
        );
    }

    #[test]
    fn same_seed_reproduces_bitwise() {
        let m = pair_model(0.5);
        let a = mc_estimate_mi(&m, &[Var::U], &[Var::Y], 50_000, 7).unwrap();
        let b = mc_estimate_mi(&m, &[Var::U], &[Var::Y], 50_000, 7).unwrap();
        assert_eq!(a.mi_nats.to_bits(), b.mi_nats.to_bits());
        assert_eq!(a.std_err.to_bits(), b.std_err.to_bits());
        let c = mc_estimate_mi(&m, &[Var::U], &[Var::Y], 50_000, 8).unwrap();
        assert_ne!(a.mi_nats.to_bits(), c.mi_nats.to_bits());
    }

    #[test]
    fn rejects_tiny_sample_counts_and_bad_groups() {
        let m = pair_model(0.5);
        assert!(mc_estimate_mi(&m, &[Var::U], &[Var::Y], 10, 1).is_err());
        assert!(mc_estimate_mi(&m, &[Var::U], &[Var::U], 10_000, 1).is_err());
    }

    #[test]
    fn singular_model_is_rejected() {
        let m = pair_model(1.0);
        assert!(matches!(
            mc_estimate_mi(&m, &[Var::U], &[Var::Y], 10_000, 1),
            Err(Error::Degenerate(_))
        ));
    }
}
