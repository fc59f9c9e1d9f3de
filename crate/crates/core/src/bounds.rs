//! Closed-form single-user rate bounds for the dirty-tape channel
//! `Y = X + S + Z` with transmit power `p`, interference power `ps`, and
//! unknown-noise power `pz`.
//!
//! The compensation strategy assigns `X = U - βS` with `U ~ N(0, p - β²ps)`
//! independent of `S`: a fraction `β²ps` of the transmit power is spent
//! cleaning the known interference and the rest carries the message. The
//! resulting rate, its optimal coefficient, the inflated-lattice bound, and
//! the interference-free AWGN upper bound are all elementary formulas.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rate::Rate;

/// Shaping loss of the cubic-lattice strategy, `½·ln(2πe/12)` nats.
pub fn lattice_shaping_loss_nats() -> f64 {
    0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E / 12.0).ln()
}

/// Powers of a single-user state-dependent Gaussian channel, all in linear
/// units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingleUserParams {
    p: f64,
    ps: f64,
    pz: f64,
}

impl SingleUserParams {
    /// Validates `p ≥ 0`, `ps ≥ 0`, `pz > 0`, all finite. `pz = 0` is
    /// rejected because every rate below would diverge.
    pub fn new(p: f64, ps: f64, pz: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("ps", ps), ("pz", pz)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite, got {v}"
                )));
            }
        }
        if p < 0.0 || ps < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "powers must be nonnegative, got p={p}, ps={ps}"
            )));
        }
        if pz <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "noise power must be positive, got pz={pz}"
            )));
        }
        Ok(Self { p, ps, pz })
    }

    /// Same channel with a different transmit power (used by the
    /// time-sharing optimizers, which vary `p` at fixed `ps`, `pz`).
    pub fn with_power(&self, p: f64) -> Result<Self> {
        Self::new(p, self.ps, self.pz)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn ps(&self) -> f64 {
        self.ps
    }

    pub fn pz(&self) -> f64 {
        self.pz
    }

    /// Upper end of the admissible compensation-coefficient range,
    /// `√(p/ps)`; degenerates to 0 when `ps = 0` (nothing to compensate).
    pub fn beta_max(&self) -> f64 {
        if self.ps == 0.0 {
            0.0
        } else {
            (self.p / self.ps).sqrt()
        }
    }

    pub(crate) fn check_beta(&self, beta: f64) -> Result<()> {
        if !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "beta must be finite, got {beta}"
            )));
        }
        let max = self.beta_max();
        if beta < 0.0 || beta > max {
            return Err(Error::InvalidParameter(format!(
                "beta={beta} outside [0, {max}] for p={}, ps={}",
                self.p, self.ps
            )));
        }
        Ok(())
    }
}

/// Compensation-strategy rate at a specific coefficient:
/// `½·ln(1 + (p − β²ps)/(pz + (1−β)²ps))` nats.
///
/// `beta` must lie in `[0, √(p/ps)]` (exactly 0 when `ps = 0`); the residual
/// message power `p − β²ps` is then nonnegative by construction.
pub fn compensation_rate_at(params: &SingleUserParams, beta: f64) -> Result<Rate> {
    params.check_beta(beta)?;
    let num = (params.p - beta * beta * params.ps).max(0.0);
    let den = params.pz + (1.0 - beta) * (1.0 - beta) * params.ps;
    Rate::from_nats(0.5 * (1.0 + num / den).ln())
}

/// Coefficient maximizing [`compensation_rate_at`].
///
/// Closed form `(p + pz + ps − √((p+pz+ps)² − 4·p·ps)) / (2ps)`, evaluated in
/// the rationalized form `2p / (s + √(s² − 4·p·ps))` to avoid cancellation.
/// Returns 0 when `ps = 0` (the rate is then β-independent and the closed
/// form is 0/0).
pub fn optimal_beta(params: &SingleUserParams) -> f64 {
    if params.ps == 0.0 || params.p == 0.0 {
        return 0.0;
    }
    let s = params.p + params.pz + params.ps;
    let disc = (s * s - 4.0 * params.p * params.ps).sqrt();
    2.0 * params.p / (s + disc)
}

/// Best compensation rate, i.e. [`compensation_rate_at`] evaluated at
/// [`optimal_beta`]. Achievable for the dirty-tape channel.
pub fn compensation_rate(params: &SingleUserParams) -> Rate {
    // optimal_beta always lands inside the admissible interval, so the
    // inner evaluation cannot fail.
    compensation_rate_at(params, optimal_beta(params))
        .expect("optimal coefficient is always admissible")
}

/// Inflated-lattice lower bound
/// `max{0, ½·ln(1 + p/pz) − ½·ln(2πe/12)}` nats. Independent of `ps`.
///
/// Strictly positive iff `p/pz > 2πe/12 − 1 ≈ 0.42329`.
pub fn lattice_rate(params: &SingleUserParams) -> Rate {
    let v = 0.5 * (1.0 + params.p / params.pz).ln() - lattice_shaping_loss_nats();
    Rate::from_nats(v.max(0.0)).expect("clamped value is nonnegative")
}

/// Interference-free AWGN capacity `½·ln(1 + p/pz)` nats — the trivial upper
/// bound on the dirty-tape capacity, and the exact dirty-paper capacity.
pub fn awgn_capacity(params: &SingleUserParams) -> Rate {
    Rate::from_nats(0.5 * (1.0 + params.p / params.pz).ln()).expect("nonnegative")
}

/// Costa's dirty-paper coefficient `α = p/(p + pz) ∈ [0, 1)`, used by the
/// covariance oracle to sanity-check dirty-paper mutual information.
pub fn costa_alpha(params: &SingleUserParams) -> f64 {
    params.p / (params.p + params.pz)
}
