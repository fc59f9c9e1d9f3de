//! Information-rate newtype.
//!
//! Rates are stored internally in nats so that natural-log constants (such as
//! the `2πe/12` shaping loss) never mix bases with the output unit; bits are
//! a rendering concern.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Negative values closer to zero than this are treated as floating-point
/// cancellation noise and clamped to 0.
pub const NEG_CLAMP_NATS: f64 = 1e-14;

/// A nonnegative, finite information rate. Internally in nats.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Rate(f64);

impl Rate {
    pub const ZERO: Rate = Rate(0.0);

    /// Builds a rate from a value in nats.
    ///
    /// Tiny negative values (|v| < 1e-14) from cancellation are clamped to 0;
    /// anything more negative or non-finite is rejected.
    pub fn from_nats(nats: f64) -> Result<Self> {
        Self::from_nats_clamped(nats, NEG_CLAMP_NATS)
    }

    /// Same as [`Rate::from_nats`] with an explicit clamp threshold for
    /// callers whose round-off budget is larger (the covariance oracle uses
    /// 1e-12).
    pub fn from_nats_clamped(nats: f64, neg_tol: f64) -> Result<Self> {
        if !nats.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "rate must be finite, got {nats}"
            )));
        }
        if nats < -neg_tol {
            return Err(Error::InvalidParameter(format!(
                "rate must be nonnegative, got {nats} nats"
            )));
        }
        Ok(Rate(nats.max(0.0)))
    }

    pub fn nats(self) -> f64 {
        self.0
    }

    pub fn bits(self) -> f64 {
        self.0 / std::f64::consts::LN_2
    }

    pub fn value_in(self, unit: Unit) -> f64 {
        match unit {
            Unit::Bits => self.bits(),
            Unit::Nats => self.nats(),
        }
    }
}

/// Output unit for rates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    Bits,
    Nats,
}

impl Unit {
    pub fn label(self) -> &'static str {
        match self {
            Unit::Bits => "bits",
            Unit::Nats => "nats",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bits" => Ok(Unit::Bits),
            "nats" => Ok(Unit::Nats),
            other => Err(Error::InvalidParameter(format!(
                "unknown unit {other:?}, expected \"bits\" or \"nats\""
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamps_cancellation_noise() {
        assert_eq!(Rate::from_nats(-5e-15).unwrap().nats(), 0.0);
        assert_eq!(Rate::from_nats(0.0).unwrap().nats(), 0.0);
    }

    #[test]
    fn rejects_genuinely_negative_and_non_finite() {
        assert!(Rate::from_nats(-1e-3).is_err());
        assert!(Rate::from_nats(f64::NAN).is_err());
        assert!(Rate::from_nats(f64::INFINITY).is_err());
    }

    #[test]
    fn bits_nats_conversion() {
        let r = Rate::from_nats(std::f64::consts::LN_2).unwrap();
        assert!((r.bits() - 1.0).abs() < 1e-15);
        assert_eq!(r.value_in(Unit::Nats), std::f64::consts::LN_2);
    }

    #[test]
    fn unit_parsing() {
        assert_eq!("bits".parse::<Unit>().unwrap(), Unit::Bits);
        assert_eq!("nats".parse::<Unit>().unwrap(), Unit::Nats);
        assert!("dB".parse::<Unit>().is_err());
    }
}
