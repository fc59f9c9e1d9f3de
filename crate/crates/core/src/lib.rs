//! Achievable-rate lower bounds and rate regions for Gaussian channels with
//! additive interference known at the transmitter.
//!
//! The channel is `Y = X + S + Z` (single user) or `Y = X1 + X2 + S + Z`
//! (two-user multiple access), where `S` is a Gaussian interference sequence
//! known to the transmitter(s) — causally ("dirty tape") or noncausally
//! ("dirty paper") — and `Z` is unknown Gaussian noise.
//!
//! The crate has four layers:
//!
//! * [`bounds`] — closed-form single-user bounds: the compensation rate and
//!   its optimal coefficient, the inflated-lattice bound, the interference-free
//!   AWGN upper bound, and Costa's coefficient.
//! * [`timeshare`] — two-mode time-sharing optimizers that concavify the
//!   closed-form bounds, plus an upper-concave-envelope cross-check.
//! * [`regions`] — two-user rate-region machinery: achievable pentagons for
//!   the all-causal and mixed causal/noncausal settings, the state-free MAC
//!   outer bound, and union-of-pentagons frontier extraction.
//! * [`oracle`] — independent ground truth: every closed form is re-derived
//!   from joint Gaussian covariance algebra, univariate quadrature over
//!   non-Gaussian input laws, and seeded Monte Carlo.
//!
//! All rates are stored in nats; [`Unit`] selects bits or nats at rendering
//! time. All operations are pure functions of their arguments (plus an
//! explicit seed where randomness is involved).

pub mod bounds;
pub mod error;
pub mod oracle;
pub mod rate;
pub mod regions;
pub mod search;
pub mod timeshare;

pub use bounds::SingleUserParams;
pub use error::{Error, Result};
pub use rate::{Rate, Unit};
pub use regions::{Frontier, MacParams, Pentagon};
pub use timeshare::TimeShareSolution;
