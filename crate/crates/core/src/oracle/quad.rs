//! Quadrature oracle for the linear-assignment mutual information with an
//! arbitrary univariate input law.
//!
//! Under `X = U − βS` with `U` independent of `(S, Z)`, the channel output
//! seen through the auxiliary is `Y = U + W` with `W ~ N(0, (1−β)²ps + pz)`,
//! so `I(U; Y) = h(U + W) − h(W)` needs only one-dimensional integration of
//! the convolution density. Each bundled input law admits a closed-form
//! convolution with a Gaussian, leaving a single adaptive quadrature for the
//! output entropy.
//!
//! The point of exercising non-Gaussian laws: for every admissible `(β,
//! variance)` the resulting information never exceeds the best compensation
//! rate, with equality only for the Gaussian input at the optimal β.

use serde::Serialize;

use crate::bounds::SingleUserParams;
use crate::error::{Error, Result};
use crate::rate::Rate;

/// Absolute tolerance requested from the entropy quadrature.
const QUAD_TOL: f64 = 1e-9;

/// Contract on the reported quadrature error estimate.
const QUAD_ERR_LIMIT: f64 = 1e-7;

/// Integration range in combined standard deviations; Gaussian tails beyond
/// contribute less than 1e-20.
const RANGE_SIGMAS: f64 = 10.0;

fn std_normal_cdf(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-x / std::f64::consts::SQRT_2)
}

fn normal_pdf(t: f64, sigma: f64) -> f64 {
    (-(t * t) / (2.0 * sigma * sigma)).exp() / (sigma * (2.0 * std::f64::consts::PI).sqrt())
}

/// Zero-mean univariate input laws, parameterized by variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ScalarDensity {
    /// `N(0, variance)`.
    Gaussian { variance: f64 },
    /// Uniform on `[-w, w]` with `w = √(3·variance)`.
    Uniform { variance: f64 },
    /// Triangular on `[-w, w]` with `w = √(6·variance)`.
    Triangular { variance: f64 },
    /// Mass ½ at each of `±√variance` (discrete; only its Gaussian
    /// convolution has a density).
    TwoPoint { variance: f64 },
}

impl ScalarDensity {
    pub fn gaussian(variance: f64) -> Result<Self> {
        Self::check(variance)?;
        Ok(Self::Gaussian { variance })
    }

    pub fn uniform(variance: f64) -> Result<Self> {
        Self::check(variance)?;
        Ok(Self::Uniform { variance })
    }

    pub fn triangular(variance: f64) -> Result<Self> {
        Self::check(variance)?;
        Ok(Self::Triangular { variance })
    }

    pub fn two_point(variance: f64) -> Result<Self> {
        Self::check(variance)?;
        Ok(Self::TwoPoint { variance })
    }

    fn check(variance: f64) -> Result<()> {
        if !variance.is_finite() || variance < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "variance must be finite and nonnegative, got {variance}"
            )));
        }
        Ok(())
    }

    pub fn variance(&self) -> f64 {
        match *self {
            Self::Gaussian { variance }
            | Self::Uniform { variance }
            | Self::Triangular { variance }
            | Self::TwoPoint { variance } => variance,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Gaussian { .. } => "gaussian",
            Self::Uniform { .. } => "uniform",
            Self::Triangular { .. } => "triangular",
            Self::TwoPoint { .. } => "two-point",
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, Self::TwoPoint { .. })
    }

    /// Support bounds (infinite for the Gaussian).
    pub fn support(&self) -> (f64, f64) {
        match *self {
            Self::Gaussian { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            Self::Uniform { variance } => {
                let w = (3.0 * variance).sqrt();
                (-w, w)
            }
            Self::Triangular { variance } => {
                let w = (6.0 * variance).sqrt();
                (-w, w)
            }
            Self::TwoPoint { variance } => {
                let a = variance.sqrt();
                (-a, a)
            }
        }
    }

    /// Density value at `x`; errors for the discrete law.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        match *self {
            Self::Gaussian { variance } => {
                if variance == 0.0 {
                    return Err(Error::InvalidParameter("degenerate gaussian has no density".into()));
                }
                Ok(normal_pdf(x, variance.sqrt()))
            }
            Self::Uniform { variance } => {
                let w = (3.0 * variance).sqrt();
                if w == 0.0 {
                    return Err(Error::InvalidParameter("degenerate uniform has no density".into()));
                }
                Ok(if x.abs() <= w { 1.0 / (2.0 * w) } else { 0.0 })
            }
            Self::Triangular { variance } => {
                let w = (6.0 * variance).sqrt();
                if w == 0.0 {
                    return Err(Error::InvalidParameter(
                        "degenerate triangular has no density".into(),
                    ));
                }
                Ok(if x.abs() <= w { (w - x.abs()) / (w * w) } else { 0.0 })
            }
            Self::TwoPoint { .. } => Err(Error::InvalidParameter(
                "two-point law is discrete and has no density".into(),
            )),
        }
    }

    /// Total probability mass, for the well-formedness check: quadrature of
    /// the density for continuous laws, exact mass sum for the discrete one.
    pub fn normalization(&self) -> Result<f64> {
        if self.is_discrete() || self.variance() == 0.0 {
            return Ok(1.0);
        }
        let (lo, hi) = match *self {
            Self::Gaussian { variance } => {
                let s = variance.sqrt();
                (-RANGE_SIGMAS * s, RANGE_SIGMAS * s)
            }
            other => other.support(),
            // unreachable for TwoPoint
        };
        let (v, _) = adaptive_simpson(&|x| self.pdf(x).unwrap_or(0.0), lo, hi, 1e-10, 60)?;
        Ok(v)
    }

    /// Density of `U + W` at `y`, with `W ~ N(0, sigma2)` independent of
    /// `U`. Closed form for every bundled law.
    pub fn convolved_with_gaussian(&self, y: f64, sigma2: f64) -> f64 {
        let sigma = sigma2.sqrt();
        if self.variance() == 0.0 {
            return normal_pdf(y, sigma);
        }
        match *self {
            Self::Gaussian { variance } => normal_pdf(y, (variance + sigma2).sqrt()),
            Self::Uniform { variance } => {
                let w = (3.0 * variance).sqrt();
                (std_normal_cdf((y + w) / sigma) - std_normal_cdf((y - w) / sigma)) / (2.0 * w)
            }
            Self::Triangular { variance } => {
                let w = (6.0 * variance).sqrt();
                // Integrate (w - |y - t|)/w^2 against the Gaussian in t,
                // splitting at t = y; the pieces reduce to the Gaussian cdf
                // and the identity  ∫ t·φσ(t) dt = -σ²·φσ(t).
                let g0 = |a: f64, b: f64| std_normal_cdf(b / sigma) - std_normal_cdf(a / sigma);
                let g1 = |a: f64, b: f64| sigma2 * (normal_pdf(a, sigma) - normal_pdf(b, sigma));
                ((w - y) * g0(y - w, y) + g1(y - w, y) + (w + y) * g0(y, y + w)
                    - g1(y, y + w))
                    / (w * w)
            }
            Self::TwoPoint { variance } => {
                let a = variance.sqrt();
                0.5 * (normal_pdf(y - a, sigma) + normal_pdf(y + a, sigma))
            }
        }
    }
}

/// Mutual information estimated by quadrature, with the integrator's error
/// estimate (nats).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadratureMi {
    pub rate: Rate,
    pub error_estimate: f64,
}

/// `I(U; Y)` for `X = U − βS` with input law `density`, by quadrature of the
/// output entropy.
///
/// Requires `Var(U) ≤ p − β²ps` (the transmit-power budget after cleaning).
/// The returned error estimate is guaranteed `≤ 1e-7`; non-convergence is a
/// numerical error.
pub fn linear_assignment_mi(
    density: &ScalarDensity,
    beta: f64,
    params: &SingleUserParams,
) -> Result<QuadratureMi> {
    params.check_beta(beta)?;
    let budget = params.p() - beta * beta * params.ps();
    let var_u = density.variance();
    if var_u > budget + 1e-9 * budget.max(1.0) {
        return Err(Error::InvalidParameter(format!(
            "input variance {var_u} exceeds power budget {budget}"
        )));
    }
    let sigma2 = (1.0 - beta) * (1.0 - beta) * params.ps() + params.pz();
    let noise_entropy = 0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * sigma2).ln();
    if var_u == 0.0 {
        // Degenerate input: the output is pure noise.
        return Ok(QuadratureMi {
            rate: Rate::ZERO,
            error_estimate: 0.0,
        });
    }

    let range = RANGE_SIGMAS * (var_u + sigma2).sqrt();
    let integrand = |y: f64| {
        let f = density.convolved_with_gaussian(y, sigma2);
        if f > 1e-300 {
            -f * f.ln()
        } else {
            0.0
        }
    };
    let (output_entropy, err) = adaptive_simpson(&integrand, -range, range, QUAD_TOL, 60)?;
    if err > QUAD_ERR_LIMIT {
        return Err(Error::Numerical(format!(
            "entropy quadrature error estimate {err} exceeds {QUAD_ERR_LIMIT}"
        )));
    }
    Ok(QuadratureMi {
        rate: Rate::from_nats_clamped(output_entropy - noise_entropy, 1e-9)?,
        error_estimate: err,
    })
}

/// Adaptive Simpson integration of `f` on `[a, b]` to absolute tolerance
/// `tol`. Returns the integral and an error estimate; exceeding `max_depth`
/// subdivisions is a numerical error.
pub(crate) fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: usize,
) -> Result<(f64, f64)> {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> Result<(f64, f64)> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok((left + right + delta / 15.0, delta.abs() / 15.0));
        }
        if depth == 0 {
            return Err(Error::Numerical(format!(
                "quadrature failed to converge on [{a}, {b}]"
            )));
        }
        let (lv, le) = recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?;
        let (rv, re) = recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?;
        Ok((lv + rv, le + re))
    }

    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::InvalidParameter(format!(
            "invalid integration range [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok((0.0, 0.0));
    }

    // Pre-split into panels so symmetric integrands cannot fool the first
    // Simpson estimate.
    const PANELS: usize = 16;
    let mut total = 0.0;
    let mut err = 0.0;
    let h = (b - a) / PANELS as f64;
    for i in 0..PANELS {
        let pa = a + h * i as f64;
        let pb = if i == PANELS - 1 { b } else { pa + h };
        let pm = 0.5 * (pa + pb);
        let (fa, fm, fb) = (f(pa), f(pm), f(pb));
        let whole = simpson(fa, fm, fb, pb - pa);
        let (v, e) = recurse(
            f,
            pa,
            pb,
            fa,
            fm,
            fb,
            whole,
            tol / PANELS as f64,
            max_depth,
        )?;
        total += v;
        err += e;
    }
    Ok((total, err))
}
