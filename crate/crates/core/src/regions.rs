//! Two-user rate regions for the Gaussian MAC with additive interference
//! `Y = X1 + X2 + S + Z`.
//!
//! Each admissible coefficient choice yields a pentagon
//! `{0 ≤ R1 ≤ r1_max, 0 ≤ R2 ≤ r2_max, R1 + R2 ≤ r_sum}`; the achievable
//! region is the union of pentagons over the coefficient domain and its
//! upper boundary is extracted as a Pareto staircase on an `R1` grid.
//!
//! Two settings are covered:
//!
//! * both transmitters know `S` causally and apply compensation
//!   (`Xi = Ui − βi·S`), see [`mac_dtc_pentagon`];
//! * transmitter one knows `S` noncausally and uses a dirty-paper code
//!   (coefficient `α`), transmitter two compensates with `β`, see
//!   [`jdpt_pentagon`].
//!
//! The state-free Gaussian MAC capacity pentagon
//! ([`state_free_mac_pentagon`]) is the outer bound for both.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rate::Rate;

/// Eligibility slack when comparing an `R1` grid value against a pentagon's
/// `r1_max`, absorbing round-off in grid construction.
const R1_ELIGIBLE_TOL: f64 = 1e-12;

/// Per-transmitter powers plus interference and noise powers, linear units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MacParams {
    p1: f64,
    p2: f64,
    ps: f64,
    pz: f64,
}

impl MacParams {
    pub fn new(p1: f64, p2: f64, ps: f64, pz: f64) -> Result<Self> {
        for (name, v) in [("p1", p1), ("p2", p2), ("ps", ps), ("pz", pz)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite, got {v}"
                )));
            }
        }
        if p1 < 0.0 || p2 < 0.0 || ps < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "powers must be nonnegative, got p1={p1}, p2={p2}, ps={ps}"
            )));
        }
        if pz <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "noise power must be positive, got pz={pz}"
            )));
        }
        Ok(Self { p1, p2, ps, pz })
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn ps(&self) -> f64 {
        self.ps
    }

    pub fn pz(&self) -> f64 {
        self.pz
    }

    /// Upper end of transmitter-`i`'s compensation range `√(pi/ps)`;
    /// degenerates to 0 when `ps = 0`.
    pub fn beta_max(&self, i: usize) -> f64 {
        let p = if i == 1 { self.p1 } else { self.p2 };
        if self.ps == 0.0 {
            0.0
        } else {
            (p / self.ps).sqrt()
        }
    }

    fn check_mac_coeffs(&self, c: MacDtcCoefficients) -> Result<()> {
        for (i, beta) in [(1, c.beta1), (2, c.beta2)] {
            if !beta.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "beta{i} must be finite, got {beta}"
                )));
            }
            let max = self.beta_max(i);
            if beta < 0.0 || beta > max {
                return Err(Error::InvalidParameter(format!(
                    "beta{i}={beta} outside [0, {max}]"
                )));
            }
        }
        Ok(())
    }

    fn check_jdpt_coeffs(&self, c: JdptCoefficients) -> Result<()> {
        if !c.alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "alpha must be finite, got {}",
                c.alpha
            )));
        }
        if self.p1 == 0.0 && c.alpha != 0.0 {
            return Err(Error::InvalidParameter(
                "alpha must be 0 when p1 = 0 (dirty-paper term undefined)".into(),
            ));
        }
        if !c.beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "beta must be finite, got {}",
                c.beta
            )));
        }
        let max = self.beta_max(2);
        if c.beta < -max || c.beta > max {
            return Err(Error::InvalidParameter(format!(
                "beta={} outside [-{max}, {max}]",
                c.beta
            )));
        }
        Ok(())
    }
}

/// Compensation coefficients for the all-causal MAC; `betai ∈ [0, √(pi/ps)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MacDtcCoefficients {
    pub beta1: f64,
    pub beta2: f64,
}

/// Coefficients for joint dirty-paper/dirty-tape coding: `alpha` is the
/// dirty-paper coefficient of transmitter one (any finite real, 0 when
/// `p1 = 0`), `beta ∈ [−√(p2/ps), √(p2/ps)]` is transmitter two's
/// compensation coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JdptCoefficients {
    pub alpha: f64,
    pub beta: f64,
}

/// One achievable polytope: `{0 ≤ R1 ≤ r1_max, 0 ≤ R2 ≤ r2_max,
/// R1 + R2 ≤ r_sum}`. No relation between `r_sum` and `r1_max + r2_max` is
/// assumed; the membership predicate handles every shape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pentagon {
    r1_max: Rate,
    r2_max: Rate,
    r_sum: Rate,
}

impl Pentagon {
    pub fn new(r1_max: Rate, r2_max: Rate, r_sum: Rate) -> Self {
        Self {
            r1_max,
            r2_max,
            r_sum,
        }
    }

    pub fn r1_max(&self) -> Rate {
        self.r1_max
    }

    pub fn r2_max(&self) -> Rate {
        self.r2_max
    }

    pub fn r_sum(&self) -> Rate {
        self.r_sum
    }

    /// Membership predicate, exact.
    pub fn contains(&self, r1: Rate, r2: Rate) -> bool {
        self.contains_with_tol(r1.nats(), r2.nats(), 0.0)
    }

    /// Membership with slack `tol` (nats) on every face, for re-checking
    /// grid-extracted frontier points.
    pub fn contains_with_tol(&self, r1_nats: f64, r2_nats: f64, tol: f64) -> bool {
        r1_nats >= -tol
            && r2_nats >= -tol
            && r1_nats <= self.r1_max.nats() + tol
            && r2_nats <= self.r2_max.nats() + tol
            && r1_nats + r2_nats <= self.r_sum.nats() + tol
    }

    /// Largest `R2` available in this pentagon at the given `R1`, or `None`
    /// when `R1` exceeds `r1_max`.
    fn r2_at(&self, r1_nats: f64) -> Option<f64> {
        if r1_nats > self.r1_max.nats() + R1_ELIGIBLE_TOL {
            return None;
        }
        Some(
            self.r2_max
                .nats()
                .min(self.r_sum.nats() - r1_nats)
                .max(0.0),
        )
    }
}

fn clamped_rate(nats: f64) -> Result<Rate> {
    Rate::from_nats(nats.max(0.0))
}

/// Validated closed-form bounds for the all-causal MAC, in nats
/// (nonnegative by construction).
pub(crate) fn mac_dtc_bounds_nats(
    params: &MacParams,
    coeffs: MacDtcCoefficients,
) -> Result<(f64, f64, f64)> {
    params.check_mac_coeffs(coeffs)?;
    let (b1, b2) = (coeffs.beta1, coeffs.beta2);
    let den = (1.0 - b1 - b2).powi(2) * params.ps + params.pz;
    let n1 = (params.p1 - b1 * b1 * params.ps).max(0.0);
    let n2 = (params.p2 - b2 * b2 * params.ps).max(0.0);
    Ok((
        0.5 * (1.0 + n1 / den).ln(),
        0.5 * (1.0 + n2 / den).ln(),
        0.5 * (1.0 + (n1 + n2) / den).ln(),
    ))
}

/// Achievable pentagon for the all-causal MAC at compensation coefficients
/// `(β1, β2)`:
///
/// * `r1_max = ½·ln(1 + (p1 − β1²ps) / ((1−β1−β2)²ps + pz))`
/// * `r2_max` analogous with `p2, β2`
/// * `r_sum  = ½·ln(1 + (p1 + p2 − (β1²+β2²)ps) / ((1−β1−β2)²ps + pz))`
pub fn mac_dtc_pentagon(params: &MacParams, coeffs: MacDtcCoefficients) -> Result<Pentagon> {
    let (r1, r2, rs) = mac_dtc_bounds_nats(params, coeffs)?;
    Ok(Pentagon::new(
        clamped_rate(r1)?,
        clamped_rate(r2)?,
        clamped_rate(rs)?,
    ))
}

/// Raw (pre-clamp) joint dirty-paper/dirty-tape bounds in nats, sharing the
/// denominator `D = (1−α−β)²ps + α²(ps/p1)pz + pz`.
fn jdpt_bounds_nats(params: &MacParams, coeffs: JdptCoefficients) -> (f64, f64, f64) {
    let (a, b) = (coeffs.alpha, coeffs.beta);
    let ratio = if params.p1 == 0.0 {
        0.0 // alpha is forced to 0; the dirty-paper term vanishes
    } else {
        a * a * params.ps / params.p1
    };
    let den = (1.0 - a - b).powi(2) * params.ps + ratio * params.pz + params.pz;
    let r1 = 0.5 * ((params.p1 + (1.0 - b).powi(2) * params.ps + params.pz) / den).ln();
    let n2 = (params.p2 - b * b * params.ps).max(0.0);
    let r2 = 0.5 * (1.0 + n2 * (1.0 + ratio) / den).ln();
    let rs =
        0.5 * ((params.p1 + params.p2 + (1.0 - 2.0 * b) * params.ps + params.pz) / den).ln();
    (r1, r2, rs)
}

/// Validated raw (pre-clamp) joint dirty-paper/dirty-tape bounds in nats;
/// the sum bound can be negative for extreme coefficients.
pub(crate) fn jdpt_bounds_raw_nats(
    params: &MacParams,
    coeffs: JdptCoefficients,
) -> Result<(f64, f64, f64)> {
    params.check_jdpt_coeffs(coeffs)?;
    Ok(jdpt_bounds_nats(params, coeffs))
}

/// Achievable pentagon for joint dirty-paper/dirty-tape coding at
/// coefficients `(α, β)`. Each bound is clamped at 0 individually.
pub fn jdpt_pentagon(params: &MacParams, coeffs: JdptCoefficients) -> Result<Pentagon> {
    let (r1, r2, rs) = jdpt_bounds_raw_nats(params, coeffs)?;
    Ok(Pentagon::new(
        clamped_rate(r1)?,
        clamped_rate(r2)?,
        clamped_rate(rs)?,
    ))
}

/// Capacity pentagon of the state-free Gaussian MAC — the trivial outer
/// bound for both state-dependent settings.
pub fn state_free_mac_pentagon(params: &MacParams) -> Pentagon {
    let half_log = |x: f64| Rate::from_nats(0.5 * x.ln()).expect("nonnegative");
    Pentagon::new(
        half_log(1.0 + params.p1 / params.pz),
        half_log(1.0 + params.p2 / params.pz),
        half_log(1.0 + (params.p1 + params.p2) / params.pz),
    )
}

/// Upper boundary of a union of pentagons as a Pareto staircase: `R1`
/// strictly increasing, `R2` nonincreasing.
#[derive(Debug, Clone, Serialize)]
pub struct Frontier {
    points: Vec<(Rate, Rate)>,
}

impl Frontier {
    fn new(points: Vec<(Rate, Rate)>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0].0.nats() < w[1].0.nats()));
        debug_assert!(points.windows(2).all(|w| w[0].1.nats() >= w[1].1.nats()));
        Self { points }
    }

    pub fn points(&self) -> &[(Rate, Rate)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest `R1` reached (the staircase's foot on the `R1` axis).
    pub fn max_r1(&self) -> Rate {
        self.points.last().map(|p| p.0).unwrap_or(Rate::ZERO)
    }
}

/// Uniform grid of `points` values from 0 to `end` inclusive, endpoint exact.
pub fn uniform_grid(end: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2 && end >= 0.0);
    (0..points)
        .map(|i| {
            if i == points - 1 {
                end
            } else {
                end * i as f64 / (points - 1) as f64
            }
        })
        .collect()
}

fn union_reach(pentagons: &[Pentagon]) -> f64 {
    pentagons
        .iter()
        .map(|p| p.r1_max().nats())
        .fold(0.0, f64::max)
}

/// Frontier of a pentagon union on an explicit `R1` grid (nats, ascending):
/// at each grid value, `R2 = max` over pentagons with `r1_max ≥ R1` of
/// `min(r2_max, r_sum − R1)`, clamped at 0. Exact for the given pentagon set
/// at grid resolution; no convexification across pentagons is applied.
pub fn frontier_union_on_grid(pentagons: &[Pentagon], r1_grid: &[f64]) -> Result<Frontier> {
    if pentagons.is_empty() {
        return Err(Error::InvalidParameter("empty pentagon sequence".into()));
    }
    if r1_grid.is_empty() {
        return Err(Error::InvalidParameter("empty r1 grid".into()));
    }
    let mut points = Vec::with_capacity(r1_grid.len());
    for &r1 in r1_grid {
        let best = pentagons
            .iter()
            .filter_map(|p| p.r2_at(r1))
            .fold(f64::NEG_INFINITY, f64::max);
        if best == f64::NEG_INFINITY {
            return Err(Error::InvalidParameter(format!(
                "r1={r1} exceeds every pentagon's r1_max"
            )));
        }
        points.push((Rate::from_nats(r1)?, Rate::from_nats(best)?));
    }
    Ok(Frontier::new(points))
}

/// Frontier of a pentagon union on a uniform grid from 0 to the union's
/// largest `r1_max`.
pub fn frontier_union(pentagons: &[Pentagon], points: usize) -> Result<Frontier> {
    if pentagons.is_empty() {
        return Err(Error::InvalidParameter("empty pentagon sequence".into()));
    }
    frontier_union_on_grid(pentagons, &uniform_grid(union_reach(pentagons), points))
}

/// Grid resolution for the all-causal MAC frontier.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MacGrid {
    /// Points per β axis.
    pub beta_points: usize,
    /// Points on the output `R1` grid.
    pub frontier_points: usize,
}

impl Default for MacGrid {
    fn default() -> Self {
        Self {
            beta_points: 201,
            frontier_points: 1001,
        }
    }
}

/// Grid resolution for the joint dirty-paper/dirty-tape frontier.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct JdptGrid {
    /// Points per β axis.
    pub beta_points: usize,
    /// α sample count on `alpha_bracket`.
    pub alpha_points: usize,
    /// Search bracket for α; the dirty-paper optimum lies in (0, 1), and
    /// incumbents landing on the bracket edge are reported in the stats so
    /// the bracket can be widened.
    pub alpha_bracket: (f64, f64),
    /// Points on the output `R1` grid.
    pub frontier_points: usize,
    /// Local refinement passes around the per-point incumbent.
    pub refine_rounds: usize,
}

impl Default for JdptGrid {
    fn default() -> Self {
        Self {
            beta_points: 201,
            alpha_points: 301,
            alpha_bracket: (-1.0, 2.0),
            frontier_points: 1001,
            refine_rounds: 2,
        }
    }
}

fn coefficient_axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if hi <= lo {
        return vec![lo];
    }
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Pentagons of the all-causal MAC over the full `(β1, β2)` grid.
pub fn mac_dtc_pentagons(params: &MacParams, beta_points: usize) -> Result<Vec<Pentagon>> {
    if beta_points == 0 {
        return Err(Error::InvalidParameter("empty beta grid".into()));
    }
    let b1s = coefficient_axis(0.0, params.beta_max(1), beta_points);
    let b2s = coefficient_axis(0.0, params.beta_max(2), beta_points);
    let mut pents = Vec::with_capacity(b1s.len() * b2s.len());
    for &b1 in &b1s {
        for &b2 in &b2s {
            pents.push(mac_dtc_pentagon(
                params,
                MacDtcCoefficients { beta1: b1, beta2: b2 },
            )?);
        }
    }
    Ok(pents)
}

/// All-causal MAC frontier on an explicit `R1` grid.
pub fn mac_dtc_frontier_on_grid(
    params: &MacParams,
    grid: &MacGrid,
    r1_grid: &[f64],
) -> Result<Frontier> {
    frontier_union_on_grid(&mac_dtc_pentagons(params, grid.beta_points)?, r1_grid)
}

/// All-causal MAC frontier on a uniform grid spanning the union's reach.
pub fn mac_dtc_frontier(params: &MacParams, grid: &MacGrid) -> Result<Frontier> {
    frontier_union(
        &mac_dtc_pentagons(params, grid.beta_points)?,
        grid.frontier_points,
    )
}

/// Joint dirty-paper/dirty-tape frontier plus generation statistics.
#[derive(Debug, Clone, Serialize)]
pub struct JdptFrontier {
    pub frontier: Frontier,
    /// Coefficient grid points whose sum bound was negative before clamping.
    pub clamped_pentagons: usize,
    /// Frontier points whose winning α sits on the bracket edge (a nonzero
    /// count suggests widening `alpha_bracket`).
    pub alpha_at_bracket_edge: usize,
}

struct JdptCut {
    value: f64,
    coeffs: JdptCoefficients,
}

fn jdpt_cut(params: &MacParams, coeffs: JdptCoefficients, r1: f64) -> Option<f64> {
    let (b1, b2, bs) = jdpt_bounds_nats(params, coeffs);
    if b1.max(0.0) + R1_ELIGIBLE_TOL < r1 {
        return None;
    }
    Some(b2.max(0.0).min(bs.max(0.0) - r1).max(0.0))
}

/// Joint dirty-paper/dirty-tape frontier on an explicit `R1` grid: a full
/// `(α, β)` grid pass per point followed by local `(α, β)` refinement around
/// the incumbent, shrinking the search cell tenfold per round.
pub fn jdpt_frontier_on_grid(
    params: &MacParams,
    grid: &JdptGrid,
    r1_grid: &[f64],
) -> Result<JdptFrontier> {
    if grid.beta_points == 0 || grid.alpha_points == 0 {
        return Err(Error::InvalidParameter("empty coefficient grid".into()));
    }
    let (alo, ahi) = grid.alpha_bracket;
    if !(alo.is_finite() && ahi.is_finite()) || ahi < alo {
        return Err(Error::InvalidParameter(format!(
            "invalid alpha bracket [{alo}, {ahi}]"
        )));
    }
    let alphas = if params.p1() == 0.0 {
        vec![0.0]
    } else {
        coefficient_axis(alo, ahi, grid.alpha_points)
    };
    let bmax = params.beta_max(2);
    let betas = coefficient_axis(-bmax, bmax, if bmax == 0.0 { 1 } else { grid.beta_points });

    // Base pentagon set, kept parallel to its coefficients for refinement.
    let mut coeffs = Vec::with_capacity(alphas.len() * betas.len());
    let mut bounds = Vec::with_capacity(alphas.len() * betas.len());
    let mut clamped = 0usize;
    for &a in &alphas {
        for &b in &betas {
            let c = JdptCoefficients { alpha: a, beta: b };
            params.check_jdpt_coeffs(c)?;
            let raw = jdpt_bounds_nats(params, c);
            if raw.2 < 0.0 {
                clamped += 1;
            }
            coeffs.push(c);
            bounds.push(raw);
        }
    }

    let alpha_step = if alphas.len() > 1 {
        (ahi - alo) / (alphas.len() - 1) as f64
    } else {
        0.0
    };
    let beta_step = if betas.len() > 1 {
        2.0 * bmax / (betas.len() - 1) as f64
    } else {
        0.0
    };

    let mut points = Vec::with_capacity(r1_grid.len());
    let mut alpha_at_edge = 0usize;
    for &r1 in r1_grid {
        // Base pass.
        let mut best: Option<JdptCut> = None;
        for (i, raw) in bounds.iter().enumerate() {
            if raw.0.max(0.0) + R1_ELIGIBLE_TOL < r1 {
                continue;
            }
            let v = raw.1.max(0.0).min(raw.2.max(0.0) - r1).max(0.0);
            if best.as_ref().is_none_or(|b| v > b.value) {
                best = Some(JdptCut {
                    value: v,
                    coeffs: coeffs[i],
                });
            }
        }
        let mut best = best.ok_or_else(|| {
            Error::InvalidParameter(format!("r1={r1} exceeds every pentagon's r1_max"))
        })?;

        // Local refinement around the incumbent.
        let (mut ha, mut hb) = (alpha_step, beta_step);
        for _ in 0..grid.refine_rounds {
            if ha == 0.0 && hb == 0.0 {
                break;
            }
            let a0 = best.coeffs.alpha;
            let b0 = best.coeffs.beta;
            let la = coefficient_axis((a0 - ha).max(alo), (a0 + ha).min(ahi), 21);
            let lb = coefficient_axis((b0 - hb).max(-bmax), (b0 + hb).min(bmax), 21);
            for &a in &la {
                for &b in &lb {
                    let c = JdptCoefficients { alpha: a, beta: b };
                    if let Some(v) = jdpt_cut(params, c, r1) {
                        if v > best.value {
                            best = JdptCut { value: v, coeffs: c };
                        }
                    }
                }
            }
            ha /= 10.0;
            hb /= 10.0;
        }

        if alphas.len() > 1
            && (best.coeffs.alpha <= alo + f64::EPSILON || best.coeffs.alpha >= ahi - f64::EPSILON)
        {
            alpha_at_edge += 1;
        }
        points.push((Rate::from_nats(r1)?, Rate::from_nats(best.value)?));
    }

    Ok(JdptFrontier {
        frontier: Frontier::new(points),
        clamped_pentagons: clamped,
        alpha_at_bracket_edge: alpha_at_edge,
    })
}

/// Joint dirty-paper/dirty-tape frontier on a uniform grid spanning the
/// base union's reach.
pub fn jdpt_frontier(params: &MacParams, grid: &JdptGrid) -> Result<JdptFrontier> {
    // Reach of the base grid (refinement only raises R2, never extends R1).
    let alphas = if params.p1() == 0.0 {
        vec![0.0]
    } else {
        coefficient_axis(grid.alpha_bracket.0, grid.alpha_bracket.1, grid.alpha_points)
    };
    let bmax = params.beta_max(2);
    let betas = coefficient_axis(-bmax, bmax, if bmax == 0.0 { 1 } else { grid.beta_points });
    let mut reach = 0.0f64;
    for &a in &alphas {
        for &b in &betas {
            let c = JdptCoefficients { alpha: a, beta: b };
            params.check_jdpt_coeffs(c)?;
            reach = reach.max(jdpt_bounds_nats(params, c).0.max(0.0));
        }
    }
    jdpt_frontier_on_grid(params, grid, &uniform_grid(reach, grid.frontier_points))
}
