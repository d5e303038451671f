//! Comparison functions: concave, non-decreasing gauges `φ` with `φ(0) = 0`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metric::{FiniteMetricSpace, MetricError};
use crate::TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    ZeroAtOrigin,
    NonDecreasing,
    Positive,
    RatioNonIncreasing,
    SubAdditive,
    Concave,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComparisonError {
    #[error("negative argument {0}")]
    NegativeArgument(f64),
    #[error("invalid comparison function: {0}")]
    InvalidParameter(String),
    #[error("axiom {axiom:?} violated at {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<f64> },
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// A comparison function `φ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawComparison")]
pub enum ComparisonFunction {
    /// `t^α`, `α ∈ (0, 1]`.
    Power { alpha: f64 },
    /// `ln(1 + t)`.
    Log1p,
    /// Linear interpolation through the breakpoints, extended past the last
    /// one with the final slope.
    Pwl { breakpoints: Vec<(f64, f64)> },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawComparison {
    Power { alpha: f64 },
    Log1p,
    Pwl { breakpoints: Vec<(f64, f64)> },
}

impl TryFrom<RawComparison> for ComparisonFunction {
    type Error = ComparisonError;

    fn try_from(raw: RawComparison) -> Result<Self, Self::Error> {
        match raw {
            RawComparison::Power { alpha } => Self::power(alpha),
            RawComparison::Log1p => Ok(Self::Log1p),
            RawComparison::Pwl { breakpoints } => Self::pwl(breakpoints),
        }
    }
}

impl ComparisonFunction {
    pub fn identity() -> Self {
        ComparisonFunction::Power { alpha: 1.0 }
    }

    pub fn power(alpha: f64) -> Result<Self, ComparisonError> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(ComparisonError::InvalidParameter(format!("power exponent {alpha} outside (0, 1]")));
        }
        Ok(ComparisonFunction::Power { alpha })
    }

    /// Piecewise-linear gauge. Structural checks only: starts at `(0, 0)`,
    /// strictly increasing abscissae, finite values. Concavity is an axiom
    /// checked by [`validate_comparison`].
    pub fn pwl(breakpoints: Vec<(f64, f64)>) -> Result<Self, ComparisonError> {
        if breakpoints.len() < 2 {
            return Err(ComparisonError::InvalidParameter("need at least two breakpoints".into()));
        }
        if breakpoints[0] != (0.0, 0.0) {
            return Err(ComparisonError::InvalidParameter("first breakpoint must be (0, 0)".into()));
        }
        if breakpoints.iter().any(|(t, v)| !t.is_finite() || !v.is_finite()) {
            return Err(ComparisonError::InvalidParameter("non-finite breakpoint".into()));
        }
        if breakpoints.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(ComparisonError::InvalidParameter("breakpoints must be strictly increasing in t".into()));
        }
        Ok(ComparisonFunction::Pwl { breakpoints })
    }

    pub fn eval(&self, t: f64) -> Result<f64, ComparisonError> {
        if t < 0.0 || t.is_nan() {
            return Err(ComparisonError::NegativeArgument(t));
        }
        Ok(self.value(t))
    }

    /// `φ(t)` for `t ≥ 0`; negative arguments are clamped to zero.
    pub fn value(&self, t: f64) -> f64 {
        let t = t.max(0.0);
        match self {
            ComparisonFunction::Power { alpha } => {
                if *alpha == 1.0 {
                    t
                } else {
                    t.powf(*alpha)
                }
            }
            ComparisonFunction::Log1p => t.ln_1p(),
            ComparisonFunction::Pwl { breakpoints } => {
                let k = breakpoints.partition_point(|&(x, _)| x <= t);
                // k ≥ 1 because the first abscissa is 0.
                let seg = k.min(breakpoints.len() - 1).max(1);
                let (t0, v0) = breakpoints[seg - 1];
                let (t1, v1) = breakpoints[seg];
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
        }
    }

    pub fn slopes(&self) -> Option<Vec<f64>> {
        match self {
            ComparisonFunction::Pwl { breakpoints } => {
                Some(breakpoints.windows(2).map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0)).collect())
            }
            _ => None,
        }
    }
}

/// Outcome of a successful axiom check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub grid_points: usize,
    pub checked: Vec<Axiom>,
    /// `φ(t)/t` at the smallest positive grid points. Informational only: the
    /// limit at `0⁺` has no finite test.
    pub ratio_near_zero: Vec<(f64, f64)>,
}

/// Checks the comparison-function axioms on a sorted, non-negative grid.
pub fn validate_comparison(phi: &ComparisonFunction, grid: &[f64]) -> Result<ComparisonReport, ComparisonError> {
    if grid.iter().any(|&t| t < 0.0 || !t.is_finite()) || grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(ComparisonError::InvalidParameter("grid must be sorted, finite and non-negative".into()));
    }
    let violation = |axiom, witness: Vec<f64>| Err(ComparisonError::AxiomViolation { axiom, witness });
    let mut checked = Vec::new();

    if let Some(slopes) = phi.slopes() {
        if let Some(k) = slopes.windows(2).position(|w| w[1] > w[0] + TOL) {
            return violation(Axiom::Concave, vec![slopes[k], slopes[k + 1]]);
        }
        checked.push(Axiom::Concave);
    }

    if phi.value(0.0).abs() > TOL {
        return violation(Axiom::ZeroAtOrigin, vec![0.0, phi.value(0.0)]);
    }
    checked.push(Axiom::ZeroAtOrigin);

    let values: Vec<f64> = grid.iter().map(|&t| phi.value(t)).collect();
    for k in 1..grid.len() {
        if values[k] < values[k - 1] - TOL {
            return violation(Axiom::NonDecreasing, vec![grid[k - 1], grid[k]]);
        }
    }
    checked.push(Axiom::NonDecreasing);

    for (&t, &v) in grid.iter().zip(&values) {
        if t > 0.0 && v <= 0.0 {
            return violation(Axiom::Positive, vec![t]);
        }
    }
    checked.push(Axiom::Positive);

    let positive: Vec<(f64, f64)> = grid.iter().zip(&values).filter(|(t, _)| **t > 0.0).map(|(&t, &v)| (t, v / t)).collect();
    for w in positive.windows(2) {
        if w[1].1 > w[0].1 + TOL {
            return violation(Axiom::RatioNonIncreasing, vec![w[0].0, w[1].0]);
        }
    }
    checked.push(Axiom::RatioNonIncreasing);

    for (i, &t) in grid.iter().enumerate() {
        for &s in &grid[i..] {
            if phi.value(t + s) > values[i] + phi.value(s) + TOL {
                return violation(Axiom::SubAdditive, vec![t, s]);
            }
        }
    }
    checked.push(Axiom::SubAdditive);

    Ok(ComparisonReport { grid_points: grid.len(), checked, ratio_near_zero: positive.into_iter().take(4).collect() })
}

/// 1025 Chebyshev-like points on `[0, d_max]` plus every breakpoint inside it.
pub fn default_grid(phi: &ComparisonFunction, d_max: f64) -> Vec<f64> {
    const N: usize = 1025;
    let mut grid: Vec<f64> = (0..N)
        .map(|k| 0.5 * d_max * (1.0 - (std::f64::consts::PI * k as f64 / (N - 1) as f64).cos()))
        .collect();
    if let ComparisonFunction::Pwl { breakpoints } = phi {
        grid.extend(breakpoints.iter().map(|b| b.0).filter(|&t| t <= d_max));
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// The space with distance `φ ∘ d`, re-validated.
pub fn induced_metric(space: &FiniteMetricSpace, phi: &ComparisonFunction) -> Result<FiniteMetricSpace, ComparisonError> {
    Ok(FiniteMetricSpace::from_fn(space.len(), |i, j| phi.value(space.d(i, j)))?)
}

/// Radius found by [`modulus_radius`], with the values it achieves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulusRadius {
    pub radius: f64,
    /// `φ(r)`.
    pub value: f64,
    /// `sup |φ(t) − φ(s)|` over `t, s ∈ [0, D]`, `|t − s| ≤ 2r`.
    pub oscillation: f64,
}

/// Largest `r ≤ D/2` (to bisection precision) with `φ(r) ≤ bound` and
/// `|φ(t) − φ(s)| ≤ bound` whenever `t, s ∈ [0, D]`, `|t − s| ≤ 2r`.
///
/// For concave non-decreasing `φ` with `φ(0) = 0` the increments over windows
/// of width `w` peak at the origin, so the oscillation is `φ(min(2r, D))`.
pub fn modulus_radius(phi: &ComparisonFunction, d_max: f64, bound: f64) -> Result<ModulusRadius, ComparisonError> {
    if !(d_max > 0.0 && d_max.is_finite()) {
        return Err(ComparisonError::InvalidParameter(format!("domain bound {d_max} must be positive")));
    }
    if !(bound > 0.0 && bound.is_finite()) {
        return Err(ComparisonError::InvalidParameter(format!("oscillation bound {bound} must be positive")));
    }
    let osc = |r: f64| phi.value((2.0 * r).min(d_max));
    let feasible = |r: f64| osc(r) <= bound && phi.value(r) <= bound;
    let finish = |r: f64| Ok(ModulusRadius { radius: r, value: phi.value(r), oscillation: osc(r) });

    let cap = 0.5 * d_max;
    if feasible(cap) {
        return finish(cap);
    }
    let mut hi = cap;
    let mut lo = 0.5 * cap;
    while !feasible(lo) {
        hi = lo;
        lo *= 0.5;
        if lo < f64::MIN_POSITIVE {
            return Err(ComparisonError::InvalidParameter("no positive radius found".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    finish(lo)
}
