//! Checkers for each compactness condition against a supplied cover, and
//! synthesizers that build those covers by following the constructive
//! arguments.
//!
//! Every checker returns a [`ConditionReport`] whose verdict is `pass` exactly
//! when `achieved ≤ eps + TOL`. Synthesizers re-check their own output and fail
//! with [`ConditionError::PostconditionFailed`] rather than return an unsound
//! cover.

mod check;
mod synth;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::comparison::{ComparisonError, ComparisonFunction};
use crate::family::{FamilyError, FunctionFamily, NormKind};
use crate::metric::{Cover, MetricError, Pair, PairCover};
use crate::TOL;

pub use check::*;
pub use synth::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "equinormed")]
    Equinormed,
    B,
    DS,
    #[serde(rename = "equicontinuity")]
    Equicontinuity,
    L,
    LDS,
    #[serde(rename = "lambda")]
    Lambda,
    #[serde(rename = "uniform_local_flatness")]
    UniformLocalFlatness,
}

impl Condition {
    pub const ALL: [Condition; 8] = [
        Condition::Equinormed,
        Condition::B,
        Condition::DS,
        Condition::Equicontinuity,
        Condition::L,
        Condition::LDS,
        Condition::Lambda,
        Condition::UniformLocalFlatness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Equinormed => "equinormed",
            Condition::B => "B",
            Condition::DS => "DS",
            Condition::Equicontinuity => "equicontinuity",
            Condition::L => "L",
            Condition::LDS => "LDS",
            Condition::Lambda => "lambda",
            Condition::UniformLocalFlatness => "uniform_local_flatness",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Condition {
    type Err = ConditionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "equinormed" => Ok(Condition::Equinormed),
            "b" => Ok(Condition::B),
            "ds" => Ok(Condition::DS),
            "equicontinuity" => Ok(Condition::Equicontinuity),
            "l" => Ok(Condition::L),
            "lds" => Ok(Condition::LDS),
            "lambda" => Ok(Condition::Lambda),
            "flatness" | "uniform_local_flatness" => Ok(Condition::UniformLocalFlatness),
            _ => Err(ConditionError::InvalidParameter(format!("unknown condition `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bound(achieved: f64, eps: f64) -> Self {
        if achieved <= eps + TOL {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// Which side of the tube sandwich failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// A pair of the `δ`-tube is missing from the cover.
    Inner,
    /// A covered pair lies outside the `1/n`-tube.
    Outer,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Inner => "inner",
            Side::Outer => "outer",
        })
    }
}

/// The cover behind a pass, or the tuple that realizes the worst oscillation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Cover { cover: Cover },
    Lambda(LambdaWitness),
    Subset { subset: Vec<usize> },
    /// Member whose sup norm exceeds its subset semi-norm by the most.
    Member { member: usize, point: usize },
    Points { part: Option<usize>, x: usize, y: usize, member: usize },
    Pairs { part: usize, p: Pair, q: Pair, member: usize },
}

/// A radius and a pair cover for the localized condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaWitness {
    pub delta: f64,
    pub n: u32,
    pub cover: PairCover,
}

/// A finite subset `Y` together with the level at which it witnesses equinormedness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquinormWitness {
    pub subset: Vec<usize>,
    pub eps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub eps: f64,
    pub verdict: Verdict,
    pub achieved: f64,
    /// Largest raw quotient seen, reported by the quotient-based checkers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub peak: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    fn new(condition: Condition, eps: f64, achieved: f64, witness: Option<Witness>, on_pass: Option<Witness>) -> Self {
        let verdict = Verdict::from_bound(achieved, eps);
        let witness = if verdict.passed() { on_pass.or(witness) } else { witness };
        ConditionReport { condition, eps, verdict, achieved, peak: None, witness }
    }

    fn with_peak(mut self, peak: f64) -> Self {
        self.peak = Some(peak);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConditionError {
    #[error("subset is empty")]
    EmptySubset,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("space has fewer than two points")]
    DegenerateSpace,
    #[error("cover lives on the wrong ambient set: expected {0}")]
    AmbientMismatch(&'static str),
    #[error("{side} tube inclusion fails at pair ({}, {})", pair.0, pair.1)]
    SandwichViolation { side: Side, pair: Pair },
    #[error("precondition {condition} fails: achieved {achieved} > {eps}")]
    PreconditionFailed { condition: Condition, eps: f64, achieved: f64 },
    #[error("postcondition {condition} fails: achieved {achieved} > {eps}")]
    PostconditionFailed { condition: Condition, eps: f64, achieved: f64 },
    #[error("difference family is not equinormed at {eps} on the subset (achieved {achieved})")]
    EquinormPreconditionFailed { eps: f64, achieved: f64 },
    #[error("supplied net misses the value {0:?}")]
    NetPreconditionFailed(Vec<f64>),
    #[error("member {member} is at distance {distance} from every net member")]
    NotANet { member: usize, distance: f64 },
    #[error("no pair lies outside the tube of radius {0}")]
    EmptyTilde(f64),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Comparison(#[from] ComparisonError),
}

fn require_eps(eps: f64) -> Result<(), ConditionError> {
    if eps >= 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(ConditionError::InvalidParameter(format!("eps = {eps} must be finite and non-negative")))
    }
}

fn require_positive(name: &str, v: f64) -> Result<(), ConditionError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ConditionError::InvalidParameter(format!("{name} = {v} must be finite and positive")))
    }
}

/// The four oscillation flavours behind (B), (DS), (L) and (LDS).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OscillationKind {
    B,
    DS,
    L,
    LDS,
}

impl OscillationKind {
    pub fn on_pairs(self) -> bool {
        matches!(self, OscillationKind::L | OscillationKind::LDS)
    }

    pub fn condition(self) -> Condition {
        match self {
            OscillationKind::B => Condition::B,
            OscillationKind::DS => Condition::DS,
            OscillationKind::L => Condition::L,
            OscillationKind::LDS => Condition::LDS,
        }
    }
}

impl FromStr for OscillationKind {
    type Err = ConditionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "b" => Ok(OscillationKind::B),
            "ds" => Ok(OscillationKind::DS),
            "l" => Ok(OscillationKind::L),
            "lds" => Ok(OscillationKind::LDS),
            _ => Err(ConditionError::InvalidParameter(format!("unknown oscillation kind `{s}`"))),
        }
    }
}

/// Per-member values on a list of ambient elements (points or pairs).
///
/// Scalar profiles hold norms or quotients, vector profiles hold values or
/// de Leeuw vectors.
#[derive(Debug, Clone)]
pub struct Profile {
    members: usize,
    elems: usize,
    dim: usize,
    scalar: bool,
    norm: NormKind,
    data: Vec<f64>,
}

/// Worst oscillation inside one part: value, the two element indices, member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartOscillation {
    pub value: f64,
    pub a: usize,
    pub b: usize,
    pub member: usize,
}

impl Profile {
    /// Profile of `kind` over the points of the domain, or over `pairs` for
    /// the pair kinds.
    pub fn build(
        family: &FunctionFamily,
        kind: OscillationKind,
        phi: Option<&ComparisonFunction>,
        pairs: &[Pair],
    ) -> Result<Self, ConditionError> {
        let norm = family.norm_kind();
        let members = family.len();
        let dim = family.dim();
        let phi = || phi.ok_or_else(|| ConditionError::InvalidParameter("comparison function required".into()));
        let mut data = Vec::new();
        let (elems, scalar, dim) = match kind {
            OscillationKind::B => {
                let n = family.points();
                for f in family.members() {
                    data.extend((0..n).map(|x| family.norm_at(f, x)));
                }
                (n, true, 1)
            }
            OscillationKind::DS => {
                let n = family.points();
                for f in family.members() {
                    for x in 0..n {
                        data.extend_from_slice(f.at(x));
                    }
                }
                (n, false, dim)
            }
            OscillationKind::L => {
                let phi = phi()?;
                for f in family.members() {
                    data.extend(pairs.iter().map(|&(x, y)| family.quotient(f, phi, x, y)));
                }
                (pairs.len(), true, 1)
            }
            OscillationKind::LDS => {
                let phi = phi()?;
                for f in family.members() {
                    let t = family.deleeuw_on(f, phi, pairs);
                    for k in 0..t.len() {
                        data.extend_from_slice(t.at(k));
                    }
                }
                (pairs.len(), false, dim)
            }
        };
        Ok(Profile { members, elems, dim, scalar, norm, data })
    }

    pub fn members(&self) -> usize {
        self.members
    }

    pub fn elems(&self) -> usize {
        self.elems
    }

    #[inline]
    fn slot(&self, member: usize, e: usize) -> &[f64] {
        let start = (member * self.elems + e) * self.dim;
        &self.data[start..start + self.dim]
    }

    /// Scalar value of a scalar profile.
    #[inline]
    pub fn value(&self, member: usize, e: usize) -> f64 {
        self.slot(member, e)[0]
    }

    #[inline]
    pub fn cost(&self, member: usize, a: usize, b: usize) -> f64 {
        if self.scalar {
            (self.value(member, a) - self.value(member, b)).abs()
        } else {
            self.norm.dist(self.slot(member, a), self.slot(member, b))
        }
    }

    /// `max_f cost_f(a, b)`.
    pub fn max_cost(&self, a: usize, b: usize) -> f64 {
        (0..self.members).map(|m| self.cost(m, a, b)).fold(0.0, f64::max)
    }

    /// Largest oscillation over members within a part; ties keep the first
    /// member, then the first element pair found.
    pub fn part_oscillation(&self, part: &[usize]) -> PartOscillation {
        let first = part.first().copied().unwrap_or(0);
        let mut best = PartOscillation { value: 0.0, a: first, b: first, member: 0 };
        for member in 0..self.members {
            if self.scalar {
                let (mut lo, mut hi) = (first, first);
                for &e in part {
                    if self.value(member, e) < self.value(member, lo) {
                        lo = e;
                    }
                    if self.value(member, e) > self.value(member, hi) {
                        hi = e;
                    }
                }
                let v = self.value(member, hi) - self.value(member, lo);
                if v > best.value {
                    best = PartOscillation { value: v, a: hi, b: lo, member };
                }
            } else {
                for (i, &a) in part.iter().enumerate() {
                    for &b in &part[i + 1..] {
                        let v = self.cost(member, a, b);
                        if v > best.value {
                            best = PartOscillation { value: v, a, b, member };
                        }
                    }
                }
            }
        }
        best
    }

    /// Largest scalar value (for scalar profiles).
    pub fn peak(&self) -> f64 {
        if self.scalar {
            self.data.iter().copied().fold(0.0, f64::max)
        } else {
            (0..self.members)
                .flat_map(|m| (0..self.elems).map(move |e| (m, e)))
                .map(|(m, e)| self.norm.norm(self.slot(m, e)))
                .fold(0.0, f64::max)
        }
    }
}
