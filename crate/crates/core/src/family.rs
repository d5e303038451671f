//! Families of vector-valued maps sampled on a finite metric space, their
//! norms, and the de Leeuw transform.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::comparison::ComparisonFunction;
use crate::metric::{FiniteMetricSpace, Pair};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("family has no members")]
    Empty,
    #[error("member {member} has {len} samples, domain has {n} points")]
    LengthMismatch { member: usize, len: usize, n: usize },
    #[error("member {member} at point {point} has dimension {dim}, expected {expected}")]
    DimensionMismatch { member: usize, point: usize, dim: usize, expected: usize },
    #[error("non-finite value in member {member} at point {point}")]
    NonFinite { member: usize, point: usize },
    #[error("base point {0} outside the domain")]
    BaseOutOfRange(usize),
    #[error("subset is empty")]
    EmptySubset,
    #[error("point {0} outside the domain")]
    PointOutOfRange(usize),
    #[error("member index {0} outside the family")]
    MemberOutOfRange(usize),
    #[error("space has fewer than two points")]
    DegenerateSpace,
}

/// Norm on the codomain `ℝᵈ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    Sup,
    Euclid,
    L1,
}

impl NormKind {
    #[inline]
    pub fn norm(self, v: &[f64]) -> f64 {
        match self {
            NormKind::Sup => v.iter().fold(0.0, |m, x| m.max(x.abs())),
            NormKind::Euclid => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            NormKind::L1 => v.iter().map(|x| x.abs()).sum(),
        }
    }

    /// `‖a − b‖` without allocating.
    #[inline]
    pub fn dist(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(x, y)| x - y);
        match self {
            NormKind::Sup => diffs.fold(0.0, |m, x| m.max(x.abs())),
            NormKind::Euclid => diffs.map(|x| x * x).sum::<f64>().sqrt(),
            NormKind::L1 => diffs.map(f64::abs).sum(),
        }
    }
}

/// One map `X → ℝᵈ`, stored point-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    dim: usize,
    data: Vec<f64>,
}

impl SampledFunction {
    /// Builds from one vector per point; all vectors must share a dimension.
    pub fn new(values: Vec<Vec<f64>>) -> Result<Self, FamilyError> {
        let dim = values.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(values.len() * dim);
        for (point, v) in values.into_iter().enumerate() {
            if v.len() != dim {
                return Err(FamilyError::DimensionMismatch { member: 0, point, dim: v.len(), expected: dim });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(FamilyError::NonFinite { member: 0, point });
            }
            data.extend(v);
        }
        Ok(SampledFunction { dim, data })
    }

    /// Scalar-valued map.
    pub fn scalar(values: &[f64]) -> Result<Self, FamilyError> {
        Self::new(values.iter().map(|&v| vec![v]).collect())
    }

    pub fn from_fn(n: usize, dim: usize, f: impl FnMut(usize) -> Vec<f64>) -> Result<Self, FamilyError> {
        let values: Vec<Vec<f64>> = (0..n).map(f).collect();
        if n == 0 {
            return Ok(SampledFunction { dim, data: Vec::new() });
        }
        Self::new(values)
    }

    pub fn constant(n: usize, value: &[f64]) -> Self {
        SampledFunction { dim: value.len(), data: value.iter().copied().cycle().take(n * value.len()).collect() }
    }

    pub fn zero(n: usize, dim: usize) -> Self {
        SampledFunction { dim, data: vec![0.0; n * dim] }
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn at(&self, x: usize) -> &[f64] {
        &self.data[x * self.dim..(x + 1) * self.dim]
    }

    pub fn values(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim.max(1)).map(<[f64]>::to_vec).collect()
    }

    pub fn sub(&self, other: &SampledFunction) -> SampledFunction {
        SampledFunction { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn add(&self, other: &SampledFunction) -> SampledFunction {
        SampledFunction { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, lambda: f64) -> SampledFunction {
        SampledFunction { dim: self.dim, data: self.data.iter().map(|a| lambda * a).collect() }
    }
}

/// A map on a set of off-diagonal pairs, e.g. a de Leeuw transform.
#[derive(Debug, Clone, PartialEq)]
pub struct PairFunction {
    pub pairs: Vec<Pair>,
    dim: usize,
    data: Vec<f64>,
}

impl PairFunction {
    #[inline]
    pub fn at(&self, k: usize) -> &[f64] {
        &self.data[k * self.dim..(k + 1) * self.dim]
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn sup_norm(&self, norm: NormKind) -> f64 {
        (0..self.len()).map(|k| norm.norm(self.at(k))).fold(0.0, f64::max)
    }

    /// `max_k ‖self(k) − other(k)‖`; both must live on the same pairs.
    pub fn sup_dist(&self, other: &PairFunction, norm: NormKind) -> f64 {
        (0..self.len()).map(|k| norm.dist(self.at(k), other.at(k))).fold(0.0, f64::max)
    }
}

/// A non-empty family of maps sharing a domain, codomain dimension and norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FamilyJson", into = "FamilyJson")]
pub struct FunctionFamily {
    domain: FiniteMetricSpace,
    norm: NormKind,
    base: usize,
    members: Vec<SampledFunction>,
    phi: Option<ComparisonFunction>,
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    domain: FiniteMetricSpace,
    norm: NormKind,
    base: usize,
    members: Vec<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phi: Option<ComparisonFunction>,
}

impl TryFrom<FamilyJson> for FunctionFamily {
    type Error = FamilyError;

    fn try_from(raw: FamilyJson) -> Result<Self, Self::Error> {
        let n = raw.domain.len();
        let mut members = Vec::with_capacity(raw.members.len());
        for (k, m) in raw.members.into_iter().enumerate() {
            if m.len() != n {
                return Err(FamilyError::LengthMismatch { member: k, len: m.len(), n });
            }
            members.push(SampledFunction::new(m).map_err(|e| with_member(e, k))?);
        }
        let fam = FunctionFamily::new(raw.domain, raw.norm, raw.base, members)?;
        Ok(match raw.phi {
            Some(phi) => fam.with_phi(phi),
            None => fam,
        })
    }
}

impl From<FunctionFamily> for FamilyJson {
    fn from(f: FunctionFamily) -> Self {
        FamilyJson {
            members: f.members.iter().map(SampledFunction::values).collect(),
            domain: f.domain,
            norm: f.norm,
            base: f.base,
            phi: f.phi,
        }
    }
}

fn with_member(e: FamilyError, member: usize) -> FamilyError {
    match e {
        FamilyError::DimensionMismatch { point, dim, expected, .. } => {
            FamilyError::DimensionMismatch { member, point, dim, expected }
        }
        FamilyError::NonFinite { point, .. } => FamilyError::NonFinite { member, point },
        other => other,
    }
}

impl FunctionFamily {
    pub fn new(
        domain: FiniteMetricSpace,
        norm: NormKind,
        base: usize,
        members: Vec<SampledFunction>,
    ) -> Result<Self, FamilyError> {
        let n = domain.len();
        let first = members.first().ok_or(FamilyError::Empty)?;
        let dim = first.dim();
        for (k, m) in members.iter().enumerate() {
            if m.len() != n {
                return Err(FamilyError::LengthMismatch { member: k, len: m.len(), n });
            }
            if m.dim() != dim {
                return Err(FamilyError::DimensionMismatch { member: k, point: 0, dim: m.dim(), expected: dim });
            }
        }
        if base >= n {
            return Err(FamilyError::BaseOutOfRange(base));
        }
        Ok(FunctionFamily { domain, norm, base, members, phi: None })
    }

    pub fn with_phi(mut self, phi: ComparisonFunction) -> Self {
        self.phi = Some(phi);
        self
    }

    pub fn domain(&self) -> &FiniteMetricSpace {
        &self.domain
    }

    pub fn norm_kind(&self) -> NormKind {
        self.norm
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn phi(&self) -> Option<&ComparisonFunction> {
        self.phi.as_ref()
    }

    pub fn members(&self) -> &[SampledFunction] {
        &self.members
    }

    pub fn member(&self, k: usize) -> &SampledFunction {
        &self.members[k]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.members[0].dim()
    }

    pub fn points(&self) -> usize {
        self.domain.len()
    }

    /// Same domain and norm, new members.
    pub fn with_members(&self, members: Vec<SampledFunction>) -> Result<Self, FamilyError> {
        let mut fam = FunctionFamily::new(self.domain.clone(), self.norm, self.base, members)?;
        fam.phi = self.phi.clone();
        Ok(fam)
    }

    pub fn subfamily(&self, indices: &[usize]) -> Result<Self, FamilyError> {
        let members = indices
            .iter()
            .map(|&k| self.members.get(k).cloned().ok_or(FamilyError::MemberOutOfRange(k)))
            .collect::<Result<Vec<_>, _>>()?;
        self.with_members(members)
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        let mut fam = self.clone();
        fam.members = self.members.iter().map(|m| m.scale(lambda)).collect();
        fam
    }

    /// All `m²` pointwise differences `a − b`, `a` outer, `b` inner;
    /// member `i·m + j` is `members[i] − members[j]`. Duplicates are kept.
    pub fn difference_family(&self) -> Self {
        let members = self.members.iter().flat_map(|a| self.members.iter().map(move |b| a.sub(b))).collect();
        let mut fam = self.clone();
        fam.members = members;
        fam
    }

    /// `‖f(x)‖`.
    #[inline]
    pub fn norm_at(&self, f: &SampledFunction, x: usize) -> f64 {
        self.norm.norm(f.at(x))
    }

    /// `‖f(x) − f(y)‖`.
    #[inline]
    pub fn increment(&self, f: &SampledFunction, x: usize, y: usize) -> f64 {
        self.norm.dist(f.at(x), f.at(y))
    }

    /// `‖f(x) − f(y)‖ / φ(d(x, y))` for `x ≠ y`.
    #[inline]
    pub fn quotient(&self, f: &SampledFunction, phi: &ComparisonFunction, x: usize, y: usize) -> f64 {
        self.increment(f, x, y) / phi.value(self.domain.d(x, y))
    }

    pub fn sup_norm(&self, f: &SampledFunction) -> f64 {
        (0..self.points()).map(|x| self.norm_at(f, x)).fold(0.0, f64::max)
    }

    /// `max_{x ∈ Y} ‖f(x)‖`.
    pub fn seminorm(&self, f: &SampledFunction, subset: &[usize]) -> Result<f64, FamilyError> {
        if subset.is_empty() {
            return Err(FamilyError::EmptySubset);
        }
        if let Some(&x) = subset.iter().find(|&&x| x >= self.points()) {
            return Err(FamilyError::PointOutOfRange(x));
        }
        Ok(subset.iter().map(|&x| self.norm_at(f, x)).fold(0.0, f64::max))
    }

    /// `|f|_φ`: the largest difference quotient over ordered pairs.
    pub fn lip_seminorm(&self, f: &SampledFunction, phi: &ComparisonFunction) -> Result<f64, FamilyError> {
        let n = self.points();
        if n < 2 {
            return Err(FamilyError::DegenerateSpace);
        }
        let mut best = 0.0f64;
        for x in 0..n {
            for y in (x + 1)..n {
                best = best.max(self.quotient(f, phi, x, y));
            }
        }
        Ok(best)
    }

    /// `‖f(x_*)‖ + |f|_φ`.
    pub fn lip_norm(&self, f: &SampledFunction, phi: &ComparisonFunction) -> Result<f64, FamilyError> {
        Ok(self.norm_at(f, self.base) + self.lip_seminorm(f, phi)?)
    }

    /// `‖f‖_∞ + |f|_φ`.
    pub fn blip_norm(&self, f: &SampledFunction, phi: &ComparisonFunction) -> Result<f64, FamilyError> {
        Ok(self.sup_norm(f) + self.lip_seminorm(f, phi)?)
    }

    /// Distinct values of the members at `x`, in member order.
    pub fn section(&self, x: usize) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for m in &self.members {
            let v = m.at(x);
            if !out.iter().any(|u| u.as_slice() == v) {
                out.push(v.to_vec());
            }
        }
        out
    }

    /// Distinct values over all points, in point-then-member order.
    pub fn image(&self) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for x in 0..self.points() {
            for v in self.section(x) {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    /// `Φ(f)(x, y) = (f(x) − f(y)) / φ(d(x, y))` on every off-diagonal pair.
    pub fn deleeuw(&self, f: &SampledFunction, phi: &ComparisonFunction) -> Result<PairFunction, FamilyError> {
        let pairs = self.domain.off_diagonal().map_err(|_| FamilyError::DegenerateSpace)?.pairs().to_vec();
        Ok(self.deleeuw_on(f, phi, &pairs))
    }

    /// De Leeuw transform restricted to the given pairs.
    pub fn deleeuw_on(&self, f: &SampledFunction, phi: &ComparisonFunction, pairs: &[Pair]) -> PairFunction {
        let dim = f.dim();
        let mut data = Vec::with_capacity(pairs.len() * dim);
        for &(x, y) in pairs {
            let w = phi.value(self.domain.d(x, y));
            data.extend(f.at(x).iter().zip(f.at(y)).map(|(a, b)| (a - b) / w));
        }
        PairFunction { pairs: pairs.to_vec(), dim, data }
    }

    /// `T(f) = (f(x_*), Φ(f))`.
    pub fn embed(&self, f: &SampledFunction, phi: &ComparisonFunction) -> Result<(Vec<f64>, PairFunction), FamilyError> {
        Ok((f.at(self.base).to_vec(), self.deleeuw(f, phi)?))
    }
}
