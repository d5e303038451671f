//! Finite metric spaces, the off-diagonal pair space, diagonal tubes, ε-nets
//! and covers.
//!
//! Open balls use `d < r`, closed balls use `d ≤ r`. Distances themselves are
//! never perturbed; the slack [`TOL`] only enters axiom checks.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::TOL;

/// An ordered pair of point indices.
pub type Pair = (usize, usize);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("distance matrix is empty")]
    Empty,
    #[error("distance matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("non-finite distance at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("nonzero diagonal entry d({0},{0})")]
    NonzeroDiagonal(usize),
    #[error("negative distance d({0},{1})")]
    NegativeDistance(usize, usize),
    #[error("distinct points {0} and {1} at distance zero")]
    IdentityViolation(usize, usize),
    #[error("asymmetric distances d({0},{1}) != d({1},{0})")]
    Asymmetry(usize, usize),
    #[error("triangle inequality fails: d({0},{1}) > d({0},{2}) + d({2},{1})")]
    TriangleViolation(usize, usize, usize),
    #[error("space has fewer than two points")]
    DegenerateSpace,
    #[error("diagonal point {0} is not covered by any ball")]
    DiagonalNotCovered(usize),
    #[error("cover part {0} is empty")]
    EmptyPart(usize),
    #[error("cover part {part} references index {index} outside the ambient set")]
    OutOfRange { part: usize, index: usize },
    #[error("point {0} is not covered")]
    UncoveredPoint(usize),
    #[error("pair ({0}, {1}) is not covered")]
    UncoveredPair(usize, usize),
    #[error("pair ({0}, {0}) lies on the diagonal")]
    DiagonalPair(usize),
}

/// A validated finite metric space on the points `0..n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceJson", into = "SpaceJson")]
pub struct FiniteMetricSpace {
    n: usize,
    dist: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct SpaceJson {
    points: usize,
    dist: Vec<Vec<f64>>,
}

impl TryFrom<SpaceJson> for FiniteMetricSpace {
    type Error = MetricError;

    fn try_from(raw: SpaceJson) -> Result<Self, Self::Error> {
        if raw.points != raw.dist.len() {
            return Err(MetricError::NotSquare { row: raw.dist.len(), len: raw.dist.len(), n: raw.points });
        }
        validate_metric(&raw.dist)
    }
}

impl From<FiniteMetricSpace> for SpaceJson {
    fn from(space: FiniteMetricSpace) -> Self {
        SpaceJson { points: space.n, dist: space.matrix() }
    }
}

/// Validates a distance matrix, reporting the first violated axiom.
pub fn validate_metric(matrix: &[Vec<f64>]) -> Result<FiniteMetricSpace, MetricError> {
    let n = matrix.len();
    if n == 0 {
        return Err(MetricError::Empty);
    }
    for (row, r) in matrix.iter().enumerate() {
        if r.len() != n {
            return Err(MetricError::NotSquare { row, len: r.len(), n });
        }
    }
    let d = |i: usize, j: usize| matrix[i][j];
    for i in 0..n {
        for j in 0..n {
            if !d(i, j).is_finite() {
                return Err(MetricError::NonFinite(i, j));
            }
        }
    }
    for i in 0..n {
        if d(i, i).abs() > TOL {
            return Err(MetricError::NonzeroDiagonal(i));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if d(i, j) < -TOL {
                return Err(MetricError::NegativeDistance(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && d(i, j) <= 0.0 {
                return Err(MetricError::IdentityViolation(i, j));
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (d(i, j) - d(j, i)).abs() > TOL {
                return Err(MetricError::Asymmetry(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for k in 0..n {
                if k != i && k != j && d(i, j) > d(i, k) + d(k, j) + TOL {
                    return Err(MetricError::TriangleViolation(i, j, k));
                }
            }
        }
    }
    let mut dist = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // Symmetrize so downstream code sees an exactly symmetric matrix.
            dist.push(if i == j { 0.0 } else { 0.5 * (d(i, j) + d(j, i)) });
        }
    }
    Ok(FiniteMetricSpace { n, dist })
}

impl FiniteMetricSpace {
    pub fn new(matrix: &[Vec<f64>]) -> Result<Self, MetricError> {
        validate_metric(matrix)
    }

    /// Builds and validates the space whose distance is `f(i, j)`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self, MetricError> {
        let matrix: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 0.0 } else { f(i, j) }).collect()).collect();
        validate_metric(&matrix)
    }

    /// Points on the real line with `d(x, y) = |x - y|`.
    pub fn from_line(coords: &[f64]) -> Result<Self, MetricError> {
        Self::from_fn(coords.len(), |i, j| (coords[i] - coords[j]).abs())
    }

    /// Points in ℝᵏ with the Euclidean distance.
    pub fn from_euclidean(points: &[Vec<f64>]) -> Result<Self, MetricError> {
        Self::from_fn(points.len(), |i, j| {
            points[i].iter().zip(&points[j]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        self.dist.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest distance between distinct points, `None` for a one-point space.
    pub fn min_gap(&self) -> Option<f64> {
        self.off_diagonal_indices().map(|(i, j)| self.d(i, j)).min_by(f64::total_cmp)
    }

    /// Distinct positive distances in increasing order.
    pub fn distinct_distances(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.off_diagonal_indices().map(|(i, j)| self.d(i, j)).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    /// Off-diagonal pairs in row-major order.
    pub fn off_diagonal_indices(&self) -> impl Iterator<Item = Pair> + '_ {
        (0..self.n).flat_map(move |i| (0..self.n).filter(move |&j| j != i).map(move |j| (i, j)))
    }

    pub fn open_ball(&self, center: usize, radius: f64) -> Vec<usize> {
        (0..self.n).filter(|&x| self.d(center, x) < radius).collect()
    }

    pub fn closed_ball(&self, center: usize, radius: f64) -> Vec<usize> {
        (0..self.n).filter(|&x| self.d(center, x) <= radius).collect()
    }

    /// Sup-metric distance between two pairs.
    #[inline]
    pub fn dist_inf(&self, p: Pair, q: Pair) -> f64 {
        self.d(p.0, q.0).max(self.d(p.1, q.1))
    }

    /// `min_z max(d(a,z), d(b,z))`: the pair `(a,b)` lies in `tube(δ)` iff this is `< δ`.
    pub fn tube_depth(&self, a: usize, b: usize) -> f64 {
        (0..self.n).map(|z| self.d(a, z).max(self.d(b, z))).fold(f64::INFINITY, f64::min)
    }

    pub fn in_tube(&self, a: usize, b: usize, delta: f64) -> bool {
        (0..self.n).any(|z| self.d(a, z) < delta && self.d(b, z) < delta)
    }

    /// All pairs `(i, j)` (diagonal included) with a common point `z` such that
    /// `d(i,z) < δ` and `d(j,z) < δ`, in row-major order.
    pub fn tube(&self, delta: f64) -> Vec<Pair> {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.in_tube(i, j, delta))
            .collect()
    }

    /// Off-diagonal pairs outside `tube(δ)`.
    pub fn tube_complement(&self, delta: f64) -> Vec<Pair> {
        self.off_diagonal_indices().filter(|&(i, j)| !self.in_tube(i, j, delta)).collect()
    }

    pub fn off_diagonal(&self) -> Result<PairSpace<'_>, MetricError> {
        if self.n < 2 {
            return Err(MetricError::DegenerateSpace);
        }
        Ok(PairSpace { base: self, pairs: self.off_diagonal_indices().collect() })
    }
}

/// The off-diagonal part of `X × X` with the maximum metric.
#[derive(Debug, Clone)]
pub struct PairSpace<'a> {
    base: &'a FiniteMetricSpace,
    pairs: Vec<Pair>,
}

impl<'a> PairSpace<'a> {
    pub fn base(&self) -> &'a FiniteMetricSpace {
        self.base
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Position of `(i, j)` in the canonical row-major enumeration.
    pub fn index_of(&self, (i, j): Pair) -> Option<usize> {
        let n = self.base.len();
        if i >= n || j >= n || i == j {
            return None;
        }
        Some(i * (n - 1) + if j > i { j - 1 } else { j })
    }

    pub fn dist(&self, a: usize, b: usize) -> f64 {
        self.base.dist_inf(self.pairs[a], self.pairs[b])
    }
}

/// Greedy farthest-point ε-net over an abstract finite set: starts at element
/// 0 and keeps adding the element farthest from the current centers until
/// every element is within `eps` (closed balls). Ties go to the lowest index.
pub fn greedy_net(len: usize, dist: impl Fn(usize, usize) -> f64, eps: f64) -> Vec<usize> {
    if len == 0 {
        return Vec::new();
    }
    let mut centers = vec![0];
    let mut gap: Vec<f64> = (0..len).map(|x| dist(0, x)).collect();
    loop {
        let (far, worst) = gap
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, &g)| if g > best.1 { (i, g) } else { best });
        if worst <= eps {
            return centers;
        }
        centers.push(far);
        for (x, g) in gap.iter_mut().enumerate() {
            *g = g.min(dist(far, x));
        }
    }
}

/// Greedy farthest-point ε-net of the space (closed balls).
pub fn greedy_eps_net(space: &FiniteMetricSpace, eps: f64) -> Vec<usize> {
    greedy_net(space.len(), |a, b| space.d(a, b), eps)
}

/// Covers `0..len` by open balls of radius `r`: the lowest uncovered element
/// becomes the next center. Returns the centers.
pub fn greedy_open_centers(len: usize, dist: impl Fn(usize, usize) -> f64, radius: f64) -> Vec<usize> {
    let mut covered = vec![false; len];
    let mut centers = Vec::new();
    while let Some(c) = covered.iter().position(|&c| !c) {
        centers.push(c);
        for (x, cov) in covered.iter_mut().enumerate() {
            if dist(c, x) < radius {
                *cov = true;
            }
        }
        covered[c] = true;
    }
    centers
}

/// Largest admissible `δ` returned by [`max_tube_delta`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum TubeRadius {
    /// Every pair of `X × X` already lies in the ball union; any `δ` works.
    Unbounded,
    Bounded(f64),
}

impl TubeRadius {
    /// A concrete radius: `diam + 1` stands in for [`TubeRadius::Unbounded`].
    pub fn value(self, space: &FiniteMetricSpace) -> f64 {
        match self {
            TubeRadius::Unbounded => space.diameter() + 1.0,
            TubeRadius::Bounded(d) => d,
        }
    }
}

/// Diagonal cover by products of open balls `B(c, r) × B(c, r)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalBallCover {
    pub centers: Vec<usize>,
    pub radius: f64,
}

impl DiagonalBallCover {
    /// Greedy centers whose open balls of the given radius cover every point.
    pub fn greedy(space: &FiniteMetricSpace, radius: f64) -> Self {
        DiagonalBallCover { centers: greedy_open_centers(space.len(), |a, b| space.d(a, b), radius), radius }
    }

    pub fn contains(&self, space: &FiniteMetricSpace, (a, b): Pair) -> bool {
        self.centers.iter().any(|&c| space.d(c, a) < self.radius && space.d(c, b) < self.radius)
    }

    /// Index of the first ball product containing the pair.
    pub fn ball_of(&self, space: &FiniteMetricSpace, (a, b): Pair) -> Option<usize> {
        self.centers.iter().position(|&c| space.d(c, a) < self.radius && space.d(c, b) < self.radius)
    }
}

/// Candidate thresholds for δ-maximization: distances, half distances, the
/// extra radii, and midpoints between consecutive distances. Sorted, deduplicated.
pub fn delta_candidates(space: &FiniteMetricSpace, radii: &[f64]) -> Vec<f64> {
    let dists = space.distinct_distances();
    let mut c: Vec<f64> = Vec::with_capacity(dists.len() * 3 + radii.len());
    c.extend(dists.iter().copied());
    c.extend(dists.iter().map(|d| 0.5 * d));
    c.extend(dists.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    c.extend(radii.iter().copied().filter(|r| *r > 0.0));
    c.sort_by(f64::total_cmp);
    c.dedup();
    c
}

/// Largest candidate `δ` with `tube(δ) ⊆ ⋃ B(cᵢ,r) × B(cᵢ,r)`.
pub fn max_tube_delta(space: &FiniteMetricSpace, cover: &DiagonalBallCover) -> Result<TubeRadius, MetricError> {
    let n = space.len();
    if let Some(x) = (0..n).find(|&x| !cover.contains(space, (x, x))) {
        return Err(MetricError::DiagonalNotCovered(x));
    }
    // Pairs outside the union bound δ by their tube depth.
    let outside: Vec<f64> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&p| !cover.contains(space, p))
        .map(|(a, b)| space.tube_depth(a, b))
        .collect();
    if outside.is_empty() {
        return Ok(TubeRadius::Unbounded);
    }
    let admissible = |delta: f64| outside.iter().all(|&depth| depth >= delta);
    let best = delta_candidates(space, &[cover.radius]).into_iter().rev().find(|&c| admissible(c));
    // The minimal depth is itself a distance, hence always a candidate.
    let exact = outside.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(TubeRadius::Bounded(best.unwrap_or(exact)))
}

/// Largest candidate `δ` such that any two points at distance `≤ δ` share a
/// part of the cover. Positive for every cover of a space with two or more points.
pub fn lebesgue_delta(space: &FiniteMetricSpace, cover: &PointCover) -> f64 {
    let n = space.len();
    let membership = cover.membership(n);
    let shares = |x: usize, y: usize| membership[x].iter().any(|p| membership[y].contains(p));
    let bad = (0..n)
        .flat_map(|x| ((x + 1)..n).map(move |y| (x, y)))
        .filter(|&(x, y)| !shares(x, y))
        .map(|(x, y)| space.d(x, y))
        .fold(f64::INFINITY, f64::min);
    if bad.is_infinite() {
        return space.diameter();
    }
    space
        .distinct_distances()
        .into_iter()
        .flat_map(|d| [d, 0.5 * d])
        .filter(|&c| c < bad)
        .fold(0.0, f64::max)
}

/// A finite cover of the points of a space by index subsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCover {
    pub parts: Vec<Vec<usize>>,
}

impl PointCover {
    pub fn new(parts: Vec<Vec<usize>>) -> Self {
        PointCover { parts }
    }

    /// The single-part cover `{X}`.
    pub fn trivial(n: usize) -> Self {
        PointCover { parts: vec![(0..n).collect()] }
    }

    pub fn singletons(n: usize) -> Self {
        PointCover { parts: (0..n).map(|x| vec![x]).collect() }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn validate(&self, n: usize) -> Result<(), MetricError> {
        let mut seen = vec![false; n];
        for (k, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(MetricError::EmptyPart(k));
            }
            for &x in part {
                if x >= n {
                    return Err(MetricError::OutOfRange { part: k, index: x });
                }
                seen[x] = true;
            }
        }
        match seen.iter().position(|s| !s) {
            Some(x) => Err(MetricError::UncoveredPoint(x)),
            None => Ok(()),
        }
    }

    /// For each point, the parts that contain it.
    pub fn membership(&self, n: usize) -> Vec<Vec<usize>> {
        let mut m = vec![Vec::new(); n];
        for (k, part) in self.parts.iter().enumerate() {
            for &x in part {
                if x < n && m[x].last() != Some(&k) {
                    m[x].push(k);
                }
            }
        }
        m
    }
}

/// A finite family of sets of off-diagonal pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCover {
    pub parts: Vec<Vec<Pair>>,
}

impl PairCover {
    pub fn new(parts: Vec<Vec<Pair>>) -> Self {
        PairCover { parts }
    }

    /// The single-part cover `{X̃}`.
    pub fn trivial(space: &FiniteMetricSpace) -> Self {
        let pairs: Vec<Pair> = space.off_diagonal_indices().collect();
        PairCover { parts: if pairs.is_empty() { Vec::new() } else { vec![pairs] } }
    }

    pub fn singletons(space: &FiniteMetricSpace) -> Self {
        PairCover { parts: space.off_diagonal_indices().map(|p| vec![p]).collect() }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn union(&self) -> BTreeSet<Pair> {
        self.parts.iter().flatten().copied().collect()
    }

    /// Parts are non-empty and hold only off-diagonal pairs of an `n`-point space.
    pub fn validate_parts(&self, n: usize) -> Result<(), MetricError> {
        for (k, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(MetricError::EmptyPart(k));
            }
            for &(a, b) in part {
                if a >= n || b >= n {
                    return Err(MetricError::OutOfRange { part: k, index: a.max(b) });
                }
                if a == b {
                    return Err(MetricError::DiagonalPair(a));
                }
            }
        }
        Ok(())
    }

    /// Valid parts whose union is the whole off-diagonal space.
    pub fn validate_full(&self, n: usize) -> Result<(), MetricError> {
        self.validate_parts(n)?;
        let union = self.union();
        for a in 0..n {
            for b in 0..n {
                if a != b && !union.contains(&(a, b)) {
                    return Err(MetricError::UncoveredPair(a, b));
                }
            }
        }
        Ok(())
    }
}

/// A cover in its serialized form: `{"ambient": "points"|"pairs", "parts": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "ambient", rename_all = "lowercase")]
pub enum Cover {
    Points(PointCover),
    Pairs(PairCover),
}

impl Cover {
    pub fn len(&self) -> usize {
        match self {
            Cover::Points(c) => c.len(),
            Cover::Pairs(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl From<PointCover> for Cover {
    fn from(c: PointCover) -> Self {
        Cover::Points(c)
    }
}

impl From<PairCover> for Cover {
    fn from(c: PairCover) -> Self {
        Cover::Pairs(c)
    }
}

impl fmt::Display for TubeRadius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TubeRadius::Unbounded => write!(f, "unbounded"),
            TubeRadius::Bounded(d) => write!(f, "{d}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line3() -> FiniteMetricSpace {
        FiniteMetricSpace::from_line(&[0.0, 1.0, 2.0]).unwrap()
    }

    #[test]
    fn two_point_space_is_valid() {
        let s = validate_metric(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.d(0, 1), 1.0);
    }

    #[test]
    fn triangle_violation_reports_first_triple() {
        let m = vec![vec![0.0, 3.0, 1.0], vec![3.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]];
        assert_eq!(validate_metric(&m), Err(MetricError::TriangleViolation(0, 1, 2)));
    }

    #[test]
    fn axiom_errors() {
        assert_eq!(validate_metric(&[vec![0.0, 1.0], vec![2.0, 0.0]]), Err(MetricError::Asymmetry(0, 1)));
        assert_eq!(validate_metric(&[vec![0.0, -1.0], vec![-1.0, 0.0]]), Err(MetricError::NegativeDistance(0, 1)));
        assert_eq!(validate_metric(&[vec![0.5, 1.0], vec![1.0, 0.0]]), Err(MetricError::NonzeroDiagonal(0)));
        assert_eq!(validate_metric(&[vec![0.0, 0.0], vec![0.0, 0.0]]), Err(MetricError::IdentityViolation(0, 1)));
        assert_eq!(validate_metric(&[]), Err(MetricError::Empty));
        assert!(matches!(validate_metric(&[vec![0.0, 1.0]]), Err(MetricError::NotSquare { .. })));
        assert_eq!(validate_metric(&[vec![0.0, f64::NAN], vec![1.0, 0.0]]), Err(MetricError::NonFinite(0, 1)));
    }

    #[test]
    fn off_diagonal_pairs() {
        let s = validate_metric(&[vec![0.0, 2.5], vec![2.5, 0.0]]).unwrap();
        let ps = s.off_diagonal().unwrap();
        assert_eq!(ps.pairs(), &[(0, 1), (1, 0)]);
        assert_eq!(ps.dist(0, 1), 2.5);

        let eq = FiniteMetricSpace::from_fn(3, |_, _| 1.0).unwrap();
        let ps = eq.off_diagonal().unwrap();
        assert_eq!(ps.len(), 6);
        for a in 0..6 {
            for b in 0..6 {
                let expect = if a == b { 0.0 } else { 1.0 };
                assert_eq!(ps.dist(a, b), expect, "{:?} {:?}", ps.pairs()[a], ps.pairs()[b]);
            }
        }
        for (k, &p) in ps.pairs().iter().enumerate() {
            assert_eq!(ps.index_of(p), Some(k));
        }

        let one = FiniteMetricSpace::from_line(&[0.0]).unwrap();
        assert_eq!(one.off_diagonal().unwrap_err(), MetricError::DegenerateSpace);
    }

    #[test]
    fn tube_on_a_line() {
        let s = line3();
        // Large δ: everything.
        assert_eq!(s.tube(10.0).len(), 9);
        // δ = 0.6: no point lies strictly within 0.6 of two distinct points.
        assert_eq!(s.tube(0.6), vec![(0, 0), (1, 1), (2, 2)]);
        // δ = 1: the midpoint is at distance exactly 1 from the ends.
        assert_eq!(s.tube(1.0), vec![(0, 0), (1, 1), (2, 2)]);
        assert_eq!(s.tube_depth(0, 2), 1.0);
        assert_eq!(s.tube(1.2).len(), 9);
        assert_eq!(s.tube(1e-12), vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn max_tube_delta_examples() {
        let s = line3();
        let all = DiagonalBallCover { centers: vec![1], radius: 10.0 };
        assert_eq!(max_tube_delta(&s, &all).unwrap(), TubeRadius::Unbounded);

        let two = DiagonalBallCover { centers: vec![0, 2], radius: 1.5 };
        let delta = max_tube_delta(&s, &two).unwrap().value(&s);
        let union = |p: Pair| two.contains(&s, p);
        assert!(s.tube(delta).into_iter().all(union));
        let next = delta_candidates(&s, &[1.5]).into_iter().find(|&c| c > delta).unwrap();
        assert!(!s.tube(next).into_iter().all(union));
        assert_eq!(delta, 1.0);

        let missing = DiagonalBallCover { centers: vec![0], radius: 0.5 };
        assert_eq!(max_tube_delta(&s, &missing), Err(MetricError::DiagonalNotCovered(1)));
    }

    #[test]
    fn greedy_net_examples() {
        let one = FiniteMetricSpace::from_line(&[3.0]).unwrap();
        assert_eq!(greedy_eps_net(&one, 0.1), vec![0]);
        let s = line3();
        let net = greedy_eps_net(&s, 1.0);
        assert_eq!(net, vec![0, 2]);
        assert_eq!(greedy_eps_net(&s, 2.0), vec![0]);
    }

    #[test]
    fn lebesgue_delta_examples() {
        let s = line3();
        assert_eq!(lebesgue_delta(&s, &PointCover::trivial(3)), 2.0);
        assert_eq!(lebesgue_delta(&s, &PointCover::new(vec![vec![0, 1], vec![1, 2]])), 1.0);
        let single = lebesgue_delta(&s, &PointCover::singletons(3));
        assert!(single > 0.0 && single < 1.0);
    }

    #[test]
    fn cover_validation() {
        assert!(PointCover::new(vec![vec![0, 1], vec![2]]).validate(3).is_ok());
        assert_eq!(PointCover::new(vec![vec![0], vec![]]).validate(1), Err(MetricError::EmptyPart(1)));
        assert_eq!(PointCover::new(vec![vec![0]]).validate(2), Err(MetricError::UncoveredPoint(1)));
        assert_eq!(PointCover::new(vec![vec![0, 5]]).validate(2), Err(MetricError::OutOfRange { part: 0, index: 5 }));
        let s = line3();
        assert!(PairCover::trivial(&s).validate_full(3).is_ok());
        assert_eq!(PairCover::new(vec![vec![(0, 0)]]).validate_parts(3), Err(MetricError::DiagonalPair(0)));
        assert_eq!(PairCover::new(vec![vec![(0, 1)]]).validate_full(2), Err(MetricError::UncoveredPair(1, 0)));
    }

    #[test]
    fn cover_json_shape() {
        let c = Cover::Points(PointCover::new(vec![vec![0, 1], vec![2]]));
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"ambient":"points","parts":[[0,1],[2]]}"#);
        let p = Cover::Pairs(PairCover::new(vec![vec![(0, 1), (1, 0)]]));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"ambient":"pairs","parts":[[[0,1],[1,0]]]}"#);
        let back: Cover = serde_json::from_str(r#"{"ambient":"pairs","parts":[[[0,1],[1,0]]]}"#).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn space_json_validates() {
        let s: FiniteMetricSpace = serde_json::from_str(r#"{"points":2,"dist":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(s.d(1, 0), 1.0);
        let bad = serde_json::from_str::<FiniteMetricSpace>(r#"{"points":3,"dist":[[0,3,1],[3,0,1],[1,1,0]]}"#);
        assert!(bad.unwrap_err().to_string().contains("triangle"));
    }
}
