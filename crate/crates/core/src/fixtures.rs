//! Deterministic finite instances of the classical examples and
//! counterexamples, each carrying claims that [`Fixture::verify`] re-derives.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::comparison::ComparisonFunction;
use crate::conditions::{check_b, check_ds, check_l, check_lds, pair_oscillation, ConditionError, OscillationKind};
use crate::family::{FamilyError, FunctionFamily, NormKind, SampledFunction};
use crate::metric::{validate_metric, DiagonalBallCover, FiniteMetricSpace, MetricError, Pair, PairCover, PointCover, TubeRadius};
use crate::oracle::{exact_min_oscillation, pigeonhole_b_witness, Ambient, OracleError};
use crate::metric::max_tube_delta;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FixtureError {
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Condition(#[from] ConditionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Which example, with its size parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum FixtureSpec {
    /// Zero-one sequences of length `p` and the maps picking basis vectors.
    Riesz { p: usize },
    /// `k` basis vectors of `ℝᵏ` under the sup norm with `f(x) = x`, `g(x) = 2x`.
    Sphere { k: usize },
    /// Tents `1 − |x/n − 1|` on the grid `{0, …, k}`.
    Tent { k: usize },
    /// `1 − |x − 1|` on the grid of step `1/q` in `[0, 2]`.
    BallCover { q: usize },
    /// `{±1, …, ±k}` with the six-case metric.
    Zminus { k: usize },
    /// `x_0 = 0`, `x_n = e_n / n` in `ℝᵏ` with maps `f_a(x) = a·x`.
    Linfty { k: usize, a_grid: Vec<f64> },
}

pub const NAMES: [&str; 6] = ["riesz", "sphere", "tent", "ball_cover", "zminus", "linfty"];

impl FixtureSpec {
    /// Builds a spec from a name and `key=value` parameters; missing keys
    /// take defaults.
    pub fn parse(name: &str, params: &BTreeMap<String, String>) -> Result<Self, FixtureError> {
        let int = |key: &str, default: usize| -> Result<usize, FixtureError> {
            match params.get(key).or_else(|| params.get(&key.to_ascii_uppercase())) {
                None => Ok(default),
                Some(v) => v.parse().map_err(|_| FixtureError::InvalidParameter(format!("{key}={v}"))),
            }
        };
        let allowed: &[&str] = match name {
            "riesz" => &["p"],
            "sphere" | "tent" | "zminus" => &["k"],
            "ball_cover" => &["q"],
            "linfty" => &["k", "a_grid"],
            other => return Err(FixtureError::UnknownFixture(other.to_string())),
        };
        if let Some(key) = params.keys().find(|k| !allowed.contains(&k.to_ascii_lowercase().as_str())) {
            return Err(FixtureError::InvalidParameter(format!("unknown key `{key}` for {name}")));
        }
        Ok(match name {
            "riesz" => FixtureSpec::Riesz { p: int("p", 3)? },
            "sphere" => FixtureSpec::Sphere { k: int("k", 4)? },
            "tent" => FixtureSpec::Tent { k: int("k", 12)? },
            "ball_cover" => FixtureSpec::BallCover { q: int("q", 8)? },
            "zminus" => FixtureSpec::Zminus { k: int("k", 3)? },
            _ => {
                let a_grid = match params.get("a_grid") {
                    None => vec![0.0, 0.25, 0.5, 0.75, 1.0],
                    Some(v) => v
                        .split(',')
                        .map(|s| s.trim().parse::<f64>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| FixtureError::InvalidParameter(format!("a_grid={v}")))?,
                };
                FixtureSpec::Linfty { k: int("k", 5)?, a_grid }
            }
        })
    }

    pub fn build(&self) -> Result<Fixture, FixtureError> {
        match self {
            FixtureSpec::Riesz { p } => riesz_zero_one(*p),
            FixtureSpec::Sphere { k } => sphere_pair(*k),
            FixtureSpec::Tent { k } => tent_family(*k),
            FixtureSpec::BallCover { q } => ball_cover_failure(*q),
            FixtureSpec::Zminus { k } => zminus_fixture(*k),
            FixtureSpec::Linfty { k, a_grid } => linfty_family(*k, a_grid),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Le,
    Ge,
    Eq,
    Gt,
}

impl Relation {
    pub fn holds(self, observed: f64, threshold: f64, tol: f64) -> bool {
        match self {
            Relation::Le => observed <= threshold + tol,
            Relation::Ge => observed >= threshold - tol,
            Relation::Eq => (observed - threshold).abs() <= tol,
            Relation::Gt => observed > threshold + tol,
        }
    }
}

/// `observed <relation> threshold` up to `tol`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub relation: Relation,
    pub threshold: f64,
    pub tol: f64,
}

impl Claim {
    fn new(id: &str, statement: &str, relation: Relation, threshold: f64, tol: f64) -> Self {
        Claim { id: id.into(), statement: statement.into(), relation, threshold, tol }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    #[serde(flatten)]
    pub claim: Claim,
    pub observed: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureReport {
    pub fixture: FixtureSpec,
    pub outcomes: Vec<ClaimOutcome>,
    pub all_hold: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub spec: FixtureSpec,
    pub space: FiniteMetricSpace,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FunctionFamily>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<ComparisonFunction>,
    pub claims: Vec<Claim>,
}

const EXACT: f64 = 1e-12;
const TOL: f64 = crate::TOL;

fn basis(dim: usize, i: usize, scale: f64) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    v[i] = scale;
    v
}

fn check_range(name: &str, v: usize, lo: usize, hi: usize) -> Result<(), FixtureError> {
    if (lo..=hi).contains(&v) {
        Ok(())
    } else {
        Err(FixtureError::InvalidParameter(format!("{name} = {v} must lie in {lo}..={hi}")))
    }
}

/// `{0,1}^p` with normalized Hamming distance; point `i` holds the sequence
/// of bits of `i`. Member `f_j` sends a sequence to `e_0` if its `j`-th term is
/// 0 and to `e_j` otherwise.
pub fn riesz_zero_one(p: usize) -> Result<Fixture, FixtureError> {
    check_range("p", p, 2, 10)?;
    let n = 1usize << p;
    let space = FiniteMetricSpace::from_fn(n, |a, b| f64::from((a ^ b).count_ones()) / p as f64)?;
    let members = (1..=p)
        .map(|j| SampledFunction::from_fn(n, p + 1, |x| basis(p + 1, if x >> (j - 1) & 1 == 1 { j } else { 0 }, 1.0)))
        .collect::<Result<Vec<_>, _>>()?;
    let family = FunctionFamily::new(space.clone(), NormKind::Sup, 0, members)?;
    let claims = vec![
        Claim::new("b_trivial_on_a", "(B) holds for A with the trivial cover at eps = 0", Relation::Le, 0.0, TOL),
        Claim::new(
            "b_oracle_on_difference",
            "every cover of the low sub-cube with fewer than 2^(k-1) parts has (B) oscillation of A - A at least 1/2",
            Relation::Ge,
            0.5,
            TOL,
        ),
        Claim::new("pigeonhole_gap", "the pigeonhole tuple for the trivial cover has gap at least 1/2", Relation::Ge, 0.5, TOL),
        Claim::new("section_size", "every section has at most p + 1 values", Relation::Le, (p + 1) as f64, 0.0),
        Claim::new("section_at_zero", "the section at the zero sequence is {e_0}", Relation::Eq, 1.0, 0.0),
    ];
    Ok(Fixture { spec: FixtureSpec::Riesz { p }, space, family: Some(family), phi: None, claims })
}

/// Basis vectors `e_1, …, e_k` of `ℝᵏ` (sup norm), pairwise at distance 1,
/// with `A = {x ↦ x, x ↦ 2x}`.
pub fn sphere_pair(k: usize) -> Result<Fixture, FixtureError> {
    check_range("k", k, 2, 8)?;
    let space = FiniteMetricSpace::from_fn(k, |a, b| if a == b { 0.0 } else { 1.0 })?;
    let f = SampledFunction::from_fn(k, k, |x| basis(k, x, 1.0))?;
    let g = SampledFunction::from_fn(k, k, |x| basis(k, x, 2.0))?;
    let family = FunctionFamily::new(space.clone(), NormKind::Sup, 0, vec![f, g])?;
    let claims = vec![
        Claim::new("b_on_a", "(B) holds for A with the trivial cover at eps = 0", Relation::Le, 0.0, TOL),
        Claim::new("b_on_difference", "(B) holds for A - A with the trivial cover at eps = 0", Relation::Le, 0.0, TOL),
        Claim::new(
            "ds_oracle",
            "every cover of the sphere points with fewer parts than points has (DS) oscillation at least 1",
            Relation::Ge,
            1.0,
            TOL,
        ),
        Claim::new("ds_trivial", "(DS) fails for A with the trivial cover at eps = 1/2", Relation::Gt, 0.5, TOL),
    ];
    Ok(Fixture { spec: FixtureSpec::Sphere { k }, space, family: Some(family), phi: None, claims })
}

fn tent(n: usize, x: usize) -> f64 {
    let t = x as f64 / n as f64;
    if x <= 2 * n {
        1.0 - (t - 1.0).abs()
    } else {
        0.0
    }
}

/// Grid `{0, …, k}` with base point 0, `φ = id`, members `0, f_1, …, f_{⌊k/2⌋}`.
pub fn tent_family(k: usize) -> Result<Fixture, FixtureError> {
    check_range("k", k, 2, 64)?;
    let space = FiniteMetricSpace::from_line(&(0..=k).map(|x| x as f64).collect::<Vec<_>>())?;
    let mut members = vec![SampledFunction::zero(k + 1, 1)];
    for n in 1..=k / 2 {
        members.push(SampledFunction::scalar(&(0..=k).map(|x| tent(n, x)).collect::<Vec<_>>())?);
    }
    let family = FunctionFamily::new(space.clone(), NormKind::Sup, 0, members)?.with_phi(ComparisonFunction::identity());
    let top = k / 2;
    let claims = vec![
        Claim::new("lip_pattern", "|f_n|_Lip = 1/n for every tent", Relation::Eq, 0.0, EXACT),
        Claim::new("zero_member", "all norms of the zero member vanish", Relation::Eq, 0.0, 0.0),
        Claim::new("b_gap", "|‖f_n(n)‖ − ‖f_n(2n)‖| = 1", Relation::Eq, 1.0, EXACT),
        Claim::new(
            "b_oracle_on_difference",
            "every cover of the powers of two with fewer parts than points has (B) oscillation of A - A at least 1",
            Relation::Ge,
            1.0,
            TOL,
        ),
        Claim::new("l_widest_tent", "(L) oscillation of {0, f_n} - {0, f_n} on the trivial cover is 1/n", Relation::Eq, 1.0 / top as f64, EXACT),
    ];
    Ok(Fixture { spec: FixtureSpec::Tent { k }, space, family: Some(family), phi: Some(ComparisonFunction::identity()), claims })
}

/// Pairs `(1 − 2h, 1 − h)` and `(1 − h, 1 − 2h)` on the grid of step `h = 1/q`.
pub fn ball_cover_pairs(q: usize) -> (Pair, Pair) {
    ((q - 2, q - 1), (q - 1, q - 2))
}

/// `1 − |x − 1|` on `{0, h, …, 2}`, `h = 1/q`, `φ = id`.
pub fn ball_cover_failure(q: usize) -> Result<Fixture, FixtureError> {
    check_range("q", q, 2, 64)?;
    let coords: Vec<f64> = (0..=2 * q).map(|i| i as f64 / q as f64).collect();
    let space = FiniteMetricSpace::from_line(&coords)?;
    let f = SampledFunction::scalar(&coords.iter().map(|x| 1.0 - (x - 1.0).abs()).collect::<Vec<_>>())?;
    let family = FunctionFamily::new(space.clone(), NormKind::Sup, q, vec![f])?.with_phi(ComparisonFunction::identity());
    let h = 1.0 / q as f64;
    let claims = vec![
        Claim::new("lds_pair_gap", "the de Leeuw values at the two pairs differ by 2", Relation::Eq, 2.0, EXACT),
        Claim::new("pair_distance", "the two pairs are at d_inf distance h", Relation::Eq, h, EXACT),
        Claim::new("ball_oscillation", "the open d_inf ball of radius 3h about (1 - h, 1) has (LDS) oscillation 2", Relation::Eq, 2.0, EXACT),
        Claim::new("level_set_cover", "the cover by level sets of the de Leeuw map passes (LDS) at eps = 0", Relation::Le, 0.0, TOL),
        Claim::new("singletons", "singleton parts pass (LDS) at eps = 0", Relation::Le, 0.0, TOL),
    ];
    Ok(Fixture { spec: FixtureSpec::BallCover { q }, space, family: Some(family), phi: Some(ComparisonFunction::identity()), claims })
}

/// Signed label of point `i`: `+1, …, +k, −1, …, −k`.
pub fn zminus_label(k: usize, i: usize) -> i64 {
    if i < k {
        i as i64 + 1
    } else {
        -((i - k) as i64 + 1)
    }
}

/// Index of a signed label.
pub fn zminus_index(k: usize, label: i64) -> usize {
    if label > 0 {
        label as usize - 1
    } else {
        k + (-label) as usize - 1
    }
}

/// The six-case distance on `ℤ ∖ {0}`.
pub fn zminus_distance(a: i64, b: i64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (n, m) = (a.unsigned_abs() as f64, b.unsigned_abs() as f64);
    let same = (a > 0) == (b > 0);
    match (n == 1.0, m == 1.0) {
        (true, true) => 0.5,
        (true, false) | (false, true) => {
            let other = n.max(m);
            if same {
                0.5 - 1.0 / (2.0 * other)
            } else {
                0.5
            }
        }
        (false, false) => 1.0 / (2.0 * n) + 1.0 / (2.0 * m),
    }
}

/// Raw distance matrix on `{±1, …, ±k}` (not yet validated).
pub fn zminus_matrix(k: usize) -> Vec<Vec<f64>> {
    (0..2 * k).map(|i| (0..2 * k).map(|j| zminus_distance(zminus_label(k, i), zminus_label(k, j))).collect()).collect()
}

pub fn zminus_metric(k: usize) -> Result<FiniteMetricSpace, FixtureError> {
    check_range("k", k, 1, 64)?;
    Ok(validate_metric(&zminus_matrix(k))?)
}

/// The diagonal cover `B(1, ½)² ∪ B(−1, ½)²`.
pub fn zminus_cover(k: usize) -> DiagonalBallCover {
    DiagonalBallCover { centers: vec![zminus_index(k, 1), zminus_index(k, -1)], radius: 0.5 }
}

fn zminus_fixture(k: usize) -> Result<Fixture, FixtureError> {
    check_range("k", k, 2, 64)?;
    let space = zminus_metric(k)?;
    let claims = vec![
        Claim::new("metric_valid", "the six-case formula passes every metric axiom", Relation::Eq, 1.0, 0.0),
        Claim::new("d_one_minus_one", "d(1, -1) = 1/2", Relation::Eq, 0.5, 0.0),
        Claim::new("d_two_minus_two", "d(2, -2) = 1/(2·2) + 1/(2·2)", Relation::Eq, 0.5, 0.0),
        Claim::new("diagonal_covered", "the diagonal lies in B(1, 1/2)² ∪ B(-1, 1/2)²", Relation::Eq, 1.0, 0.0),
        Claim::new("tube_delta_positive", "the largest admissible tube radius is positive", Relation::Gt, 0.0, 0.0),
    ];
    Ok(Fixture { spec: FixtureSpec::Zminus { k }, space, family: None, phi: None, claims })
}

/// `{x_0, …, x_k}` with `x_0 = 0`, `x_n = e_n / n` in `ℝᵏ` (sup norm),
/// members `f_a(x) = a·x`, `φ = id`.
pub fn linfty_family(k: usize, a_grid: &[f64]) -> Result<Fixture, FixtureError> {
    check_range("k", k, 1, 16)?;
    if a_grid.is_empty() || a_grid.iter().any(|a| !(0.0..=1.0).contains(a)) {
        return Err(FixtureError::InvalidParameter("a_grid must be a non-empty subset of [0, 1]".into()));
    }
    let points: Vec<Vec<f64>> =
        (0..=k).map(|n| if n == 0 { vec![0.0; k] } else { basis(k, n - 1, 1.0 / n as f64) }).collect();
    let space = FiniteMetricSpace::from_fn(k + 1, |a, b| NormKind::Sup.dist(&points[a], &points[b]))?;
    let members = a_grid
        .iter()
        .map(|&a| SampledFunction::new(points.iter().map(|p| p.iter().map(|v| a * v).collect()).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    let family = FunctionFamily::new(space.clone(), NormKind::Sup, 0, members)?.with_phi(ComparisonFunction::identity());
    let spread = a_grid.iter().flat_map(|a| a_grid.iter().map(move |b| (a - b).abs())).fold(0.0, f64::max);
    let top = a_grid.iter().copied().fold(0.0, f64::max);
    let mut claims = vec![
        Claim::new("l_trivial_peak", "every quotient of f_a - f_b equals |a - b|; the largest is max |a - b|", Relation::Eq, spread, EXACT),
        Claim::new("l_trivial_oscillation", "(L) holds for A - A with the trivial cover at eps = 0", Relation::Le, 0.0, EXACT),
    ];
    if k >= 2 {
        claims.push(Claim::new(
            "lds_oracle",
            "every cover of the pairs (x_n, x_0) with fewer parts than pairs has (LDS) oscillation at least max a",
            Relation::Ge,
            top,
            TOL,
        ));
    }
    Ok(Fixture {
        spec: FixtureSpec::Linfty { k, a_grid: a_grid.to_vec() },
        space,
        family: Some(family),
        phi: Some(ComparisonFunction::identity()),
        claims,
    })
}

impl Fixture {
    pub fn family(&self) -> Result<&FunctionFamily, FixtureError> {
        self.family.as_ref().ok_or_else(|| FixtureError::InvalidParameter("fixture has no family".into()))
    }

    fn phi(&self) -> ComparisonFunction {
        self.phi.clone().unwrap_or_else(ComparisonFunction::identity)
    }

    pub fn verify(&self) -> Result<FixtureReport, FixtureError> {
        let mut outcomes = Vec::with_capacity(self.claims.len());
        for claim in &self.claims {
            let observed = self.observe(&claim.id)?;
            let holds = claim.relation.holds(observed, claim.threshold, claim.tol);
            outcomes.push(ClaimOutcome { claim: claim.clone(), observed, holds });
        }
        let all_hold = outcomes.iter().all(|o| o.holds);
        Ok(FixtureReport { fixture: self.spec.clone(), outcomes, all_hold })
    }

    /// Recomputes the quantity behind one claim.
    pub fn observe(&self, id: &str) -> Result<f64, FixtureError> {
        let unknown = || FixtureError::InvalidParameter(format!("no claim `{id}`"));
        let space = &self.space;
        let n = space.len();
        match (&self.spec, id) {
            (_, "b_trivial_on_a" | "b_on_a") => Ok(check_b(self.family()?, &PointCover::trivial(n), 0.0)?.achieved),
            (_, "b_on_difference") => {
                Ok(check_b(&self.family()?.difference_family(), &PointCover::trivial(n), 0.0)?.achieved)
            }
            (FixtureSpec::Riesz { p }, "b_oracle_on_difference") => {
                let q = (*p).min(3);
                let budget = ((1usize << (q - 1)) - 1).min(4);
                let ambient = Ambient::Points((0..1usize << q).collect());
                let diff = self.family()?.difference_family();
                Ok(exact_min_oscillation(&diff, OscillationKind::B, None, &ambient, budget)?.value)
            }
            (FixtureSpec::Riesz { .. }, "pigeonhole_gap") => {
                Ok(pigeonhole_b_witness(self.family()?, &PointCover::trivial(n))?.gap)
            }
            (FixtureSpec::Riesz { .. }, "section_size") => {
                let fam = self.family()?;
                Ok((0..n).map(|x| fam.section(x).len()).max().unwrap_or(0) as f64)
            }
            (FixtureSpec::Riesz { .. }, "section_at_zero") => Ok(self.family()?.section(0).len() as f64),
            (FixtureSpec::Sphere { k }, "ds_oracle") => {
                let size = (*k).min(5);
                let ambient = Ambient::Points((0..size).collect());
                Ok(exact_min_oscillation(self.family()?, OscillationKind::DS, None, &ambient, size - 1)?.value)
            }
            (FixtureSpec::Sphere { .. }, "ds_trivial") => {
                Ok(check_ds(self.family()?, &PointCover::trivial(n), 0.5)?.achieved)
            }
            (FixtureSpec::Tent { .. }, "lip_pattern") => {
                let fam = self.family()?;
                let phi = self.phi();
                let mut worst = 0.0f64;
                for (i, f) in fam.members().iter().enumerate().skip(1) {
                    worst = worst.max((fam.lip_seminorm(f, &phi)? - 1.0 / i as f64).abs());
                }
                Ok(worst)
            }
            (FixtureSpec::Tent { .. }, "zero_member") => {
                let fam = self.family()?;
                Ok(fam.blip_norm(fam.member(0), &self.phi())?)
            }
            (FixtureSpec::Tent { k }, "b_gap") => {
                let fam = self.family()?;
                let m = (k / 4).max(1);
                let f = fam.member(m);
                Ok((fam.norm_at(f, m) - fam.norm_at(f, 2 * m)).abs())
            }
            (FixtureSpec::Tent { k }, "b_oracle_on_difference") => {
                let points: Vec<usize> = (0..4).map(|i| 1usize << i).filter(|&x| x <= *k).collect();
                let budget = points.len() - 1;
                let diff = self.family()?.difference_family();
                Ok(exact_min_oscillation(&diff, OscillationKind::B, None, &Ambient::Points(points), budget)?.value)
            }
            (FixtureSpec::Tent { k }, "l_widest_tent") => {
                let fam = self.family()?.subfamily(&[0, k / 2])?.difference_family();
                Ok(check_l(&fam, &self.phi(), &PairCover::trivial(space), 0.0)?.achieved)
            }
            (FixtureSpec::BallCover { q }, "lds_pair_gap") => {
                let fam = self.family()?;
                let (p1, p2) = ball_cover_pairs(*q);
                let t = fam.deleeuw_on(fam.member(0), &self.phi(), &[p1, p2]);
                Ok(NormKind::Sup.dist(t.at(0), t.at(1)))
            }
            (FixtureSpec::BallCover { q }, "pair_distance") => {
                let (p1, p2) = ball_cover_pairs(*q);
                Ok(space.dist_inf(p1, p2))
            }
            (FixtureSpec::BallCover { q }, "ball_oscillation") => {
                let center = (q - 1, *q);
                let radius = 3.0 / *q as f64;
                let ball: Vec<Pair> = space.off_diagonal_indices().filter(|&p| space.dist_inf(center, p) < radius).collect();
                let cover = PairCover::new(vec![ball]);
                Ok(pair_oscillation(self.family()?, OscillationKind::LDS, &self.phi(), &cover, 0.0)?.achieved)
            }
            (FixtureSpec::BallCover { .. }, "level_set_cover") => {
                let fam = self.family()?;
                let pairs: Vec<Pair> = space.off_diagonal_indices().collect();
                let t = fam.deleeuw_on(fam.member(0), &self.phi(), &pairs);
                let mut levels: BTreeMap<i64, Vec<Pair>> = BTreeMap::new();
                for (i, &p) in pairs.iter().enumerate() {
                    levels.entry((t.at(i)[0] * 1e9).round() as i64).or_default().push(p);
                }
                let cover = PairCover::new(levels.into_values().collect());
                Ok(check_lds(fam, &self.phi(), &cover, 0.0)?.achieved)
            }
            (FixtureSpec::BallCover { .. }, "singletons") => {
                Ok(check_lds(self.family()?, &self.phi(), &PairCover::singletons(space), 0.0)?.achieved)
            }
            (FixtureSpec::Zminus { k }, "metric_valid") => {
                Ok(if validate_metric(&zminus_matrix(*k)).is_ok() { 1.0 } else { 0.0 })
            }
            (FixtureSpec::Zminus { k }, "d_one_minus_one") => Ok(space.d(zminus_index(*k, 1), zminus_index(*k, -1))),
            (FixtureSpec::Zminus { k }, "d_two_minus_two") => Ok(space.d(zminus_index(*k, 2), zminus_index(*k, -2))),
            (FixtureSpec::Zminus { k }, "diagonal_covered") => {
                let cover = zminus_cover(*k);
                Ok(if (0..n).all(|x| cover.contains(space, (x, x))) { 1.0 } else { 0.0 })
            }
            (FixtureSpec::Zminus { k }, "tube_delta_positive") => {
                Ok(match max_tube_delta(space, &zminus_cover(*k))? {
                    TubeRadius::Unbounded => f64::INFINITY,
                    TubeRadius::Bounded(d) => d,
                })
            }
            (FixtureSpec::Linfty { .. }, "l_trivial_peak" | "l_trivial_oscillation") => {
                let diff = self.family()?.difference_family();
                let r = check_l(&diff, &self.phi(), &PairCover::trivial(space), 0.0)?;
                Ok(if id == "l_trivial_peak" { r.peak.unwrap_or(0.0) } else { r.achieved })
            }
            (FixtureSpec::Linfty { k, .. }, "lds_oracle") => {
                let size = (*k).min(5);
                let ambient = Ambient::Pairs((1..=size).map(|j| (j, 0)).collect());
                Ok(exact_min_oscillation(self.family()?, OscillationKind::LDS, Some(&self.phi()), &ambient, size - 1)?.value)
            }
            _ => Err(unknown()),
        }
    }
}
