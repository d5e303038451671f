use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::comparison::{modulus_radius, ComparisonFunction};
use crate::family::{FunctionFamily, NormKind, SampledFunction};
use crate::metric::{greedy_open_centers, lebesgue_delta, max_tube_delta, DiagonalBallCover, FiniteMetricSpace, Pair, PairCover, PointCover};
use crate::TOL;

use super::{
    check_b, check_ds, check_equicontinuity, check_equinormed, check_l, check_lambda, check_lambda_witness,
    check_uniform_local_flatness, pair_oscillation, require_positive, Condition, ConditionError, ConditionReport,
    EquinormWitness, LambdaWitness, OscillationKind,
};

/// A synthesized point cover with the representatives used to build it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSynthesis {
    pub cover: PointCover,
    pub representatives: Vec<usize>,
    pub report: ConditionReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquinormSynthesis {
    pub witness: EquinormWitness,
    pub report: ConditionReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaSynthesis {
    pub delta: f64,
    pub report: ConditionReport,
}

/// Cover of `X̃_δ` with the constants of its construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TildeSynthesis {
    pub cover: PairCover,
    pub delta: f64,
    /// `min φ(d(x, y))` over `X̃_δ`.
    pub m: f64,
    /// Bound on `‖f‖_∞ + |f|_φ` and on `φ(diam X)`.
    #[serde(rename = "M")]
    pub big_m: f64,
    pub r: f64,
    pub phi_r: f64,
    pub bound: f64,
    pub report: ConditionReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaSynthesis {
    pub witness: LambdaWitness,
    pub centers: Vec<usize>,
    pub report: ConditionReport,
}

/// Explicit bounds showing a family with a localized cover is bounded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bootstrap {
    #[serde(rename = "R")]
    pub r: f64,
    pub sup_norm: f64,
    /// `(2 + ε)R + 2R²/φ(d(ξ, η))`.
    pub sup_bound: f64,
    pub lip_seminorm: f64,
    /// `ε + 4M/φ(d(ξ, η)) + |f|_φ` near the diagonal, `2M/φ(d)` away from it.
    pub lip_bound: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LSynthesis {
    pub cover: PairCover,
    pub bootstrap: Bootstrap,
    pub report: ConditionReport,
}

fn precondition(report: ConditionReport) -> Result<ConditionReport, ConditionError> {
    if report.passed() {
        Ok(report)
    } else {
        Err(ConditionError::PreconditionFailed {
            condition: report.condition,
            eps: report.eps,
            achieved: report.achieved,
        })
    }
}

fn postcondition(report: ConditionReport) -> Result<ConditionReport, ConditionError> {
    if report.passed() {
        Ok(report)
    } else {
        Err(ConditionError::PostconditionFailed {
            condition: report.condition,
            eps: report.eps,
            achieved: report.achieved,
        })
    }
}

/// Centers of open balls of `radius` covering `values`: either the supplied
/// net after checking it, or greedy centers drawn from the values.
fn open_net(
    values: &[Vec<f64>],
    norm: NormKind,
    radius: f64,
    supplied: Option<&[Vec<f64>]>,
) -> Result<Vec<Vec<f64>>, ConditionError> {
    match supplied {
        Some(net) => {
            if let Some(v) = values.iter().find(|v| !net.iter().any(|e| norm.dist(v, e) < radius)) {
                return Err(ConditionError::NetPreconditionFailed(v.clone()));
            }
            Ok(net.to_vec())
        }
        None => Ok(greedy_open_centers(values.len(), |a, b| norm.dist(&values[a], &values[b]), radius)
            .into_iter()
            .map(|c| values[c].clone())
            .collect()),
    }
}

/// Lowest-index open ball of the net containing `v`.
fn ball_index(net: &[Vec<f64>], norm: NormKind, radius: f64, v: &[f64]) -> usize {
    net.iter().position(|e| norm.dist(v, e) < radius).expect("value covered by the net")
}

/// Groups `items` by key, keeping first-occurrence order of keys and items.
fn group_by_key<K: Eq + std::hash::Hash>(items: impl IntoIterator<Item = (K, usize)>) -> Vec<Vec<usize>> {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (key, item) in items {
        let slot = *index.entry(key).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[slot].push(item);
    }
    groups
}

/// Members grouped by the net balls their values fall in at `points`; the
/// lowest member of each class is its representative.
fn representatives(family: &FunctionFamily, points: &[usize], net: &[Vec<f64>], radius: f64) -> Vec<usize> {
    let norm = family.norm_kind();
    let classes = group_by_key(family.members().iter().enumerate().map(|(k, f)| {
        let psi: Vec<usize> = points.iter().map(|&t| ball_index(net, norm, radius, f.at(t))).collect();
        (psi, k)
    }));
    classes.into_iter().map(|c| c[0]).collect()
}

/// Grows a subset `Y` one point at a time (the point where the worst member
/// peaks) until `‖f‖_∞ ≤ eps + ‖f‖_Y` holds for every member.
pub fn greedy_equinorm_subset(family: &FunctionFamily, eps: f64) -> Vec<usize> {
    let n = family.points();
    let mut subset: Vec<usize> = Vec::new();
    loop {
        let mut worst: Option<(f64, usize)> = None;
        for (k, f) in family.members().iter().enumerate() {
            let on_y = subset.iter().map(|&x| family.norm_at(f, x)).fold(0.0, f64::max);
            let excess = family.sup_norm(f) - on_y;
            if worst.is_none_or(|(w, _)| excess > w) {
                worst = Some((excess, k));
            }
        }
        let (excess, k) = worst.expect("non-empty family");
        if !subset.is_empty() && excess <= eps {
            return subset;
        }
        let f = family.member(k);
        let peak = (0..n).fold(0, |b, x| if family.norm_at(f, x) > family.norm_at(f, b) { x } else { b });
        if subset.contains(&peak) {
            return subset;
        }
        subset.push(peak);
    }
}

/// Cover satisfying (B) for `A − A` at `eps`.
///
/// Members are classified by the open `eps/32`-balls their values at `Y` fall
/// in; with representatives `h_1, …, h_N` the map
/// `G(x) = (‖(h_p − h_q)(x)‖)_{p,q}` is quantized into boxes of side `eps/2`
/// over `[0, 2M]`, and the non-empty preimages form the cover.
pub fn synthesize_b_cover(
    family: &FunctionFamily,
    eps: f64,
    subset: &[usize],
    net: Option<&[Vec<f64>]>,
) -> Result<PointSynthesis, ConditionError> {
    require_positive("eps", eps)?;
    let diff = family.difference_family();
    let pre = check_equinormed(&diff, subset, eps / 16.0)?;
    if !pre.passed() {
        return Err(ConditionError::EquinormPreconditionFailed { eps: eps / 16.0, achieved: pre.achieved });
    }
    let norm = family.norm_kind();
    let radius = eps / 32.0;
    let mut values: Vec<Vec<f64>> = Vec::new();
    for &t in subset {
        for v in family.section(t) {
            if !values.contains(&v) {
                values.push(v);
            }
        }
    }
    let centers = open_net(&values, norm, radius, net)?;
    let reps = representatives(family, subset, &centers, radius);

    let big_m = family.members().iter().map(|f| family.sup_norm(f)).fold(0.0, f64::max);
    let width = eps / 2.0;
    let boxes = ((2.0 * big_m / width).ceil() as usize).max(1);
    let quantize = |v: f64| ((v / width).floor().max(0.0) as usize).min(boxes - 1);
    let h: Vec<&SampledFunction> = reps.iter().map(|&k| family.member(k)).collect();
    let parts = group_by_key((0..family.points()).map(|x| {
        let key: Vec<usize> =
            h.iter().flat_map(|p| h.iter().map(move |q| quantize(norm.dist(p.at(x), q.at(x))))).collect();
        (key, x)
    }));
    let cover = PointCover::new(parts);
    let report = postcondition(check_b(&diff, &cover, eps)?)?;
    Ok(PointSynthesis { cover, representatives: reps, report })
}

/// `Y` = lowest point of each part of a (B) cover at `level`; the family is
/// then equinormed on `Y` at `2·level`.
pub fn equinorm_witness_from_b(
    family: &FunctionFamily,
    cover: &PointCover,
    level: f64,
) -> Result<EquinormSynthesis, ConditionError> {
    precondition(check_b(family, cover, level)?)?;
    let mut subset: Vec<usize> = Vec::new();
    for part in &cover.parts {
        let t = *part.iter().min().expect("validated part");
        if !subset.contains(&t) {
            subset.push(t);
        }
    }
    let report = postcondition(check_equinormed(family, &subset, 2.0 * level)?)?;
    Ok(EquinormSynthesis { witness: EquinormWitness { subset, eps: 2.0 * level }, report })
}

/// (DS) cover for `A` at `eps` from a (B) cover `W` of `A − A` at `eps/8`.
///
/// With `w_i` the lowest point of `W_i` and an open `eps/8`-net of `A(X)`,
/// representatives `g_1, …, g_k` are chosen per net class at the `w_i`; the
/// parts are the non-empty `W_i ∩ V_λ`, `V_λ` the set where each `g_l(x)` lies
/// in net ball `λ_l`.
pub fn synthesize_ds_from_b(
    family: &FunctionFamily,
    b_cover: &PointCover,
    eps: f64,
    net: Option<&[Vec<f64>]>,
) -> Result<PointSynthesis, ConditionError> {
    require_positive("eps", eps)?;
    precondition(check_b(&family.difference_family(), b_cover, eps / 8.0)?)?;
    let norm = family.norm_kind();
    let radius = eps / 8.0;
    let anchors: Vec<usize> = b_cover.parts.iter().map(|p| *p.iter().min().expect("validated part")).collect();
    let centers = open_net(&family.image(), norm, radius, net)?;
    let reps = representatives(family, &anchors, &centers, radius);
    let lambda: Vec<Vec<usize>> = (0..family.points())
        .map(|x| reps.iter().map(|&l| ball_index(&centers, norm, radius, family.member(l).at(x))).collect())
        .collect();
    let mut parts = Vec::new();
    for w in &b_cover.parts {
        parts.extend(group_by_key(w.iter().map(|&x| (lambda[x].clone(), x))));
    }
    let cover = PointCover::new(parts);
    let report = postcondition(check_ds(family, &cover, eps)?)?;
    Ok(PointSynthesis { cover, representatives: reps, report })
}

/// Open balls of radius `delta/2` around greedy centers.
pub fn ds_cover_from_equicontinuity(
    family: &FunctionFamily,
    delta: f64,
    eps: f64,
) -> Result<PointSynthesis, ConditionError> {
    require_positive("delta", delta)?;
    precondition(check_equicontinuity(family, delta, eps)?)?;
    let space = family.domain();
    let radius = delta / 2.0;
    let centers = greedy_open_centers(space.len(), |a, b| space.d(a, b), radius);
    let parts = centers.iter().map(|&c| space.open_ball(c, radius)).collect();
    let cover = PointCover::new(parts);
    let report = postcondition(check_ds(family, &cover, eps)?)?;
    Ok(PointSynthesis { cover, representatives: centers, report })
}

/// Equicontinuity radius of a (DS) cover: its Lebesgue number.
pub fn equicontinuity_from_ds(
    family: &FunctionFamily,
    cover: &PointCover,
    eps: f64,
) -> Result<DeltaSynthesis, ConditionError> {
    precondition(check_ds(family, cover, eps)?)?;
    let delta = lebesgue_delta(family.domain(), cover);
    let report = postcondition(check_equicontinuity(family, delta, eps)?)?;
    Ok(DeltaSynthesis { delta, report })
}

/// Cover of `X̃_δ` by open `d_∞`-balls of radius `r/2` on which the
/// quotients of `A − A` oscillate by at most `eps`.
///
/// `r` satisfies `φ(r) ≤ m²ε/(8M²)` and `|φ(t) − φ(s)| ≤ m²ε/(8M)` for
/// `|t − s| ≤ 2r`.
pub fn synthesize_tilde_cover(
    family: &FunctionFamily,
    phi: &ComparisonFunction,
    delta: f64,
    eps: f64,
) -> Result<TildeSynthesis, ConditionError> {
    require_positive("delta", delta)?;
    require_positive("eps", eps)?;
    let space = family.domain();
    if space.len() < 2 {
        return Err(ConditionError::DegenerateSpace);
    }
    let tilde = space.tube_complement(delta);
    if tilde.is_empty() {
        return Err(ConditionError::EmptyTilde(delta));
    }
    let m = tilde.iter().map(|&(x, y)| phi.value(space.d(x, y))).fold(f64::INFINITY, f64::min);
    let mut big_m = phi.value(space.diameter());
    for f in family.members() {
        big_m = big_m.max(family.blip_norm(f, phi)?);
    }
    let bound = (m * m * eps / (8.0 * big_m * big_m)).min(m * m * eps / (8.0 * big_m));
    let radius = modulus_radius(phi, space.diameter(), bound)?;
    let r = radius.radius;
    let half = r / 2.0;
    let centers = greedy_open_centers(tilde.len(), |a, b| space.dist_inf(tilde[a], tilde[b]), half);
    let parts: Vec<Vec<Pair>> = centers
        .iter()
        .map(|&c| tilde.iter().copied().filter(|&p| space.dist_inf(tilde[c], p) < half).collect())
        .collect();
    let cover = PairCover::new(parts);
    let report =
        postcondition(pair_oscillation(&family.difference_family(), OscillationKind::L, phi, &cover, eps)?)?;
    Ok(TildeSynthesis { cover, delta, m, big_m, r, phi_r: radius.value, bound, report })
}

/// Localizes an (L) cover of `A − A`: parts `U_i ∩ (B(x_j, 1/n) × B(x_j, 1/n))`
/// for greedy diagonal centers `x_j`, and `δ` from [`crate::metric::max_tube_delta`].
pub fn lambda_from_l(
    family: &FunctionFamily,
    phi: &ComparisonFunction,
    l_cover: &PairCover,
    eps: f64,
    n: u32,
) -> Result<LambdaSynthesis, ConditionError> {
    if n == 0 {
        return Err(ConditionError::InvalidParameter("n must be positive".into()));
    }
    let diff = family.difference_family();
    precondition(check_l(&diff, phi, l_cover, eps)?)?;
    let space = family.domain();
    let diag = DiagonalBallCover::greedy(space, 1.0 / f64::from(n));
    let delta = max_tube_delta(space, &diag)?.value(space);
    let mut parts = Vec::new();
    for u in &l_cover.parts {
        for &c in &diag.centers {
            let inside = |x: usize| space.d(c, x) < diag.radius;
            let v: Vec<Pair> = u.iter().copied().filter(|&(x, y)| inside(x) && inside(y)).collect();
            if !v.is_empty() {
                parts.push(v);
            }
        }
    }
    let cover = PairCover::new(parts);
    let report = postcondition(check_lambda(&diff, phi, eps, n, delta, &cover)?)?;
    Ok(LambdaSynthesis { witness: LambdaWitness { delta, n, cover }, centers: diag.centers, report })
}

/// Evaluates the explicit bounds on `sup ‖f‖_∞` and `sup |f|_φ` implied by a
/// localized cover at level `eps`, anchored at the first pair of each part
/// and the first member.
pub fn boundedness_bootstrap(
    family: &FunctionFamily,
    phi: &ComparisonFunction,
    witness: &LambdaWitness,
    eps: f64,
) -> Result<Bootstrap, ConditionError> {
    let space = family.domain();
    let n = space.len();
    let f0 = family.member(0);
    let mut r = 0.0f64;
    for x in 0..n {
        for y in 0..n {
            r = r.max(phi.value(space.d(x, y)));
        }
        r = r.max(family.norm_at(f0, x));
        for g in family.members() {
            r = r.max(family.norm_kind().dist(g.at(x), f0.at(x)));
        }
    }
    let anchor_phi = witness
        .cover
        .parts
        .iter()
        .filter_map(|p| p.first())
        .map(|&(a, b)| phi.value(space.d(a, b)))
        .fold(f64::INFINITY, f64::min);
    let sup_norm = family.members().iter().map(|f| family.sup_norm(f)).fold(0.0, f64::max);
    let near = if anchor_phi.is_finite() { 2.0 * r * r / anchor_phi } else { 0.0 };
    let sup_bound = (2.0 + eps) * r + near;

    let mut lip_seminorm = 0.0f64;
    for f in family.members() {
        lip_seminorm = lip_seminorm.max(family.lip_seminorm(f, phi)?);
    }
    let union = witness.cover.union();
    let far_phi = space
        .off_diagonal_indices()
        .filter(|p| !union.contains(p))
        .map(|(a, b)| phi.value(space.d(a, b)))
        .fold(f64::INFINITY, f64::min);
    let mut lip_bound = 0.0f64;
    if anchor_phi.is_finite() {
        lip_bound = lip_bound.max(eps + 4.0 * sup_norm / anchor_phi + family.lip_seminorm(f0, phi)?);
    }
    if far_phi.is_finite() {
        lip_bound = lip_bound.max(2.0 * sup_norm / far_phi);
    }
    let holds = sup_norm <= sup_bound + TOL && lip_seminorm <= lip_bound + TOL;
    Ok(Bootstrap { r, sup_norm, sup_bound, lip_seminorm, lip_bound, holds })
}

/// (L) cover of `A − A` from a localized witness: the witness parts near the
/// diagonal, plus the cover of `X̃_{δ/4}` at `eps/2` with every pair of tube
/// depth `≤ δ/2` removed.
pub fn l_from_lambda(
    family: &FunctionFamily,
    phi: &ComparisonFunction,
    witness: &LambdaWitness,
    eps: f64,
) -> Result<LSynthesis, ConditionError> {
    require_positive("eps", eps)?;
    let diff = family.difference_family();
    precondition(check_lambda_witness(&diff, phi, eps, witness)?)?;
    let bootstrap = boundedness_bootstrap(family, phi, witness, eps)?;
    if !bootstrap.holds {
        return Err(ConditionError::PostconditionFailed {
            condition: Condition::Lambda,
            eps,
            achieved: bootstrap.sup_norm.max(bootstrap.lip_seminorm),
        });
    }
    let space = family.domain();
    let delta = witness.delta;
    let far = match synthesize_tilde_cover(family, phi, delta / 4.0, eps / 2.0) {
        Ok(t) => t.cover.parts,
        Err(ConditionError::EmptyTilde(_)) => Vec::new(),
        Err(e) => return Err(e),
    };
    let mut parts = witness.cover.parts.clone();
    for w in far {
        let kept: Vec<Pair> = w.into_iter().filter(|&(a, b)| space.tube_depth(a, b) > delta / 2.0).collect();
        if !kept.is_empty() {
            parts.push(kept);
        }
    }
    let cover = PairCover::new(parts);
    let report = postcondition(check_l(&diff, phi, &cover, eps)?)?;
    Ok(LSynthesis { cover, bootstrap, report })
}

/// Localized witness from uniform local flatness at `eps/2` with radius
/// `flat_delta`: products of diagonal balls of radius `1/m`,
/// `m = max(n, ⌈2/flat_delta⌉)`, intersected with `X̃`.
pub fn lambda_from_flatness(
    family: &FunctionFamily,
    phi: &ComparisonFunction,
    eps: f64,
    n: u32,
    flat_delta: f64,
) -> Result<LambdaSynthesis, ConditionError> {
    require_positive("flat_delta", flat_delta)?;
    if n == 0 {
        return Err(ConditionError::InvalidParameter("n must be positive".into()));
    }
    precondition(check_uniform_local_flatness(family, phi, flat_delta, eps / 2.0)?)?;
    let need = (2.0 / flat_delta).ceil();
    if need > f64::from(u32::MAX) {
        return Err(ConditionError::InvalidParameter(format!("flat_delta = {flat_delta} is too small")));
    }
    let m = n.max(need as u32);
    let space = family.domain();
    let diag = DiagonalBallCover::greedy(space, 1.0 / f64::from(m));
    let delta = max_tube_delta(space, &diag)?.value(space);
    let parts: Vec<Vec<Pair>> = diag
        .centers
        .iter()
        .map(|&c| {
            let ball = space.open_ball(c, diag.radius);
            ball.iter().flat_map(|&x| ball.iter().map(move |&y| (x, y))).filter(|(x, y)| x != y).collect::<Vec<_>>()
        })
        .filter(|p: &Vec<Pair>| !p.is_empty())
        .collect();
    let cover = PairCover::new(parts);
    let report = postcondition(check_lambda(&family.difference_family(), phi, eps, n, delta, &cover)?)?;
    Ok(LambdaSynthesis { witness: LambdaWitness { delta, n, cover }, centers: diag.centers, report })
}

/// Largest distance or half distance strictly below `bad`, or the diameter
/// when nothing is bad.
fn largest_candidate_below(space: &FiniteMetricSpace, bad: f64) -> f64 {
    if bad.is_infinite() {
        return space.diameter();
    }
    space.distinct_distances().into_iter().flat_map(|d| [d, 0.5 * d]).filter(|&c| c < bad).fold(0.0, f64::max)
}

/// Smallest distance of a pair on which `violates` holds.
fn first_bad(space: &FiniteMetricSpace, violates: impl Fn(usize, usize) -> bool) -> f64 {
    let n = space.len();
    (0..n)
        .flat_map(|x| ((x + 1)..n).map(move |y| (x, y)))
        .filter(|&(x, y)| violates(x, y))
        .map(|(x, y)| space.d(x, y))
        .fold(f64::INFINITY, f64::min)
}

/// Largest candidate `δ` with `‖f(x) − f(y)‖ ≤ eps` whenever `d(x, y) ≤ δ`.
pub fn equicontinuity_radius(family: &FunctionFamily, eps: f64) -> f64 {
    let space = family.domain();
    let bad = first_bad(space, |x, y| family.members().iter().any(|f| family.increment(f, x, y) > eps));
    largest_candidate_below(space, bad)
}

/// Largest candidate `δ` with every quotient `≤ eps` on pairs with `d ≤ δ`.
pub fn flatness_radius(family: &FunctionFamily, phi: &ComparisonFunction, eps: f64) -> f64 {
    let space = family.domain();
    let bad = first_bad(space, |x, y| family.members().iter().any(|f| family.quotient(f, phi, x, y) > eps));
    largest_candidate_below(space, bad)
}

/// Flatness radius of `A` from an `eps/2`-net (in the Lipschitz norm) of
/// members: the largest candidate at which every net member is `eps/2`-flat.
pub fn flatness_from_net(
    family: &FunctionFamily,
    phi: &ComparisonFunction,
    net: &[usize],
    eps: f64,
) -> Result<DeltaSynthesis, ConditionError> {
    require_positive("eps", eps)?;
    if let Some(&k) = net.iter().find(|&&k| k >= family.len()) {
        return Err(crate::family::FamilyError::MemberOutOfRange(k).into());
    }
    for (k, f) in family.members().iter().enumerate() {
        let mut distance = f64::INFINITY;
        for &j in net {
            distance = distance.min(family.lip_norm(&f.sub(family.member(j)), phi)?);
        }
        if distance > eps / 2.0 + TOL / 2.0 {
            return Err(ConditionError::NotANet { member: k, distance });
        }
    }
    let space = family.domain();
    let limit = eps / 2.0 + TOL / 4.0;
    let bad = first_bad(space, |x, y| net.iter().any(|&j| family.quotient(family.member(j), phi, x, y) > limit));
    let delta = largest_candidate_below(space, bad);
    let report = postcondition(check_uniform_local_flatness(family, phi, delta, eps)?)?;
    Ok(DeltaSynthesis { delta, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::SampledFunction;

    fn line(coords: &[f64]) -> FiniteMetricSpace {
        FiniteMetricSpace::from_line(coords).unwrap()
    }

    fn scalar_family(space: FiniteMetricSpace, members: &[&[f64]]) -> FunctionFamily {
        let m = members.iter().map(|v| SampledFunction::scalar(v).unwrap()).collect();
        FunctionFamily::new(space, NormKind::Sup, 0, m).unwrap()
    }

    fn sample() -> FunctionFamily {
        let s = line(&[0.0, 0.3, 0.7, 1.0, 1.6, 2.0]);
        scalar_family(
            s,
            &[&[0.0, 0.3, 0.7, 1.0, 1.6, 2.0], &[1.0, 0.9, 0.4, 0.0, -0.2, 0.1], &[0.5, 0.5, 0.5, 0.6, 0.6, 0.6]],
        )
    }

    #[test]
    fn singleton_b_cover_is_trivial() {
        let f = scalar_family(line(&[0.0, 1.0, 2.0]), &[&[3.0, -1.0, 2.0]]);
        let s = synthesize_b_cover(&f, 0.1, &[0], None).unwrap();
        assert_eq!(s.cover, PointCover::trivial(3));
    }

    #[test]
    fn b_cover_pipeline() {
        let f = sample();
        for eps in [1.0, 0.5, 0.25] {
            let y = greedy_equinorm_subset(&f.difference_family(), eps / 16.0);
            let s = synthesize_b_cover(&f, eps, &y, None).unwrap();
            assert!(s.report.passed());
            let w = equinorm_witness_from_b(&f.difference_family(), &s.cover, eps).unwrap();
            assert!(w.report.passed());
        }
    }

    #[test]
    fn b_cover_rejects_bad_subset_and_net() {
        let f = sample();
        assert!(matches!(
            synthesize_b_cover(&f, 0.5, &[0], None),
            Err(ConditionError::EquinormPreconditionFailed { .. })
        ));
        let y: Vec<usize> = (0..6).collect();
        let net = vec![vec![100.0]];
        assert!(matches!(synthesize_b_cover(&f, 0.5, &y, Some(&net)), Err(ConditionError::NetPreconditionFailed(_))));
    }

    #[test]
    fn ds_from_b_pipeline() {
        let f = sample();
        let eps = 0.5;
        let y = greedy_equinorm_subset(&f.difference_family(), eps / 128.0);
        let b = synthesize_b_cover(&f, eps / 8.0, &y, None).unwrap();
        let ds = synthesize_ds_from_b(&f, &b.cover, eps, None).unwrap();
        assert!(ds.report.passed());
        assert!(matches!(
            synthesize_ds_from_b(&f, &PointCover::trivial(6), eps, None),
            Err(ConditionError::PreconditionFailed { condition: Condition::B, .. })
        ));
    }

    #[test]
    fn equicontinuity_round_trip() {
        let f = scalar_family(line(&[0.0, 0.5, 1.0, 1.5]), &[&[0.0, 0.5, 1.0, 1.5]]);
        let ds = ds_cover_from_equicontinuity(&f, 0.5, 0.5).unwrap();
        assert!(ds.report.passed());
        let back = equicontinuity_from_ds(&f, &ds.cover, 0.5).unwrap();
        assert!(back.delta > 0.0);
        let c = scalar_family(line(&[0.0, 1.0, 2.0]), &[&[4.0, 4.0, 4.0]]);
        assert_eq!(ds_cover_from_equicontinuity(&c, 5.0, 0.0).unwrap().cover.len(), 1);
        assert!(matches!(ds_cover_from_equicontinuity(&f, 0.5, 0.2), Err(ConditionError::PreconditionFailed { .. })));
    }

    #[test]
    fn tilde_cover_constants() {
        let f = sample();
        let phi = ComparisonFunction::power(0.5).unwrap();
        let t = synthesize_tilde_cover(&f, &phi, 0.15, 0.5).unwrap();
        assert!(t.report.passed());
        assert!(t.phi_r <= t.m * t.m * 0.5 / (8.0 * t.big_m * t.big_m) + 1e-15);
        assert!(matches!(synthesize_tilde_cover(&f, &phi, 10.0, 0.5), Err(ConditionError::EmptyTilde(_))));
    }

    #[test]
    fn lambda_l_round_trip() {
        let f = sample();
        let id = ComparisonFunction::identity();
        let eps = 0.5;
        let l = synthesize_tilde_cover(&f, &id, 0.15, eps).unwrap();
        let lam = lambda_from_l(&f, &id, &l.cover, eps, 2).unwrap();
        assert!(lam.report.passed());
        let back = l_from_lambda(&f, &id, &lam.witness, eps).unwrap();
        assert!(back.report.passed());
        assert!(back.bootstrap.holds);
    }

    #[test]
    fn flatness_round_trip() {
        let s = line(&[0.0, 0.25, 0.5, 0.75, 1.0]);
        let f = scalar_family(s, &[&[0.0, 0.25, 0.5, 0.75, 1.0], &[0.0, 0.0, 0.0, 0.0, 0.0]]);
        let root = ComparisonFunction::power(0.5).unwrap();
        let eps = 1.0;
        let eta = flatness_radius(&f, &root, eps / 2.0);
        assert_eq!(eta, 0.375);
        let lam = lambda_from_flatness(&f, &root, eps, 1, eta).unwrap();
        assert!(lam.report.passed());
        let back = l_from_lambda(&f, &root, &lam.witness, eps).unwrap();
        assert!(back.report.passed());
        let d = flatness_from_net(&f, &root, &[0, 1], eps).unwrap();
        assert!(d.report.passed());
        assert!(matches!(flatness_from_net(&f, &root, &[1], eps), Err(ConditionError::NotANet { member: 0, .. })));
    }
}
