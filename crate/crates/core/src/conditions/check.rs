use crate::comparison::ComparisonFunction;
use crate::family::FunctionFamily;
use crate::metric::{Cover, PairCover, PairSpace, PointCover};

use super::{
    require_eps, require_positive, Condition, ConditionError, ConditionReport, LambdaWitness, OscillationKind,
    Profile, Side, Witness,
};

/// `‖f‖_∞ ≤ eps + ‖f‖_Y` for every member; `achieved` is the largest excess.
pub fn check_equinormed(family: &FunctionFamily, subset: &[usize], eps: f64) -> Result<ConditionReport, ConditionError> {
    require_eps(eps)?;
    if subset.is_empty() {
        return Err(ConditionError::EmptySubset);
    }
    let mut achieved = 0.0f64;
    let mut worst = None;
    for (k, f) in family.members().iter().enumerate() {
        let excess = family.sup_norm(f) - family.seminorm(f, subset)?;
        if excess > achieved || worst.is_none() {
            let point = (0..family.points()).fold(0, |b, x| if family.norm_at(f, x) > family.norm_at(f, b) { x } else { b });
            if excess > achieved {
                achieved = excess;
            }
            worst = Some(Witness::Member { member: k, point });
        }
    }
    Ok(ConditionReport::new(
        Condition::Equinormed,
        eps,
        achieved,
        worst,
        Some(Witness::Subset { subset: subset.to_vec() }),
    ))
}

fn check_points(
    family: &FunctionFamily,
    kind: OscillationKind,
    cover: &PointCover,
    eps: f64,
) -> Result<ConditionReport, ConditionError> {
    require_eps(eps)?;
    cover.validate(family.points())?;
    let profile = Profile::build(family, kind, None, &[])?;
    let mut achieved = 0.0;
    let mut worst = None;
    for (i, part) in cover.parts.iter().enumerate() {
        let o = profile.part_oscillation(part);
        if o.value > achieved || worst.is_none() {
            achieved = o.value.max(achieved);
            worst = Some(Witness::Points { part: Some(i), x: o.a, y: o.b, member: o.member });
        }
    }
    Ok(ConditionReport::new(kind.condition(), eps, achieved, worst, Some(Witness::Cover { cover: cover.clone().into() })))
}

/// Largest `|‖f(x)‖ − ‖f(y)‖|` over parts, `x, y` in a part, and members.
pub fn check_b(family: &FunctionFamily, cover: &PointCover, eps: f64) -> Result<ConditionReport, ConditionError> {
    check_points(family, OscillationKind::B, cover, eps)
}

/// Largest `‖f(x) − f(y)‖` over parts, `x, y` in a part, and members.
pub fn check_ds(family: &FunctionFamily, cover: &PointCover, eps: f64) -> Result<ConditionReport, ConditionError> {
    check_points(family, OscillationKind::DS, cover, eps)
}

/// Largest `‖f(x) − f(y)‖` over members and pairs with `d(x, y) ≤ delta`.
pub fn check_equicontinuity(family: &FunctionFamily, delta: f64, eps: f64) -> Result<ConditionReport, ConditionError> {
    require_eps(eps)?;
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(ConditionError::InvalidParameter(format!("delta = {delta} must be finite and non-negative")));
    }
    let space = family.domain();
    let n = space.len();
    let mut achieved = 0.0;
    let mut worst = None;
    for x in 0..n {
        for y in (x + 1)..n {
            if space.d(x, y) > delta {
                continue;
            }
            for (k, f) in family.members().iter().enumerate() {
                let v = family.increment(f, x, y);
                if v > achieved || worst.is_none() {
                    achieved = v.max(achieved);
                    worst = Some(Witness::Points { part: None, x, y, member: k });
                }
            }
        }
    }
    Ok(ConditionReport::new(Condition::Equicontinuity, eps, achieved, worst, None))
}

fn pair_parts(pairs: &PairSpace<'_>, cover: &PairCover) -> Vec<Vec<usize>> {
    cover
        .parts
        .iter()
        .map(|part| part.iter().map(|&p| pairs.index_of(p).expect("validated pair")).collect())
        .collect()
}

fn check_pairs(
    family: &FunctionFamily,
    kind: OscillationKind,
    phi: &ComparisonFunction,
    cover: &PairCover,
    eps: f64,
) -> Result<ConditionReport, ConditionError> {
    cover.validate_full(family.points())?;
    pair_oscillation(family, kind, phi, cover, eps)
}

/// Oscillation of `kind` (L or LDS) within each part of a cover of some of the
/// off-diagonal pairs; coverage of the whole pair space is not required.
pub fn pair_oscillation(
    family: &FunctionFamily,
    kind: OscillationKind,
    phi: &ComparisonFunction,
    cover: &PairCover,
    eps: f64,
) -> Result<ConditionReport, ConditionError> {
    require_eps(eps)?;
    if !kind.on_pairs() {
        return Err(ConditionError::AmbientMismatch("points"));
    }
    let space = family.domain();
    let pairs = space.off_diagonal().map_err(|_| ConditionError::DegenerateSpace)?;
    cover.validate_parts(space.len())?;
    let profile = Profile::build(family, kind, Some(phi), pairs.pairs())?;
    let parts = pair_parts(&pairs, cover);
    let mut achieved = 0.0;
    let mut worst = None;
    for (i, part) in parts.iter().enumerate() {
        let o = profile.part_oscillation(part);
        if o.value > achieved || worst.is_none() {
            achieved = o.value.max(achieved);
            worst = Some(Witness::Pairs { part: i, p: pairs.pairs()[o.a], q: pairs.pairs()[o.b], member: o.member });
        }
    }
    let report =
        ConditionReport::new(kind.condition(), eps, achieved, worst, Some(Witness::Cover { cover: cover.clone().into() }));
    Ok(report.with_peak(profile.peak()))
}

/// Oscillation of the quotient `‖f(x) − f(y)‖ / φ(d(x, y))` within each part
/// of a cover of the off-diagonal pairs. `peak` is the largest quotient.
pub fn check_l(
    family: &FunctionFamily,
    phi: &ComparisonFunction,
    cover: &PairCover,
    eps: f64,
) -> Result<ConditionReport, ConditionError> {
    check_pairs(family, OscillationKind::L, phi, cover, eps)
}

/// Oscillation of the de Leeuw vectors within each part. `peak` is the
/// largest `‖Φ(f)‖`.
pub fn check_lds(
    family: &FunctionFamily,
    phi: &ComparisonFunction,
    cover: &PairCover,
    eps: f64,
) -> Result<ConditionReport, ConditionError> {
    check_pairs(family, OscillationKind::LDS, phi, cover, eps)
}

/// Verifies `tube(δ) ∩ X̃ ⊆ ⋃ Uᵢ ⊆ tube(1/n) ∩ X̃` exactly, then the
/// quotient oscillation `sup − inf` within each part.
pub fn check_lambda(
    family: &FunctionFamily,
    phi: &ComparisonFunction,
    eps: f64,
    n: u32,
    delta: f64,
    cover: &PairCover,
) -> Result<ConditionReport, ConditionError> {
    require_eps(eps)?;
    require_positive("delta", delta)?;
    if n == 0 {
        return Err(ConditionError::InvalidParameter("n must be positive".into()));
    }
    let space = family.domain();
    let pairs = space.off_diagonal().map_err(|_| ConditionError::DegenerateSpace)?;
    cover.validate_parts(space.len())?;
    let union = cover.union();
    if let Some(&p) = pairs.pairs().iter().find(|&&(a, b)| space.in_tube(a, b, delta) && !union.contains(&(a, b))) {
        return Err(ConditionError::SandwichViolation { side: Side::Inner, pair: p });
    }
    let outer = 1.0 / f64::from(n);
    if let Some(&p) = cover.parts.iter().flatten().find(|&&(a, b)| !space.in_tube(a, b, outer)) {
        return Err(ConditionError::SandwichViolation { side: Side::Outer, pair: p });
    }
    let profile = Profile::build(family, OscillationKind::L, Some(phi), pairs.pairs())?;
    let parts = pair_parts(&pairs, cover);
    let mut achieved = 0.0;
    let mut worst = None;
    for (i, part) in parts.iter().enumerate() {
        let o = profile.part_oscillation(part);
        if o.value > achieved || worst.is_none() {
            achieved = o.value.max(achieved);
            worst = Some(Witness::Pairs { part: i, p: pairs.pairs()[o.a], q: pairs.pairs()[o.b], member: o.member });
        }
    }
    let witness = Witness::Lambda(LambdaWitness { delta, n, cover: cover.clone() });
    Ok(ConditionReport::new(Condition::Lambda, eps, achieved, worst, Some(witness)))
}

/// [`check_lambda`] with the radius, `n` and cover taken from a witness.
pub fn check_lambda_witness(
    family: &FunctionFamily,
    phi: &ComparisonFunction,
    eps: f64,
    witness: &LambdaWitness,
) -> Result<ConditionReport, ConditionError> {
    check_lambda(family, phi, eps, witness.n, witness.delta, &witness.cover)
}

/// Largest quotient `‖f(x) − f(y)‖ / φ(d(x, y))` over members and pairs with
/// `0 < d(x, y) ≤ delta`.
pub fn check_uniform_local_flatness(
    family: &FunctionFamily,
    phi: &ComparisonFunction,
    delta: f64,
    eps: f64,
) -> Result<ConditionReport, ConditionError> {
    require_eps(eps)?;
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(ConditionError::InvalidParameter(format!("delta = {delta} must be finite and non-negative")));
    }
    let space = family.domain();
    let n = space.len();
    let mut achieved = 0.0;
    let mut worst = None;
    for x in 0..n {
        for y in (x + 1)..n {
            if space.d(x, y) > delta {
                continue;
            }
            for (k, f) in family.members().iter().enumerate() {
                let q = family.quotient(f, phi, x, y);
                if q > achieved || worst.is_none() {
                    achieved = q.max(achieved);
                    worst = Some(Witness::Points { part: None, x, y, member: k });
                }
            }
        }
    }
    Ok(ConditionReport::new(Condition::UniformLocalFlatness, eps, achieved, worst, None))
}

/// Dispatches (B), (DS), (L) or (LDS) on a cover of the matching ambient set.
pub fn check_cover(
    family: &FunctionFamily,
    kind: OscillationKind,
    phi: Option<&ComparisonFunction>,
    cover: &Cover,
    eps: f64,
) -> Result<ConditionReport, ConditionError> {
    let need_phi = || phi.ok_or_else(|| ConditionError::InvalidParameter("comparison function required".into()));
    match (kind, cover) {
        (OscillationKind::B, Cover::Points(c)) => check_b(family, c, eps),
        (OscillationKind::DS, Cover::Points(c)) => check_ds(family, c, eps),
        (OscillationKind::L, Cover::Pairs(c)) => check_l(family, need_phi()?, c, eps),
        (OscillationKind::LDS, Cover::Pairs(c)) => check_lds(family, need_phi()?, c, eps),
        (OscillationKind::B | OscillationKind::DS, _) => Err(ConditionError::AmbientMismatch("points")),
        (OscillationKind::L | OscillationKind::LDS, _) => Err(ConditionError::AmbientMismatch("pairs")),
    }
}
