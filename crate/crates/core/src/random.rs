//! Seeded random instances. All generation goes through a `ChaCha8Rng`, so a
//! seed fixes every space, family and gauge.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::comparison::ComparisonFunction;
use crate::family::{FunctionFamily, NormKind, SampledFunction};
use crate::metric::FiniteMetricSpace;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size limits for [`random_instance`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstanceShape {
    pub max_points: usize,
    pub max_members: usize,
    pub max_dim: usize,
}

impl Default for InstanceShape {
    fn default() -> Self {
        InstanceShape { max_points: 10, max_members: 8, max_dim: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub family: FunctionFamily,
    pub phi: ComparisonFunction,
}

/// `n` distinct points of `[0, 1]^k` under the Euclidean distance, pairwise
/// at least `1e-3` apart.
pub fn random_space<R: Rng>(rng: &mut R, n: usize, k: usize) -> FiniteMetricSpace {
    let points = random_coords(rng, n, k.max(1));
    FiniteMetricSpace::from_euclidean(&points).expect("distinct points form a metric space")
}

/// Identity, a power `t^α` with `α ∈ [0.3, 1]`, `ln(1 + t)`, or a concave
/// piecewise-linear gauge with two or three pieces.
pub fn random_phi<R: Rng>(rng: &mut R) -> ComparisonFunction {
    match rng.gen_range(0..4) {
        0 => ComparisonFunction::identity(),
        1 => ComparisonFunction::power(rng.gen_range(0.3..=1.0)).expect("exponent in range"),
        2 => ComparisonFunction::Log1p,
        _ => {
            let pieces = rng.gen_range(2..=3);
            let mut slopes: Vec<f64> = (0..pieces).map(|_| rng.gen_range(0.2..2.0)).collect();
            slopes.sort_by(|a, b| b.total_cmp(a));
            let mut breakpoints = vec![(0.0, 0.0)];
            let (mut t, mut v) = (0.0, 0.0);
            for s in slopes {
                let step = rng.gen_range(0.1..0.6);
                t += step;
                v += s * step;
                breakpoints.push((t, v));
            }
            ComparisonFunction::pwl(breakpoints).expect("increasing breakpoints")
        }
    }
}

/// A map into `ℝ^dim` sampled on `n` points: independent uniform values in
/// `[-scale, scale]`.
pub fn random_function<R: Rng>(rng: &mut R, n: usize, dim: usize, scale: f64) -> SampledFunction {
    SampledFunction::from_fn(n, dim, |_| (0..dim).map(|_| rng.gen_range(-scale..=scale)).collect())
        .expect("finite values")
}

/// A smoother map: a random affine function of the coordinates plus a small
/// random perturbation. `coords` are the points the space was built from.
pub fn random_affine<R: Rng>(rng: &mut R, coords: &[Vec<f64>], dim: usize) -> SampledFunction {
    let k = coords.first().map_or(0, Vec::len);
    let weights: Vec<Vec<f64>> = (0..dim).map(|_| (0..k).map(|_| rng.gen_range(-1.0..=1.0)).collect()).collect();
    let offset: Vec<f64> = (0..dim).map(|_| rng.gen_range(-0.5..=0.5)).collect();
    let noise = rng.gen_range(0.0..0.2);
    SampledFunction::from_fn(coords.len(), dim, |x| {
        (0..dim)
            .map(|c| {
                offset[c] + weights[c].iter().zip(&coords[x]).map(|(w, v)| w * v).sum::<f64>() + noise * rng.gen_range(-1.0..=1.0)
            })
            .collect()
    })
    .expect("finite values")
}

pub fn random_norm<R: Rng>(rng: &mut R) -> NormKind {
    *[NormKind::Sup, NormKind::Euclid, NormKind::L1].choose(rng).expect("non-empty")
}

/// A random instance within `shape`: at least two points, at least one
/// member, members mixing affine maps of the coordinates with arbitrary
/// values.
pub fn random_instance<R: Rng>(rng: &mut R, shape: InstanceShape) -> Instance {
    let n = rng.gen_range(2..=shape.max_points.max(2));
    let k = rng.gen_range(1..=3);
    let coords = random_coords(rng, n, k);
    let space = FiniteMetricSpace::from_euclidean(&coords).expect("distinct points form a metric space");
    let m = rng.gen_range(1..=shape.max_members.max(1));
    let dim = rng.gen_range(1..=shape.max_dim.max(1));
    let norm = random_norm(rng);
    let members = (0..m)
        .map(|_| {
            if rng.gen_bool(0.5) {
                random_affine(rng, &coords, dim)
            } else {
                let scale = rng.gen_range(0.1..=2.0);
                random_function(rng, n, dim, scale)
            }
        })
        .collect();
    let base = rng.gen_range(0..n);
    let phi = random_phi(rng);
    let family = FunctionFamily::new(space, norm, base, members).expect("consistent shapes");
    Instance { family: family.with_phi(phi.clone()), phi }
}

fn random_coords<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<Vec<f64>> {
    let mut points: Vec<Vec<f64>> = Vec::with_capacity(n);
    while points.len() < n {
        let p: Vec<f64> = (0..k).map(|_| rng.gen::<f64>()).collect();
        if points.iter().all(|q| p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt() >= 1e-3) {
            points.push(p);
        }
    }
    points
}
