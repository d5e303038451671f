//! Exhaustive ground truth for tiny instances: internal covering numbers,
//! minimal oscillation over all covers with a bounded number of parts, and
//! the pigeonhole witness on zero-one sequences.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::comparison::ComparisonFunction;
use crate::conditions::{ConditionError, OscillationKind, Profile};
use crate::family::FunctionFamily;
use crate::metric::{greedy_eps_net, FiniteMetricSpace, MetricError, Pair, PointCover};

/// Largest space accepted by [`exact_covering_number`].
pub const MAX_COVERING_POINTS: usize = 16;
/// Largest ambient set accepted by [`exact_min_oscillation`].
pub const MAX_AMBIENT: usize = 8;
/// Largest parts budget accepted by [`exact_min_oscillation`].
pub const MAX_PARTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{what} has size {size}, the exhaustive cap is {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },
    #[error("no k with 2^(k-1) > {parts} among the available sequence positions")]
    NoWitness { parts: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Condition(#[from] ConditionError),
}

/// Minimal number of closed `eps`-balls centred at points of the space that
/// cover it.
pub fn exact_covering_number(space: &FiniteMetricSpace, eps: f64) -> Result<usize, OracleError> {
    let n = space.len();
    if n > MAX_COVERING_POINTS {
        return Err(OracleError::TooLarge { what: "space", size: n, cap: MAX_COVERING_POINTS });
    }
    if n == 0 {
        return Ok(0);
    }
    let balls: Vec<u32> =
        (0..n).map(|c| (0..n).filter(|&x| space.d(c, x) <= eps).fold(0u32, |m, x| m | (1 << x))).collect();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best = n;
    for centers in 1u32..=full {
        let size = centers.count_ones() as usize;
        if size >= best {
            continue;
        }
        let covered = (0..n).filter(|&c| centers & (1 << c) != 0).fold(0u32, |m, c| m | balls[c]);
        if covered == full {
            best = size;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringProfile {
    pub eps_grid: Vec<f64>,
    pub exact_sizes: Vec<usize>,
    pub greedy_sizes: Vec<usize>,
}

pub fn covering_profile(space: &FiniteMetricSpace, eps_grid: &[f64]) -> Result<CoveringProfile, OracleError> {
    let exact_sizes = eps_grid.iter().map(|&e| exact_covering_number(space, e)).collect::<Result<Vec<_>, _>>()?;
    let greedy_sizes = eps_grid.iter().map(|&e| greedy_eps_net(space, e).len()).collect();
    Ok(CoveringProfile { eps_grid: eps_grid.to_vec(), exact_sizes, greedy_sizes })
}

/// The elements a cover must reach.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "ambient", content = "elements", rename_all = "lowercase")]
pub enum Ambient {
    Points(Vec<usize>),
    Pairs(Vec<Pair>),
}

impl Ambient {
    pub fn len(&self) -> usize {
        match self {
            Ambient::Points(p) => p.len(),
            Ambient::Pairs(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Optimal partition found by [`exact_min_oscillation`]; blocks hold
/// positions in the ambient list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinOscillation {
    pub value: f64,
    pub blocks: Vec<Vec<usize>>,
}

/// Minimum, over all covers of `ambient` with at most `budget` parts, of the
/// worst oscillation of `kind`.
///
/// Any cover can be shrunk to a partition without raising its oscillation,
/// so the scan runs over set partitions (restricted growth strings) with
/// branch and bound.
pub fn exact_min_oscillation(
    family: &FunctionFamily,
    kind: OscillationKind,
    phi: Option<&ComparisonFunction>,
    ambient: &Ambient,
    budget: usize,
) -> Result<MinOscillation, OracleError> {
    let size = ambient.len();
    if size > MAX_AMBIENT {
        return Err(OracleError::TooLarge { what: "ambient set", size, cap: MAX_AMBIENT });
    }
    if budget > MAX_PARTS {
        return Err(OracleError::TooLarge { what: "parts budget", size: budget, cap: MAX_PARTS });
    }
    if budget == 0 {
        return Err(OracleError::InvalidParameter("parts budget must be positive".into()));
    }
    let n = family.points();
    let cost: Vec<Vec<f64>> = match (ambient, kind.on_pairs()) {
        (Ambient::Points(points), false) => {
            if let Some(&x) = points.iter().find(|&&x| x >= n) {
                return Err(OracleError::InvalidParameter(format!("point {x} outside the domain")));
            }
            let profile = Profile::build(family, kind, None, &[])?;
            points.iter().map(|&a| points.iter().map(|&b| profile.max_cost(a, b)).collect()).collect()
        }
        (Ambient::Pairs(pairs), true) => {
            if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n || a == b) {
                return Err(OracleError::InvalidParameter(format!("({a}, {b}) is not an off-diagonal pair")));
            }
            let profile = Profile::build(family, kind, phi, pairs)?;
            (0..size).map(|a| (0..size).map(|b| profile.max_cost(a, b)).collect()).collect()
        }
        _ => return Err(OracleError::InvalidParameter("ambient set does not match the oscillation kind".into())),
    };
    if size == 0 {
        return Ok(MinOscillation { value: 0.0, blocks: Vec::new() });
    }
    let mut search = Search { cost: &cost, budget, best: f64::INFINITY, best_blocks: Vec::new(), blocks: Vec::new() };
    search.run(0, 0.0);
    Ok(MinOscillation { value: search.best, blocks: search.best_blocks })
}

struct Search<'a> {
    cost: &'a [Vec<f64>],
    budget: usize,
    best: f64,
    best_blocks: Vec<Vec<usize>>,
    blocks: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, next: usize, current: f64) {
        if current >= self.best {
            return;
        }
        if next == self.cost.len() {
            self.best = current;
            self.best_blocks = self.blocks.clone();
            return;
        }
        for b in 0..self.blocks.len() {
            let added = self.blocks[b].iter().map(|&e| self.cost[next][e]).fold(current, f64::max);
            self.blocks[b].push(next);
            self.run(next + 1, added);
            self.blocks[b].pop();
        }
        if self.blocks.len() < self.budget {
            self.blocks.push(vec![next]);
            self.run(next + 1, current);
            self.blocks.pop();
        }
    }
}

/// Violating tuple for (B) on `A − A` over zero-one sequences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PigeonholeWitness {
    pub part: usize,
    pub x: usize,
    pub y: usize,
    /// Sequence positions (1-based); members `k − 1` and `l − 1`.
    pub k: usize,
    pub l: usize,
    pub gap: f64,
}

/// Bit `j` (1-based) of the sequence encoded by point `x`.
#[inline]
pub fn sequence_bit(x: usize, j: usize) -> bool {
    x >> (j - 1) & 1 == 1
}

/// Finds two sequences in one part that vanish from position `k` on, where
/// `k` is the least index with `2^(k−1)` exceeding the number of parts, and
/// returns the gap `|‖(f_k − f_l)(x)‖ − ‖(f_k − f_l)(y)‖|` at their first
/// disagreement `l`.
///
/// Point `i` of the family's domain encodes the sequence whose `j`-th term is
/// bit `j − 1` of `i`, and member `j − 1` is `f_j`.
pub fn pigeonhole_b_witness(family: &FunctionFamily, cover: &PointCover) -> Result<PigeonholeWitness, OracleError> {
    let p = family.len();
    let n = family.points();
    if n != 1 << p {
        return Err(OracleError::InvalidParameter(format!("{n} points do not encode sequences of length {p}")));
    }
    cover.validate(n)?;
    let parts = cover.len();
    let k = (1..=p).find(|&k| (1usize << (k - 1)) > parts).ok_or(OracleError::NoWitness { parts })?;
    let membership = cover.membership(n);
    let mut owner: Vec<Option<usize>> = vec![None; parts];
    for (x, parts_of_x) in membership.iter().enumerate().take(1usize << (k - 1)) {
        let part = parts_of_x[0];
        if let Some(y) = owner[part] {
            let l = (1..k).find(|&j| sequence_bit(x, j) != sequence_bit(y, j)).expect("distinct sequences");
            let (x, y) = if sequence_bit(x, l) { (x, y) } else { (y, x) };
            let diff = family.member(k - 1).sub(family.member(l - 1));
            let gap = (family.norm_at(&diff, x) - family.norm_at(&diff, y)).abs();
            return Ok(PigeonholeWitness { part, x, y, k, l, gap });
        }
        owner[part] = Some(x);
    }
    unreachable!("more sequences than parts")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{NormKind, SampledFunction};

    #[test]
    fn covering_numbers() {
        let one = FiniteMetricSpace::from_line(&[0.0]).unwrap();
        assert_eq!(exact_covering_number(&one, 0.1).unwrap(), 1);
        let line = FiniteMetricSpace::from_line(&[0.0, 1.0, 2.0]).unwrap();
        assert_eq!(exact_covering_number(&line, 1.0).unwrap(), 1);
        assert_eq!(exact_covering_number(&line, 0.5).unwrap(), 3);
        let big = FiniteMetricSpace::from_line(&(0..17).map(f64::from).collect::<Vec<_>>()).unwrap();
        assert!(matches!(exact_covering_number(&big, 1.0), Err(OracleError::TooLarge { .. })));
    }

    #[test]
    fn profile_is_consistent() {
        let s = FiniteMetricSpace::from_line(&[0.0, 0.1, 0.5, 1.4, 2.0, 2.2]).unwrap();
        let prof = covering_profile(&s, &[0.05, 0.2, 0.5, 1.0, 3.0]).unwrap();
        for (e, g) in prof.exact_sizes.iter().zip(&prof.greedy_sizes) {
            assert!(e <= g);
        }
        assert_eq!(*prof.exact_sizes.last().unwrap(), 1);
    }

    #[test]
    fn min_oscillation_basics() {
        let s = FiniteMetricSpace::from_line(&[0.0, 1.0, 2.0]).unwrap();
        let f = FunctionFamily::new(s, NormKind::Sup, 0, vec![SampledFunction::scalar(&[0.0, 1.0, 5.0]).unwrap()])
            .unwrap();
        let single = exact_min_oscillation(&f, OscillationKind::DS, None, &Ambient::Points(vec![1]), 1).unwrap();
        assert_eq!(single.value, 0.0);
        let two = exact_min_oscillation(&f, OscillationKind::DS, None, &Ambient::Points(vec![0, 1, 2]), 2).unwrap();
        assert_eq!(two.value, 1.0);
        assert_eq!(two.blocks, vec![vec![0, 1], vec![2]]);
        assert!(matches!(
            exact_min_oscillation(&f, OscillationKind::DS, None, &Ambient::Points(vec![0]), 5),
            Err(OracleError::TooLarge { .. })
        ));
    }
}
