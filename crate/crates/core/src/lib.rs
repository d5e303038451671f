//! Finite, checkable certificates for compactness conditions on spaces of
//! bounded, continuous and Lipschitz maps.
//!
//! Everything here works on finite data: a [`FiniteMetricSpace`] with an
//! explicit distance matrix, a [`FunctionFamily`] of vector-valued maps sampled
//! on that space, and finite covers of either the points or the off-diagonal
//! pair space. The [`conditions`] module checks a condition for a given cover
//! and tolerance, and synthesizes the covers built by the constructive
//! arguments behind each equivalence. The [`oracle`] module provides
//! brute-force ground truth for small instances.

pub mod comparison;
pub mod conditions;
pub mod family;
pub mod fixtures;
pub mod io;
pub mod metric;
pub mod oracle;
pub mod random;

pub use comparison::{ComparisonError, ComparisonFunction};
pub use conditions::{Condition, ConditionError, ConditionReport, Verdict, Witness};
pub use family::{FamilyError, FunctionFamily, NormKind, PairFunction, SampledFunction};
pub use metric::{Cover, FiniteMetricSpace, MetricError, Pair, PairCover, PairSpace, PointCover, TubeRadius};

/// Absolute slack applied to every `≤` comparison on derived quantities.
pub const TOL: f64 = 1e-9;
