//! Exact and approximate solvers for Densest and Sparsest k-Subgraph,
//! parameterized by structural graph parameters: block-graph and
//! bounded-clique-width deletion sets, and neighborhood diversity.

pub mod approx;
pub mod block_cut;
pub mod block_dp;
pub mod cw;
pub mod deletion;
pub mod error;
pub mod generate;
pub mod graph;
pub mod nd;
pub mod oracle;
pub mod params;
pub mod scalar;
pub mod solution;
pub mod strategy;

pub use error::{Error, ParseErrorKind, Result};
pub use graph::{Graph, VertexWeights};
pub use scalar::Scalar;
pub use solution::{Objective, SolveResult};

/// Integer weights, the default used by the CLI.
pub type Weights = VertexWeights<i64>;
/// Solve result with integer weights.
pub type Solution = SolveResult<i64>;
/// Floating point weights.
pub type FloatWeights = VertexWeights<f64>;
