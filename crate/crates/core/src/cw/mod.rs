//! Clique-width expressions: syntax, realization, cograph construction and
//! the Densest/Sparsest k-Subgraph dynamic program over expression trees.

mod cograph;
mod dp;
mod expr;

pub use cograph::{cograph_to_expression, find_induced_p4, is_cograph};
pub use dp::{solve_cw_weighted, solve_cw_weighted_with_stats, CliqueWidthSolver, CwDpStats};
pub use expr::{emit_expression, parse_expression, CwExpression, LabeledGraph, Node};
