//! One entry point over every solver. Each result is re-valued from its
//! witness before it is returned.

use std::fmt;
use std::str::FromStr;

use crate::approx::approx_densest;
use crate::block_cut::find_min_block_deletion_set;
use crate::block_dp::{solve_block_weighted, BlockDpSolver};
use crate::cw::{CliqueWidthSolver, CwExpression};
use crate::deletion::solve_with_deletion_set_weighted;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexWeights};
use crate::nd::solve_nd;
use crate::oracle::brute_force_solve;
use crate::params::min_cograph_deletion_set;
use crate::scalar::Scalar;
use crate::solution::{Objective, SolveResult};

/// Largest deletion set searched for when none is supplied.
pub const AUTO_DELETION_BUDGET: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    Oracle,
    BlockDp,
    /// Deletion framework over block graphs. Without a set, a minimum one
    /// of size at most [`AUTO_DELETION_BUDGET`] is searched for.
    DeletionBlock {
        deletion_set: Option<Vec<usize>>,
    },
    /// Deletion framework over clique-width expressions. The expression
    /// must realize `g[V \ d]` with its vertices numbered in increasing
    /// order; without one the residual must be a cograph. With an
    /// expression and no set, `d` is empty.
    DeletionCw {
        deletion_set: Option<Vec<usize>>,
        expression: Option<CwExpression>,
    },
    NdEnum,
    /// 2-approximation, Densest only, zero weights only.
    ApproxSplit {
        deletion_set: Option<Vec<usize>>,
        expression: Option<CwExpression>,
    },
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Oracle => "oracle",
            Strategy::BlockDp => "block-dp",
            Strategy::DeletionBlock { .. } => "deletion-block",
            Strategy::DeletionCw { .. } => "deletion-cw",
            Strategy::NdEnum => "nd-enum",
            Strategy::ApproxSplit { .. } => "approx-split",
        }
    }

    /// Whether results are optimal (everything except the approximation).
    pub fn is_exact(&self) -> bool {
        !matches!(self, Strategy::ApproxSplit { .. })
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses the bare strategy name, with no deletion set or expression.
impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "oracle" => Strategy::Oracle,
            "block-dp" => Strategy::BlockDp,
            "deletion-block" => Strategy::DeletionBlock { deletion_set: None },
            "deletion-cw" => Strategy::DeletionCw {
                deletion_set: None,
                expression: None,
            },
            "nd-enum" => Strategy::NdEnum,
            "approx-split" => Strategy::ApproxSplit {
                deletion_set: None,
                expression: None,
            },
            _ => return Err(format!("unknown strategy '{s}'")),
        })
    }
}

/// Unweighted solve.
pub fn solve(g: &Graph, k: usize, obj: Objective, strategy: &Strategy) -> Result<SolveResult<i64>> {
    solve_weighted(g, &VertexWeights::zeros(g.n()), k, obj, strategy)
}

pub fn solve_weighted<W: Scalar>(
    g: &Graph,
    w: &VertexWeights<W>,
    k: usize,
    obj: Objective,
    strategy: &Strategy,
) -> Result<SolveResult<W>> {
    let name = strategy.name();
    let not_applicable = |reason: String| Error::StrategyNotApplicable { strategy: name, reason };
    let diagnose = |e: Error| match e {
        Error::NotBlockGraph
        | Error::InvalidDeletionSet(_)
        | Error::SolverNotApplicable { .. }
        | Error::ExpressionMismatch
        | Error::RedundantJoin { .. }
        | Error::NotCograph(_)
        | Error::DeletionSetTooLarge { .. }
        | Error::CompositionSpaceTooLarge { .. } => not_applicable(e.to_string()),
        e => e,
    };
    w.check_len(g.n())?;
    let unweighted_only = || {
        if w.is_zero() {
            Ok(())
        } else {
            Err(not_applicable("vertex weights must all be zero".into()))
        }
    };
    let lift = |r: SolveResult<i64>| SolveResult {
        value: W::from_i64(r.value).expect("edge counts fit the weight type"),
        witness: r.witness,
        strategy: r.strategy,
    };

    let mut r = match strategy {
        Strategy::Oracle => brute_force_solve(g, w, k, obj)?,
        Strategy::BlockDp => solve_block_weighted(g, w, k, obj).map_err(diagnose)?,
        Strategy::DeletionBlock { deletion_set } => {
            let d = match deletion_set {
                Some(d) => d.clone(),
                None => find_min_block_deletion_set(g, AUTO_DELETION_BUDGET.min(g.n())).map_err(|e| {
                    not_applicable(format!("no block deletion set of size <= {AUTO_DELETION_BUDGET}: {e}"))
                })?,
            };
            solve_with_deletion_set_weighted(g, w, &d, k, obj, &BlockDpSolver).map_err(diagnose)?
        }
        Strategy::DeletionCw {
            deletion_set,
            expression,
        } => {
            let d = cw_deletion_set(g, deletion_set, expression).map_err(|e| not_applicable(e.to_string()))?;
            let solver = CliqueWidthSolver::new(expression.clone());
            solve_with_deletion_set_weighted(g, w, &d, k, obj, &solver).map_err(diagnose)?
        }
        Strategy::NdEnum => {
            unweighted_only()?;
            lift(solve_nd(g, k, obj).map_err(diagnose)?)
        }
        Strategy::ApproxSplit {
            deletion_set,
            expression,
        } => {
            unweighted_only()?;
            if obj != Objective::Densest {
                return Err(not_applicable("only Densest k-Subgraph is approximated".into()));
            }
            let r = match (deletion_set, expression) {
                (Some(d), None) => approx_densest(g, d, k, &BlockDpSolver),
                (None, None) => {
                    let d = find_min_block_deletion_set(g, AUTO_DELETION_BUDGET.min(g.n())).map_err(|e| {
                        not_applicable(format!("no block deletion set of size <= {AUTO_DELETION_BUDGET}: {e}"))
                    })?;
                    approx_densest(g, &d, k, &BlockDpSolver)
                }
                (d, Some(e)) => {
                    let d = d.clone().unwrap_or_default();
                    let solver = CliqueWidthSolver::new(Some(e.clone()));
                    approx_densest(g, &d, k, &solver)
                }
            };
            lift(r.map_err(diagnose)?.result)
        }
    };
    r.strategy = name;
    r.verify(g, w)?;
    Ok(r)
}

fn cw_deletion_set(g: &Graph, d: &Option<Vec<usize>>, expression: &Option<CwExpression>) -> Result<Vec<usize>> {
    match (d, expression) {
        (Some(d), _) => Ok(d.clone()),
        (None, Some(_)) => Ok(Vec::new()),
        (None, None) => min_cograph_deletion_set(g, AUTO_DELETION_BUDGET),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::parse_expression;
    use crate::graph::named::*;

    #[test]
    fn examples() {
        assert_eq!(
            solve(&complete(4), 2, Objective::Densest, &Strategy::Oracle)
                .unwrap()
                .value,
            1
        );
        let r = solve(&bowtie(), 3, Objective::Densest, &Strategy::BlockDp).unwrap();
        assert_eq!((r.value, r.strategy), (3, "block-dp"));
    }

    #[test]
    fn all_strategies_agree_on_bowtie_apex() {
        let g = bowtie_apex();
        let strategies = [
            Strategy::Oracle,
            Strategy::DeletionBlock { deletion_set: None },
            Strategy::DeletionBlock {
                deletion_set: Some(vec![5]),
            },
            Strategy::DeletionCw {
                deletion_set: None,
                expression: None,
            },
            Strategy::NdEnum,
        ];
        for k in 0..=g.n() {
            for obj in [Objective::Densest, Objective::Sparsest] {
                let want = solve(&g, k, obj, &Strategy::Oracle).unwrap().value;
                for s in &strategies {
                    assert_eq!(solve(&g, k, obj, s).unwrap().value, want, "{s} k={k} {obj}");
                }
            }
        }
    }

    #[test]
    fn expression_strategy() {
        let e = parse_expression("e(1,2,u(u(i(1),i(1)),u(i(2),i(2))))").unwrap();
        let g = cycle(4);
        let s = Strategy::DeletionCw {
            deletion_set: None,
            expression: Some(e.clone()),
        };
        // ids of the expression are 0,1 on one side; cycle(4) has sides {0,2}
        assert!(matches!(
            solve(&g, 2, Objective::Densest, &s),
            Err(Error::StrategyNotApplicable { .. })
        ));
        let g = e.realize().graph;
        assert_eq!(solve(&g, 3, Objective::Densest, &s).unwrap().value, 2);
        let approx = Strategy::ApproxSplit {
            deletion_set: None,
            expression: Some(e),
        };
        assert_eq!(solve(&g, 3, Objective::Densest, &approx).unwrap().value, 2);
    }

    #[test]
    fn not_applicable() {
        let g = cycle(5);
        let e = solve(&g, 2, Objective::Densest, &Strategy::BlockDp).unwrap_err();
        assert!(matches!(
            e,
            Error::StrategyNotApplicable {
                strategy: "block-dp",
                ..
            }
        ));
        let w = VertexWeights::new(vec![1i64, 0, 0, 0, 0]).unwrap();
        assert!(matches!(
            solve_weighted(&g, &w, 2, Objective::Densest, &Strategy::NdEnum),
            Err(Error::StrategyNotApplicable { .. })
        ));
        let approx = Strategy::ApproxSplit {
            deletion_set: Some(vec![0]),
            expression: None,
        };
        assert!(matches!(
            solve(&g, 2, Objective::Sparsest, &approx),
            Err(Error::StrategyNotApplicable { .. })
        ));
        assert_eq!(solve(&g, 2, Objective::Densest, &approx).unwrap().value, 1);
        assert_eq!(
            solve(&g, 6, Objective::Densest, &Strategy::Oracle),
            Err(Error::KTooLarge { k: 6, n: 5 })
        );
    }

    #[test]
    fn names_round_trip() {
        for name in [
            "oracle",
            "block-dp",
            "deletion-block",
            "deletion-cw",
            "nd-enum",
            "approx-split",
        ] {
            assert_eq!(name.parse::<Strategy>().unwrap().name(), name);
        }
        assert!("fast".parse::<Strategy>().is_err());
    }
}
