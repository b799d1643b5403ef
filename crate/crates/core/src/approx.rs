//! 2-approximation for Densest k-Subgraph from a deletion set `d`.
//!
//! Split `d` into `V1` (its smaller half) and `V2 = V \ V1`. The edges
//! inside `V1` or inside `V2` form `G''`; the rest form the bipartite
//! graph `G'` between `V1` and `V2`. Both are solved exactly and the
//! better set wins; every `k`-set has at least half of its edges in one of
//! them.

use crate::block_dp::{knapsack_merge, BlockDpSolver};
use crate::deletion::{solve_with_deletion_set, WeightedSolver};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solution::{check_k, Objective, SolveResult};

pub const STRATEGY: &str = "approx-split";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `G''`: edges inside `V1` and inside `V2`.
    DisjointParts,
    /// `G'`: edges between `V1` and `V2`.
    Bipartite,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxResult {
    /// The chosen set, valued by its edge count in the input graph.
    pub result: SolveResult<i64>,
    pub branch: Branch,
    /// Edge counts in the input graph of the two candidate sets.
    pub disjoint_value: i64,
    pub bipartite_value: i64,
    /// Sum of the two branch optima; the true optimum is at most this and
    /// at most twice `result.value`.
    pub opt_upper_bound: i64,
}

/// Edge split of `g` by the halves of `d`: returns `V1`, `G''` and `G'`.
pub fn split_edges(g: &Graph, d: &[usize]) -> Result<(Vec<usize>, Graph, Graph)> {
    g.membership(d)?;
    let mut d = d.to_vec();
    d.sort_unstable();
    let v1 = d[..d.len() / 2].to_vec();
    let in_v1 = g.membership(&v1)?;
    let (inner, cross): (Vec<_>, Vec<_>) = g.edges().partition(|&(u, v)| in_v1[u] == in_v1[v]);
    let disjoint = Graph::from_edges(g.n(), inner)?;
    let bipartite = Graph::from_edges(g.n(), cross)?;
    Ok((v1, disjoint, bipartite))
}

pub fn approx_densest(g: &Graph, d: &[usize], k: usize, solver: &dyn WeightedSolver<i64>) -> Result<ApproxResult> {
    let n = g.n();
    check_k(k, n)?;
    let in_d = g.membership(d)?;
    let rest: Vec<usize> = (0..n).filter(|&v| !in_d[v]).collect();
    let (residual, _) = g.induced_subgraph(&rest)?;
    solver.check(&residual).map_err(|e| Error::SolverNotApplicable {
        solver: solver.name(),
        reason: e.to_string(),
    })?;

    let (v1, disjoint, bipartite) = split_edges(g, d)?;
    assert_eq!(disjoint.m() + bipartite.m(), g.m());
    assert!(disjoint.edges().all(|(u, v)| !bipartite.has_edge(u, v)));

    let in_v1 = g.membership(&v1)?;
    let v2: Vec<usize> = (0..n).filter(|&v| !in_v1[v]).collect();

    // G'': every size on each side, then one merge. Residuals here are
    // g[V \ d] for V2 and the empty graph for V1.
    let edgeless = BlockDpSolver;
    let (h1, map1) = g.induced_subgraph(&v1)?;
    let (h2, map2) = g.induced_subgraph(&v2)?;
    let all1: Vec<usize> = (0..h1.n()).collect();
    let d2: Vec<usize> = (0..h2.n()).filter(|&i| in_d[map2[i]]).collect();
    let side1 = (0..=k.min(h1.n()))
        .map(|i| solve_with_deletion_set(&h1, &all1, i, Objective::Densest, &edgeless))
        .collect::<Result<Vec<_>>>()?;
    let side2 = (0..=k.min(h2.n()))
        .map(|i| solve_with_deletion_set(&h2, &d2, i, Objective::Densest, solver))
        .collect::<Result<Vec<_>>>()?;
    let t1: Vec<Option<i64>> = side1.iter().map(|r| Some(r.value)).collect();
    let t2: Vec<Option<i64>> = side2.iter().map(|r| Some(r.value)).collect();
    let merged = knapsack_merge(&t1, &t2, k, Objective::Densest);
    let opt_disjoint = merged[k].expect("k <= |V1| + |V2|");
    let i1 = (0..t1.len())
        .find(|&i| k - i < t2.len() && t1[i].zip(t2[k - i]).map(|(a, b)| a + b) == Some(opt_disjoint))
        .expect("merge optimum has a split");
    let mut s_disjoint: Vec<usize> = side1[i1]
        .witness
        .iter()
        .map(|&v| map1[v])
        .chain(side2[k - i1].witness.iter().map(|&v| map2[v]))
        .collect();
    s_disjoint.sort_unstable();

    // G': V1 covers every edge, so the residual on V2 is edgeless.
    let r_bip = solve_with_deletion_set::<i64>(&bipartite, &v1, k, Objective::Densest, &edgeless)?;

    let disjoint_value = g.edge_count_within(&s_disjoint)? as i64;
    let bipartite_value = g.edge_count_within(&r_bip.witness)? as i64;
    let (branch, witness, value) = if disjoint_value >= bipartite_value {
        (Branch::DisjointParts, s_disjoint, disjoint_value)
    } else {
        (Branch::Bipartite, r_bip.witness, bipartite_value)
    };
    Ok(ApproxResult {
        result: SolveResult {
            value,
            witness,
            strategy: STRATEGY,
        },
        branch,
        disjoint_value,
        bipartite_value,
        opt_upper_bound: opt_disjoint + r_bip.value,
    })
}
