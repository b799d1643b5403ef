//! Dynamic program over a clique-width expression. A state is the vector
//! `(s_1, ..., s_c)` of chosen vertices per label; its size `l` is the sum.
//! Only reachable states with `l <= k` are stored.

use std::collections::BTreeMap;

use crate::deletion::{PreparedSolver, WeightedSolver};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexWeights};
use crate::scalar::Scalar;
use crate::solution::{check_k, Objective, SolveResult};

use super::cograph::cograph_to_expression;
use super::expr::{CwExpression, Node};

pub const STRATEGY: &str = "cw-dp";

type Key = Box<[u32]>;

#[derive(Clone, Debug)]
enum Back {
    Introduce(bool),
    Union(Key, Key),
    Child(Key),
}

type Table<W> = BTreeMap<Key, (W, Back)>;

/// Table sizes recorded during one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwDpStats {
    pub k: usize,
    pub labels: usize,
    /// Stored states per expression node, in post-order.
    pub states_per_node: Vec<usize>,
}

impl CwDpStats {
    pub fn max_states(&self) -> usize {
        self.states_per_node.iter().copied().max().unwrap_or(0)
    }

    /// `(k+1)^(c+1)`, the dense table size.
    pub fn dense_bound(&self) -> u128 {
        (self.k as u128 + 1).saturating_pow(self.labels as u32 + 1)
    }
}

fn size(key: &[u32]) -> usize {
    key.iter().map(|&x| x as usize).sum()
}

fn offer<W: Scalar>(table: &mut Table<W>, obj: Objective, key: Key, value: W, back: Back) {
    match table.get_mut(&key) {
        Some(cur) => {
            if obj.improves(&value, &cur.0) {
                *cur = (value, back);
            }
        }
        None => {
            table.insert(key, (value, back));
        }
    }
}

pub fn solve_cw_weighted<W: Scalar>(
    e: &CwExpression,
    w: &VertexWeights<W>,
    k: usize,
    obj: Objective,
) -> Result<SolveResult<W>> {
    solve_cw_weighted_with_stats(e, w, k, obj).map(|r| r.0)
}

/// Solve on the graph realized by `e`, whose vertex ids are the
/// left-to-right order of `i(..)` leaves. `e` must not join two labels
/// that already share an edge.
pub fn solve_cw_weighted_with_stats<W: Scalar>(
    e: &CwExpression,
    w: &VertexWeights<W>,
    k: usize,
    obj: Objective,
) -> Result<(SolveResult<W>, CwDpStats)> {
    let n = e.vertex_count();
    w.check_len(n)?;
    check_k(k, n)?;
    if let Some((i, j)) = e.first_redundant_join() {
        return Err(Error::RedundantJoin { i, j });
    }
    let c = e.label_count() as usize;
    let ranges = e.vertex_ranges();
    let nodes = e.nodes();
    let mut tables: Vec<Table<W>> = Vec::with_capacity(nodes.len());

    for (t, node) in nodes.iter().enumerate() {
        let mut table = Table::new();
        match *node {
            Node::Introduce(l) => {
                table.insert(vec![0; c].into(), (W::zero(), Back::Introduce(false)));
                if k >= 1 {
                    let mut key = vec![0; c];
                    key[l as usize - 1] = 1;
                    table.insert(key.into(), (w.get(ranges[t].0), Back::Introduce(true)));
                }
            }
            Node::Union(a, b) => {
                for (ka, (va, _)) in &tables[a] {
                    let la = size(ka);
                    for (kb, (vb, _)) in &tables[b] {
                        if la + size(kb) > k {
                            continue;
                        }
                        let key: Key = ka.iter().zip(kb.iter()).map(|(x, y)| x + y).collect();
                        offer(&mut table, obj, key, *va + *vb, Back::Union(ka.clone(), kb.clone()));
                    }
                }
            }
            Node::Join(i, j, child) => {
                let (i, j) = (i as usize - 1, j as usize - 1);
                for (key, (v, _)) in &tables[child] {
                    let added = W::from_count(key[i] as usize * key[j] as usize);
                    table.insert(key.clone(), (*v + added, Back::Child(key.clone())));
                }
            }
            Node::Relabel(i, j, child) => {
                let (i, j) = (i as usize - 1, j as usize - 1);
                for (key, (v, _)) in &tables[child] {
                    let mut next = key.clone();
                    next[j] += next[i];
                    next[i] = 0;
                    offer(&mut table, obj, next, *v, Back::Child(key.clone()));
                }
            }
        }
        tables.push(table);
    }

    let stats = CwDpStats {
        k,
        labels: c,
        states_per_node: tables.iter().map(BTreeMap::len).collect(),
    };
    let root = e.root();
    let mut best: Option<(&Key, W)> = None;
    for (key, (v, _)) in &tables[root] {
        if size(key) == k && best.as_ref().is_none_or(|b| obj.improves(v, &b.1)) {
            best = Some((key, *v));
        }
    }
    let (key, value) = best.expect("every size up to n is reachable");

    let mut witness = Vec::with_capacity(k);
    let mut work = vec![(root, key.clone())];
    while let Some((t, key)) = work.pop() {
        let (_, back) = &tables[t][&key];
        match (&nodes[t], back) {
            (Node::Introduce(_), Back::Introduce(taken)) => {
                if *taken {
                    witness.push(ranges[t].0);
                }
            }
            (Node::Union(a, b), Back::Union(ka, kb)) => {
                work.push((*a, ka.clone()));
                work.push((*b, kb.clone()));
            }
            (Node::Join(_, _, child) | Node::Relabel(_, _, child), Back::Child(prev)) => {
                work.push((*child, prev.clone()));
            }
            _ => unreachable!("backpointer kind matches node kind"),
        }
    }
    witness.sort_unstable();
    Ok((
        SolveResult {
            value,
            witness,
            strategy: STRATEGY,
        },
        stats,
    ))
}

/// Residual solver driven by clique-width expressions.
///
/// With an expression, it applies only to the graph that expression
/// realizes (same ids). Without one, it applies to cographs and builds a
/// 2-label expression per graph.
#[derive(Clone, Debug, Default)]
pub struct CliqueWidthSolver {
    pub expression: Option<CwExpression>,
}

impl CliqueWidthSolver {
    pub fn new(expression: Option<CwExpression>) -> Self {
        CliqueWidthSolver { expression }
    }

    fn expression_for(&self, g: &Graph) -> Result<(CwExpression, Vec<usize>)> {
        match &self.expression {
            Some(e) => {
                if e.realize().graph != *g {
                    return Err(Error::ExpressionMismatch);
                }
                if let Some((i, j)) = e.first_redundant_join() {
                    return Err(Error::RedundantJoin { i, j });
                }
                Ok((e.clone(), (0..g.n()).collect()))
            }
            None if g.n() == 0 => Ok((CwExpression::introduce(1)?, Vec::new())),
            None => cograph_to_expression(g),
        }
    }
}

/// Expression plus the map from expression vertex ids to graph ids.
struct PreparedExpression {
    expr: CwExpression,
    map: Vec<usize>,
    n: usize,
}

impl<W: Scalar> WeightedSolver<W> for CliqueWidthSolver {
    fn name(&self) -> &'static str {
        STRATEGY
    }

    fn check(&self, g: &Graph) -> Result<()> {
        self.expression_for(g).map(|_| ())
    }

    fn prepare<'a>(&'a self, g: &'a Graph) -> Result<Box<dyn PreparedSolver<W> + 'a>> {
        let (expr, map) = self.expression_for(g)?;
        Ok(Box::new(PreparedExpression { expr, map, n: g.n() }))
    }
}

impl<W: Scalar> PreparedSolver<W> for PreparedExpression {
    fn solve(&self, w: &VertexWeights<W>, k: usize, obj: Objective) -> Result<SolveResult<W>> {
        w.check_len(self.n)?;
        check_k(k, self.n)?;
        if self.n == 0 {
            return Ok(SolveResult::empty(STRATEGY));
        }
        let local = VertexWeights::from_vec_unchecked(self.map.iter().map(|&v| w.get(v)).collect());
        let mut r = solve_cw_weighted(&self.expr, &local, k, obj)?;
        for v in &mut r.witness {
            *v = self.map[*v];
        }
        r.witness.sort_unstable();
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::parse_expression;
    use crate::graph::named::*;
    use crate::oracle::brute_force_solve;

    fn solve(text: &str, k: usize, obj: Objective) -> i64 {
        let e = parse_expression(text).unwrap();
        let w = VertexWeights::zeros(e.vertex_count());
        let r = solve_cw_weighted(&e, &w, k, obj).unwrap();
        r.verify(&e.realize().graph, &w).unwrap();
        r.value
    }

    #[test]
    fn examples() {
        let k3 = "r(2,1,e(1,2,u(r(2,1,e(1,2,u(i(1),i(2)))),i(2))))";
        assert_eq!(parse_expression(k3).unwrap().realize().graph, complete(3));
        assert_eq!(solve(k3, 2, Objective::Densest), 1);
        let c4 = "e(1,2,u(u(i(1),i(1)),u(i(2),i(2))))";
        assert_eq!(solve(c4, 3, Objective::Densest), 2);
        assert_eq!(solve(c4, 2, Objective::Sparsest), 0);
        assert_eq!(solve(c4, 0, Objective::Densest), 0);
    }

    #[test]
    fn weighted_matches_oracle() {
        let e = parse_expression("r(3,1,e(1,3,u(e(1,2,u(i(1),u(i(2),i(2)))),u(i(3),i(1)))))").unwrap();
        let g = e.realize().graph;
        let w = VertexWeights::new(vec![3i64, 0, 1, 5, 2]).unwrap();
        for k in 0..=5 {
            for obj in [Objective::Densest, Objective::Sparsest] {
                let r = solve_cw_weighted(&e, &w, k, obj).unwrap();
                r.verify(&g, &w).unwrap();
                assert_eq!(r.value, brute_force_solve(&g, &w, k, obj).unwrap().value);
            }
        }
    }

    #[test]
    fn errors() {
        let e = parse_expression("e(1,2,u(i(1),i(2)))").unwrap();
        assert_eq!(
            solve_cw_weighted(&e, &VertexWeights::<i64>::zeros(3), 1, Objective::Densest),
            Err(Error::WeightLengthMismatch { expected: 2, got: 3 })
        );
        assert_eq!(
            solve_cw_weighted(&e, &VertexWeights::<i64>::zeros(2), 3, Objective::Densest),
            Err(Error::KTooLarge { k: 3, n: 2 })
        );
        let e = parse_expression("e(1,2,e(1,2,u(i(1),i(2))))").unwrap();
        assert_eq!(
            solve_cw_weighted(&e, &VertexWeights::<i64>::zeros(2), 2, Objective::Densest),
            Err(Error::RedundantJoin { i: 1, j: 2 })
        );
    }

    #[test]
    fn stats_within_dense_bound() {
        let e = parse_expression("e(1,2,u(u(i(1),i(1)),u(i(2),i(2))))").unwrap();
        let (_, stats) =
            solve_cw_weighted_with_stats(&e, &VertexWeights::<i64>::zeros(4), 3, Objective::Densest).unwrap();
        assert_eq!(stats.dense_bound(), 64);
        assert!(stats.max_states() as u128 <= stats.dense_bound());
        assert_eq!(stats.states_per_node.len(), e.nodes().len());
    }

    #[test]
    fn solver_checks_expression_against_graph() {
        let e = parse_expression("e(1,2,u(i(1),i(2)))").unwrap();
        let s = CliqueWidthSolver::new(Some(e));
        assert!(WeightedSolver::<i64>::accepts(&s, &complete(2)));
        assert_eq!(
            WeightedSolver::<i64>::check(&s, &Graph::empty(2)),
            Err(Error::ExpressionMismatch)
        );
        let auto = CliqueWidthSolver::default();
        assert!(WeightedSolver::<i64>::accepts(&auto, &cycle(4)));
        assert!(!WeightedSolver::<i64>::accepts(&auto, &path(4)));
        let r = WeightedSolver::<i64>::solve(&auto, &Graph::empty(0), &VertexWeights::zeros(0), 0, Objective::Densest)
            .unwrap();
        assert_eq!(r.value, 0);
    }
}
