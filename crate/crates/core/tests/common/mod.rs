#![allow(dead_code)]

use dks_core::cw::CwExpression;
use dks_core::Graph;
use itertools::Itertools;
use rand::Rng;

/// Random expression of depth at most `depth` over labels `1..=c`.
/// Joins may be redundant; this is for syntax-level checks.
pub fn random_ast<R: Rng>(rng: &mut R, depth: u32, c: u32) -> CwExpression {
    if depth == 0 || rng.gen_bool(0.25) {
        return CwExpression::introduce(rng.gen_range(1..=c)).unwrap();
    }
    let pick = if c >= 2 { rng.gen_range(0..3) } else { 0 };
    match pick {
        0 => CwExpression::union(random_ast(rng, depth - 1, c), random_ast(rng, depth - 1, c)),
        _ => {
            let i = rng.gen_range(1..=c);
            let j = (i + rng.gen_range(1..c) - 1) % c + 1;
            let child = random_ast(rng, depth - 1, c);
            if pick == 1 {
                CwExpression::join(i, j, child).unwrap()
            } else {
                CwExpression::relabel(i, j, child).unwrap()
            }
        }
    }
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges = (0..n).tuple_combinations().filter(|_| rng.gen_bool(p));
    Graph::from_edges(n, edges.collect::<Vec<_>>()).unwrap()
}

/// Smallest subset size accepted by `ok`, by enumeration.
pub fn exhaustive_min(n: usize, ok: impl Fn(&[usize]) -> bool) -> usize {
    (0..=n)
        .find(|&s| (0..n).combinations(s).any(|x| ok(&x)))
        .expect("the full vertex set is always accepted")
}

/// `g` minus the vertices in `d`.
pub fn without(g: &Graph, d: &[usize]) -> Graph {
    let keep: Vec<usize> = (0..g.n()).filter(|v| !d.contains(v)).collect();
    g.induced_subgraph(&keep).unwrap().0
}
