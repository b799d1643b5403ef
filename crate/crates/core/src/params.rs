//! Small-scale structural parameters: vertex cover, twin cover, cluster
//! deletion, cograph deletion and block deletion numbers, plus the
//! neighborhood diversity, with checks of the inequalities between them.
//!
//! Every finder takes a budget on the deletion-set size and fails with
//! [`Error::BudgetExceeded`] rather than return something non-minimal.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::block_cut::{find_min_block_deletion_set, is_block_graph, residual};
use crate::cw::find_induced_p4;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::nd::compute_nd_partition;

/// Iterative deepening over obstructions: `obstruction(removed)` returns
/// the vertices of some forbidden structure avoiding `removed`, or `None`
/// when the residual graph is in the target class. Every minimum solution
/// hits every obstruction, so branching on its vertices is complete.
fn min_hitting_set<F>(n: usize, budget: usize, obstruction: F) -> Result<Vec<usize>>
where
    F: Fn(&[bool]) -> Option<Vec<usize>>,
{
    fn search<F: Fn(&[bool]) -> Option<Vec<usize>>>(
        removed: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        left: usize,
        obstruction: &F,
    ) -> bool {
        let Some(obs) = obstruction(removed) else {
            return true;
        };
        if left == 0 {
            return false;
        }
        for v in obs {
            removed[v] = true;
            chosen.push(v);
            if search(removed, chosen, left - 1, obstruction) {
                return true;
            }
            chosen.pop();
            removed[v] = false;
        }
        false
    }

    let mut removed = vec![false; n];
    for size in 0..=budget.min(n) {
        let mut chosen = Vec::new();
        if search(&mut removed, &mut chosen, size, &obstruction) {
            chosen.sort_unstable();
            return Ok(chosen);
        }
    }
    Err(Error::BudgetExceeded(budget))
}

fn uncovered_edge(g: &Graph, removed: &[bool]) -> Option<Vec<usize>> {
    g.edges()
        .find(|&(u, v)| !removed[u] && !removed[v])
        .map(|(u, v)| vec![u, v])
}

fn induced_p3(g: &Graph, removed: &[bool]) -> Option<Vec<usize>> {
    for b in (0..g.n()).filter(|&b| !removed[b]) {
        let nb: Vec<usize> = g.neighbors(b).iter().copied().filter(|&x| !removed[x]).collect();
        for (i, &a) in nb.iter().enumerate() {
            if let Some(&c) = nb[i + 1..].iter().find(|&&c| !g.has_edge(a, c)) {
                return Some(vec![a, b, c]);
            }
        }
    }
    None
}

fn induced_p4(g: &Graph, removed: &[bool]) -> Option<Vec<usize>> {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| !removed[v]).collect();
    let (h, map) = g.induced_subgraph(&keep).expect("vertices in range");
    find_induced_p4(&h).map(|p| p.iter().map(|&v| map[v]).collect())
}

/// Minimum vertex cover by two-way edge branching.
pub fn min_vertex_cover(g: &Graph, budget: usize) -> Result<Vec<usize>> {
    min_hitting_set(g.n(), budget, |removed| uncovered_edge(g, removed))
}

/// Edges whose endpoints have different closed neighborhoods.
pub fn non_twin_edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().filter(|&(u, v)| !closed_twins(g, u, v)).collect()
}

fn closed_twins(g: &Graph, u: usize, v: usize) -> bool {
    // adjacent u, v: N[u] == N[v] iff N(u) \ {v} == N(v) \ {u}
    crate::nd::are_twins(g, u, v)
}

/// Minimum twin cover: a vertex cover of the non-twin edges.
pub fn min_twin_cover(g: &Graph, budget: usize) -> Result<Vec<usize>> {
    let h = Graph::from_edges(g.n(), non_twin_edges(g))?;
    min_vertex_cover(&h, budget)
}

/// Minimum set whose removal leaves a disjoint union of cliques.
pub fn min_cluster_deletion_set(g: &Graph, budget: usize) -> Result<Vec<usize>> {
    min_hitting_set(g.n(), budget, |removed| induced_p3(g, removed))
}

/// Minimum set whose removal leaves a cograph.
pub fn min_cograph_deletion_set(g: &Graph, budget: usize) -> Result<Vec<usize>> {
    min_hitting_set(g.n(), budget, |removed| induced_p4(g, removed))
}

/// Minimum block deletion set, by exhaustive search in increasing size.
pub fn min_block_deletion_set(g: &Graph, budget: usize) -> Result<Vec<usize>> {
    find_min_block_deletion_set(g, budget.min(g.n())).map_err(|e| match e {
        Error::NotFound(_) => Error::BudgetExceeded(budget),
        e => e,
    })
}

pub fn is_vertex_cover(g: &Graph, x: &[usize]) -> bool {
    let mut inx = vec![false; g.n()];
    x.iter().for_each(|&v| inx[v] = true);
    g.edges().all(|(u, v)| inx[u] || inx[v])
}

/// Each edge has an endpoint in `x` or joins two vertices with equal
/// closed neighborhoods.
pub fn is_twin_cover(g: &Graph, x: &[usize]) -> bool {
    let mut inx = vec![false; g.n()];
    x.iter().for_each(|&v| inx[v] = true);
    let closed = |v: usize| {
        let mut c = g.neighbors(v).to_vec();
        c.push(v);
        c.sort_unstable();
        c
    };
    g.edges().all(|(u, v)| inx[u] || inx[v] || closed(u) == closed(v))
}

/// Every component is a clique.
pub fn is_cluster_graph(g: &Graph) -> bool {
    g.components()
        .iter()
        .all(|c| c.iter().all(|&v| g.degree(v) == c.len() - 1))
}

/// Witness of one parameter: a vertex set, or the modules for `nd`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Set(Vec<usize>),
    Modules(Vec<Vec<usize>>),
}

/// Parameter values of one graph with a witness for each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamReport {
    pub nd: usize,
    pub vc: usize,
    pub tc: usize,
    pub cd: usize,
    pub bd: usize,
    pub cod: usize,
    pub witnesses: BTreeMap<&'static str, Witness>,
}

impl ParamReport {
    /// Compute every parameter, each deletion set limited to `budget`.
    pub fn compute(g: &Graph, budget: usize) -> Result<Self> {
        let vc = min_vertex_cover(g, budget)?;
        let tc = min_twin_cover(g, budget)?;
        let cd = min_cluster_deletion_set(g, budget)?;
        let bd = min_block_deletion_set(g, budget)?;
        let cod = min_cograph_deletion_set(g, budget)?;
        let nd = compute_nd_partition(g).modules().to_vec();
        let report = ParamReport {
            nd: nd.len(),
            vc: vc.len(),
            tc: tc.len(),
            cd: cd.len(),
            bd: bd.len(),
            cod: cod.len(),
            witnesses: BTreeMap::from([
                ("nd", Witness::Modules(nd)),
                ("vc", Witness::Set(vc)),
                ("tc", Witness::Set(tc)),
                ("cd", Witness::Set(cd)),
                ("bd", Witness::Set(bd)),
                ("cod", Witness::Set(cod)),
            ]),
        };
        Ok(report)
    }

    fn set(&self, name: &str) -> &[usize] {
        match &self.witnesses[name] {
            Witness::Set(s) => s,
            Witness::Modules(_) => &[],
        }
    }

    /// Re-check every witness with an independent recognizer. Returns the
    /// names of the parameters whose witness fails.
    pub fn verify_witnesses(&self, g: &Graph) -> Vec<&'static str> {
        let mut bad = Vec::new();
        if !is_vertex_cover(g, self.set("vc")) {
            bad.push("vc");
        }
        if !is_twin_cover(g, self.set("tc")) {
            bad.push("tc");
        }
        if !is_cluster_graph(&residual(g, self.set("cd"))) {
            bad.push("cd");
        }
        if !is_block_graph(&residual(g, self.set("bd"))) {
            bad.push("bd");
        }
        if find_induced_p4(&residual(g, self.set("cod"))).is_some() {
            bad.push("cod");
        }
        if let Witness::Modules(ms) = &self.witnesses["nd"] {
            if crate::nd::NdPartition::from_modules(g, ms.clone()).is_err() {
                bad.push("nd");
            }
        }
        bad
    }

    /// Violated inequalities among `bd <= cd <= tc <= vc` and
    /// `nd <= 2^tc + tc`, as readable strings.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (a, an, b, bn) in [
            (self.bd, "bd", self.cd, "cd"),
            (self.cd, "cd", self.tc, "tc"),
            (self.tc, "tc", self.vc, "vc"),
        ] {
            if a > b {
                out.push(format!("{an}={a} > {bn}={b}"));
            }
        }
        let bound = 1u128
            .checked_shl(self.tc as u32)
            .map_or(u128::MAX, |p| p.saturating_add(self.tc as u128));
        if self.nd as u128 > bound {
            out.push(format!("nd={} > 2^tc+tc={bound}", self.nd));
        }
        out
    }
}

/// Report plus the list of violated inequalities (expected empty).
pub fn check_parameter_inequalities(g: &Graph) -> Result<(ParamReport, Vec<String>)> {
    let report = ParamReport::compute(g, g.n())?;
    let violations = report.violations();
    Ok((report, violations))
}
