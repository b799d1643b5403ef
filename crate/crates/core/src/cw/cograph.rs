use crate::error::{Error, Result};
use crate::graph::Graph;

use super::expr::CwExpression;

/// Some induced path `a-b-c-d` of `g`, if one exists.
pub fn find_induced_p4(g: &Graph) -> Option<[usize; 4]> {
    for (b, c) in g.edges() {
        for (b, c) in [(b, c), (c, b)] {
            for &a in g.neighbors(b) {
                if a == c || g.has_edge(a, c) {
                    continue;
                }
                for &d in g.neighbors(c) {
                    if d != b && d != a && !g.has_edge(d, b) && !g.has_edge(a, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

pub fn is_cograph(g: &Graph) -> bool {
    find_induced_p4(g).is_none()
}

/// A 2-label expression for the cograph `g` by cotree decomposition.
///
/// Returns the expression and the map from expression vertex ids to
/// vertices of `g`. Every vertex ends with label 1.
pub fn cograph_to_expression(g: &Graph) -> Result<(CwExpression, Vec<usize>)> {
    if g.n() == 0 {
        return Err(Error::InvalidSpec("expressions are non-empty".into()));
    }
    let all: Vec<usize> = (0..g.n()).collect();
    build(g, &all)
}

fn build(g: &Graph, set: &[usize]) -> Result<(CwExpression, Vec<usize>)> {
    if let [v] = set {
        return Ok((CwExpression::introduce(1)?, vec![*v]));
    }
    let parts = split(g, set, false);
    if parts.len() > 1 {
        let mut parts = parts.into_iter();
        let (mut acc, mut map) = build(g, &parts.next().unwrap())?;
        for p in parts {
            let (e, m) = build(g, &p)?;
            acc = CwExpression::union(acc, e);
            map.extend(m);
        }
        return Ok((acc, map));
    }
    let coparts = split(g, set, true);
    if coparts.len() > 1 {
        let mut coparts = coparts.into_iter();
        let (mut acc, mut map) = build(g, &coparts.next().unwrap())?;
        for p in coparts {
            let (e, m) = build(g, &p)?;
            let joined = CwExpression::join(1, 2, CwExpression::union(acc, CwExpression::relabel(1, 2, e)?))?;
            acc = CwExpression::relabel(2, 1, joined)?;
            map.extend(m);
        }
        return Ok((acc, map));
    }
    // both g[set] and its complement are connected on >= 2 vertices
    let (h, mapping) = g.induced_subgraph(set)?;
    let p4 = find_induced_p4(&h).expect("prime graph contains an induced P4");
    Err(Error::NotCograph(p4.map(|v| mapping[v])))
}

/// Components of `g[set]`, or of its complement when `complement` is set.
/// Each part is sorted; parts are ordered by smallest member.
fn split(g: &Graph, set: &[usize], complement: bool) -> Vec<Vec<usize>> {
    let mut unvisited: Vec<usize> = set.to_vec();
    let mut parts = Vec::new();
    while let Some(start) = unvisited.first().copied() {
        unvisited.remove(0);
        let mut part = vec![start];
        let mut i = 0;
        while i < part.len() {
            let v = part[i];
            i += 1;
            let (reached, rest): (Vec<usize>, Vec<usize>) =
                unvisited.iter().partition(|&&u| g.has_edge(u, v) != complement);
            part.extend(reached);
            unvisited = rest;
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts
}
