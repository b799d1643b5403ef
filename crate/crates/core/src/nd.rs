//! Neighborhood diversity: twin modules, the type graph, the quadratic
//! program over module counts, and an exact solver that enumerates the
//! bounded compositions of `k`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solution::{check_k, Objective, SolveResult};

pub const STRATEGY: &str = "nd-enum";

/// Default cap on the number of compositions [`solve_nd`] will enumerate.
pub const DEFAULT_COMPOSITION_CAP: u128 = 100_000_000;

/// Partition of the vertex set into twin modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdPartition {
    modules: Vec<Vec<usize>>,
    is_clique: Vec<bool>,
}

impl NdPartition {
    /// Build from explicit modules. Each module must consist of mutual
    /// twins and the modules must partition `0..g.n()`.
    pub fn from_modules(g: &Graph, mut modules: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; g.n()];
        for (i, m) in modules.iter_mut().enumerate() {
            if m.is_empty() {
                return Err(Error::NotAPartition(format!("module {i} is empty")));
            }
            m.sort_unstable();
            for &v in m.iter() {
                if v >= g.n() {
                    return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
                }
                if owner[v] != usize::MAX {
                    return Err(Error::NotAPartition(format!("vertex {v} lies in two modules")));
                }
                owner[v] = i;
            }
            for (a, &u) in m.iter().enumerate() {
                for &v in &m[a + 1..] {
                    if !are_twins(g, u, v) {
                        return Err(Error::NotAPartition(format!("{u} and {v} are not twins")));
                    }
                }
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::NotAPartition(format!("vertex {v} is not covered")));
        }
        let is_clique = modules.iter().map(|m| m.len() >= 2 && g.has_edge(m[0], m[1])).collect();
        Ok(NdPartition { modules, is_clique })
    }

    pub fn modules(&self) -> &[Vec<usize>] {
        &self.modules
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    /// True if module `i` has at least two vertices and they are adjacent.
    pub fn is_clique(&self, i: usize) -> bool {
        self.is_clique[i]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.modules.iter().map(Vec::len).collect()
    }
}

/// `N(u) \ {v} == N(v) \ {u}`.
pub fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    let a = g.neighbors(u).iter().filter(|&&x| x != v);
    let b = g.neighbors(v).iter().filter(|&&x| x != u);
    a.eq(b)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Twin classes, found by grouping equal open neighborhoods (false twins)
/// and equal closed neighborhoods (true twins). Modules are ordered by
/// their smallest vertex.
pub fn compute_nd_partition(g: &Graph) -> NdPartition {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    let closed: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut c = g.neighbors(v).to_vec();
            let at = c.partition_point(|&x| x < v);
            c.insert(at, v);
            c
        })
        .collect();
    for keyed in [false, true] {
        let mut order: Vec<usize> = (0..n).collect();
        let key = |v: usize| if keyed { &closed[v][..] } else { g.neighbors(v) };
        order.sort_by(|&a, &b| key(a).cmp(key(b)).then(a.cmp(&b)));
        for pair in order.windows(2) {
            if key(pair[0]) == key(pair[1]) {
                let (a, b) = (find(&mut parent, pair[0]), find(&mut parent, pair[1]));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut modules: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        if index[r] == usize::MAX {
            index[r] = modules.len();
            modules.push(Vec::new());
        }
        modules[index[r]].push(v);
    }
    let is_clique = modules.iter().map(|m| m.len() >= 2 && g.has_edge(m[0], m[1])).collect();
    NdPartition { modules, is_clique }
}

/// Quotient graph on modules; modules are adjacent when completely joined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeGraph {
    graph: Graph,
}

impl TypeGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

pub fn build_type_graph(g: &Graph, p: &NdPartition) -> Result<TypeGraph> {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, m) in p.modules.iter().enumerate() {
        for &v in m {
            owner[v] = i;
        }
    }
    if owner.contains(&usize::MAX) || p.modules.iter().any(|m| m.iter().any(|&v| v >= g.n())) {
        return Err(Error::NotAPartition("partition does not match the graph".into()));
    }
    let t = p.len();
    let mut cross = vec![vec![0usize; t]; t];
    for (u, v) in g.edges() {
        let (a, b) = (owner[u], owner[v]);
        if a != b {
            cross[a.min(b)][a.max(b)] += 1;
        }
    }
    let mut edges = Vec::new();
    for (a, row) in cross.iter().enumerate() {
        for (b, &c) in row.iter().enumerate().skip(a + 1) {
            let full = p.modules[a].len() * p.modules[b].len();
            match c {
                0 => {}
                c if c == full => edges.push((a, b)),
                _ => return Err(Error::InvalidPartition(a, b)),
            }
        }
    }
    Ok(TypeGraph {
        graph: Graph::from_edges(t, edges)?,
    })
}

/// Integer quadratic program over module counts `x`:
/// optimize `(xᵀQx + q·x) / 2` subject to `Σ x_i = k` and `0 ≤ x_i ≤ m_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IqpInstance {
    pub q_matrix: Vec<Vec<i64>>,
    pub q_linear: Vec<i64>,
    pub k: usize,
    pub bounds: Vec<usize>,
    pub sense: Objective,
}

impl IqpInstance {
    pub fn variables(&self) -> usize {
        self.bounds.len()
    }

    /// `xᵀQx + q·x`, twice the edge count.
    pub fn doubled_objective(&self, x: &[usize]) -> i64 {
        let mut total = 0i64;
        for (i, row) in self.q_matrix.iter().enumerate() {
            let xi = x[i] as i64;
            total += self.q_linear[i] * xi;
            for (j, &q) in row.iter().enumerate() {
                total += q * xi * x[j] as i64;
            }
        }
        total
    }

    pub fn objective(&self, x: &[usize]) -> i64 {
        self.doubled_objective(x) / 2
    }

    pub fn is_feasible(&self, x: &[usize]) -> bool {
        x.len() == self.variables()
            && x.iter().sum::<usize>() == self.k
            && x.iter().zip(&self.bounds).all(|(a, b)| a <= b)
    }

    /// Plain-text form: `iqp t sense`, `k K`, `bounds ...`, `Q` and its
    /// rows, then `q` and its row.
    pub fn to_text(&self) -> String {
        fn row<T: ToString>(xs: &[T]) -> String {
            xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
        }
        let sense = match self.sense {
            Objective::Densest => "max",
            Objective::Sparsest => "min",
        };
        let mut out = format!("iqp {} {sense}\nk {}\n", self.variables(), self.k);
        let _ = writeln!(out, "{}", format!("bounds {}", row(&self.bounds)).trim_end());
        out.push_str("Q\n");
        for r in &self.q_matrix {
            let _ = writeln!(out, "{}", row(r));
        }
        let _ = writeln!(out, "q\n{}", row(&self.q_linear));
        out
    }
}

pub fn emit_iqp(p: &NdPartition, tg: &TypeGraph, k: usize, obj: Objective) -> Result<IqpInstance> {
    let bounds = p.sizes();
    check_k(k, bounds.iter().sum())?;
    let t = p.len();
    let mut q_matrix = vec![vec![0i64; t]; t];
    let mut q_linear = vec![0i64; t];
    for (a, b) in tg.graph.edges() {
        q_matrix[a][b] = 1;
        q_matrix[b][a] = 1;
    }
    for i in 0..t {
        if p.is_clique(i) {
            q_matrix[i][i] = 1;
            q_linear[i] = -1;
        }
    }
    Ok(IqpInstance {
        q_matrix,
        q_linear,
        k,
        bounds,
        sense: obj,
    })
}

/// Number of `x` with `Σ x_i = k` and `0 ≤ x_i ≤ bounds[i]`, saturating.
pub fn count_compositions(bounds: &[usize], k: usize) -> u128 {
    let mut ways = vec![0u128; k + 1];
    ways[0] = 1;
    for &b in bounds {
        let mut next = vec![0u128; k + 1];
        for (s, &c) in ways.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for x in 0..=b.min(k - s) {
                next[s + x] = next[s + x].saturating_add(c);
            }
        }
        ways = next;
    }
    ways[k]
}

/// Vertices for composition `x`: the `x_i` lowest ids of each module.
pub fn materialize(p: &NdPartition, x: &[usize]) -> Vec<usize> {
    let mut s: Vec<usize> = p
        .modules
        .iter()
        .zip(x)
        .flat_map(|(m, &c)| m[..c].iter().copied())
        .collect();
    s.sort_unstable();
    s
}

pub fn solve_nd(g: &Graph, k: usize, obj: Objective) -> Result<SolveResult<i64>> {
    solve_nd_with_cap(g, k, obj, DEFAULT_COMPOSITION_CAP)
}

/// Exact solve by enumerating module counts. Ties keep the
/// lexicographically first composition.
pub fn solve_nd_with_cap(g: &Graph, k: usize, obj: Objective, cap: u128) -> Result<SolveResult<i64>> {
    check_k(k, g.n())?;
    let p = compute_nd_partition(g);
    let tg = build_type_graph(g, &p)?;
    let iqp = emit_iqp(&p, &tg, k, obj)?;
    let count = count_compositions(&iqp.bounds, k);
    if count > cap {
        return Err(Error::CompositionSpaceTooLarge { count, cap });
    }
    let t = p.len();
    // remaining capacity of modules i.. so dead branches are cut early
    let mut suffix = vec![0usize; t + 1];
    for i in (0..t).rev() {
        suffix[i] = suffix[i + 1] + iqp.bounds[i];
    }
    let earlier: Vec<Vec<usize>> = (0..t)
        .map(|i| tg.graph.neighbors(i).iter().copied().filter(|&j| j < i).collect())
        .collect();

    let mut x = vec![0usize; t];
    let mut best: Option<(i64, Vec<usize>)> = None;
    // iterative depth-first walk; frame i holds the partial value before x_i
    let mut partial = vec![0i64; t + 1];
    let mut left = vec![0usize; t + 1];
    left[0] = k;
    let mut i = 0usize;
    let mut fresh = true;
    loop {
        if i == t {
            if left[t] == 0 && best.as_ref().is_none_or(|b| obj.improves(&partial[t], &b.0)) {
                best = Some((partial[t], x.clone()));
            }
            if t == 0 {
                break;
            }
            i -= 1;
            fresh = false;
            continue;
        }
        let lo = left[i].saturating_sub(suffix[i + 1]);
        let hi = iqp.bounds[i].min(left[i]);
        if fresh {
            x[i] = lo;
        } else if x[i] < hi {
            x[i] += 1;
        } else {
            if i == 0 {
                break;
            }
            i -= 1;
            continue;
        }
        if x[i] > hi {
            if i == 0 {
                break;
            }
            i -= 1;
            fresh = false;
            continue;
        }
        let xi = x[i] as i64;
        let mut gain: i64 = earlier[i].iter().map(|&j| xi * x[j] as i64).sum();
        if p.is_clique(i) {
            gain += xi * (xi - 1) / 2;
        }
        partial[i + 1] = partial[i] + gain;
        left[i + 1] = left[i] - x[i];
        i += 1;
        fresh = true;
    }
    let (value, x) = best.expect("k <= n admits a composition");
    Ok(SolveResult {
        value,
        witness: materialize(&p, &x),
        strategy: STRATEGY,
    })
}
