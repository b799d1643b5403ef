//! Simple undirected graphs over dense vertex ids `0..n`, vertex weights,
//! and the plain-text edge-list format.
//!
//! Format: `#` comment lines and blank lines are ignored anywhere. The first
//! data line is `n m`, followed by exactly `m` lines `u v` (either order).
//! An optional trailing section starts with a line `weights` and carries `n`
//! lines `v w_v`; without it all weights are zero.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, ParseErrorKind, Result};
use crate::scalar::Scalar;

/// Immutable simple undirected graph. Adjacency lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Build from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut seen = HashSet::new();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            check_edge(n, u, v)?;
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, m: seen.len() })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Graph on the same vertex set with exactly the non-edges of `self`.
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            let mut it = self.adj[u].iter().peekable();
            for v in 0..n {
                if it.peek() == Some(&&v) {
                    it.next();
                    continue;
                }
                if v != u {
                    list.push(v);
                    if v > u {
                        m += 1;
                    }
                }
            }
        }
        Graph { adj, m }
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edge_count_within(&self, s: &[usize]) -> Result<usize> {
        let mask = self.membership(s)?;
        let twice: usize = s
            .iter()
            .map(|&v| self.adj[v].iter().filter(|&&u| mask[u]).count())
            .sum();
        Ok(twice / 2)
    }

    /// Subgraph induced by `s`. Vertices are renumbered `0..|s|` in
    /// increasing order of their original ids; the returned mapping sends
    /// new ids to original ids.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<(Graph, Vec<usize>)> {
        self.membership(s)?;
        let mut mapping = s.to_vec();
        mapping.sort_unstable();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in mapping.iter().enumerate() {
            local[v] = i;
        }
        let mut m = 0;
        let adj: Vec<Vec<usize>> = mapping
            .iter()
            .map(|&v| {
                let list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&u| (local[u] != usize::MAX).then_some(local[u]))
                    .collect();
                m += list.len();
                list
            })
            .collect();
        Ok((Graph { adj, m: m / 2 }, mapping))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Membership mask of `s`, validating range and distinctness.
    pub(crate) fn membership(&self, s: &[usize]) -> Result<Vec<bool>> {
        let n = self.n();
        let mut mask = vec![false; n];
        for &v in s {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if mask[v] {
                return Err(Error::DuplicateVertex(v));
            }
            mask[v] = true;
        }
        Ok(mask)
    }
}

fn check_edge(n: usize, u: usize, v: usize) -> Result<()> {
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(Error::SelfLoop(u));
    }
    Ok(())
}

/// Non-negative weight per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexWeights<W> {
    w: Vec<W>,
}

impl<W: Scalar> VertexWeights<W> {
    pub fn new(w: Vec<W>) -> Result<Self> {
        if let Some(v) = w.iter().position(|x| *x < W::zero()) {
            return Err(Error::NegativeWeight(v));
        }
        Ok(VertexWeights { w })
    }

    pub fn zeros(n: usize) -> Self {
        VertexWeights { w: vec![W::zero(); n] }
    }

    pub(crate) fn from_vec_unchecked(w: Vec<W>) -> Self {
        VertexWeights { w }
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn get(&self, v: usize) -> W {
        self.w[v]
    }

    pub fn as_slice(&self) -> &[W] {
        &self.w
    }

    pub fn is_zero(&self) -> bool {
        self.w.iter().all(|x| x.is_zero())
    }

    pub fn sum_over(&self, s: &[usize]) -> W {
        s.iter().fold(W::zero(), |acc, &v| acc + self.w[v])
    }

    /// Weights of the vertices listed in `mapping`, in that order.
    pub fn restrict(&self, mapping: &[usize]) -> Self {
        VertexWeights {
            w: mapping.iter().map(|&v| self.w[v]).collect(),
        }
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.w.len() != n {
            return Err(Error::WeightLengthMismatch {
                expected: n,
                got: self.w.len(),
            });
        }
        Ok(())
    }
}

/// Graph plus the raw weight section of an edge-list file.
struct RawInstance<'a> {
    graph: Graph,
    weights: Vec<(usize, &'a str)>,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize)> {
    let malformed = || Error::Parse {
        line,
        kind: ParseErrorKind::MalformedLine(s.to_string()),
    };
    let mut it = s.split_whitespace();
    let a = it.next().and_then(|x| x.parse().ok()).ok_or_else(malformed)?;
    let b = it.next().and_then(|x| x.parse().ok()).ok_or_else(malformed)?;
    if it.next().is_some() {
        return Err(malformed());
    }
    Ok((a, b))
}

fn parse_raw(text: &str) -> Result<RawInstance<'_>> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        kind: ParseErrorKind::MalformedHeader("missing \"n m\" header".into()),
    })?;
    let (n, m) = parse_pair(hline, header).map_err(|_| Error::Parse {
        line: hline,
        kind: ParseErrorKind::MalformedHeader(header.to_string()),
    })?;

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    for _ in 0..m {
        let (line, s) = lines.next().ok_or_else(|| Error::Parse {
            line: hline,
            kind: ParseErrorKind::MalformedHeader(format!("header announces {m} edges, found {}", edges.len())),
        })?;
        let (u, v) = parse_pair(line, s)?;
        let at = |kind| Error::Parse { line, kind };
        for x in [u, v] {
            if x >= n {
                return Err(at(ParseErrorKind::VertexOutOfRange { vertex: x, n }));
            }
        }
        if u == v {
            return Err(at(ParseErrorKind::SelfLoop(u)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(at(ParseErrorKind::DuplicateEdge(u.min(v), u.max(v))));
        }
        edges.push((u, v));
    }
    let graph = Graph::from_edges(n, edges)?;

    let mut weights = Vec::new();
    if let Some((line, s)) = lines.next() {
        if s != "weights" {
            return Err(Error::Parse {
                line,
                kind: ParseErrorKind::MalformedLine(format!("expected \"weights\" or end of input, found {s:?}")),
            });
        }
        weights.extend(lines);
    }
    Ok(RawInstance { graph, weights })
}

fn parse_weight_lines<W: Scalar + FromStr>(n: usize, lines: &[(usize, &str)]) -> Result<VertexWeights<W>> {
    let mut w: Vec<Option<W>> = vec![None; n];
    for &(line, s) in lines {
        let malformed = || Error::Parse {
            line,
            kind: ParseErrorKind::MalformedLine(s.to_string()),
        };
        let mut it = s.split_whitespace();
        let v: usize = it.next().and_then(|x| x.parse().ok()).ok_or_else(malformed)?;
        let x: W = it.next().and_then(|x| x.parse().ok()).ok_or_else(malformed)?;
        if it.next().is_some() {
            return Err(malformed());
        }
        if v >= n {
            return Err(Error::Parse {
                line,
                kind: ParseErrorKind::VertexOutOfRange { vertex: v, n },
            });
        }
        if w[v].replace(x).is_some() {
            return Err(Error::Parse {
                line,
                kind: ParseErrorKind::MalformedLine(format!("second weight for vertex {v}")),
            });
        }
    }
    let last = lines.last().map_or(1, |l| l.0);
    let w = w
        .into_iter()
        .enumerate()
        .map(|(v, x)| {
            x.ok_or(Error::Parse {
                line: last,
                kind: ParseErrorKind::MalformedLine(format!("missing weight for vertex {v}")),
            })
        })
        .collect::<Result<Vec<W>>>()?;
    VertexWeights::new(w)
}

/// Parse an edge-list file, ignoring any weight section after validating it.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let raw = parse_raw(text)?;
    if !raw.weights.is_empty() {
        parse_weight_lines::<i64>(raw.graph.n(), &raw.weights)?;
    }
    Ok(raw.graph)
}

/// Parse an edge-list file together with its optional weight section.
pub fn parse_weighted_edge_list<W: Scalar + FromStr>(text: &str) -> Result<(Graph, VertexWeights<W>)> {
    let raw = parse_raw(text)?;
    let n = raw.graph.n();
    let w = if raw.weights.is_empty() {
        VertexWeights::zeros(n)
    } else {
        parse_weight_lines(n, &raw.weights)?
    };
    Ok((raw.graph, w))
}

/// Parse a standalone weight file: optional `weights` line, then `v w_v`
/// for every vertex.
pub fn parse_weights<W: Scalar + FromStr>(text: &str, n: usize) -> Result<VertexWeights<W>> {
    let lines: Vec<(usize, &str)> = data_lines(text).skip_while(|(_, l)| *l == "weights").collect();
    parse_weight_lines(n, &lines)
}

/// Render in the edge-list format. `comments` become leading `#` lines.
pub fn write_edge_list<W: Scalar>(g: &Graph, weights: Option<&VertexWeights<W>>, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    if let Some(w) = weights.filter(|w| !w.is_zero()) {
        out.push_str("weights\n");
        for (v, x) in w.as_slice().iter().enumerate() {
            let _ = writeln!(out, "{v} {x}");
        }
    }
    out
}

/// Named small graphs used throughout tests and examples.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    /// Triangles {0,1,2} and {2,3,4} sharing vertex 2.
    pub fn bowtie() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    /// Bowtie plus vertex 5 adjacent to all five bowtie vertices.
    pub fn bowtie_apex() -> Graph {
        let mut e = vec![(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)];
        e.extend((0..5).map(|v| (v, 5)));
        Graph::from_edges(6, e).unwrap()
    }
}
