//! Seeded random instances. The same spec always yields the same instance.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cw::CwExpression;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq)]
pub enum InstanceKind {
    /// Cliques of 2..=max_clique vertices glued at single shared vertices.
    /// Roughly one clique in ten starts a new component.
    BlockGraph {
        n: usize,
        max_clique: usize,
    },
    /// A block graph on `n - d` vertices plus `d` vertices joined to every
    /// other vertex with probability `p`; ids are shuffled.
    Planted {
        n: usize,
        d: usize,
        max_clique: usize,
        p: f64,
    },
    /// Random union/join tree; comes with a 2-label expression.
    Cograph {
        n: usize,
    },
    ErdosRenyi {
        n: usize,
        p: f64,
    },
    /// Random irredundant expression over `labels` labels.
    RandomExpression {
        n: usize,
        labels: u32,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceSpec {
    pub kind: InstanceKind,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(kind: InstanceKind, seed: u64) -> Self {
        InstanceSpec { kind, seed }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub graph: Graph,
    /// Planted deletion set, sorted.
    pub planted: Option<Vec<usize>>,
    /// Expression realizing `graph` with identical vertex ids.
    pub expression: Option<CwExpression>,
}

impl Instance {
    fn plain(graph: Graph) -> Self {
        Instance {
            graph,
            planted: None,
            expression: None,
        }
    }
}

pub fn generate(spec: &InstanceSpec) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let check_p = |p: f64| {
        if (0.0..=1.0).contains(&p) {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!("probability {p} outside [0, 1]")))
        }
    };
    match spec.kind {
        InstanceKind::BlockGraph { n, max_clique } => {
            let edges = block_graph_edges(&mut rng, n, max_clique)?;
            Ok(Instance::plain(Graph::from_edges(n, edges)?))
        }
        InstanceKind::Planted { n, d, max_clique, p } => {
            check_p(p)?;
            if d > n {
                return Err(Error::InvalidSpec(format!("d = {d} exceeds n = {n}")));
            }
            // separate streams, so specs differing only in d share the
            // block graph they start from
            let base = n - d;
            let mut edges = block_graph_edges(&mut rng, base, max_clique)?;
            let mut extra = ChaCha8Rng::seed_from_u64(spec.seed);
            extra.set_stream(1);
            for x in base..n {
                for v in 0..x {
                    if extra.gen_bool(p) {
                        edges.push((v, x));
                    }
                }
            }
            let mut shuffle = ChaCha8Rng::seed_from_u64(spec.seed);
            shuffle.set_stream(2);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut shuffle);
            let edges = edges.into_iter().map(|(u, v)| (perm[u], perm[v]));
            let mut planted: Vec<usize> = perm[base..].to_vec();
            planted.sort_unstable();
            Ok(Instance {
                graph: Graph::from_edges(n, edges)?,
                planted: Some(planted),
                expression: None,
            })
        }
        InstanceKind::Cograph { n } => random_expression(&mut rng, n, 2, true),
        InstanceKind::ErdosRenyi { n, p } => {
            check_p(p)?;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Ok(Instance::plain(Graph::from_edges(n, edges)?))
        }
        InstanceKind::RandomExpression { n, labels } => {
            if labels == 0 {
                return Err(Error::InvalidSpec("an expression needs at least one label".into()));
            }
            random_expression(&mut rng, n, labels, false)
        }
    }
}

fn block_graph_edges(rng: &mut ChaCha8Rng, n: usize, max_clique: usize) -> Result<Vec<(usize, usize)>> {
    if max_clique < 2 {
        return Err(Error::InvalidSpec("max_clique must be at least 2".into()));
    }
    let mut edges = Vec::new();
    let mut next = n.min(1);
    while next < n {
        let fresh = (rng.gen_range(2..=max_clique) - 1).min(n - next);
        let mut clique: Vec<usize> = (next..next + fresh).collect();
        if rng.gen_bool(0.9) {
            clique.push(rng.gen_range(0..next));
        }
        for (i, &u) in clique.iter().enumerate() {
            for &v in &clique[i + 1..] {
                edges.push((u.min(v), u.max(v)));
            }
        }
        next += fresh;
    }
    Ok(edges)
}

/// Partial expression with the labels and edges it realizes.
struct Piece {
    expr: CwExpression,
    labels: Vec<u32>,
    edges: HashSet<(usize, usize)>,
}

impl Piece {
    fn has_edge_between(&self, i: u32, j: u32) -> bool {
        self.edges
            .iter()
            .any(|&(a, b)| (self.labels[a], self.labels[b]) == (i, j) || (self.labels[a], self.labels[b]) == (j, i))
    }

    fn join(&mut self, i: u32, j: u32) -> Result<()> {
        let expr = std::mem::replace(&mut self.expr, CwExpression::introduce(1)?);
        self.expr = CwExpression::join(i, j, expr)?;
        for a in 0..self.labels.len() {
            for b in a + 1..self.labels.len() {
                let (la, lb) = (self.labels[a], self.labels[b]);
                if (la, lb) == (i, j) || (la, lb) == (j, i) {
                    self.edges.insert((a, b));
                }
            }
        }
        Ok(())
    }

    fn relabel(&mut self, i: u32, j: u32) -> Result<()> {
        let expr = std::mem::replace(&mut self.expr, CwExpression::introduce(1)?);
        self.expr = CwExpression::relabel(i, j, expr)?;
        for l in &mut self.labels {
            if *l == i {
                *l = j;
            }
        }
        Ok(())
    }
}

/// Merge random pairs from a pool of single vertices until one remains.
/// Cograph mode keeps every piece labeled 1 and combines by union or
/// join; general mode unions and then adds random irredundant joins and
/// relabels, touching only labels present in the piece.
fn random_expression(rng: &mut ChaCha8Rng, n: usize, c: u32, cograph: bool) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidSpec("expressions need at least one vertex".into()));
    }
    let mut pool = Vec::with_capacity(n);
    for _ in 0..n {
        let l = if cograph { 1 } else { rng.gen_range(1..=c) };
        pool.push(Piece {
            expr: CwExpression::introduce(l)?,
            labels: vec![l],
            edges: HashSet::new(),
        });
    }
    while pool.len() > 1 {
        let a = pool.swap_remove(rng.gen_range(0..pool.len()));
        let mut b = pool.swap_remove(rng.gen_range(0..pool.len()));
        let join = cograph && rng.gen_bool(0.5);
        if join {
            b.relabel(1, 2)?;
        }
        let offset = a.labels.len();
        let mut piece = Piece {
            expr: CwExpression::union(a.expr, b.expr),
            labels: a.labels.into_iter().chain(b.labels).collect(),
            edges: a
                .edges
                .into_iter()
                .chain(b.edges.into_iter().map(|(u, v)| (u + offset, v + offset)))
                .collect(),
        };
        if join {
            piece.join(1, 2)?;
            piece.relabel(2, 1)?;
        } else if !cograph && c >= 2 {
            for _ in 0..rng.gen_range(0..=2) {
                let i = rng.gen_range(1..=c);
                let j = rng.gen_range(1..=c);
                let present = |l| piece.labels.contains(&l);
                if i != j && present(i) && present(j) && !piece.has_edge_between(i, j) {
                    piece.join(i, j)?;
                }
            }
            if rng.gen_bool(0.3) {
                let i = rng.gen_range(1..=c);
                let j = rng.gen_range(1..=c);
                if i != j && piece.labels.contains(&i) {
                    piece.relabel(i, j)?;
                }
            }
        }
        pool.push(piece);
    }
    let piece = pool.pop().expect("pool holds one piece");
    let mut edges: Vec<(usize, usize)> = piece.edges.into_iter().collect();
    edges.sort_unstable();
    Ok(Instance {
        graph: Graph::from_edges(n, edges)?,
        planted: None,
        expression: Some(piece.expr),
    })
}
