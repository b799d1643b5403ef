//! Exact Densest/Sparsest k-Subgraph with weighted vertices on block graphs,
//! by dynamic programming over the block-cut tree.
//!
//! Every node `i` carries a table `A[i][p][l]`: the best value of an
//! `l`-vertex subset of the vertices below `i`, where `p` says whether the
//! parent cut vertex is in the subset. Cut nodes fold their children with
//! knapsack merges; block nodes run an inner DP over their non-parent
//! members and then add the clique edges among the chosen members.

use crate::block_cut::{blocks_are_cliques, build_block_cut_tree, is_block_graph, BlockCutTree, TreeNode};
use crate::deletion::{PreparedSolver, WeightedSolver};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexWeights};
use crate::scalar::{add_opt, Scalar};
use crate::solution::{check_k, Objective, SolveResult};

pub const STRATEGY: &str = "block-dp";

/// Best value per size `0..=cap`; `None` marks an unreachable size.
pub type MergeTable<W> = Vec<Option<W>>;

/// `out[l] = opt_{l'+l''=l} a[l'] + b[l'']` for `l` in `0..=cap`. Entries
/// beyond a table's length count as unreachable.
pub fn knapsack_merge<W: Scalar>(a: &[Option<W>], b: &[Option<W>], cap: usize, obj: Objective) -> MergeTable<W> {
    merge_traced(a, b, cap, obj).0
}

/// As [`knapsack_merge`], also returning the `l'` taken from `a` per entry.
fn merge_traced<W: Scalar>(a: &[Option<W>], b: &[Option<W>], cap: usize, obj: Objective) -> (MergeTable<W>, Vec<u32>) {
    let mut out = vec![None; cap + 1];
    let mut split = vec![0u32; cap + 1];
    for (i, x) in a.iter().enumerate().take(cap + 1) {
        let Some(x) = *x else { continue };
        for (j, y) in b.iter().enumerate().take(cap + 1 - i) {
            let cand = y.map(|y| x + y);
            if obj.replaces(&cand, &out[i + j]) {
                out[i + j] = cand;
                split[i + j] = i as u32;
            }
        }
    }
    (out, split)
}

#[derive(Clone, Debug)]
struct NodeTable<W> {
    without_parent: Vec<Option<W>>,
    with_parent: Vec<Option<W>>,
}

impl<W> Default for NodeTable<W> {
    fn default() -> Self {
        NodeTable {
            without_parent: Vec::new(),
            with_parent: Vec::new(),
        }
    }
}

/// Backpointers of one member step of a block's inner DP, indexed
/// `[alpha][l]`; each entry packs the member's inclusion bit and the size
/// taken from its subtree.
struct Grid {
    width: usize,
    back: Vec<u32>,
}

const TAKE_BIT: u32 = 1 << 31;

enum BlockTrace {
    Leaf {
        order: Vec<usize>,
    },
    Inner {
        members: Vec<usize>,
        grids: Vec<Grid>,
        alpha: [Vec<u32>; 2],
    },
}

struct CutTrace {
    // per p, per child s >= 1: l' of child s in the fold
    splits: [Vec<Vec<u32>>; 2],
}

/// A block graph together with its block-cut tree, ready for repeated
/// solves under different weights.
pub struct PreparedBlockGraph<'g> {
    g: &'g Graph,
    tree: BlockCutTree,
}

impl<'g> PreparedBlockGraph<'g> {
    pub fn new(g: &'g Graph) -> Result<Self> {
        let tree = build_block_cut_tree(g);
        if !blocks_are_cliques(g, tree.blocks()) {
            return Err(Error::NotBlockGraph);
        }
        Ok(PreparedBlockGraph { g, tree })
    }

    pub fn tree(&self) -> &BlockCutTree {
        &self.tree
    }

    /// Best value for every size `0..=k`.
    pub fn table<W: Scalar>(&self, w: &VertexWeights<W>, k: usize, obj: Objective) -> Result<MergeTable<W>> {
        w.check_len(self.g.n())?;
        check_k(k, self.g.n())?;
        Ok(Dp::new(self, w.as_slice(), k, obj, false).run().0)
    }

    pub fn solve<W: Scalar>(&self, w: &VertexWeights<W>, k: usize, obj: Objective) -> Result<SolveResult<W>> {
        w.check_len(self.g.n())?;
        check_k(k, self.g.n())?;
        let (table, witness) = Dp::new(self, w.as_slice(), k, obj, true).run();
        let value = table[k].expect("every size up to n is reachable");
        Ok(SolveResult {
            value,
            witness: witness.expect("trace requested"),
            strategy: STRATEGY,
        })
    }
}

struct Dp<'a, W> {
    tree: &'a BlockCutTree,
    w: &'a [W],
    k: usize,
    obj: Objective,
    trace: bool,
    block_tables: Vec<NodeTable<W>>,
    cut_tables: Vec<NodeTable<W>>,
    block_size: Vec<usize>,
    cut_size: Vec<usize>,
    block_traces: Vec<Option<BlockTrace>>,
    cut_traces: Vec<Option<CutTrace>>,
}

impl<'a, W: Scalar> Dp<'a, W> {
    fn new(prep: &'a PreparedBlockGraph<'_>, w: &'a [W], k: usize, obj: Objective, trace: bool) -> Self {
        let tree = &prep.tree;
        let nb = tree.blocks().len();
        let nc = tree.cut_vertices().len();
        Dp {
            tree,
            w,
            k,
            obj,
            trace,
            block_tables: (0..nb).map(|_| NodeTable::default()).collect(),
            cut_tables: (0..nc).map(|_| NodeTable::default()).collect(),
            block_size: vec![0; nb],
            cut_size: vec![0; nc],
            block_traces: (0..nb).map(|_| None).collect(),
            cut_traces: (0..nc).map(|_| None).collect(),
        }
    }

    /// Returns the best value per size and, when tracing, a witness of size k.
    fn run(mut self) -> (MergeTable<W>, Option<Vec<usize>>) {
        for &node in self.tree.top_down().iter().rev() {
            match node {
                TreeNode::Block(b) => self.block_node(b),
                TreeNode::Cut(c) => self.cut_node(c),
            }
        }

        // combine components left to right
        let roots = self.tree.roots();
        let mut combined: MergeTable<W> = vec![Some(W::zero())];
        let mut splits = Vec::with_capacity(roots.len());
        for &r in roots {
            let (next, split) = merge_traced(&combined, &self.block_tables[r].without_parent, self.k, self.obj);
            combined = next;
            splits.push(split);
        }
        combined.resize(self.k + 1, None);
        if !self.trace {
            return (combined, None);
        }

        let mut witness = Vec::with_capacity(self.k);
        let mut work = Vec::new();
        let mut rest = self.k;
        for (i, &r) in roots.iter().enumerate().rev() {
            let before = splits[i][rest] as usize;
            work.push((TreeNode::Block(r), false, rest - before));
            rest = before;
        }
        while let Some((node, p, l)) = work.pop() {
            match node {
                TreeNode::Block(b) => self.trace_block(b, p, l, &mut witness, &mut work),
                TreeNode::Cut(c) => self.trace_cut(c, p, l, &mut witness, &mut work),
            }
        }
        witness.sort_unstable();
        (combined, Some(witness))
    }

    fn cap(&self, size: usize) -> usize {
        size.min(self.k)
    }

    fn block_node(&mut self, b: usize) {
        let tree = self.tree;
        let parent = tree.block_parent(b).map(|c| tree.cut_vertex(c));
        let members: Vec<usize> = tree.block(b).iter().copied().filter(|&v| Some(v) != parent).collect();
        match parent {
            Some(v) if tree.block_children(b).is_empty() => self.leaf_block(b, v, members),
            _ => self.inner_block(b, parent, members),
        }
    }

    fn leaf_block(&mut self, b: usize, v: usize, mut members: Vec<usize>) {
        let w = self.w;
        // best weights first: descending for Densest, ascending for Sparsest
        members.sort_by(|&x, &y| {
            let ord = w[y].partial_cmp(&w[x]).unwrap_or(std::cmp::Ordering::Equal);
            let ord = match self.obj {
                Objective::Densest => ord,
                Objective::Sparsest => ord.reverse(),
            };
            ord.then(x.cmp(&y))
        });
        let size = members.len() + 1;
        let mut prefix = Vec::with_capacity(members.len() + 1);
        prefix.push(W::zero());
        for &u in &members {
            prefix.push(*prefix.last().unwrap() + w[u]);
        }
        let without_parent = (0..=self.cap(size - 1))
            .map(|l| Some(W::clique_edges(l) + prefix[l]))
            .collect();
        let with_parent = (0..=self.cap(size))
            .map(|l| (l >= 1).then(|| W::clique_edges(l) + prefix[l - 1] + w[v]))
            .collect();
        self.block_tables[b] = NodeTable {
            without_parent,
            with_parent,
        };
        self.block_size[b] = size;
        if self.trace {
            self.block_traces[b] = Some(BlockTrace::Leaf { order: members });
        }
    }

    fn inner_block(&mut self, b: usize, parent: Option<usize>, members: Vec<usize>) {
        let k = self.k;
        let obj = self.obj;
        let single_no = [Some(W::zero())];
        let mut grids = Vec::new();

        // a[alpha][l], row-major with `width` = lmax + 1
        let mut amax = 0;
        let mut lmax = 0;
        let mut cur: Vec<Option<W>> = vec![Some(W::zero())];
        for (j, &u) in members.iter().enumerate() {
            let single_yes = [None, Some(self.w[u])];
            let (w_out, w_in, sub_size): (&[Option<W>], &[Option<W>], usize) = match self.tree.cut_index(u) {
                Some(c) => {
                    let t = &self.cut_tables[c];
                    (&t.without_parent, &t.with_parent, self.cut_size[c])
                }
                None => (&single_no, &single_yes, 1),
            };
            let namax = (j + 1).min(k);
            let nlmax = (lmax + sub_size).min(k);
            let width = lmax + 1;
            let nwidth = nlmax + 1;
            let mut next: Vec<Option<W>> = vec![None; (namax + 1) * nwidth];
            let mut back = if self.trace { vec![0u32; next.len()] } else { Vec::new() };
            for alpha in 0..=amax {
                for l in alpha..=lmax {
                    let Some(base) = cur[alpha * width + l] else { continue };
                    for (take, wt) in [(0usize, w_out), (1, w_in)] {
                        let na = alpha + take;
                        if na > namax {
                            continue;
                        }
                        for (sub, x) in wt.iter().enumerate() {
                            let nl = l + sub;
                            if nl > nlmax {
                                break;
                            }
                            let Some(x) = *x else { continue };
                            let idx = na * nwidth + nl;
                            let cand = Some(base + x);
                            if obj.replaces(&cand, &next[idx]) {
                                next[idx] = cand;
                                if self.trace {
                                    back[idx] = sub as u32 | if take == 1 { TAKE_BIT } else { 0 };
                                }
                            }
                        }
                    }
                }
            }
            if self.trace {
                grids.push(Grid { width: nwidth, back });
            }
            cur = next;
            amax = namax;
            lmax = nlmax;
        }
        let width = lmax + 1;
        let inner_size: usize = members
            .iter()
            .map(|&u| self.tree.cut_index(u).map_or(1, |c| self.cut_size[c]))
            .sum();

        // add the clique edges among the alpha chosen members
        let mut alpha_choice: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
        let best_over_alpha = |l: usize, extra: usize| -> (Option<W>, u32) {
            let mut best = None;
            let mut arg = 0;
            for alpha in 0..=amax.min(l) {
                let cand = cur[alpha * width + l].map(|x| x + W::clique_edges(alpha + extra));
                if obj.replaces(&cand, &best) {
                    best = cand;
                    arg = alpha as u32;
                }
            }
            (best, arg)
        };
        let mut without_parent = Vec::with_capacity(lmax + 1);
        for l in 0..=lmax {
            let (v, a) = best_over_alpha(l, 0);
            without_parent.push(v);
            alpha_choice[0].push(a);
        }
        let mut with_parent = Vec::new();
        if let Some(v) = parent {
            with_parent.push(None);
            alpha_choice[1].push(0);
            // alpha(alpha+1)/2 = clique_edges(alpha + 1): v is adjacent to all chosen members
            for l in 1..=self.cap(inner_size + 1) {
                let (x, a) = best_over_alpha(l - 1, 1);
                with_parent.push(x.map(|x| x + self.w[v]));
                alpha_choice[1].push(a);
            }
        }
        self.block_tables[b] = NodeTable {
            without_parent,
            with_parent,
        };
        self.block_size[b] = inner_size + usize::from(parent.is_some());
        if self.trace {
            self.block_traces[b] = Some(BlockTrace::Inner {
                members,
                grids,
                alpha: alpha_choice,
            });
        }
    }

    fn cut_node(&mut self, c: usize) {
        let tree = self.tree;
        let v = tree.cut_vertex(c);
        let wv = self.w[v];
        let children = tree.cut_children(c);
        let k = self.k;

        let mut without = vec![Some(W::zero())];
        // tables of the children with v chosen, re-indexed to exclude v itself
        let mut with_rest = vec![Some(W::zero())];
        let mut splits: [Vec<Vec<u32>>; 2] = [Vec::new(), Vec::new()];
        let mut size = 1;
        for &b in children {
            let t = &self.block_tables[b];
            let (next, split) = merge_traced(&without, &t.without_parent, k, self.obj);
            without = next;
            let rest: Vec<Option<W>> = t.with_parent.iter().skip(1).map(|x| x.map(|x| x - wv)).collect();
            let (next, split_in) = merge_traced(&with_rest, &rest, k.saturating_sub(1), self.obj);
            with_rest = next;
            if self.trace {
                splits[0].push(split);
                splits[1].push(split_in);
            }
            size += self.block_size[b] - 1;
        }
        without.truncate(self.cap(size) + 1);
        let mut with_parent = vec![None];
        if k >= 1 {
            with_parent.extend(with_rest.iter().take(self.cap(size)).map(|x| add_opt(*x, Some(wv))));
        }
        self.cut_tables[c] = NodeTable {
            without_parent: without,
            with_parent,
        };
        self.cut_size[c] = size;
        if self.trace {
            self.cut_traces[c] = Some(CutTrace { splits });
        }
    }

    fn trace_block(
        &self,
        b: usize,
        p: bool,
        l: usize,
        witness: &mut Vec<usize>,
        work: &mut Vec<(TreeNode, bool, usize)>,
    ) {
        match self.block_traces[b].as_ref().expect("traced") {
            BlockTrace::Leaf { order } => {
                let take = if p { l - 1 } else { l };
                witness.extend_from_slice(&order[..take]);
            }
            BlockTrace::Inner { members, grids, alpha } => {
                let mut a = alpha[usize::from(p)][l] as usize;
                let mut rest = if p { l - 1 } else { l };
                for (j, &u) in members.iter().enumerate().rev() {
                    let grid = &grids[j];
                    let packed = grid.back[a * grid.width + rest];
                    let take = packed & TAKE_BIT != 0;
                    let sub = (packed & !TAKE_BIT) as usize;
                    match self.tree.cut_index(u) {
                        Some(c) => work.push((TreeNode::Cut(c), take, sub)),
                        None if take => witness.push(u),
                        None => {}
                    }
                    a -= usize::from(take);
                    rest -= sub;
                }
                debug_assert_eq!((a, rest), (0, 0));
            }
        }
    }

    fn trace_cut(
        &self,
        c: usize,
        p: bool,
        l: usize,
        witness: &mut Vec<usize>,
        work: &mut Vec<(TreeNode, bool, usize)>,
    ) {
        let trace = self.cut_traces[c].as_ref().expect("traced");
        let children = self.tree.cut_children(c);
        let splits = &trace.splits[usize::from(p)];
        // with v chosen, each child's share is counted without v
        let mut rest = if p {
            witness.push(self.tree.cut_vertex(c));
            l - 1
        } else {
            l
        };
        for (s, &b) in children.iter().enumerate().rev() {
            let before = splits[s][rest] as usize;
            let share = rest - before;
            work.push((TreeNode::Block(b), p, share + usize::from(p)));
            rest = before;
        }
        debug_assert_eq!(rest, 0);
    }
}

/// Solve on a block graph. Errors with `NotBlockGraph` otherwise.
pub fn solve_block_weighted<W: Scalar>(
    g: &Graph,
    w: &VertexWeights<W>,
    k: usize,
    obj: Objective,
) -> Result<SolveResult<W>> {
    w.check_len(g.n())?;
    check_k(k, g.n())?;
    PreparedBlockGraph::new(g)?.solve(w, k, obj)
}

/// Residual solver for block graphs.
#[derive(Clone, Copy, Debug, Default)]
pub struct BlockDpSolver;

impl<W: Scalar> WeightedSolver<W> for BlockDpSolver {
    fn name(&self) -> &'static str {
        STRATEGY
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if is_block_graph(g) {
            Ok(())
        } else {
            Err(Error::NotBlockGraph)
        }
    }

    fn prepare<'a>(&'a self, g: &'a Graph) -> Result<Box<dyn PreparedSolver<W> + 'a>> {
        Ok(Box::new(PreparedBlockGraph::new(g)?))
    }
}

impl<W: Scalar> PreparedSolver<W> for PreparedBlockGraph<'_> {
    fn solve(&self, w: &VertexWeights<W>, k: usize, obj: Objective) -> Result<SolveResult<W>> {
        PreparedBlockGraph::solve(self, w, k, obj)
    }

    fn value(&self, w: &VertexWeights<W>, k: usize, obj: Objective) -> Result<W> {
        Ok(self.table(w, k, obj)?[k].expect("every size up to n is reachable"))
    }
}
