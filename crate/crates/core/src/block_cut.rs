//! Biconnected components, the block-cut tree, block-graph recognition and
//! an exhaustive minimum block-deletion-set finder.

use std::collections::VecDeque;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeNode {
    Block(usize),
    Cut(usize),
}

/// Rooted block-cut forest: one tree per connected component.
///
/// Blocks are stored as sorted vertex lists in lexicographic order; cut
/// nodes are indexed in increasing order of their vertex. Every tree is
/// rooted at the lexicographically smallest block of its component.
#[derive(Clone, Debug)]
pub struct BlockCutTree {
    blocks: Vec<Vec<usize>>,
    cut_vertices: Vec<usize>,
    cut_index: Vec<Option<usize>>,
    tree_edges: Vec<(usize, usize)>,
    component: Vec<usize>,
    roots: Vec<usize>,
    block_parent: Vec<Option<usize>>,
    block_children: Vec<Vec<usize>>,
    cut_parent: Vec<usize>,
    cut_children: Vec<Vec<usize>>,
    order: Vec<TreeNode>,
}

impl BlockCutTree {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    pub fn cut_vertices(&self) -> &[usize] {
        &self.cut_vertices
    }

    pub fn cut_vertex(&self, c: usize) -> usize {
        self.cut_vertices[c]
    }

    /// Cut-node index of vertex `v`, if `v` is a cut vertex.
    pub fn cut_index(&self, v: usize) -> Option<usize> {
        self.cut_index[v]
    }

    /// `(block index, cut index)` pairs.
    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    /// Component index of every vertex, numbered by smallest member.
    pub fn component_index(&self) -> &[usize] {
        &self.component
    }

    /// Root block of every component.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn block_parent(&self, b: usize) -> Option<usize> {
        self.block_parent[b]
    }

    pub fn block_children(&self, b: usize) -> &[usize] {
        &self.block_children[b]
    }

    pub fn cut_parent(&self, c: usize) -> usize {
        self.cut_parent[c]
    }

    pub fn cut_children(&self, c: usize) -> &[usize] {
        &self.cut_children[c]
    }

    /// All nodes, parents before children.
    pub fn top_down(&self) -> &[TreeNode] {
        &self.order
    }
}

/// Biconnected components as sorted vertex lists; isolated vertices are
/// singleton blocks. Iterative Hopcroft-Tarjan with an edge stack.
pub fn biconnected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    // (vertex, parent, next neighbor position)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if g.degree(root) == 0 {
            blocks.push(vec![root]);
            continue;
        }
        stack.push((root, usize::MAX, 0));
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            if idx < g.degree(v) {
                top.2 += 1;
                let u = g.neighbors(v)[idx];
                if disc[u] == usize::MAX {
                    edge_stack.push((v, u));
                    disc[u] = time;
                    low[u] = time;
                    time += 1;
                    stack.push((u, v, 0));
                } else if u != parent && disc[u] < disc[v] {
                    edge_stack.push((v, u));
                    low[v] = low[v].min(disc[u]);
                }
                continue;
            }
            stack.pop();
            if parent == usize::MAX {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                let mut block = Vec::new();
                while let Some((a, b)) = edge_stack.pop() {
                    block.push(a);
                    block.push(b);
                    if (a, b) == (parent, v) {
                        break;
                    }
                }
                block.sort_unstable();
                block.dedup();
                blocks.push(block);
            }
        }
    }
    // lexicographic order without an n log n sort: bucket by smallest vertex,
    // then order the few blocks sharing it
    let mut by_first: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for block in blocks {
        by_first[block[0]].push(block);
    }
    by_first
        .into_iter()
        .flat_map(|mut bucket| {
            bucket.sort_unstable();
            bucket
        })
        .collect()
}

/// Build the rooted block-cut forest of `g`.
pub fn build_block_cut_tree(g: &Graph) -> BlockCutTree {
    let n = g.n();
    let blocks = biconnected_components(g);

    let mut vertex_blocks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (b, block) in blocks.iter().enumerate() {
        for &v in block {
            vertex_blocks[v].push(b);
        }
    }
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| vertex_blocks[v].len() >= 2).collect();
    let mut cut_index = vec![None; n];
    for (c, &v) in cut_vertices.iter().enumerate() {
        cut_index[v] = Some(c);
    }
    // blocks are sorted and cut indices increase with the vertex, so this
    // comes out ordered
    let tree_edges: Vec<(usize, usize)> = blocks
        .iter()
        .enumerate()
        .flat_map(|(b, block)| block.iter().filter_map(|&v| cut_index[v]).map(move |c| (b, c)))
        .collect();

    let mut component = vec![0; n];
    for (i, comp) in g.components().iter().enumerate() {
        for &v in comp {
            component[v] = i;
        }
    }
    let ncomp = if n == 0 { 0 } else { component.iter().max().unwrap() + 1 };
    let mut roots = vec![usize::MAX; ncomp];
    for (b, block) in blocks.iter().enumerate() {
        let c = component[block[0]];
        if roots[c] == usize::MAX {
            roots[c] = b;
        }
    }

    let nb = blocks.len();
    let nc = cut_vertices.len();
    let mut block_parent = vec![None; nb];
    let mut block_children = vec![Vec::new(); nb];
    let mut cut_parent = vec![usize::MAX; nc];
    let mut cut_children = vec![Vec::new(); nc];
    let mut order = Vec::with_capacity(nb + nc);
    let mut queue: VecDeque<TreeNode> = roots.iter().map(|&b| TreeNode::Block(b)).collect();
    while let Some(node) = queue.pop_front() {
        order.push(node);
        match node {
            TreeNode::Block(b) => {
                let parent_vertex = block_parent[b].map(|c| cut_vertices[c]);
                for &v in &blocks[b] {
                    if Some(v) == parent_vertex {
                        continue;
                    }
                    if let Some(c) = cut_index[v] {
                        cut_parent[c] = b;
                        block_children[b].push(c);
                        queue.push_back(TreeNode::Cut(c));
                    }
                }
            }
            TreeNode::Cut(c) => {
                for &b in &vertex_blocks[cut_vertices[c]] {
                    if b == cut_parent[c] {
                        continue;
                    }
                    block_parent[b] = Some(c);
                    cut_children[c].push(b);
                    queue.push_back(TreeNode::Block(b));
                }
            }
        }
    }

    BlockCutTree {
        blocks,
        cut_vertices,
        cut_index,
        tree_edges,
        component,
        roots,
        block_parent,
        block_children,
        cut_parent,
        cut_children,
        order,
    }
}

/// True iff every biconnected component of `g` is a clique.
pub fn is_block_graph(g: &Graph) -> bool {
    blocks_are_cliques(g, &biconnected_components(g))
}

/// Blocks partition the edge set, so all of them are cliques exactly when
/// their clique edge counts add up to m.
pub(crate) fn blocks_are_cliques(g: &Graph, blocks: &[Vec<usize>]) -> bool {
    blocks.iter().map(|b| b.len() * (b.len() - 1) / 2).sum::<usize>() == g.m()
}

/// Smallest `D` with `|D| <= budget` whose removal leaves a block graph.
/// Subsets are tried by increasing size, lexicographically within a size.
pub fn find_min_block_deletion_set(g: &Graph, budget: usize) -> Result<Vec<usize>> {
    let n = g.n();
    if budget > n {
        return Err(Error::BudgetTooLarge { budget, n });
    }
    for size in 0..=budget {
        for d in (0..n).combinations(size) {
            if is_block_graph(&residual(g, &d)) {
                return Ok(d);
            }
        }
    }
    Err(Error::NotFound(budget))
}

/// `g[V \ d]` without the id mapping.
pub(crate) fn residual(g: &Graph, d: &[usize]) -> Graph {
    let mut keep = vec![true; g.n()];
    for &v in d {
        keep[v] = false;
    }
    let rest: Vec<usize> = (0..g.n()).filter(|&v| keep[v]).collect();
    g.induced_subgraph(&rest).expect("residual vertices are in range").0
}
