//! Text syntax: `i(l)` introduces a vertex labeled `l`, `u(a,b)` is the
//! disjoint union, `e(i,j,a)` joins every `i`-vertex to every `j`-vertex and
//! `r(i,j,a)` relabels `i` to `j`. Labels are decimal integers from 1;
//! whitespace is ignored and `#` starts a comment running to end of line.
//! Vertex ids are assigned to `i(..)` occurrences left to right.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Node {
    Introduce(u32),
    /// Indices of the left and right operand.
    Union(usize, usize),
    Join(u32, u32, usize),
    Relabel(u32, u32, usize),
}

/// Expression tree stored in post-order (left subtree, right subtree,
/// node), root last. Every constructor preserves that layout, so two
/// expressions are structurally equal exactly when their arenas are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwExpression {
    nodes: Vec<Node>,
}

/// A realized expression: the graph and the final label of each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<u32>,
}

fn check_label(l: u32) -> Result<()> {
    if l == 0 {
        return Err(Error::BadLabel { pos: 0 });
    }
    Ok(())
}

impl CwExpression {
    pub fn introduce(label: u32) -> Result<Self> {
        check_label(label)?;
        Ok(CwExpression {
            nodes: vec![Node::Introduce(label)],
        })
    }

    pub fn union(left: CwExpression, right: CwExpression) -> Self {
        let offset = left.nodes.len();
        let mut nodes = left.nodes;
        nodes.reserve(right.nodes.len() + 1);
        nodes.extend(right.nodes.into_iter().map(|n| shift(n, offset)));
        let l = offset - 1;
        let r = nodes.len() - 1;
        nodes.push(Node::Union(l, r));
        CwExpression { nodes }
    }

    pub fn join(i: u32, j: u32, child: CwExpression) -> Result<Self> {
        check_label(i)?;
        check_label(j)?;
        if i == j {
            return Err(Error::JoinSameLabel { pos: 0, label: i });
        }
        Ok(child.wrap(|c| Node::Join(i, j, c)))
    }

    pub fn relabel(i: u32, j: u32, child: CwExpression) -> Result<Self> {
        check_label(i)?;
        check_label(j)?;
        if i == j {
            return Err(Error::RelabelSameLabel { pos: 0, label: i });
        }
        Ok(child.wrap(|c| Node::Relabel(i, j, c)))
    }

    fn wrap(mut self, f: impl FnOnce(usize) -> Node) -> Self {
        let c = self.nodes.len() - 1;
        self.nodes.push(f(c));
        self
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Number of `Introduce` nodes, i.e. vertices of the realized graph.
    pub fn vertex_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Introduce(_))).count()
    }

    /// Largest label mentioned anywhere.
    pub fn label_count(&self) -> u32 {
        self.nodes
            .iter()
            .map(|n| match *n {
                Node::Introduce(l) => l,
                Node::Union(..) => 0,
                Node::Join(i, j, _) | Node::Relabel(i, j, _) => i.max(j),
            })
            .max()
            .unwrap_or(0)
    }

    /// Half-open vertex-id range covered by every node, and the vertex id
    /// of every `Introduce` node.
    pub(crate) fn vertex_ranges(&self) -> Vec<(usize, usize)> {
        let mut next = 0;
        let mut ranges: Vec<(usize, usize)> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let r = match *node {
                Node::Introduce(_) => {
                    next += 1;
                    (next - 1, next)
                }
                Node::Union(a, b) => (ranges[a].0, ranges[b].1),
                Node::Join(_, _, c) | Node::Relabel(_, _, c) => ranges[c],
            };
            ranges.push(r);
        }
        ranges
    }

    /// Build the labeled graph. A join between labels that already share
    /// an edge adds only the missing edges.
    pub fn realize(&self) -> LabeledGraph {
        self.realize_inner().0
    }

    /// First join (in evaluation order) that meets an existing edge between
    /// its two label classes, if any.
    pub fn first_redundant_join(&self) -> Option<(u32, u32)> {
        self.realize_inner().1
    }

    fn realize_inner(&self) -> (LabeledGraph, Option<(u32, u32)>) {
        let ranges = self.vertex_ranges();
        let n = self.vertex_count();
        let mut labels = vec![0u32; n];
        let mut edges: HashSet<(usize, usize)> = HashSet::new();
        let mut redundant = None;
        for (t, node) in self.nodes.iter().enumerate() {
            let (lo, hi) = ranges[t];
            match *node {
                Node::Introduce(l) => labels[lo] = l,
                Node::Union(..) => {}
                Node::Join(i, j, _) => {
                    let is: Vec<usize> = (lo..hi).filter(|&v| labels[v] == i).collect();
                    let js: Vec<usize> = (lo..hi).filter(|&v| labels[v] == j).collect();
                    for &a in &is {
                        for &b in &js {
                            if !edges.insert((a.min(b), a.max(b))) && redundant.is_none() {
                                redundant = Some((i, j));
                            }
                        }
                    }
                }
                Node::Relabel(i, j, _) => {
                    for l in &mut labels[lo..hi] {
                        if *l == i {
                            *l = j;
                        }
                    }
                }
            }
        }
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        edges.sort_unstable();
        let graph = Graph::from_edges(n, edges).expect("realized edges are simple");
        (LabeledGraph { graph, labels }, redundant)
    }
}

fn shift(node: Node, offset: usize) -> Node {
    match node {
        Node::Introduce(l) => Node::Introduce(l),
        Node::Union(a, b) => Node::Union(a + offset, b + offset),
        Node::Join(i, j, c) => Node::Join(i, j, c + offset),
        Node::Relabel(i, j, c) => Node::Relabel(i, j, c + offset),
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while let Some(&c) = self.src.get(self.pos) {
            if c == b'#' {
                while self.src.get(self.pos).is_some_and(|&c| c != b'\n') {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, want: u8) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{}', found '{}'", want as char, c as char))),
            None => Err(self.error(format!("expected '{}', found end of input", want as char))),
        }
    }

    fn label(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        if digits.is_empty() {
            return Err(Error::Syntax {
                pos: start,
                msg: "expected a label".into(),
            });
        }
        let value: u32 = digits.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("label {digits} out of range"),
        })?;
        if value == 0 {
            return Err(Error::BadLabel { pos: start });
        }
        if digits.starts_with('0') {
            return Err(Error::Syntax {
                pos: start,
                msg: "labels have no leading zeros".into(),
            });
        }
        Ok(value)
    }

    /// `i, j,` of a join or relabel header; returns the labels and the
    /// position of the first one.
    fn label_pair(&mut self) -> Result<(u32, u32, usize)> {
        self.skip_ws();
        let pos = self.pos;
        let i = self.label()?;
        self.expect(b',')?;
        let j = self.label()?;
        self.expect(b',')?;
        Ok((i, j, pos))
    }
}

enum Pending {
    Union(Option<usize>),
    Join(u32, u32),
    Relabel(u32, u32),
}

/// Parse one expression. Iterative, so nesting depth is not limited by the
/// call stack.
pub fn parse_expression(text: &str) -> Result<CwExpression> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut nodes: Vec<Node> = Vec::new();
    let mut stack: Vec<Pending> = Vec::new();
    loop {
        // parse the head of one expression
        let head = lx
            .peek()
            .ok_or_else(|| lx.error("expected an expression, found end of input"))?;
        if !matches!(head, b'i' | b'u' | b'e' | b'r') {
            return Err(lx.error(format!("unexpected '{}'", head as char)));
        }
        lx.pos += 1;
        lx.expect(b'(')?;
        let mut done = match head {
            b'i' => {
                let l = lx.label()?;
                lx.expect(b')')?;
                nodes.push(Node::Introduce(l));
                nodes.len() - 1
            }
            b'u' => {
                stack.push(Pending::Union(None));
                continue;
            }
            b'e' => {
                let (i, j, pos) = lx.label_pair()?;
                if i == j {
                    return Err(Error::JoinSameLabel { pos, label: i });
                }
                stack.push(Pending::Join(i, j));
                continue;
            }
            b'r' => {
                let (i, j, pos) = lx.label_pair()?;
                if i == j {
                    return Err(Error::RelabelSameLabel { pos, label: i });
                }
                stack.push(Pending::Relabel(i, j));
                continue;
            }
            _ => unreachable!(),
        };
        // close every pending operator that is now complete
        loop {
            let Some(top) = stack.last_mut() else {
                if lx.peek().is_some() {
                    return Err(lx.error("trailing input after expression"));
                }
                return Ok(CwExpression { nodes });
            };
            let node = match *top {
                Pending::Union(None) => {
                    *top = Pending::Union(Some(done));
                    lx.expect(b',')?;
                    break;
                }
                Pending::Union(Some(left)) => Node::Union(left, done),
                Pending::Join(i, j) => Node::Join(i, j, done),
                Pending::Relabel(i, j) => Node::Relabel(i, j, done),
            };
            lx.expect(b')')?;
            stack.pop();
            nodes.push(node);
            done = nodes.len() - 1;
        }
    }
}

/// Canonical whitespace-free text of `e`.
pub fn emit_expression(e: &CwExpression) -> String {
    enum Step {
        Node(usize),
        Text(&'static str),
    }
    let mut out = String::new();
    let mut stack = vec![Step::Node(e.root())];
    while let Some(step) = stack.pop() {
        match step {
            Step::Text(s) => out.push_str(s),
            Step::Node(t) => match e.nodes[t] {
                Node::Introduce(l) => {
                    let _ = write!(out, "i({l})");
                }
                Node::Union(a, b) => {
                    out.push_str("u(");
                    stack.extend([Step::Text(")"), Step::Node(b), Step::Text(","), Step::Node(a)]);
                }
                Node::Join(i, j, c) => {
                    let _ = write!(out, "e({i},{j},");
                    stack.extend([Step::Text(")"), Step::Node(c)]);
                }
                Node::Relabel(i, j, c) => {
                    let _ = write!(out, "r({i},{j},");
                    stack.extend([Step::Text(")"), Step::Node(c)]);
                }
            },
        }
    }
    out
}
