//! Tutte decomposition by exhaustive separator search.
//!
//! A piece is split at an articulation vertex when it has one, otherwise at
//! the lexicographically least separating pair. The smallest component, with
//! the separator, becomes one side; everything else the other. Both sides get
//! the separator edge. Pieces that are cycles, have at most three vertices, or
//! have no separator of order at most two are leaves.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::GraphError;
use crate::pattern::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NodeKind {
    ThreeConnected,
    Cycle,
    Small,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub vertices: BTreeSet<u32>,
    /// Torso edges, virtual ones included.
    pub edges: BTreeSet<(u32, u32)>,
    /// Separator edges absent from the input graph.
    pub virtual_edges: BTreeSet<(u32, u32)>,
    pub kind: NodeKind,
}

impl TreeNode {
    pub fn torso(&self) -> Graph {
        Graph::new(self.vertices.iter().copied(), self.edges.iter().copied()).expect("torso edges stay inside")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeArc {
    pub parent: usize,
    pub child: usize,
    pub separator: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTree {
    pub nodes: Vec<TreeNode>,
    pub arcs: Vec<TreeArc>,
    pub root: usize,
}

/// Every separator of order one or two with each component it cuts off.
pub fn two_separations(g: &Graph) -> Vec<(Vec<u32>, BTreeSet<u32>)> {
    let vs: Vec<u32> = g.vertices().iter().copied().collect();
    let mut out = Vec::new();
    let mut seps: Vec<Vec<u32>> = vs.iter().map(|&v| vec![v]).collect();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            seps.push(vec![a, b]);
        }
    }
    let base = g.components().len();
    for sep in seps {
        let rest: BTreeSet<u32> = g.vertices().iter().copied().filter(|v| !sep.contains(v)).collect();
        let comps = g.induced(&rest).components();
        if comps.len() > base {
            for c in comps {
                out.push((sep.clone(), c));
            }
        }
    }
    out
}

fn is_cycle(g: &Graph) -> bool {
    g.num_vertices() >= 3 && g.is_connected() && g.vertices().iter().all(|&v| g.degree(v) == 2)
}

/// Least separator of order one, else of order two, with the components it leaves.
fn least_separator(g: &Graph) -> Option<(Vec<u32>, Vec<BTreeSet<u32>>)> {
    let vs: Vec<u32> = g.vertices().iter().copied().collect();
    let cut = |sep: &[u32]| {
        let rest: BTreeSet<u32> = vs.iter().copied().filter(|v| !sep.contains(v)).collect();
        let comps = g.induced(&rest).components();
        (comps.len() > 1).then_some(comps)
    };
    for &a in &vs {
        if let Some(c) = cut(&[a]) {
            return Some((vec![a], c));
        }
    }
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if let Some(c) = cut(&[a, b]) {
                return Some((vec![a, b], c));
            }
        }
    }
    None
}

struct Builder {
    nodes: Vec<TreeNode>,
    links: Vec<(usize, usize, Vec<u32>)>,
}

impl Builder {
    fn split(&mut self, piece: Graph) -> Vec<usize> {
        let kind = if is_cycle(&piece) {
            Some(NodeKind::Cycle)
        } else if piece.num_vertices() <= 3 {
            Some(NodeKind::Small)
        } else {
            None
        };
        let found = if kind.is_some() { None } else { least_separator(&piece) };
        let Some((sep, mut comps)) = found else {
            self.nodes.push(TreeNode {
                vertices: piece.vertices().clone(),
                edges: piece.edges().clone(),
                virtual_edges: BTreeSet::new(),
                kind: kind.unwrap_or(NodeKind::ThreeConnected),
            });
            return vec![self.nodes.len() - 1];
        };
        comps.sort_by_key(|c| (c.len(), c.iter().next().copied()));
        let leaf_side: BTreeSet<u32> = comps[0].iter().chain(&sep).copied().collect();
        let rest_side: BTreeSet<u32> = comps[1..].iter().flatten().chain(&sep).copied().collect();
        let side = |keep: &BTreeSet<u32>| {
            let mut g = piece.induced(keep);
            if sep.len() == 2 {
                g.add_edge(sep[0], sep[1]).unwrap();
            }
            g
        };
        let rest_nodes = self.split(side(&rest_side));
        let leaf_nodes = self.split(side(&leaf_side));
        let holder = |nodes: &[usize], this: &Self| {
            *nodes
                .iter()
                .find(|&&n| sep.iter().all(|v| this.nodes[n].vertices.contains(v)))
                .expect("some node keeps the separator")
        };
        let (a, b) = (holder(&rest_nodes, self), holder(&leaf_nodes, self));
        self.links.push((a, b, sep.clone()));
        rest_nodes.into_iter().chain(leaf_nodes).collect()
    }
}

/// Tutte decomposition of a connected graph. The root is the node holding the
/// least vertex; arcs point away from it.
pub fn tutte_decompose(g: &Graph) -> Result<DecompositionTree, GraphError> {
    if !g.is_connected() || g.num_vertices() == 0 {
        return Err(GraphError::Disconnected);
    }
    let mut b = Builder { nodes: Vec::new(), links: Vec::new() };
    b.split(g.clone());
    for n in &mut b.nodes {
        n.virtual_edges = n.edges.iter().filter(|&&(x, y)| !g.has_edge(x, y)).copied().collect();
    }
    let first = *g.vertices().iter().next().unwrap();
    let root = b.nodes.iter().position(|n| n.vertices.contains(&first)).unwrap();
    let mut adj: BTreeMap<usize, Vec<(usize, Vec<u32>)>> = BTreeMap::new();
    for (a, c, sep) in &b.links {
        adj.entry(*a).or_default().push((*c, sep.clone()));
        adj.entry(*c).or_default().push((*a, sep.clone()));
    }
    let mut arcs = Vec::new();
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for (y, sep) in adj.get(&x).cloned().unwrap_or_default() {
            if seen.insert(y) {
                arcs.push(TreeArc { parent: x, child: y, separator: sep });
                queue.push_back(y);
            }
        }
    }
    Ok(DecompositionTree { nodes: b.nodes, arcs, root })
}

impl DecompositionTree {
    pub fn children(&self, n: usize) -> Vec<usize> {
        self.arcs.iter().filter(|a| a.parent == n).map(|a| a.child).collect()
    }

    /// Vertices in the subtree hanging below `arc` (child side).
    pub fn below(&self, arc: &TreeArc) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        let mut stack = vec![arc.child];
        while let Some(n) = stack.pop() {
            out.extend(&self.nodes[n].vertices);
            stack.extend(self.children(n));
        }
        out
    }

    /// Union of all torsos with virtual edges dropped.
    pub fn reassemble(&self) -> Graph {
        let mut g = Graph::default();
        for n in &self.nodes {
            for &v in &n.vertices {
                g.add_vertex(v);
            }
        }
        for n in &self.nodes {
            for &(x, y) in n.edges.difference(&n.virtual_edges) {
                g.add_edge(x, y).unwrap();
            }
        }
        g
    }

    /// Nested form rooted at `root`, children under `"children"`.
    pub fn to_json(&self) -> serde_json::Value {
        self.node_json(self.root, None)
    }

    fn node_json(&self, n: usize, sep: Option<&Vec<u32>>) -> serde_json::Value {
        let node = &self.nodes[n];
        let children: Vec<serde_json::Value> =
            self.arcs.iter().filter(|a| a.parent == n).map(|a| self.node_json(a.child, Some(&a.separator))).collect();
        let mut obj = serde_json::json!({
            "kind": node.kind,
            "vertices": node.vertices,
            "edges": node.edges.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "virtual_edges": node.virtual_edges.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "children": children,
        });
        if let Some(s) = sep {
            obj["separator"] = serde_json::json!(s);
        }
        obj
    }
}
