use std::collections::{BTreeMap, BTreeSet};

use super::{Pattern, PatternError, Point};

/// Simple undirected graph. Edges are stored as `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    vertices: BTreeSet<u32>,
    edges: BTreeSet<(u32, u32)>,
}

impl Graph {
    pub fn new(
        vertices: impl IntoIterator<Item = u32>,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, PatternError> {
        let mut g = Graph { vertices: vertices.into_iter().collect(), edges: BTreeSet::new() };
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Graph whose vertex set is exactly the endpoints of `edges`.
    pub fn from_edges(edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, PatternError> {
        let edges: Vec<(u32, u32)> = edges.into_iter().collect();
        let vertices: Vec<u32> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        Graph::new(vertices, edges)
    }

    pub fn add_vertex(&mut self, v: u32) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, a: u32, b: u32) -> Result<(), PatternError> {
        if a == b {
            return Err(PatternError::SelfLoop(a));
        }
        for v in [a, b] {
            if !self.vertices.contains(&v) {
                return Err(PatternError::UnknownVertex(v));
            }
        }
        self.edges.insert((a.min(b), a.max(b)));
        Ok(())
    }

    pub fn vertices(&self) -> &BTreeSet<u32> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(u32, u32)> {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbours(&self, v: u32) -> Vec<u32> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Adjacency lists, ascending.
    pub fn adjacency(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut adj: BTreeMap<u32, Vec<u32>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in &self.edges {
            adj.get_mut(&a).unwrap().push(b);
            adj.get_mut(&b).unwrap().push(a);
        }
        for l in adj.values_mut() {
            l.sort_unstable();
        }
        adj
    }

    pub fn induced(&self, keep: &BTreeSet<u32>) -> Graph {
        Graph {
            vertices: self.vertices.intersection(keep).copied().collect(),
            edges: self.edges.iter().filter(|(a, b)| keep.contains(a) && keep.contains(b)).copied().collect(),
        }
    }

    pub fn without_vertex(&self, v: u32) -> Graph {
        let mut keep = self.vertices.clone();
        keep.remove(&v);
        self.induced(&keep)
    }

    /// Connected components, each ascending, ordered by least vertex.
    pub fn components(&self) -> Vec<BTreeSet<u32>> {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in &self.vertices {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = BTreeSet::from([s]);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &adj[&v] {
                    if seen.insert(w) {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Cycle `C_n` on vertices `0..n`.
    pub fn cycle(n: u32) -> Graph {
        Graph::from_edges((0..n).map(|i| (i, (i + 1) % n))).expect("cycle needs n >= 3")
    }

    /// Path on vertices `0..n`.
    pub fn path(n: u32) -> Graph {
        Graph::new(0..n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// Complete graph on `0..n`.
    pub fn complete(n: u32) -> Graph {
        Graph::new(0..n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
    }
}

/// Negative pattern with one point per edge incidence; points at the same
/// vertex form a part. Edges are taken in ascending order, edge `i = (u, v)`
/// contributing points `2i` (at `u`) and `2i + 1` (at `v`). Isolated vertices
/// have no incidences and so contribute nothing.
pub fn pattern_from_graph(g: &Graph) -> Pattern {
    let mut parts: BTreeMap<u32, Vec<Point>> = BTreeMap::new();
    let mut neg = Vec::new();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let (x, y) = (Point(2 * i as u32), Point(2 * i as u32 + 1));
        parts.entry(u).or_default().push(x);
        parts.entry(v).or_default().push(y);
        neg.push((x, y));
    }
    Pattern::new(parts.into_values(), [], neg).expect("graph edges join distinct vertices")
}
