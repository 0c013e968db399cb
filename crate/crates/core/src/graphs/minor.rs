//! Exact topological-minor test for small graphs.

use std::collections::{BTreeMap, BTreeSet};

use super::GraphError;
use crate::pattern::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinorLimits {
    pub max_pattern: usize,
    pub max_host: usize,
}

impl Default for MinorLimits {
    fn default() -> Self {
        MinorLimits { max_pattern: 8, max_host: 64 }
    }
}

impl MinorLimits {
    pub fn unbounded() -> Self {
        MinorLimits { max_pattern: usize::MAX, max_host: usize::MAX }
    }
}

/// Branch vertices and one host path per pattern edge, endpoints included.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GraphMinorWitness {
    pub branch: BTreeMap<u32, u32>,
    pub paths: BTreeMap<(u32, u32), Vec<u32>>,
}

impl GraphMinorWitness {
    /// Injective branch map, paths joining the right branch vertices along
    /// host edges, internally disjoint and avoiding every branch vertex.
    pub fn verify(&self, h: &Graph, g: &Graph) -> bool {
        let keys: BTreeSet<u32> = self.branch.keys().copied().collect();
        if &keys != h.vertices() {
            return false;
        }
        let images: BTreeSet<u32> = self.branch.values().copied().collect();
        if images.len() != self.branch.len() || !images.iter().all(|v| g.vertices().contains(v)) {
            return false;
        }
        let edges: BTreeSet<(u32, u32)> = self.paths.keys().copied().collect();
        if &edges != h.edges() {
            return false;
        }
        let mut inner = BTreeSet::new();
        for (&(a, b), path) in &self.paths {
            let ends_ok = path.first() == Some(&self.branch[&a]) && path.last() == Some(&self.branch[&b]);
            if !ends_ok || path.len() < 2 || !path.windows(2).all(|w| g.has_edge(w[0], w[1])) {
                return false;
            }
            for &x in &path[1..path.len() - 1] {
                if images.contains(&x) || !inner.insert(x) {
                    return false;
                }
            }
        }
        true
    }
}

/// `H` as a topological minor of `G`, under the default size limits.
pub fn graph_topological_minor(h: &Graph, g: &Graph) -> Result<Option<GraphMinorWitness>, GraphError> {
    graph_topological_minor_with(h, g, MinorLimits::default())
}

struct Search<'a> {
    g_adj: BTreeMap<u32, Vec<u32>>,
    g_deg: BTreeMap<u32, usize>,
    h_deg: BTreeMap<u32, usize>,
    order: Vec<u32>,
    // pattern edges to route once the i-th vertex of `order` is placed
    route_at: Vec<Vec<(u32, u32)>>,
    host: &'a Graph,
    used: BTreeSet<u32>,
    branch: BTreeMap<u32, u32>,
    paths: BTreeMap<(u32, u32), Vec<u32>>,
}

pub fn graph_topological_minor_with(
    h: &Graph,
    g: &Graph,
    limits: MinorLimits,
) -> Result<Option<GraphMinorWitness>, GraphError> {
    if h.num_vertices() > limits.max_pattern || g.num_vertices() > limits.max_host {
        return Err(GraphError::SizeLimitExceeded {
            pattern: h.num_vertices(),
            host: g.num_vertices(),
            max_pattern: limits.max_pattern,
            max_host: limits.max_host,
        });
    }
    if h.num_vertices() > g.num_vertices() || h.num_edges() > g.num_edges() {
        return Ok(None);
    }
    let h_adj = h.adjacency();
    let h_deg: BTreeMap<u32, usize> = h_adj.iter().map(|(&v, l)| (v, l.len())).collect();
    let g_adj = g.adjacency();
    let g_deg: BTreeMap<u32, usize> = g_adj.iter().map(|(&v, l)| (v, l.len())).collect();
    let mut hd: Vec<usize> = h_deg.values().copied().collect();
    let mut gd: Vec<usize> = g_deg.values().copied().collect();
    hd.sort_unstable_by(|a, b| b.cmp(a));
    gd.sort_unstable_by(|a, b| b.cmp(a));
    if hd.iter().zip(&gd).any(|(a, b)| a > b) {
        return Ok(None);
    }

    // connected-first order, highest degree first
    let mut order: Vec<u32> = Vec::new();
    let mut placed = BTreeSet::new();
    while order.len() < h.num_vertices() {
        let next = h
            .vertices()
            .iter()
            .filter(|v| !placed.contains(*v))
            .max_by_key(|&&v| {
                let links = h_adj[&v].iter().filter(|w| placed.contains(*w)).count();
                (links, h_deg[&v], std::cmp::Reverse(v))
            })
            .copied()
            .unwrap();
        placed.insert(next);
        order.push(next);
    }
    let pos: BTreeMap<u32, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut route_at = vec![Vec::new(); order.len()];
    for &(a, b) in h.edges() {
        route_at[pos[&a].max(pos[&b])].push((a, b));
    }

    let mut s = Search {
        g_adj,
        g_deg,
        h_deg,
        order,
        route_at,
        host: g,
        used: BTreeSet::new(),
        branch: BTreeMap::new(),
        paths: BTreeMap::new(),
    };
    Ok(s.place(0).then_some(GraphMinorWitness { branch: s.branch, paths: s.paths }))
}

impl Search<'_> {
    fn place(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let hv = self.order[i];
        let cands: Vec<u32> = self.host.vertices().iter().copied().filter(|v| !self.used.contains(v)).collect();
        for gv in cands {
            if self.g_deg[&gv] < self.h_deg[&hv] {
                continue;
            }
            self.used.insert(gv);
            self.branch.insert(hv, gv);
            if self.route(i, 0) {
                return true;
            }
            self.branch.remove(&hv);
            self.used.remove(&gv);
        }
        false
    }

    fn route(&mut self, i: usize, k: usize) -> bool {
        if k == self.route_at[i].len() {
            return self.place(i + 1);
        }
        let (a, b) = self.route_at[i][k];
        let (s, t) = (self.branch[&a], self.branch[&b]);
        let mut path = vec![s];
        self.extend_path(&mut path, t, i, k, (a, b))
    }

    /// Depth-first over simple paths from the end of `path` to `t` through unused vertices.
    fn extend_path(&mut self, path: &mut Vec<u32>, t: u32, i: usize, k: usize, edge: (u32, u32)) -> bool {
        let last = *path.last().unwrap();
        let nbrs = self.g_adj[&last].clone();
        for w in nbrs {
            if w == t {
                path.push(t);
                self.paths.insert(edge, path.clone());
                if self.route(i, k + 1) {
                    return true;
                }
                self.paths.remove(&edge);
                path.pop();
                continue;
            }
            if self.used.contains(&w) {
                continue;
            }
            self.used.insert(w);
            path.push(w);
            if self.extend_path(path, t, i, k, edge) {
                return true;
            }
            path.pop();
            self.used.remove(&w);
        }
        false
    }
}
