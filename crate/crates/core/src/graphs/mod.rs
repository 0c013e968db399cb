//! Graph algorithms used by the occurrence search and the solvers.

mod minor;
mod paths;
mod tutte;

pub use minor::{graph_topological_minor, graph_topological_minor_with, GraphMinorWitness, MinorLimits};
pub use paths::{part_disjoint_positive_path, part_disjoint_positive_path_with};
pub use tutte::{tutte_decompose, two_separations, DecompositionTree, NodeKind, TreeArc, TreeNode};

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::pattern::{Graph, Instance, Pattern};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph too large for exact search: pattern {pattern} vertices (limit {max_pattern}), host {host} vertices (limit {max_host})")]
    SizeLimitExceeded { pattern: usize, host: usize, max_pattern: usize, max_host: usize },
}

/// Parts as vertices (named by representative), joined when a negative edge crosses them.
pub fn constraint_graph(p: &Pattern) -> Graph {
    let mut g = Graph::default();
    for q in p.parts() {
        g.add_vertex(q.0);
    }
    for e in p.negative() {
        let (a, b) = e.ends();
        g.add_edge(p.part_of(a).unwrap().0, p.part_of(b).unwrap().0).expect("negative edges cross parts");
    }
    g
}

/// Variables as vertices, joined when their constraint is non-trivial.
pub fn instance_constraint_graph(inst: &Instance) -> Graph {
    let mut g = Graph::default();
    for v in 0..inst.num_vars() {
        g.add_vertex(v as u32);
    }
    for (u, v, _) in inst.constraints() {
        g.add_edge(u as u32, v as u32).expect("constraints join distinct variables");
    }
    g
}

/// Whether `g` is a forest.
pub fn is_acyclic(g: &Graph) -> bool {
    g.num_edges() + g.components().len() == g.num_vertices()
}

struct Lowpoint<'a> {
    adj: &'a BTreeMap<u32, Vec<u32>>,
    disc: BTreeMap<u32, usize>,
    low: BTreeMap<u32, usize>,
    time: usize,
    cut: BTreeSet<u32>,
    stack: Vec<(u32, u32)>,
    blocks: Vec<BTreeSet<u32>>,
}

impl Lowpoint<'_> {
    fn visit(&mut self, v: u32, parent: Option<u32>) {
        self.disc.insert(v, self.time);
        self.low.insert(v, self.time);
        self.time += 1;
        let mut children = 0;
        for &w in &self.adj[&v] {
            if Some(w) == parent {
                continue;
            }
            if let Some(&dw) = self.disc.get(&w) {
                if dw < self.disc[&v] {
                    self.stack.push((v, w));
                    let lv = self.low[&v].min(dw);
                    self.low.insert(v, lv);
                }
                continue;
            }
            children += 1;
            self.stack.push((v, w));
            self.visit(w, Some(v));
            let lv = self.low[&v].min(self.low[&w]);
            self.low.insert(v, lv);
            if self.low[&w] >= self.disc[&v] {
                if parent.is_some() {
                    self.cut.insert(v);
                }
                let mut block = BTreeSet::new();
                while let Some((a, b)) = self.stack.pop() {
                    block.insert(a);
                    block.insert(b);
                    if (a, b) == (v, w) {
                        break;
                    }
                }
                self.blocks.push(block);
            }
        }
        if parent.is_none() && children > 1 {
            self.cut.insert(v);
        }
    }
}

fn lowpoint(g: &Graph) -> (BTreeSet<u32>, Vec<BTreeSet<u32>>) {
    let adj = g.adjacency();
    let mut lp = Lowpoint {
        adj: &adj,
        disc: BTreeMap::new(),
        low: BTreeMap::new(),
        time: 0,
        cut: BTreeSet::new(),
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for &v in g.vertices() {
        if !lp.disc.contains_key(&v) {
            lp.visit(v, None);
            if adj[&v].is_empty() {
                lp.blocks.push(BTreeSet::from([v]));
            }
        }
    }
    let mut blocks = lp.blocks;
    blocks.sort();
    (lp.cut, blocks)
}

/// Vertices whose removal increases the number of components.
pub fn articulation_vertices(g: &Graph) -> BTreeSet<u32> {
    lowpoint(g).0
}

/// Biconnected components (bridges give two-vertex blocks, isolated vertices singletons), sorted.
pub fn blocks(g: &Graph) -> Vec<BTreeSet<u32>> {
    lowpoint(g).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{make_named, pattern_from_graph, pattern_from_instance};

    #[test]
    fn constraint_graph_of_c3_is_a_triangle() {
        let g = constraint_graph(&make_named("C3").unwrap().into_plain().unwrap());
        assert_eq!((g.num_vertices(), g.num_edges()), (3, 3));
    }

    #[test]
    fn trivial_instance_has_edgeless_graph() {
        let g = constraint_graph(&pattern_from_instance(&Instance::uniform(3, 2)));
        assert_eq!((g.num_vertices(), g.num_edges()), (3, 0));
    }

    #[test]
    fn l_gives_a_path() {
        let g = constraint_graph(&make_named("L").unwrap().into_plain().unwrap());
        assert_eq!(g, Graph::path(4));
    }

    #[test]
    fn round_trip_through_pg() {
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let cg = constraint_graph(&pattern_from_graph(&g));
        let mut degs: Vec<usize> = cg.vertices().iter().map(|&v| cg.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 2, 2, 3]);
        assert_eq!(cg.num_edges(), 4);
    }

    #[test]
    fn acyclicity_and_cut_vertices() {
        let tri = Graph::cycle(3);
        assert!(!is_acyclic(&tri));
        assert!(articulation_vertices(&tri).is_empty());
        let path = Graph::path(3);
        assert!(is_acyclic(&path));
        assert_eq!(articulation_vertices(&path), BTreeSet::from([1]));
        let bowtie = Graph::from_edges([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(articulation_vertices(&bowtie), BTreeSet::from([2]));
        assert_eq!(blocks(&bowtie), vec![BTreeSet::from([0, 1, 2]), BTreeSet::from([2, 3, 4])]);
    }

    #[test]
    fn blocks_cover_isolated_vertices_and_bridges() {
        let g = Graph::new([0, 1, 2, 5], [(0, 1), (1, 2)]).unwrap();
        assert_eq!(blocks(&g), vec![BTreeSet::from([0, 1]), BTreeSet::from([1, 2]), BTreeSet::from([5])]);
    }
}
