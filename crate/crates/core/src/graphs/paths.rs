use std::collections::{BTreeSet, VecDeque};

use crate::pattern::{Instance, Value, Var};

/// A path of positive edges (compatible pairs) from `src` to `dst` meeting every
/// variable at most once. The returned list starts at `src` and ends at `dst`.
pub fn part_disjoint_positive_path(inst: &Instance, src: (Var, Value), dst: (Var, Value)) -> Option<Vec<(Var, Value)>> {
    part_disjoint_positive_path_with(inst, src, dst, 0)
}

/// As [`part_disjoint_positive_path`], requiring at least `min_edges` edges.
pub fn part_disjoint_positive_path_with(
    inst: &Instance,
    src: (Var, Value),
    dst: (Var, Value),
    min_edges: usize,
) -> Option<Vec<(Var, Value)>> {
    if !inst.domain(src.0).contains(&src.1) || !inst.domain(dst.0).contains(&dst.1) {
        return None;
    }
    if src == dst {
        return (min_edges == 0).then(|| vec![src]);
    }
    if src.0 == dst.0 {
        return None;
    }
    let points = inst.point_labels();
    let index = |(v, a): (Var, Value)| inst.point_of(v, a).unwrap().0 as usize;
    let adj: Vec<Vec<usize>> = points
        .iter()
        .map(|&(u, a)| {
            points
                .iter()
                .enumerate()
                .filter(|&(_, &(v, b))| u != v && inst.allowed(u, a, v, b))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let mut s = PathSearch {
        points: &points,
        adj: &adj,
        dst: index(dst),
        visited: BTreeSet::from([src.0]),
        path: vec![index(src)],
        min_edges,
    };
    s.run().then(|| s.path.iter().map(|&i| points[i]).collect())
}

struct PathSearch<'a> {
    points: &'a [(Var, Value)],
    adj: &'a [Vec<usize>],
    dst: usize,
    visited: BTreeSet<Var>,
    path: Vec<usize>,
    min_edges: usize,
}

impl PathSearch<'_> {
    fn run(&mut self) -> bool {
        let cur = *self.path.last().unwrap();
        if !self.reachable(cur) {
            return false;
        }
        let adj = self.adj;
        for &w in &adj[cur] {
            let var = self.points[w].0;
            if w == self.dst {
                if self.path.len() >= self.min_edges {
                    self.path.push(w);
                    return true;
                }
                continue;
            }
            if var == self.points[self.dst].0 || self.visited.contains(&var) {
                continue;
            }
            self.visited.insert(var);
            self.path.push(w);
            if self.run() {
                return true;
            }
            self.path.pop();
            self.visited.remove(&var);
        }
        false
    }

    /// Whether `dst` can still be reached from `from` through unvisited variables.
    fn reachable(&self, from: usize) -> bool {
        let mut seen = vec![false; self.points.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(x) = queue.pop_front() {
            for &w in &self.adj[x] {
                if w == self.dst {
                    return true;
                }
                if !seen[w] && !self.visited.contains(&self.points[w].0) && self.points[w].0 != self.points[self.dst].0
                {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_point_is_a_trivial_path() {
        let inst = Instance::uniform(2, 2);
        assert_eq!(part_disjoint_positive_path(&inst, (0, 1), (0, 1)), Some(vec![(0, 1)]));
        assert_eq!(part_disjoint_positive_path_with(&inst, (0, 1), (0, 1), 1), None);
    }

    #[test]
    fn single_allowed_pair() {
        let mut inst = Instance::uniform(2, 2);
        inst.set_relation(0, 1, [(0, 1)]);
        assert_eq!(part_disjoint_positive_path(&inst, (0, 0), (1, 1)), Some(vec![(0, 0), (1, 1)]));
        assert_eq!(part_disjoint_positive_path(&inst, (0, 1), (1, 1)), None);
    }

    #[test]
    fn cannot_revisit_a_variable() {
        // variable 1 meets 0 only at value 0 and meets 2 only at value 1
        let mut inst = Instance::uniform(3, 2);
        inst.set_relation(0, 1, [(0, 0)]);
        inst.set_relation(1, 2, [(1, 0)]);
        inst.set_relation(0, 2, []);
        assert_eq!(part_disjoint_positive_path(&inst, (0, 0), (2, 0)), None);
        inst.set_relation(1, 2, [(0, 0)]);
        assert_eq!(part_disjoint_positive_path(&inst, (0, 0), (2, 0)), Some(vec![(0, 0), (1, 0), (2, 0)]));
    }

    #[test]
    fn min_edges_skips_the_direct_edge() {
        let inst = Instance::uniform(3, 1);
        assert!(part_disjoint_positive_path(&inst, (0, 0), (2, 0)).is_some());
        assert_eq!(part_disjoint_positive_path_with(&inst, (0, 0), (2, 0), 2).unwrap().len(), 3);
        assert_eq!(part_disjoint_positive_path_with(&inst, (0, 0), (2, 0), 3), None);
    }
}
