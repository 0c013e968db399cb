//! Generators and brute-force oracles shared by the integration tests.
//!
//! The oracles here deliberately avoid the library's search code: they are
//! plain backtracking over definitions.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use minorcsp::cli::gen_random;
use minorcsp::pattern::{Graph, Instance, Pattern, Point, Value};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Pattern with `1..=max_parts` parts of `1..=max_points` points. Each
/// cross-part point pair is empty, positive, negative or both.
pub fn random_pattern(r: &mut impl Rng, max_parts: usize, max_points: usize) -> Pattern {
    let parts = r.gen_range(1..=max_parts);
    let mut groups = Vec::new();
    let mut next = 0u32;
    for _ in 0..parts {
        let k = r.gen_range(1..=max_points) as u32;
        groups.push((next..next + k).map(Point).collect::<Vec<_>>());
        next += k;
    }
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for (i, gi) in groups.iter().enumerate() {
        for gj in &groups[i + 1..] {
            for &a in gi {
                for &b in gj {
                    match r.gen_range(0..20) {
                        0..=3 => pos.push((a, b)),
                        4..=8 => neg.push((a, b)),
                        9 => {
                            pos.push((a, b));
                            neg.push((a, b));
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    Pattern::new(groups, pos, neg).unwrap()
}

/// Pattern in which every cross-part pair is exactly one of positive or negative.
pub fn random_complete_pattern(r: &mut impl Rng, max_parts: usize, max_points: usize) -> Pattern {
    let parts = r.gen_range(1..=max_parts);
    let mut groups = Vec::new();
    let mut next = 0u32;
    for _ in 0..parts {
        let k = r.gen_range(1..=max_points) as u32;
        groups.push((next..next + k).map(Point).collect::<Vec<_>>());
        next += k;
    }
    let neg_bias = r.gen_range(0.2..0.9);
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for (i, gi) in groups.iter().enumerate() {
        for gj in &groups[i + 1..] {
            for &a in gi {
                for &b in gj {
                    if r.gen_bool(neg_bias) {
                        neg.push((a, b));
                    } else {
                        pos.push((a, b));
                    }
                }
            }
        }
    }
    Pattern::new(groups, pos, neg).unwrap()
}

/// A random sub-pattern of `p`: some points dropped and some edges forgotten.
pub fn shrink(r: &mut impl Rng, p: &Pattern) -> Pattern {
    let keep: BTreeSet<Point> = p.points().filter(|_| r.gen_bool(0.8)).collect();
    let groups: Vec<Vec<Point>> =
        p.part_groups().into_values().map(|g| g.into_iter().filter(|x| keep.contains(x)).collect()).collect();
    let sel = |set: &BTreeSet<minorcsp::pattern::Edge>, r: &mut ChaCha8Rng| -> Vec<(Point, Point)> {
        set.iter()
            .map(|e| e.ends())
            .filter(|(a, b)| keep.contains(a) && keep.contains(b))
            .filter(|_| r.gen_bool(0.8))
            .collect()
    };
    let mut local = rng(r.gen());
    let pos = sel(p.positive(), &mut local);
    let neg = sel(p.negative(), &mut local);
    Pattern::new(groups, pos, neg).unwrap()
}

/// Applies up to `steps` random subdivisions at part pairs that carry edges.
pub fn random_subdivision(r: &mut impl Rng, p: &Pattern, steps: usize) -> Pattern {
    let mut cur = p.clone();
    for _ in 0..steps {
        let pairs: Vec<_> = cur.edge_part_pairs().into_iter().collect();
        let Some(&(u, v)) = pairs.choose(r) else {
            break;
        };
        cur = cur.subdivide(u, v).unwrap().0;
    }
    cur
}

/// Random instance with domains `0..d`, drawn through the seeded generator.
pub fn random_instance(r: &mut impl Rng, max_vars: usize, max_dom: u32) -> Instance {
    let n = r.gen_range(1..=max_vars);
    let d = r.gen_range(1..=max_dom);
    let density = r.gen_range(0.2..=1.0);
    gen_random(n, d, density, r.gen()).unwrap()
}

/// Random instance whose constraint graph is a forest.
pub fn random_tree_instance(r: &mut impl Rng, max_vars: usize, max_dom: u32) -> Instance {
    let n = r.gen_range(1..=max_vars);
    let d = r.gen_range(1..=max_dom);
    let mut inst = Instance::uniform(n, d);
    for v in 1..n {
        if r.gen_bool(0.85) {
            let u = r.gen_range(0..v);
            inst.set_relation(u, v, random_relation(r, d));
        }
    }
    inst
}

pub fn random_relation(r: &mut impl Rng, d: u32) -> Vec<(Value, Value)> {
    let density = r.gen_range(0.3..0.9);
    (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).filter(|_| r.gen_bool(density)).collect()
}

/// Random graph on `1..=max_vertices` vertices without isolated vertices.
pub fn random_graph_no_isolated(r: &mut impl Rng, max_vertices: u32) -> Graph {
    loop {
        let n = r.gen_range(2..=max_vertices);
        let p = r.gen_range(0.3..0.9);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if r.gen_bool(p) {
                    edges.push((a, b));
                }
            }
        }
        if !edges.is_empty() {
            return Graph::from_edges(edges).unwrap();
        }
    }
}

/// Every 3-literal clause over `n` variables, as ordered triples.
pub fn all_clauses(n: i32) -> Vec<[i32; 3]> {
    let lits: Vec<i32> = (1..=n).flat_map(|i| [i, -i]).collect();
    let mut out = Vec::new();
    for &a in &lits {
        for &b in &lits {
            for &c in &lits {
                out.push([a, b, c]);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Oracles

/// Sub-pattern occurrence by direct backtracking over points: parts map
/// injectively, points of one part may share an image, and every edge of
/// `p` must appear with the same kind in `q`.
pub fn oracle_sp(p: &Pattern, q: &Pattern) -> Option<BTreeMap<Point, Point>> {
    let order: Vec<Point> = p.points().collect();
    let targets: Vec<Point> = q.points().collect();
    let mut map = BTreeMap::new();
    let mut part_map = BTreeMap::new();
    if extend(p, q, &order, &targets, &mut map, &mut part_map) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    p: &Pattern,
    q: &Pattern,
    order: &[Point],
    targets: &[Point],
    map: &mut BTreeMap<Point, Point>,
    part_map: &mut BTreeMap<minorcsp::pattern::Part, minorcsp::pattern::Part>,
) -> bool {
    let Some(&x) = order.get(map.len()) else {
        return true;
    };
    let px = p.part_of(x).unwrap();
    for &t in targets {
        let qt = q.part_of(t).unwrap();
        let fresh = match part_map.get(&px) {
            Some(&img) if img != qt => continue,
            Some(_) => false,
            None => {
                if part_map.values().any(|&v| v == qt) {
                    continue;
                }
                true
            }
        };
        let ok = map.iter().all(|(&y, &ty)| {
            (!p.is_positive(x, y) || q.is_positive(t, ty)) && (!p.is_negative(x, y) || q.is_negative(t, ty))
        });
        if !ok {
            continue;
        }
        if fresh {
            part_map.insert(px, qt);
        }
        map.insert(x, t);
        if extend(p, q, order, targets, map, part_map) {
            return true;
        }
        map.remove(&x);
        if fresh {
            part_map.remove(&px);
        }
    }
    false
}

/// `PG` of a star with `branches` branches of `len` edges, with every
/// centre point merged into one.
pub fn merged_star(branches: u32, len: u32) -> Pattern {
    let mut parts: Vec<Vec<Point>> = vec![vec![Point(0)]];
    let mut neg = Vec::new();
    let mut next = 1u32;
    for _ in 0..branches {
        let mut prev = Point(0);
        for step in 0..len {
            let a = Point(next);
            neg.push((prev, a));
            if step + 1 < len {
                let b = Point(next + 1);
                parts.push(vec![a, b]);
                prev = b;
                next += 2;
            } else {
                parts.push(vec![a]);
                next += 1;
            }
        }
    }
    Pattern::new(parts, [], neg).unwrap()
}

/// Star-likeness by the definition: the negative reduct maps into some star
/// pattern. Merging more centre points and adding longer or more branches
/// only admits more homomorphisms, so the largest star with at most
/// `#negative` branches of length at most `#negative` decides.
pub fn oracle_star_like(p: &Pattern) -> bool {
    let neg = p.negative_reduct();
    let e = neg.negative().len() as u32;
    oracle_sp(&neg, &merged_star(e.max(3), e.max(1))).is_some()
}

/// Topological minor of graphs by brute force: injective branch vertices,
/// then internally disjoint simple paths, one edge at a time.
pub fn oracle_graph_tm(h: &Graph, g: &Graph) -> bool {
    let hv: Vec<u32> = h.vertices().iter().copied().collect();
    let gv: Vec<u32> = g.vertices().iter().copied().collect();
    if hv.len() > gv.len() || h.num_edges() > g.num_edges() {
        return false;
    }
    let mut branch = BTreeMap::new();
    place(h, g, &hv, &gv, &mut branch)
}

fn place(h: &Graph, g: &Graph, hv: &[u32], gv: &[u32], branch: &mut BTreeMap<u32, u32>) -> bool {
    if branch.len() == hv.len() {
        let used: BTreeSet<u32> = branch.values().copied().collect();
        let edges: Vec<(u32, u32)> = h.edges().iter().copied().collect();
        return route(g, &edges, branch, &mut used.clone());
    }
    let x = hv[branch.len()];
    for &t in gv {
        if branch.values().any(|&v| v == t) || g.degree(t) < h.degree(x) {
            continue;
        }
        branch.insert(x, t);
        if place(h, g, hv, gv, branch) {
            return true;
        }
        branch.remove(&x);
    }
    false
}

fn route(g: &Graph, edges: &[(u32, u32)], branch: &BTreeMap<u32, u32>, used: &mut BTreeSet<u32>) -> bool {
    let Some(&(a, b)) = edges.first() else {
        return true;
    };
    let (s, t) = (branch[&a], branch[&b]);
    let mut paths = Vec::new();
    simple_paths(g, t, used, &mut vec![s], &mut paths);
    for path in paths {
        let inner: Vec<u32> = path[1..path.len() - 1].to_vec();
        used.extend(&inner);
        let ok = route(g, &edges[1..], branch, used);
        for v in &inner {
            used.remove(v);
        }
        if ok {
            return true;
        }
    }
    false
}

/// Simple `s`-`t` paths whose inner vertices avoid `used`.
fn simple_paths(g: &Graph, t: u32, used: &BTreeSet<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let last = *cur.last().unwrap();
    for n in g.neighbours(last) {
        if n == t {
            let mut p = cur.clone();
            p.push(t);
            out.push(p);
        } else if !used.contains(&n) && !cur.contains(&n) {
            cur.push(n);
            simple_paths(g, t, used, cur, out);
            cur.pop();
        }
    }
}

/// Every point of `inst` extends to a solution, by exhaustive search.
pub fn every_point_extends(inst: &Instance) -> bool {
    let mut sols: BTreeSet<(usize, Value)> = BTreeSet::new();
    let n = inst.num_vars();
    let doms: Vec<Vec<Value>> = (0..n).map(|v| inst.domain(v).iter().copied().collect()).collect();
    let mut cur = Vec::with_capacity(n);
    enumerate_solutions(inst, &doms, &mut cur, &mut |a| {
        for (v, &x) in a.iter().enumerate() {
            sols.insert((v, x));
        }
    });
    inst.point_labels().into_iter().all(|pt| sols.contains(&pt))
}

fn enumerate_solutions(inst: &Instance, doms: &[Vec<Value>], cur: &mut Vec<Value>, f: &mut dyn FnMut(&[Value])) {
    let v = cur.len();
    if v == doms.len() {
        f(cur);
        return;
    }
    for &a in &doms[v] {
        if (0..v).all(|u| inst.allowed(u, cur[u], v, a)) {
            cur.push(a);
            enumerate_solutions(inst, doms, cur, f);
            cur.pop();
        }
    }
}

/// Satisfiability by exhaustive search.
pub fn oracle_sat(inst: &Instance) -> bool {
    let doms: Vec<Vec<Value>> = (0..inst.num_vars()).map(|v| inst.domain(v).iter().copied().collect()).collect();
    let mut found = false;
    let mut cur = Vec::new();
    enumerate_solutions(inst, &doms, &mut cur, &mut |_| found = true);
    found
}
