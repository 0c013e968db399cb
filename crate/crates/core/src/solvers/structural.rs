use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{fixed, lift, mac_solve, SolveError, SolveResult, Stats};
use crate::graphs::{articulation_vertices, blocks, instance_constraint_graph, is_acyclic, tutte_decompose};
use crate::pattern::{Graph, Instance, Value, Var};

/// Directional arc consistency towards the root of each tree component, then
/// a greedy pass from the root outwards.
pub fn solve_acyclic(inst: &Instance) -> Result<SolveResult, SolveError> {
    let g = instance_constraint_graph(inst);
    if !is_acyclic(&g) {
        return Err(SolveError::NotAcyclic);
    }
    let mut stats = Stats::default();
    if inst.has_empty_domain() {
        return Ok(SolveResult::unsat(stats));
    }
    let mut work = inst.clone();
    let adj = g.adjacency();
    let mut assignment = vec![0; inst.num_vars()];
    for comp in g.components() {
        let root = *comp.iter().next().unwrap();
        let mut order = vec![root];
        let mut parent: BTreeMap<u32, u32> = BTreeMap::new();
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[&x] {
                if y != root && !parent.contains_key(&y) {
                    parent.insert(y, x);
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
        for &v in order.iter().skip(1).rev() {
            let (p, v) = (parent[&v] as Var, v as Var);
            let dead: Vec<Value> = work
                .domain(p)
                .iter()
                .copied()
                .filter(|&a| !work.domain(v).iter().any(|&b| work.allowed(p, a, v, b)))
                .collect();
            for a in dead {
                work.remove_value(p, a);
                stats.propagations += 1;
            }
            if work.domain(p).is_empty() {
                return Ok(SolveResult::unsat(stats));
            }
        }
        for &v in &order {
            stats.nodes += 1;
            let v = v as Var;
            assignment[v] = match parent.get(&(v as u32)) {
                None => *work.domain(v).iter().next().unwrap(),
                Some(&p) => {
                    let a = assignment[p as Var];
                    *work
                        .domain(v)
                        .iter()
                        .find(|&&b| work.allowed(p as Var, a, v, b))
                        .expect("supported by the upward pass")
                }
            };
        }
    }
    Ok(SolveResult::sat(assignment, stats))
}

/// Constraint graph on the live variables, vertices named by variable id.
fn live_graph(inst: &Instance, live: &BTreeSet<Var>) -> Graph {
    let vars: Vec<Var> = live.iter().copied().collect();
    let sub = instance_constraint_graph(&inst.induced(&vars));
    let name = |i: u32| vars[i as usize] as u32;
    Graph::new(vars.iter().map(|&v| v as u32), sub.edges().iter().map(|&(a, b)| (name(a), name(b)))).unwrap()
}

/// A removed leaf: its variables, the separator, and a solution of the leaf
/// for every surviving separator assignment.
struct Eliminated {
    vars: Vec<Var>,
    sep: Vec<Var>,
    solutions: BTreeMap<Vec<Value>, Vec<Value>>,
}

/// Solves each eliminated leaf under every separator assignment, pruning the
/// separator to the assignments that extend.
fn eliminate(
    work: &Instance,
    vars: Vec<Var>,
    sep: Vec<Var>,
    leaf_solver: &mut dyn FnMut(&Instance) -> Result<SolveResult, SolveError>,
    stats: &mut Stats,
) -> Result<Eliminated, SolveError> {
    let base = work.induced(&vars);
    let pos: Vec<usize> = sep.iter().map(|s| vars.iter().position(|v| v == s).unwrap()).collect();
    let mut keys: Vec<Vec<Value>> = vec![Vec::new()];
    for &s in &sep {
        keys = keys
            .into_iter()
            .flat_map(|k| {
                work.domain(s).iter().map(move |&a| {
                    let mut k = k.clone();
                    k.push(a);
                    k
                })
            })
            .collect();
    }
    let mut solutions = BTreeMap::new();
    for key in keys {
        let mut sub = base.clone();
        for (&i, &a) in pos.iter().zip(&key) {
            sub = fixed(&sub, i, a);
        }
        stats.leaf_calls += 1;
        let r = leaf_solver(&sub)?;
        stats.absorb(r.stats);
        if let Some(a) = r.assignment {
            solutions.insert(key, a);
        }
    }
    Ok(Eliminated { vars, sep, solutions })
}

/// Solves the live remainder with one call, then extends through the
/// eliminated leaves newest first.
fn finish(
    work: &Instance,
    live: &BTreeSet<Var>,
    done: &[Eliminated],
    leaf_solver: &mut dyn FnMut(&Instance) -> Result<SolveResult, SolveError>,
    mut stats: Stats,
) -> Result<SolveResult, SolveError> {
    let vars: Vec<Var> = live.iter().copied().collect();
    stats.leaf_calls += 1;
    let r = leaf_solver(&work.induced(&vars))?;
    stats.absorb(r.stats);
    let Some(base) = r.assignment else {
        return Ok(SolveResult::unsat(stats));
    };
    let mut full = lift(&vars, &base);
    for e in done.iter().rev() {
        let key: Vec<Value> = e.sep.iter().map(|s| full[s]).collect();
        let sol = &e.solutions[&key];
        full.extend(lift(&e.vars, sol));
    }
    Ok(SolveResult::sat(full.into_values().collect(), stats))
}

/// Repeatedly removes a leaf block at an articulation variable, keeping only
/// the articulation values under which `leaf_solver` finds the block
/// satisfiable. The biconnected remainder goes to `leaf_solver` whole.
pub fn solve_articulation(
    inst: &Instance,
    leaf_solver: &mut dyn FnMut(&Instance) -> Result<SolveResult, SolveError>,
) -> Result<SolveResult, SolveError> {
    let mut stats = Stats::default();
    if inst.has_empty_domain() {
        return Ok(SolveResult::unsat(stats));
    }
    let mut work = inst.clone();
    let mut live: BTreeSet<Var> = (0..inst.num_vars()).collect();
    let mut done = Vec::new();
    loop {
        let g = live_graph(&work, &live);
        let cuts = articulation_vertices(&g);
        if cuts.is_empty() {
            break;
        }
        let leaf = blocks(&g)
            .into_iter()
            .find(|b| b.intersection(&cuts).count() == 1)
            .expect("a block-cut tree with a cut vertex has a leaf block");
        let c = *leaf.intersection(&cuts).next().unwrap() as Var;
        let vars: Vec<Var> = leaf.iter().map(|&v| v as Var).collect();
        let e = eliminate(&work, vars, vec![c], leaf_solver, &mut stats)?;
        for &a in work.domain(c).clone().iter() {
            if !e.solutions.contains_key(&vec![a]) {
                work.remove_value(c, a);
                stats.propagations += 1;
            }
        }
        if work.domain(c).is_empty() {
            return Ok(SolveResult::unsat(stats));
        }
        for &v in &e.vars {
            if v != c {
                live.remove(&v);
            }
        }
        done.push(e);
    }
    finish(&work, &live, &done, leaf_solver, stats)
}

/// Finds a non-root leaf of some component's decomposition that touches the
/// rest of the graph only through its separator.
fn removable_leaf(g: &Graph) -> Option<(Vec<Var>, Vec<Var>)> {
    for comp in g.components() {
        if comp.len() <= 2 {
            continue;
        }
        let t = tutte_decompose(&g.induced(&comp)).expect("components are connected");
        for arc in &t.arcs {
            if !t.children(arc.child).is_empty() {
                continue;
            }
            let s = &t.nodes[arc.child].vertices;
            let inner: Vec<u32> = s.iter().copied().filter(|v| !arc.separator.contains(v)).collect();
            if inner.is_empty() {
                continue;
            }
            let sealed = inner.iter().all(|&v| g.neighbours(v).iter().all(|w| s.contains(w)));
            if sealed {
                let vars = s.iter().map(|&v| v as Var).collect();
                return Some((vars, arc.separator.iter().map(|&v| v as Var).collect()));
            }
        }
    }
    None
}

/// The generic decomposition scheme: cut off a leaf of the Tutte
/// decomposition, replace the constraint on its separator by the pairs that
/// extend into the leaf, drop the leaf's other variables, and repeat.
pub fn solve_tutte_scheme(inst: &Instance) -> SolveResult {
    let mut stats = Stats::default();
    if inst.has_empty_domain() {
        return SolveResult::unsat(stats);
    }
    let mut leaf_solver = |sub: &Instance| Ok(mac_solve(sub));
    match tighten(inst, &mut stats) {
        None => SolveResult::unsat(stats),
        Some((work, live, done)) => finish(&work, &live, &done, &mut leaf_solver, stats).expect("mac cannot fail"),
    }
}

/// Eliminates removable leaves, pushing each leaf's solutions onto its
/// separator. Returns the tightened instance, the variables still live and
/// the eliminations in order, or `None` once a leaf has no solution.
fn tighten(inst: &Instance, stats: &mut Stats) -> Option<(Instance, BTreeSet<Var>, Vec<Eliminated>)> {
    let mut leaf_solver = |sub: &Instance| Ok(mac_solve(sub));
    let mut work = inst.clone();
    let mut live: BTreeSet<Var> = (0..inst.num_vars()).collect();
    let mut done = Vec::new();
    while let Some((vars, sep)) = removable_leaf(&live_graph(&work, &live)) {
        let e = eliminate(&work, vars, sep.clone(), &mut leaf_solver, stats).expect("mac cannot fail");
        if e.solutions.is_empty() {
            return None;
        }
        match *sep.as_slice() {
            [c] => {
                for a in work.domain(c).clone() {
                    if !e.solutions.contains_key(&vec![a]) {
                        work.remove_value(c, a);
                        stats.propagations += 1;
                    }
                }
            }
            [u, v] => {
                let pairs: Vec<(Value, Value)> = e.solutions.keys().map(|k| (k[0], k[1])).collect();
                let before = work.relation(u, v).map_or(work.domain(u).len() * work.domain(v).len(), |r| r.len());
                stats.propagations += (before - pairs.len()) as u64;
                work.set_relation(u, v, pairs);
            }
            _ => unreachable!("separators have order one or two"),
        }
        for &v in &e.vars {
            if !e.sep.contains(&v) {
                live.remove(&v);
            }
        }
        done.push(e);
    }
    Some((work, live, done))
}
