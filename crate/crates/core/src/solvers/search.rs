use super::consistency::propagate;
use super::{fixed, SolveResult, Stats};
use crate::pattern::{Instance, Value};

/// Backtracking search maintaining arc consistency. Variables are taken in
/// ascending order, values ascending.
pub fn mac_solve(inst: &Instance) -> SolveResult {
    let mut stats = Stats::default();
    let mut root = inst.clone();
    stats.propagations += propagate(&mut root);
    if root.has_empty_domain() {
        return SolveResult::unsat(stats);
    }
    match descend(&root, &mut stats) {
        Some(a) => SolveResult::sat(a, stats),
        None => SolveResult::unsat(stats),
    }
}

fn descend(inst: &Instance, stats: &mut Stats) -> Option<Vec<Value>> {
    stats.nodes += 1;
    let Some(v) = (0..inst.num_vars()).find(|&v| inst.domain(v).len() > 1) else {
        // arc consistent with singleton domains is a solution
        return Some(inst.domains().iter().map(|d| *d.iter().next().unwrap()).collect());
    };
    for &a in inst.domain(v) {
        let mut child = fixed(inst, v, a);
        stats.propagations += propagate(&mut child);
        if child.has_empty_domain() {
            continue;
        }
        if let Some(sol) = descend(&child, stats) {
            return Some(sol);
        }
    }
    None
}
