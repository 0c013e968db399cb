use std::collections::VecDeque;

use super::fixed;
use crate::pattern::{Instance, Var};

/// Removes every value lacking support; returns the number removed. On a
/// wipeout all domains are emptied, since no value has support in an empty
/// domain.
pub(crate) fn propagate(inst: &mut Instance) -> u64 {
    let n = inst.num_vars();
    let mut removed = 0;
    if inst.has_empty_domain() {
        return wipe(inst);
    }
    let mut queue: VecDeque<(Var, Var)> = VecDeque::new();
    for (u, v, _) in inst.constraints() {
        queue.push_back((u, v));
        queue.push_back((v, u));
    }
    while let Some((x, y)) = queue.pop_front() {
        if !inst.is_constrained(x, y) {
            continue;
        }
        let dead: Vec<_> = inst
            .domain(x)
            .iter()
            .copied()
            .filter(|&a| !inst.domain(y).iter().any(|&b| inst.allowed(x, a, y, b)))
            .collect();
        if dead.is_empty() {
            continue;
        }
        let before = inst.neighbours(x);
        for a in dead {
            inst.remove_value(x, a);
            removed += 1;
        }
        if inst.domain(x).is_empty() {
            return removed + wipe(inst);
        }
        for z in before {
            if z != y {
                queue.push_back((z, x));
            }
        }
    }
    debug_assert!(n == inst.num_vars());
    removed
}

fn wipe(inst: &mut Instance) -> u64 {
    let mut removed = 0;
    for v in 0..inst.num_vars() {
        removed += inst.domain(v).len() as u64;
        inst.set_domain(v, []);
    }
    removed
}

/// The largest arc-consistent sub-instance of `inst`.
pub fn establish_ac(inst: &Instance) -> Instance {
    let mut out = inst.clone();
    propagate(&mut out);
    out
}

/// Singleton arc consistency: deletes `a` from `D(v)` while AC of the
/// instance with `v = a` wipes out.
pub fn establish_sac(inst: &Instance) -> Instance {
    sac_with_count(inst).0
}

pub(crate) fn sac_with_count(inst: &Instance) -> (Instance, u64) {
    let mut out = inst.clone();
    let mut removed = 0;
    loop {
        let mut changed = false;
        for v in 0..out.num_vars() {
            let values: Vec<_> = out.domain(v).iter().copied().collect();
            for a in values {
                let mut probe = fixed(&out, v, a);
                propagate(&mut probe);
                if probe.has_empty_domain() {
                    out.remove_value(v, a);
                    removed += 1;
                    changed = true;
                }
            }
        }
        if !changed {
            return (out, removed);
        }
    }
}
