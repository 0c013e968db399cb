use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::consistency::{propagate, sac_with_count};
use super::{fixed, mac_solve, Method, SolveError, SolveResult, Stats};
use crate::graphs::{instance_constraint_graph, is_acyclic};
use crate::occurrence::{forbids, Mode};
use crate::pattern::{
    make_named, make_pivot, make_pivot_neq, AnyPattern, Graph, Instance, OperationTable, RelationSpec, Value, Var,
};

fn named(name: &str) -> AnyPattern {
    make_named(name).expect("catalogue key")
}

fn member(set: AnyPattern, inst: &Instance, mode: Mode, rel: Option<&RelationSpec>) -> Result<bool, SolveError> {
    Ok(forbids(&[set], inst, mode, rel)?.forbids)
}

/// Decides instances avoiding `K≠` as a topological minor: such an instance
/// is satisfiable iff arc consistency leaves every domain nonempty. The
/// solution is built by fixing the least variable, re-establishing arc
/// consistency, and recursing into the components left behind.
pub fn decide_ac_class(inst: &Instance) -> Result<SolveResult, SolveError> {
    if !member(named("K_neq"), inst, Mode::Tm, Some(&RelationSpec::Neq))? {
        return Err(SolveError::NotInClass);
    }
    let mut stats = Stats::default();
    let mut ac = inst.clone();
    stats.propagations += propagate(&mut ac);
    if ac.has_empty_domain() {
        return Ok(SolveResult::unsat(stats));
    }
    let mut out = BTreeMap::new();
    let all: BTreeSet<Var> = (0..inst.num_vars()).collect();
    for comp in split(&ac, &all) {
        if !assemble(&ac, &comp, &mut out, &mut stats) {
            return Ok(SolveResult::unsat(stats));
        }
    }
    Ok(SolveResult::sat(out.into_values().collect(), stats))
}

/// Components of the constraint graph restricted to `vars`.
fn split(inst: &Instance, vars: &BTreeSet<Var>) -> Vec<BTreeSet<Var>> {
    let g = instance_constraint_graph(inst);
    let keep: BTreeSet<u32> = vars.iter().map(|&v| v as u32).collect();
    Graph::components(&g.induced(&keep)).into_iter().map(|c| c.into_iter().map(|v| v as Var).collect()).collect()
}

fn assemble(inst: &Instance, comp: &BTreeSet<Var>, out: &mut BTreeMap<Var, Value>, stats: &mut Stats) -> bool {
    let v = *comp.iter().next().unwrap();
    for &a in inst.domain(v) {
        stats.nodes += 1;
        let mut child = fixed(inst, v, a);
        stats.propagations += propagate(&mut child);
        if child.has_empty_domain() {
            continue;
        }
        let mut rest = comp.clone();
        rest.remove(&v);
        let mut local = BTreeMap::from([(v, a)]);
        if split(&child, &rest).iter().all(|c| assemble(&child, c, &mut local, stats)) {
            out.extend(local);
            return true;
        }
    }
    false
}

/// Decides instances avoiding `PG(C3)≠` as a topological minor by singleton
/// arc consistency. The assignment, when reported, comes from a search over
/// the SAC-reduced instance.
pub fn decide_sac_class(inst: &Instance) -> Result<SolveResult, SolveError> {
    if !member(named("C3_neq"), inst, Mode::Tm, Some(&RelationSpec::Neq))? {
        return Err(SolveError::NotInClass);
    }
    let (sac, removed) = sac_with_count(inst);
    let mut stats = Stats { propagations: removed, ..Stats::default() };
    if sac.has_empty_domain() {
        return Ok(SolveResult::unsat(stats));
    }
    let r = mac_solve(&sac);
    stats.nodes += r.stats.nodes;
    stats.propagations += r.stats.propagations;
    Ok(SolveResult { assignment: r.assignment, ..SolveResult::sat(Vec::new(), stats) })
}

/// Whether every constraint relation is closed under coordinatewise `f`.
/// Every domain must equal the domain of `f`.
pub fn check_polymorphism(f: &OperationTable, inst: &Instance) -> Result<bool, SolveError> {
    if let Some(var) = (0..inst.num_vars()).find(|&v| inst.domain(v) != f.domain()) {
        return Err(SolveError::DomainMismatch { var });
    }
    for (u, v, rel) in inst.constraints() {
        let pairs: Vec<(Value, Value)> = rel.iter().copied().collect();
        if pairs.is_empty() {
            continue;
        }
        let mut picks = vec![0usize; f.arity()];
        loop {
            let xs: Vec<Value> = picks.iter().map(|&i| pairs[i].0).collect();
            let ys: Vec<Value> = picks.iter().map(|&i| pairs[i].1).collect();
            let image = (f.apply(&xs).unwrap(), f.apply(&ys).unwrap());
            if !inst.allowed(u, image.0, v, image.1) {
                return Ok(false);
            }
            let Some(k) = picks.iter().rposition(|&i| i + 1 < pairs.len()) else {
                break;
            };
            picks[k] += 1;
            picks[k + 1..].iter_mut().for_each(|i| *i = 0);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Largest `k` tried for `Pivot(k)` and `Pivot≠(k)`.
    pub pivot_bound: u32,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { pivot_bound: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub acyclic: bool,
    pub forb_tm_k: bool,
    pub forb_tm_l: bool,
    pub forb_tm_k_neq: bool,
    pub forb_tm_c3_neq: bool,
    /// `(k, member)` for `Pivot(k)`, `k` ascending.
    pub forb_sp_pivot: Vec<(u32, bool)>,
    pub forb_sp_pivot_neq: Vec<(u32, bool)>,
    pub recommended: Method,
}

pub fn classify(inst: &Instance) -> Result<ClassReport, SolveError> {
    classify_with(inst, ClassifyOptions::default())
}

pub fn classify_with(inst: &Instance, opts: ClassifyOptions) -> Result<ClassReport, SolveError> {
    let neq = Some(&RelationSpec::Neq);
    let acyclic = is_acyclic(&instance_constraint_graph(inst));
    let forb_tm_k = member(named("K"), inst, Mode::Tm, None)?;
    let forb_tm_l = member(named("L"), inst, Mode::Tm, None)?;
    let forb_tm_k_neq = member(named("K_neq"), inst, Mode::Tm, neq)?;
    let forb_tm_c3_neq = member(named("C3_neq"), inst, Mode::Tm, neq)?;
    let mut forb_sp_pivot = Vec::new();
    let mut forb_sp_pivot_neq = Vec::new();
    for k in 1..=opts.pivot_bound {
        forb_sp_pivot.push((k, member(make_pivot(k).into(), inst, Mode::Sp, None)?));
        forb_sp_pivot_neq.push((k, member(make_pivot_neq(k).into(), inst, Mode::Sp, neq)?));
    }
    let recommended = if acyclic {
        Method::Acyclic
    } else if forb_tm_k {
        Method::Articulation
    } else if forb_tm_l {
        Method::Tutte
    } else if forb_tm_k_neq {
        Method::AcClass
    } else if forb_tm_c3_neq {
        Method::SacClass
    } else {
        Method::Mac
    };
    Ok(ClassReport {
        acyclic,
        forb_tm_k,
        forb_tm_l,
        forb_tm_k_neq,
        forb_tm_c3_neq,
        forb_sp_pivot,
        forb_sp_pivot_neq,
        recommended,
    })
}
