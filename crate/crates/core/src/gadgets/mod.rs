//! Reduction instances from 3-CNF formulas.
//!
//! A standard gadget has variables `u, w, p_0 .. p_{n+m}`, and for every
//! formula variable `x_i` and clause `C_r` two lane variables `v_ir` and
//! `vbar_ir`. Its microstructure contains `M` as a topological minor exactly
//! when the formula is satisfiable.
//!
//! Value encoding:
//!
//! * `u`, `w`, `p_0`, `p_{n+m}`: `0` is the top point, `1` the other. In the
//!   globally consistent variant `p_0` and `p_{n+m}` carry the three points of
//!   `E` (`0` top, `1` middle, `2` bottom) and `u`, `w` are absent.
//! * inner `p_i`: the single value `0`.
//! * lane variables: [`LANE`] `= 0` carries the variable chains, [`CLAUSE`] `= 1`
//!   the clause paths.

mod cnf;

pub use cnf::{Cnf, CnfError};

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::graphs::{part_disjoint_positive_path_with, GraphError};
use crate::occurrence::{occurs_tm, OccurrenceError};
use crate::pattern::{make_named, pattern_from_instance, Instance, Pattern, Value, Var};

pub const LANE: Value = 0;
pub const CLAUSE: Value = 1;

/// What a gadget variable stands for. Indices are 1-based like the formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "lowercase")]
pub enum Role {
    U,
    W,
    P { index: usize },
    V { var: usize, clause: usize },
    Vbar { var: usize, clause: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Standard,
    GloballyConsistent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub instance: Instance,
    /// `M` for the standard gadget, `M′` for the globally consistent one.
    pub pattern: Pattern,
    pub roles: Vec<Role>,
    /// Endpoints of the positive path that encodes a satisfying assignment.
    pub source: Var,
    pub target: Var,
    pub variant: Variant,
}

impl Gadget {
    pub fn var_of(&self, role: Role) -> Option<Var> {
        self.roles.iter().position(|&r| r == role)
    }

    /// Role per variable name, for output next to the instance.
    pub fn provenance(&self) -> BTreeMap<String, Role> {
        self.roles.iter().enumerate().map(|(v, &r)| (self.instance.name(v).to_string(), r)).collect()
    }
}

struct Layout {
    inst: Instance,
    roles: Vec<Role>,
    p: Vec<Var>,
}

/// Variables, domains and the chain/clause positive pairs shared by both variants.
fn core_layout(phi: &Cnf, with_ends: bool, end_values: u32) -> Layout {
    let (n, m) = (phi.num_vars(), phi.clauses().len());
    let mut inst = Instance::default();
    let mut roles = Vec::new();
    let mut add = |inst: &mut Instance, name: String, dom: Vec<Value>, role: Role| {
        roles.push(role);
        inst.add_variable(name, dom)
    };
    if with_ends {
        add(&mut inst, "u".into(), vec![0, 1], Role::U);
        add(&mut inst, "w".into(), vec![0, 1], Role::W);
    }
    let last = n + m;
    let p: Vec<Var> = (0..=last)
        .map(|i| {
            let dom = if i == 0 || i == last { (0..end_values).collect() } else { vec![0] };
            add(&mut inst, format!("p{i}"), dom, Role::P { index: i })
        })
        .collect();
    let mut v = BTreeMap::new();
    let mut vbar = BTreeMap::new();
    for i in 1..=n {
        for r in 1..=m {
            v.insert((i, r), add(&mut inst, format!("v{i}_{r}"), vec![LANE, CLAUSE], Role::V { var: i, clause: r }));
        }
        for r in 1..=m {
            let id = add(&mut inst, format!("vbar{i}_{r}"), vec![LANE, CLAUSE], Role::Vbar { var: i, clause: r });
            vbar.insert((i, r), id);
        }
    }

    // start from the all-negative completion, then add the positive pairs
    let mut allowed: BTreeMap<(Var, Var), BTreeSet<(Value, Value)>> = BTreeMap::new();
    let mut allow = |a: Var, x: Value, b: Var, y: Value| {
        let (key, pair) = if a < b { ((a, b), (x, y)) } else { ((b, a), (y, x)) };
        allowed.entry(key).or_default().insert(pair);
    };
    for i in 1..=n {
        for lane in [&v, &vbar] {
            let mut prev = (p[i - 1], 0);
            for r in 1..=m {
                let cur = lane[&(i, r)];
                allow(prev.0, prev.1, cur, LANE);
                prev = (cur, LANE);
            }
            allow(prev.0, prev.1, p[i], 0);
        }
    }
    for (r0, clause) in phi.clauses().iter().enumerate() {
        let r = r0 + 1;
        for &lit in clause {
            let i = lit.unsigned_abs() as usize;
            let part = if lit > 0 { vbar[&(i, r)] } else { v[&(i, r)] };
            allow(p[n + r - 1], 0, part, CLAUSE);
            allow(part, CLAUSE, p[n + r], 0);
        }
    }
    for a in 0..inst.num_vars() {
        for b in a + 1..inst.num_vars() {
            inst.set_relation(a, b, allowed.remove(&(a, b)).unwrap_or_default());
        }
    }
    Layout { inst, roles, p }
}

/// The standard reduction instance together with `M`.
pub fn build_sat_gadget(phi: &Cnf) -> Gadget {
    let mut l = core_layout(phi, true, 2);
    let (u, w) = (0, 1);
    let (p0, pl) = (l.p[0], *l.p.last().unwrap());
    // top-top, top-bottom, bottom-top on both end blocks
    let block = [(0, 0), (0, 1), (1, 0)];
    l.inst.set_relation(u, p0, block);
    l.inst.set_relation(pl, w, block);
    Gadget {
        instance: l.inst,
        pattern: make_named("M").unwrap().into_plain().unwrap(),
        roles: l.roles,
        source: p0,
        target: pl,
        variant: Variant::Standard,
    }
}

/// The globally consistent reduction instance together with `M′`.
///
/// The end blocks are replaced by `E` between `p_{n+m}` (left) and `p_0`
/// (right) before [`make_globally_consistent`] is applied.
pub fn build_gc_gadget(phi: &Cnf) -> Gadget {
    let g = build_gc_core(phi);
    Gadget { instance: make_globally_consistent(&g.instance), ..g }
}

/// The globally consistent gadget before the extra values are added.
pub fn build_gc_core(phi: &Cnf) -> Gadget {
    let mut l = core_layout(phi, false, 3);
    let (p0, pl) = (l.p[0], *l.p.last().unwrap());
    // E's positive pairs as (left value, right value)
    let e = [(0, 0), (1, 1), (0, 1), (1, 0), (0, 2), (2, 0)];
    l.inst.set_relation(pl, p0, e);
    Gadget {
        instance: l.inst,
        pattern: make_named("Mprime").unwrap().into_plain().unwrap(),
        roles: l.roles,
        source: p0,
        target: pl,
        variant: Variant::GloballyConsistent,
    }
}

/// Adds, for every point `(v, a)`, a fresh value `b(v, a, v')` to each other
/// variable `v'`. The fresh values of one point are compatible with that point
/// and with each other and with nothing else. Points are processed by
/// variable then value, and fresh values continue upwards from each domain's
/// maximum.
pub fn make_globally_consistent(inst: &Instance) -> Instance {
    let n = inst.num_vars();
    let points = inst.point_labels();
    let mut next: Vec<Value> = inst.domains().iter().map(|d| d.iter().next_back().map_or(0, |&a| a + 1)).collect();
    // fresh[(v, a)][v'] = b(v, a, v')
    let mut fresh: Vec<BTreeMap<Var, Value>> = Vec::with_capacity(points.len());
    for &(v, _) in &points {
        let mut family = BTreeMap::new();
        for w in (0..n).filter(|&w| w != v) {
            family.insert(w, next[w]);
            next[w] += 1;
        }
        fresh.push(family);
    }
    let mut out = inst.clone();
    for w in 0..n {
        let mut dom = inst.domain(w).clone();
        dom.extend(fresh.iter().filter_map(|f| f.get(&w).copied()));
        out.set_domain(w, dom);
    }
    for x in 0..n {
        for y in x + 1..n {
            let mut pairs: BTreeSet<(Value, Value)> = BTreeSet::new();
            for &a in inst.domain(x) {
                for &b in inst.domain(y) {
                    if inst.allowed(x, a, y, b) {
                        pairs.insert((a, b));
                    }
                }
            }
            for (&(v, a), family) in points.iter().zip(&fresh) {
                if v == x {
                    pairs.insert((a, family[&y]));
                } else if v == y {
                    pairs.insert((family[&x], a));
                } else {
                    pairs.insert((family[&x], family[&y]));
                }
            }
            out.set_relation(x, y, pairs);
        }
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("exact topological-minor check limited to {limit} variables, gadget has {vars}")]
    SizeLimitExceeded { vars: usize, limit: usize },
    #[error(transparent)]
    Occurrence(#[from] OccurrenceError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Outcome of the three checkers on one formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    pub variant: Variant,
    pub satisfiable: bool,
    pub path: bool,
    /// Variables of the path found, in order.
    pub path_witness: Option<Vec<(Var, Value)>>,
    /// Absent when the exact check was skipped.
    pub topological_minor: Option<bool>,
    pub agree: bool,
}

/// Compares truth-table satisfiability, path existence and (when
/// `tm_limit` is given) exact occurrence of the gadget pattern.
pub fn verify_gadget(phi: &Cnf, variant: Variant, tm_limit: Option<usize>) -> Result<GadgetReport, GadgetError> {
    let g = match variant {
        Variant::Standard => build_sat_gadget(phi),
        Variant::GloballyConsistent => build_gc_gadget(phi),
    };
    let satisfiable = phi.is_satisfiable();
    let path_witness = gadget_path(&g);
    let path = path_witness.is_some();
    let topological_minor = match tm_limit {
        None => None,
        Some(limit) if g.instance.num_vars() > limit => {
            return Err(GadgetError::SizeLimitExceeded { vars: g.instance.num_vars(), limit })
        }
        Some(_) => Some(occurs_tm(&g.pattern, &pattern_from_instance(&g.instance))?.is_some()),
    };
    let agree = satisfiable == path && topological_minor.is_none_or(|t| t == satisfiable);
    Ok(GadgetReport { variant, satisfiable, path, path_witness, topological_minor, agree })
}

/// The positive path from the top of `p_0` to the top of `p_{n+m}` visiting
/// each variable once. The globally consistent variant needs at least two
/// edges, the direct pair belonging to `E`.
pub fn gadget_path(g: &Gadget) -> Option<Vec<(Var, Value)>> {
    let min_edges = match g.variant {
        Variant::Standard => 0,
        Variant::GloballyConsistent => 2,
    };
    part_disjoint_positive_path_with(&g.instance, (g.source, 0), (g.target, 0), min_edges)
}
