//! Decision procedures and solvers for binary CSP instances.

mod classes;
mod consistency;
mod search;
mod structural;

pub use classes::{
    check_polymorphism, classify, classify_with, decide_ac_class, decide_sac_class, ClassReport, ClassifyOptions,
};
pub use consistency::{establish_ac, establish_sac};
pub use search::mac_solve;
pub use structural::{solve_acyclic, solve_articulation, solve_tutte_scheme};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::occurrence::OccurrenceError;
use crate::pattern::{Instance, Value, Var};

/// Largest search space brute force will enumerate unless told otherwise.
pub const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Sat,
    Unsat,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    /// Search nodes (brute force: assignments tried).
    pub nodes: u64,
    /// Values deleted by propagation.
    pub propagations: u64,
    /// Calls to a complete sub-solver.
    pub leaf_calls: u64,
}

impl Stats {
    fn absorb(&mut self, other: Stats) {
        self.nodes += other.nodes;
        self.propagations += other.propagations;
        self.leaf_calls += other.leaf_calls;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub status: Status,
    /// Value per variable, indexed by variable.
    pub assignment: Option<Vec<Value>>,
    pub stats: Stats,
}

impl SolveResult {
    pub fn sat(assignment: Vec<Value>, stats: Stats) -> Self {
        SolveResult { status: Status::Sat, assignment: Some(assignment), stats }
    }

    pub fn unsat(stats: Stats) -> Self {
        SolveResult { status: Status::Unsat, assignment: None, stats }
    }

    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }

    /// Sat with an assignment that solves `inst`, or Unsat.
    pub fn verifies(&self, inst: &Instance) -> bool {
        match (&self.status, &self.assignment) {
            (Status::Sat, Some(a)) => inst.is_solution(a),
            (Status::Unsat, None) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("search space {space} exceeds the brute-force cap {cap}")]
    CapExceeded { space: u128, cap: u128 },
    #[error("constraint graph has a cycle")]
    NotAcyclic,
    #[error("instance is outside the class the procedure decides")]
    NotInClass,
    #[error("domain of variable {var} differs from the operation's domain")]
    DomainMismatch { var: Var },
    #[error(transparent)]
    Occurrence(#[from] OccurrenceError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Auto,
    Bruteforce,
    Mac,
    Acyclic,
    Articulation,
    Tutte,
    AcClass,
    SacClass,
}

/// Runs `method`; `Auto` takes the recommendation of [`classify`].
pub fn solve(inst: &Instance, method: Method, cap: u128) -> Result<SolveResult, SolveError> {
    match method {
        Method::Auto => solve(inst, classify(inst)?.recommended, cap),
        Method::Bruteforce => brute_force_solve_with_cap(inst, cap),
        Method::Mac => Ok(mac_solve(inst)),
        Method::Acyclic => solve_acyclic(inst),
        Method::Articulation => solve_articulation(inst, &mut |sub: &Instance| Ok(mac_solve(sub))),
        Method::Tutte => Ok(solve_tutte_scheme(inst)),
        Method::AcClass => decide_ac_class(inst),
        Method::SacClass => decide_sac_class(inst),
    }
}

pub fn brute_force_solve(inst: &Instance) -> Result<SolveResult, SolveError> {
    brute_force_solve_with_cap(inst, DEFAULT_CAP)
}

/// Enumerates every assignment in lexicographic order (variable 0 most significant).
pub fn brute_force_solve_with_cap(inst: &Instance, cap: u128) -> Result<SolveResult, SolveError> {
    let space = inst.search_space();
    if space > cap {
        return Err(SolveError::CapExceeded { space, cap });
    }
    let mut stats = Stats::default();
    if inst.has_empty_domain() {
        return Ok(SolveResult::unsat(stats));
    }
    let doms: Vec<Vec<Value>> = inst.domains().iter().map(|d| d.iter().copied().collect()).collect();
    let mut idx = vec![0usize; doms.len()];
    loop {
        stats.nodes += 1;
        let a: Vec<Value> = idx.iter().zip(&doms).map(|(&i, d)| d[i]).collect();
        if inst.is_solution(&a) {
            return Ok(SolveResult::sat(a, stats));
        }
        // odometer increment from the last variable
        let mut k = doms.len();
        loop {
            if k == 0 {
                return Ok(SolveResult::unsat(stats));
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < doms[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Copy of `inst` with `D(v) = {a}`.
pub(crate) fn fixed(inst: &Instance, v: Var, a: Value) -> Instance {
    let mut out = inst.clone();
    out.set_domain(v, [a]);
    out
}

/// Lifts an assignment of `inst.induced(vars)` back onto variable ids.
pub(crate) fn lift(vars: &[Var], sub: &[Value]) -> BTreeMap<Var, Value> {
    vars.iter().copied().zip(sub.iter().copied()).collect()
}
