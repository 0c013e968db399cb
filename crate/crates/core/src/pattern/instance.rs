use std::collections::{BTreeMap, BTreeSet};

use super::{Pattern, Point};

pub type Var = usize;
pub type Value = u32;

/// A binary CSP instance.
///
/// Relations are stored once per unordered pair `(u, v)` with `u < v`, the
/// pair oriented as `(value of u, value of v)`. A pair with no stored relation
/// is unconstrained. Every mutating method leaves the instance normalised:
/// allowed pairs lie inside the current domains and relations equal to the
/// full product are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Instance {
    names: Vec<String>,
    domains: Vec<BTreeSet<Value>>,
    relations: BTreeMap<(Var, Var), BTreeSet<(Value, Value)>>,
}

impl Instance {
    /// Instance with the given domains and no constraints. Variables are named `x0`, `x1`, ...
    pub fn new<D, I>(domains: D) -> Self
    where
        D: IntoIterator<Item = I>,
        I: IntoIterator<Item = Value>,
    {
        let domains: Vec<BTreeSet<Value>> = domains.into_iter().map(|d| d.into_iter().collect()).collect();
        let names = (0..domains.len()).map(|i| format!("x{i}")).collect();
        Instance { names, domains, relations: BTreeMap::new() }
    }

    /// `n` variables sharing the domain `0..d`.
    pub fn uniform(n: usize, d: u32) -> Self {
        Instance::new((0..n).map(|_| 0..d))
    }

    pub fn add_variable(&mut self, name: impl Into<String>, domain: impl IntoIterator<Item = Value>) -> Var {
        self.names.push(name.into());
        self.domains.push(domain.into_iter().collect());
        self.domains.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn set_name(&mut self, v: Var, name: impl Into<String>) {
        self.names[v] = name.into();
    }

    pub fn var_by_name(&self, name: &str) -> Option<Var> {
        self.names.iter().position(|n| n == name)
    }

    pub fn domain(&self, v: Var) -> &BTreeSet<Value> {
        &self.domains[v]
    }

    pub fn domains(&self) -> &[BTreeSet<Value>] {
        &self.domains
    }

    /// Largest domain size (`d`).
    pub fn max_domain(&self) -> usize {
        self.domains.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn has_empty_domain(&self) -> bool {
        self.domains.iter().any(BTreeSet::is_empty)
    }

    /// Number of complete assignments, saturating.
    pub fn search_space(&self) -> u128 {
        self.domains.iter().fold(1u128, |acc, d| acc.saturating_mul(d.len() as u128))
    }

    /// Intersects the relation on `{u, v}` with `allowed`, given as `(value of u, value of v)` pairs.
    pub fn constrain(&mut self, u: Var, v: Var, allowed: impl IntoIterator<Item = (Value, Value)>) {
        assert_ne!(u, v, "binary constraint needs two distinct variables");
        let key = (u.min(v), u.max(v));
        let mut new: BTreeSet<(Value, Value)> =
            allowed.into_iter().map(|(a, b)| if u < v { (a, b) } else { (b, a) }).collect();
        if let Some(old) = self.relations.get(&key) {
            new = new.intersection(old).copied().collect();
        }
        self.relations.insert(key, new);
        self.normalize_pair(key);
    }

    /// Replaces the relation on `{u, v}` outright.
    pub fn set_relation(&mut self, u: Var, v: Var, allowed: impl IntoIterator<Item = (Value, Value)>) {
        let key = (u.min(v), u.max(v));
        self.relations.remove(&key);
        self.constrain(u, v, allowed);
    }

    /// Drops any constraint on `{u, v}`.
    pub fn clear_relation(&mut self, u: Var, v: Var) {
        self.relations.remove(&(u.min(v), u.max(v)));
    }

    /// Replaces the domain of `v`, re-normalising touching relations.
    pub fn set_domain(&mut self, v: Var, domain: impl IntoIterator<Item = Value>) {
        self.domains[v] = domain.into_iter().collect();
        let keys: Vec<(Var, Var)> = self.relations.keys().filter(|&&(a, b)| a == v || b == v).copied().collect();
        for k in keys {
            self.normalize_pair(k);
        }
    }

    /// Removes one value; returns whether it was present.
    pub fn remove_value(&mut self, v: Var, a: Value) -> bool {
        if !self.domains[v].contains(&a) {
            return false;
        }
        let mut d = self.domains[v].clone();
        d.remove(&a);
        self.set_domain(v, d);
        true
    }

    fn normalize_pair(&mut self, key: (Var, Var)) {
        let (u, v) = key;
        let Some(rel) = self.relations.get_mut(&key) else {
            return;
        };
        let (du, dv) = (&self.domains[u], &self.domains[v]);
        rel.retain(|(a, b)| du.contains(a) && dv.contains(b));
        if rel.len() == du.len() * dv.len() {
            self.relations.remove(&key);
        }
    }

    /// Restores the storage invariants after arbitrary edits.
    pub fn normalize(&mut self) {
        let keys: Vec<(Var, Var)> = self.relations.keys().copied().collect();
        for k in keys {
            self.normalize_pair(k);
        }
    }

    /// Whether `(u, a)` and `(v, b)` are compatible. Pairs on the same variable are compatible iff equal.
    pub fn allowed(&self, u: Var, a: Value, v: Var, b: Value) -> bool {
        if u == v {
            return a == b;
        }
        if !self.domains[u].contains(&a) || !self.domains[v].contains(&b) {
            return false;
        }
        let (key, pair) = if u < v { ((u, v), (a, b)) } else { ((v, u), (b, a)) };
        self.relations.get(&key).is_none_or(|r| r.contains(&pair))
    }

    /// Stored relation for `{u, v}` oriented as `(value of u, value of v)`; `None` when trivial.
    pub fn relation(&self, u: Var, v: Var) -> Option<BTreeSet<(Value, Value)>> {
        let r = self.relations.get(&(u.min(v), u.max(v)))?;
        Some(if u < v { r.clone() } else { r.iter().map(|&(a, b)| (b, a)).collect() })
    }

    /// Non-trivial constraints with `u < v`.
    pub fn constraints(&self) -> impl Iterator<Item = (Var, Var, &BTreeSet<(Value, Value)>)> {
        self.relations.iter().map(|(&(u, v), r)| (u, v, r))
    }

    pub fn is_constrained(&self, u: Var, v: Var) -> bool {
        self.relations.contains_key(&(u.min(v), u.max(v)))
    }

    /// Variables sharing a non-trivial constraint with `v`, ascending.
    pub fn neighbours(&self, v: Var) -> Vec<Var> {
        self.relations
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Whether a full assignment (indexed by variable) satisfies every domain and constraint.
    pub fn is_solution(&self, assignment: &[Value]) -> bool {
        assignment.len() == self.num_vars()
            && assignment.iter().enumerate().all(|(v, a)| self.domains[v].contains(a))
            && self.relations.iter().all(|(&(u, v), r)| r.contains(&(assignment[u], assignment[v])))
    }

    /// Whether a partial assignment is consistent on every pair it fully covers.
    pub fn is_partial_solution(&self, assignment: &BTreeMap<Var, Value>) -> bool {
        assignment.iter().all(|(&v, a)| self.domains[v].contains(a))
            && self.relations.iter().all(|(&(u, v), r)| match (assignment.get(&u), assignment.get(&v)) {
                (Some(&a), Some(&b)) => r.contains(&(a, b)),
                _ => true,
            })
    }

    /// Sub-instance on `vars` (kept in the given order). Variable `i` of the
    /// result is `vars[i]` of `self`.
    pub fn induced(&self, vars: &[Var]) -> Instance {
        let mut out = Instance {
            names: vars.iter().map(|&v| self.names[v].clone()).collect(),
            domains: vars.iter().map(|&v| self.domains[v].clone()).collect(),
            relations: BTreeMap::new(),
        };
        for (i, &u) in vars.iter().enumerate() {
            for (j, &v) in vars.iter().enumerate().skip(i + 1) {
                if let Some(r) = self.relation(u, v) {
                    out.relations.insert((i, j), r);
                }
            }
        }
        out
    }

    /// Point labels of the microstructure: point `i` is `labels[i]`.
    /// Points run through variables in order, values ascending.
    pub fn point_labels(&self) -> Vec<(Var, Value)> {
        self.domains.iter().enumerate().flat_map(|(v, d)| d.iter().map(move |&a| (v, a))).collect()
    }

    /// Point of the microstructure standing for `(v, a)`.
    pub fn point_of(&self, v: Var, a: Value) -> Option<Point> {
        let rank = self.domains.get(v)?.iter().position(|&x| x == a)?;
        let offset: usize = self.domains[..v].iter().map(BTreeSet::len).sum();
        Some(Point((offset + rank) as u32))
    }
}

/// The microstructure pattern: one point per `(variable, value)`, one part
/// per variable, positive edges on allowed pairs and negative edges on
/// disallowed ones. Point ids follow [`Instance::point_labels`].
pub fn pattern_from_instance(inst: &Instance) -> Pattern {
    let labels = inst.point_labels();
    let mut parts: Vec<Vec<Point>> = vec![Vec::new(); inst.num_vars()];
    for (i, &(v, _)) in labels.iter().enumerate() {
        parts[v].push(Point(i as u32));
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (i, &(u, a)) in labels.iter().enumerate() {
        for (j, &(v, b)) in labels.iter().enumerate().skip(i + 1) {
            if u == v {
                continue;
            }
            let e = (Point(i as u32), Point(j as u32));
            if inst.allowed(u, a, v, b) {
                pos.push(e);
            } else {
                neg.push(e);
            }
        }
    }
    Pattern::new(parts, pos, neg).expect("microstructure edges always cross parts")
}
