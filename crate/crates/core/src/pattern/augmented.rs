use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Instance, Pattern, PatternError, Point, Value};

/// An `arity`-ary relation over points.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Relation {
    pub arity: usize,
    pub tuples: BTreeSet<Vec<Point>>,
}

impl Relation {
    pub fn new(arity: usize, tuples: impl IntoIterator<Item = Vec<Point>>) -> Result<Self, PatternError> {
        let tuples: BTreeSet<Vec<Point>> = tuples.into_iter().collect();
        if arity == 0 {
            return Err(PatternError::ArityMismatch { expected: 1, found: 0 });
        }
        if let Some(t) = tuples.iter().find(|t| t.len() != arity) {
            return Err(PatternError::ArityMismatch { expected: arity, found: t.len() });
        }
        Ok(Relation { arity, tuples })
    }

    pub fn contains(&self, t: &[Point]) -> bool {
        self.tuples.contains(t)
    }
}

/// A pattern together with a relation over its points that homomorphisms must preserve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedPattern {
    pub pattern: Pattern,
    pub relation: Relation,
}

impl AugmentedPattern {
    pub fn new(pattern: Pattern, relation: Relation) -> Result<Self, PatternError> {
        for t in &relation.tuples {
            if let Some(&p) = t.iter().find(|p| !pattern.contains(**p)) {
                return Err(PatternError::UnknownPoint(p));
            }
        }
        Ok(AugmentedPattern { pattern, relation })
    }

    /// `augment(P, arity, tuples)`.
    pub fn augment(
        pattern: Pattern,
        arity: usize,
        tuples: impl IntoIterator<Item = Vec<Point>>,
    ) -> Result<Self, PatternError> {
        AugmentedPattern::new(pattern, Relation::new(arity, tuples)?)
    }
}

/// Either kind of pattern, as handed around by the catalogue and the CLI.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyPattern {
    Plain(Pattern),
    Augmented(AugmentedPattern),
}

impl AnyPattern {
    pub fn base(&self) -> &Pattern {
        match self {
            AnyPattern::Plain(p) => p,
            AnyPattern::Augmented(a) => &a.pattern,
        }
    }

    pub fn relation(&self) -> Option<&Relation> {
        match self {
            AnyPattern::Plain(_) => None,
            AnyPattern::Augmented(a) => Some(&a.relation),
        }
    }

    pub fn into_plain(self) -> Option<Pattern> {
        match self {
            AnyPattern::Plain(p) => Some(p),
            AnyPattern::Augmented(_) => None,
        }
    }

    pub fn into_augmented(self) -> Option<AugmentedPattern> {
        match self {
            AnyPattern::Plain(_) => None,
            AnyPattern::Augmented(a) => Some(a),
        }
    }
}

impl From<Pattern> for AnyPattern {
    fn from(p: Pattern) -> Self {
        AnyPattern::Plain(p)
    }
}

impl From<AugmentedPattern> for AnyPattern {
    fn from(a: AugmentedPattern) -> Self {
        AnyPattern::Augmented(a)
    }
}

/// A total `k`-ary operation on a finite domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationTable {
    arity: usize,
    domain: BTreeSet<Value>,
    table: BTreeMap<Vec<Value>, Value>,
}

impl OperationTable {
    /// Validates totality over `domain^arity` and closure into `domain`.
    pub fn new(
        arity: usize,
        domain: impl IntoIterator<Item = Value>,
        table: impl IntoIterator<Item = (Vec<Value>, Value)>,
    ) -> Result<Self, PatternError> {
        let domain: BTreeSet<Value> = domain.into_iter().collect();
        if arity == 0 {
            return Err(PatternError::BadTable("arity must be at least 1".into()));
        }
        let table: BTreeMap<Vec<Value>, Value> = table.into_iter().collect();
        for (args, out) in &table {
            if args.len() != arity {
                return Err(PatternError::ArityMismatch { expected: arity, found: args.len() });
            }
            if let Some(a) = args.iter().chain([out]).find(|a| !domain.contains(a)) {
                return Err(PatternError::BadTable(format!("value {a} lies outside the domain")));
            }
        }
        let expected = domain.len().pow(arity as u32);
        if table.len() != expected {
            return Err(PatternError::BadTable(format!("{} of {expected} entries given", table.len())));
        }
        Ok(OperationTable { arity, domain, table })
    }

    /// Tabulates `f` on `0..d`.
    pub fn from_fn(arity: usize, d: u32, f: impl Fn(&[Value]) -> Value) -> Result<Self, PatternError> {
        let domain: Vec<Value> = (0..d).collect();
        let table = tuples_over(&domain, arity).into_iter().map(|t| {
            let v = f(&t);
            (t, v)
        });
        OperationTable::new(arity, 0..d, table)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain(&self) -> &BTreeSet<Value> {
        &self.domain
    }

    pub fn apply(&self, args: &[Value]) -> Option<Value> {
        self.table.get(args).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<Value>, &Value)> {
        self.table.iter()
    }
}

/// All `k`-tuples over `values`, lexicographic.
pub(crate) fn tuples_over(values: &[Value], k: usize) -> Vec<Vec<Value>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                values.iter().map(move |&a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RelationKind {
    Neq,
    Polymorphism,
}

/// Rule producing a relation over the points of a microstructure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationSpec {
    Neq,
    Polymorphism(OperationTable),
}

impl RelationSpec {
    pub fn kind(&self) -> RelationKind {
        match self {
            RelationSpec::Neq => RelationKind::Neq,
            RelationSpec::Polymorphism(_) => RelationKind::Polymorphism,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            RelationSpec::Neq => 2,
            RelationSpec::Polymorphism(f) => f.arity() + 1,
        }
    }

    /// The relation this rule induces on the points of `pattern_from_instance(inst)`.
    ///
    /// `Neq` gives every ordered pair of distinct points. `Polymorphism(f)`
    /// gives, per variable `v`, the tuples `(x_{v,a1}, .., x_{v,ak}, x_{v,f(a)})`
    /// whose last value is again in `D(v)`.
    pub fn instance_relation(&self, inst: &Instance) -> Result<Relation, PatternError> {
        match self {
            RelationSpec::Neq => {
                let n = inst.point_labels().len() as u32;
                let tuples =
                    (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| vec![Point(a), Point(b)]));
                Ok(Relation { arity: 2, tuples: tuples.collect() })
            }
            RelationSpec::Polymorphism(f) => {
                let mut tuples = BTreeSet::new();
                for v in 0..inst.num_vars() {
                    let dom: Vec<Value> = inst.domain(v).iter().copied().collect();
                    if let Some(&a) = dom.iter().find(|a| !f.domain().contains(a)) {
                        return Err(PatternError::PartialTable { var: v, value: a });
                    }
                    for args in tuples_over(&dom, f.arity()) {
                        let out = f.apply(&args).expect("table is total over its domain");
                        let Some(last) = inst.point_of(v, out) else {
                            continue;
                        };
                        let mut t: Vec<Point> = args.iter().map(|&a| inst.point_of(v, a).unwrap()).collect();
                        t.push(last);
                        tuples.insert(t);
                    }
                }
                Ok(Relation { arity: f.arity() + 1, tuples })
            }
        }
    }
}

/// Free-function form of [`RelationSpec::instance_relation`].
pub fn instance_relation(spec: &RelationSpec, inst: &Instance) -> Result<Relation, PatternError> {
    spec.instance_relation(inst)
}
