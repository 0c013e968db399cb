//! Sub-pattern and topological-minor occurrence.
//!
//! A sub-pattern occurrence is a homomorphism preserving parts, positive edges,
//! negative edges and (for augmented patterns) relation tuples, whose induced
//! map on parts is injective. Points of one part may merge.

mod canon;
mod classes;
mod engine;
mod tm;

pub use canon::{certificate, isomorphic};
pub use classes::{forbids, forbids_with, is_star_like, Forbids, Mode, Violation};
pub use tm::{enumerate_subdivisions, occurs_tm, occurs_tm_with, subdivide_by_lengths, TmOptions, TmWitness};

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::pattern::{AnyPattern, AugmentedPattern, Pattern, PatternError, Point, Relation};
use engine::Compiled;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OccurrenceError {
    #[error("relation arity mismatch: source {source_arity}, target {target_arity}")]
    ArityMismatch { source_arity: usize, target_arity: usize },
    #[error("source pattern is augmented but the target carries no relation")]
    MissingRelation,
    #[error("search budget of {budget} subdivision steps is below the exact bound {bound}")]
    BudgetExceeded { budget: usize, bound: usize },
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// Borrowed view of a pattern with an optional relation.
#[derive(Clone, Copy, Debug)]
pub struct PatternRef<'a> {
    pub pattern: &'a Pattern,
    pub relation: Option<&'a Relation>,
}

impl<'a> From<&'a Pattern> for PatternRef<'a> {
    fn from(pattern: &'a Pattern) -> Self {
        PatternRef { pattern, relation: None }
    }
}

impl<'a> From<&'a AugmentedPattern> for PatternRef<'a> {
    fn from(a: &'a AugmentedPattern) -> Self {
        PatternRef { pattern: &a.pattern, relation: Some(&a.relation) }
    }
}

impl<'a> From<&'a AnyPattern> for PatternRef<'a> {
    fn from(a: &'a AnyPattern) -> Self {
        PatternRef { pattern: a.base(), relation: a.relation() }
    }
}

impl<'a> From<(&'a Pattern, &'a Relation)> for PatternRef<'a> {
    fn from((pattern, relation): (&'a Pattern, &'a Relation)) -> Self {
        PatternRef { pattern, relation: Some(relation) }
    }
}

/// The relation the search must respect: the source's, when the source has one.
fn check_relations(p: PatternRef, q: PatternRef) -> Result<bool, OccurrenceError> {
    match (p.relation, q.relation) {
        (None, _) => Ok(false),
        (Some(_), None) => Err(OccurrenceError::MissingRelation),
        (Some(a), Some(b)) if a.arity != b.arity => {
            Err(OccurrenceError::ArityMismatch { source_arity: a.arity, target_arity: b.arity })
        }
        _ => Ok(true),
    }
}

/// A point map witnessing a sub-pattern occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Embedding {
    pub point_map: BTreeMap<Point, Point>,
}

impl Embedding {
    pub fn image(&self, p: Point) -> Option<Point> {
        self.point_map.get(&p).copied()
    }

    /// Checks the occurrence conditions directly from the definitions.
    pub fn verify<'a, 'b>(&self, p: impl Into<PatternRef<'a>>, q: impl Into<PatternRef<'b>>) -> bool {
        let (p, q) = (p.into(), q.into());
        let (src, tgt) = (p.pattern, q.pattern);
        let keys: BTreeSet<Point> = self.point_map.keys().copied().collect();
        let points: BTreeSet<Point> = src.points().collect();
        if keys != points || !self.point_map.values().all(|&y| tgt.contains(y)) {
            return false;
        }
        let m = |x: Point| self.point_map[&x];
        let mut part_map = BTreeMap::new();
        for x in src.points() {
            let (sp, tp) = (src.part_of(x).unwrap(), tgt.part_of(m(x)).unwrap());
            if *part_map.entry(sp).or_insert(tp) != tp {
                return false;
            }
        }
        let images: BTreeSet<_> = part_map.values().collect();
        if images.len() != part_map.len() {
            return false;
        }
        let pos_ok = src.positive().iter().all(|e| {
            let (a, b) = e.ends();
            tgt.is_positive(m(a), m(b))
        });
        let neg_ok = src.negative().iter().all(|e| {
            let (a, b) = e.ends();
            tgt.is_negative(m(a), m(b))
        });
        let rel_ok = match (p.relation, q.relation) {
            (None, _) => true,
            (Some(r), None) => r.tuples.is_empty(),
            (Some(r), Some(s)) => {
                r.arity == s.arity && r.tuples.iter().all(|t| s.contains(&t.iter().map(|&x| m(x)).collect::<Vec<_>>()))
            }
        };
        pos_ok && neg_ok && rel_ok
    }
}

/// Finds a sub-pattern occurrence of `p` in `q`.
///
/// When `p` carries a relation, `q` must carry one of the same arity. A
/// relation on `q` alone is ignored.
pub fn find_sub_pattern<'a, 'b>(
    p: impl Into<PatternRef<'a>>,
    q: impl Into<PatternRef<'b>>,
) -> Result<Option<Embedding>, OccurrenceError> {
    let (p, q) = (p.into(), q.into());
    let with_rel = check_relations(p, q)?;
    let src = Compiled::new(p.pattern, if with_rel { p.relation } else { None });
    let tgt = Compiled::new(q.pattern, if with_rel { q.relation } else { None });
    Ok(find_compiled(&src, &tgt))
}

/// Plain-pattern convenience wrapper.
pub fn sub_pattern(p: &Pattern, q: &Pattern) -> Option<Embedding> {
    find_sub_pattern(p, q).expect("plain patterns cannot mismatch")
}

fn find_compiled(src: &Compiled, tgt: &Compiled) -> Option<Embedding> {
    let img = engine::find(src, tgt)?;
    let point_map = img.iter().enumerate().map(|(i, &t)| (src.ids[i], tgt.ids[t as usize])).collect();
    Some(Embedding { point_map })
}

/// A target compiled once and searched many times.
pub struct PreparedTarget {
    compiled: Compiled,
    plain: Compiled,
}

impl PreparedTarget {
    pub fn new<'a>(q: impl Into<PatternRef<'a>>) -> Self {
        let q = q.into();
        PreparedTarget { compiled: Compiled::new(q.pattern, q.relation), plain: Compiled::new(q.pattern, None) }
    }

    pub fn find<'a>(&self, p: impl Into<PatternRef<'a>>) -> Result<Option<Embedding>, OccurrenceError> {
        let p = p.into();
        match p.relation {
            None => Ok(find_compiled(&Compiled::new(p.pattern, None), &self.plain)),
            Some(r) => {
                if !self.compiled.has_relation {
                    return Err(OccurrenceError::MissingRelation);
                }
                if r.arity != self.compiled.arity {
                    return Err(OccurrenceError::ArityMismatch {
                        source_arity: r.arity,
                        target_arity: self.compiled.arity,
                    });
                }
                Ok(find_compiled(&Compiled::new(p.pattern, Some(r)), &self.compiled))
            }
        }
    }
}
