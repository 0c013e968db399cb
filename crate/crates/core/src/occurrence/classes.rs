use std::collections::{BTreeMap, BTreeSet};

use super::{occurs_tm_with, Embedding, OccurrenceError, PatternRef, TmOptions, TmWitness};
use crate::pattern::{pattern_from_instance, AnyPattern, Instance, Part, Pattern, RelationSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Sp,
    Tm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Sp(Embedding),
    Tm(TmWitness),
}

/// Outcome of a class-membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forbids {
    pub forbids: bool,
    /// Index into the pattern set and the occurrence found.
    pub violation: Option<(usize, Violation)>,
}

/// Whether no pattern of `set` occurs in the microstructure of `inst`.
///
/// Augmented patterns are matched against the relation `rel` induces on the
/// microstructure; `rel` must then be supplied with a matching arity.
pub fn forbids(
    set: &[AnyPattern],
    inst: &Instance,
    mode: Mode,
    rel: Option<&RelationSpec>,
) -> Result<Forbids, OccurrenceError> {
    forbids_with(set, inst, mode, rel, TmOptions::default())
}

pub fn forbids_with(
    set: &[AnyPattern],
    inst: &Instance,
    mode: Mode,
    rel: Option<&RelationSpec>,
    opts: TmOptions,
) -> Result<Forbids, OccurrenceError> {
    let pi = pattern_from_instance(inst);
    let needs_rel = set.iter().any(|p| p.relation().is_some());
    let target_rel = match (needs_rel, rel) {
        (false, _) => None,
        (true, None) => return Err(OccurrenceError::MissingRelation),
        (true, Some(spec)) => Some(spec.instance_relation(inst)?),
    };
    for (i, p) in set.iter().enumerate() {
        let q = match (p.relation(), &target_rel) {
            (Some(_), Some(r)) => PatternRef { pattern: &pi, relation: Some(r) },
            _ => PatternRef::from(&pi),
        };
        let found = match mode {
            Mode::Sp => super::find_sub_pattern(p, q)?.map(Violation::Sp),
            Mode::Tm => occurs_tm_with(p, q, opts)?.map(Violation::Tm),
        };
        if let Some(v) = found {
            return Ok(Forbids { forbids: false, violation: Some((i, v)) });
        }
    }
    Ok(Forbids { forbids: true, violation: None })
}

/// Star-likeness of the negative reduct of `p`.
///
/// True iff the part graph formed by negative edges is a forest and at most
/// one part is distinguished, a part being distinguished when it has negative
/// edges to more than two parts or contains a point with two or more negative
/// edges.
pub fn is_star_like(p: &Pattern) -> bool {
    let neg = p.negative_reduct();
    let mut pairs = BTreeSet::new();
    let mut degree: BTreeMap<crate::pattern::Point, usize> = BTreeMap::new();
    for e in neg.negative() {
        let (a, b) = e.ends();
        let (pa, pb) = (neg.part_of(a).unwrap(), neg.part_of(b).unwrap());
        pairs.insert((pa.min(pb), pa.max(pb)));
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
    }
    // forest check by union-find over parts
    let mut parent: BTreeMap<Part, Part> = neg.parts().into_iter().map(|q| (q, q)).collect();
    fn root(parent: &mut BTreeMap<Part, Part>, mut x: Part) -> Part {
        while parent[&x] != x {
            let up = parent[&parent[&x]];
            parent.insert(x, up);
            x = up;
        }
        x
    }
    for &(a, b) in &pairs {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent.insert(ra, rb);
    }
    let mut part_degree: BTreeMap<Part, usize> = BTreeMap::new();
    for &(a, b) in &pairs {
        *part_degree.entry(a).or_default() += 1;
        *part_degree.entry(b).or_default() += 1;
    }
    let distinguished = neg
        .parts()
        .into_iter()
        .filter(|&q| {
            part_degree.get(&q).copied().unwrap_or(0) > 2
                || neg.part_points(q).iter().any(|x| degree.get(x).copied().unwrap_or(0) >= 2)
        })
        .count();
    distinguished <= 1
}
