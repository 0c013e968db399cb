//! Topological-minor occurrence by bounded subdivision search.
//!
//! Up to isomorphism a subdivision of `P` is fixed by how many fresh parts sit
//! on the chain replacing each edge-carrying part pair, so the search walks
//! chain-length vectors by increasing total length. Every effective step adds
//! a part and part maps are injective, so the total never needs to exceed
//! `parts(Q) - parts(P)`.

use std::collections::HashSet;

use super::canon::certificate;
use super::engine::{self, Compiled};
use super::{check_relations, is_star_like, Embedding, OccurrenceError, PatternRef};
use crate::graphs::{constraint_graph, graph_topological_minor_with, MinorLimits};
use crate::pattern::{Graph, Part, Pattern, PatternError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TmOptions {
    /// Use the graph-minor and star-like shortcuts when they apply.
    pub fast_paths: bool,
    /// Cap on the total number of subdivision steps.
    pub max_depth: Option<usize>,
}

impl Default for TmOptions {
    fn default() -> Self {
        TmOptions { fast_paths: true, max_depth: None }
    }
}

impl TmOptions {
    pub fn exhaustive() -> Self {
        TmOptions { fast_paths: false, max_depth: None }
    }
}

/// Subdivision steps applied to the source, then an embedding of the result.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TmWitness {
    pub steps: Vec<(Part, Part)>,
    pub embedding: Embedding,
}

impl TmWitness {
    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// Applies the recorded steps to `p`.
    pub fn replay(&self, p: &Pattern) -> Result<Pattern, PatternError> {
        let mut cur = p.clone();
        for &(u, v) in &self.steps {
            cur = cur.subdivide(u, v)?.0;
        }
        Ok(cur)
    }

    pub fn verify<'a, 'b>(&self, p: impl Into<PatternRef<'a>>, q: impl Into<PatternRef<'b>>) -> bool {
        let (p, q) = (p.into(), q.into());
        match self.replay(p.pattern) {
            Ok(sub) => self.embedding.verify(PatternRef { pattern: &sub, relation: p.relation }, q),
            Err(_) => false,
        }
    }
}

/// Edge-carrying part pairs of `p`, ascending.
fn chain_pairs(p: &Pattern) -> Vec<(Part, Part)> {
    p.edge_part_pairs().into_iter().collect()
}

/// Subdivides each pair `(U, V)` of `lengths` into a chain with that many fresh
/// parts. Returns the pattern and the step list that produced it.
pub fn subdivide_by_lengths(
    p: &Pattern,
    lengths: &[((Part, Part), usize)],
) -> Result<(Pattern, Vec<(Part, Part)>), PatternError> {
    let mut cur = p.clone();
    let mut steps = Vec::new();
    for &((u, v), k) in lengths {
        let mut left = u;
        for _ in 0..k {
            let (next, z) = cur.subdivide(left, v)?;
            steps.push((left, v));
            cur = next;
            match z {
                Some(z) => left = z,
                None => break,
            }
        }
    }
    Ok((cur, steps))
}

/// All ways to write `total` as an ordered sum of `slots` nonnegative terms, lexicographic.
fn compositions(total: usize, slots: usize) -> Vec<Vec<usize>> {
    if slots == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur = vec![0; slots];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// One subdivision with the steps producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub pattern: Pattern,
    pub steps: Vec<(Part, Part)>,
}

/// Every subdivision of `p` with at most `max_parts` parts, once per
/// isomorphism class, by increasing depth.
pub fn enumerate_subdivisions(p: &Pattern, max_parts: usize) -> Vec<Subdivision> {
    let mut out = Vec::new();
    let Some(bound) = max_parts.checked_sub(p.num_parts()) else {
        return out;
    };
    let pairs = chain_pairs(p);
    let mut seen = HashSet::new();
    for depth in 0..=bound {
        for lengths in compositions(depth, pairs.len()) {
            let spec: Vec<_> = pairs.iter().copied().zip(lengths).collect();
            let (sub, steps) = subdivide_by_lengths(p, &spec).expect("pairs come from the pattern");
            if seen.insert(certificate(&sub, None)) {
                out.push(Subdivision { pattern: sub, steps });
            }
        }
        if pairs.is_empty() {
            break;
        }
    }
    out
}

/// Topological-minor occurrence with default options.
pub fn occurs_tm<'a, 'b>(
    p: impl Into<PatternRef<'a>>,
    q: impl Into<PatternRef<'b>>,
) -> Result<Option<TmWitness>, OccurrenceError> {
    occurs_tm_with(p, q, TmOptions::default())
}

/// Whether `p` is `PG(G)` for some graph `G`: negative only, one negative edge
/// per point, at most one negative edge per part pair. Returns `G` on parts.
fn pg_form(p: &Pattern) -> Option<Graph> {
    if !p.is_negative_pattern() || p.points().any(|x| p.negative_degree(x) != 1) {
        return None;
    }
    let pairs = p.edge_part_pairs();
    if pairs.len() != p.negative().len() {
        return None;
    }
    Graph::new(p.parts().into_iter().map(|q| q.0), pairs.into_iter().map(|(a, b)| (a.0, b.0))).ok()
}

pub fn occurs_tm_with<'a, 'b>(
    p: impl Into<PatternRef<'a>>,
    q: impl Into<PatternRef<'b>>,
    opts: TmOptions,
) -> Result<Option<TmWitness>, OccurrenceError> {
    let (p, q) = (p.into(), q.into());
    let with_rel = check_relations(p, q)?;
    let src_rel = if with_rel { p.relation } else { None };
    let tgt = Compiled::new(q.pattern, if with_rel { q.relation } else { None });
    let Some(bound) = q.pattern.num_parts().checked_sub(p.pattern.num_parts()) else {
        return Ok(None);
    };
    let embed = |sub: &Pattern| -> Option<Embedding> {
        let src = Compiled::new(sub, src_rel);
        let img = engine::find(&src, &tgt)?;
        Some(Embedding { point_map: img.iter().enumerate().map(|(i, &t)| (src.ids[i], tgt.ids[t as usize])).collect() })
    };

    if opts.fast_paths && src_rel.is_none() {
        if let Some(g) = pg_form(p.pattern) {
            let cg = constraint_graph(q.pattern);
            let found = graph_topological_minor_with(&g, &cg, MinorLimits::unbounded())
                .expect("unbounded search has no size limit");
            match found {
                None => return Ok(None),
                Some(w) => {
                    let lengths: Vec<_> = w
                        .paths
                        .iter()
                        .map(|(&(a, b), path)| ((Part(a), Part(b)), path.len().saturating_sub(2)))
                        .collect();
                    let (sub, steps) = subdivide_by_lengths(p.pattern, &lengths)?;
                    if let Some(embedding) = embed(&sub) {
                        return Ok(Some(TmWitness { steps, embedding }));
                    }
                    debug_assert!(false, "graph-minor witness did not lift to the pattern");
                }
            }
        } else if p.pattern.is_negative_pattern() && is_star_like(p.pattern) {
            return Ok(embed(p.pattern).map(|embedding| TmWitness { steps: Vec::new(), embedding }));
        }
    }

    let limit = opts.max_depth.map_or(bound, |b| b.min(bound));
    let pairs = chain_pairs(p.pattern);
    let mut seen = HashSet::new();
    for depth in 0..=limit {
        for lengths in compositions(depth, pairs.len()) {
            let spec: Vec<_> = pairs.iter().copied().zip(lengths).collect();
            let (sub, steps) = subdivide_by_lengths(p.pattern, &spec)?;
            if !seen.insert(certificate(&sub, src_rel)) {
                continue;
            }
            if let Some(embedding) = embed(&sub) {
                return Ok(Some(TmWitness { steps, embedding }));
            }
        }
        if pairs.is_empty() {
            return Ok(None);
        }
    }
    if limit < bound {
        return Err(OccurrenceError::BudgetExceeded { budget: limit, bound });
    }
    Ok(None)
}
