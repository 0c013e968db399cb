//! Canonical certificates for (augmented) patterns by colour refinement with
//! individualisation. Two patterns get equal certificates iff they are isomorphic.

use std::collections::BTreeMap;

use crate::pattern::{Pattern, Relation};

const POINT: u32 = 0;
const PART: u32 = 1;
const TUPLE: u32 = 2;

// half-edge types; tuple positions use TUPLE_BASE + 2 * position (+1 on the point side)
const MEMBER_OF: u32 = 0;
const HAS_MEMBER: u32 = 1;
const POSITIVE: u32 = 2;
const NEGATIVE: u32 = 3;
const TUPLE_BASE: u32 = 4;

/// Own colour and sorted (edge label, neighbour colour) pairs.
type Signature = (u32, Vec<(u32, u32)>);

struct Coloured {
    kinds: Vec<u32>,
    adj: Vec<Vec<(u32, usize)>>,
}

fn build(p: &Pattern, rel: Option<&Relation>) -> Coloured {
    let points: Vec<_> = p.points().collect();
    let idx: BTreeMap<_, usize> = points.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let parts = p.parts();
    let part_idx: BTreeMap<_, usize> = parts.iter().enumerate().map(|(i, &x)| (x, points.len() + i)).collect();
    let tuples: Vec<&Vec<_>> = rel.map(|r| r.tuples.iter().collect()).unwrap_or_default();
    let n = points.len() + parts.len() + tuples.len();
    let mut kinds = vec![POINT; points.len()];
    kinds.extend(std::iter::repeat_n(PART, parts.len()));
    kinds.extend(std::iter::repeat_n(TUPLE, tuples.len()));
    let mut adj = vec![Vec::new(); n];
    for (i, &x) in points.iter().enumerate() {
        let q = part_idx[&p.part_of(x).unwrap()];
        adj[i].push((MEMBER_OF, q));
        adj[q].push((HAS_MEMBER, i));
    }
    for (set, ty) in [(p.positive(), POSITIVE), (p.negative(), NEGATIVE)] {
        for e in set {
            let (a, b) = e.ends();
            let (a, b) = (idx[&a], idx[&b]);
            adj[a].push((ty, b));
            adj[b].push((ty, a));
        }
    }
    let base = points.len() + parts.len();
    for (t, tuple) in tuples.iter().enumerate() {
        for (pos, x) in tuple.iter().enumerate() {
            let ty = TUPLE_BASE + 2 * pos as u32;
            adj[base + t].push((ty, idx[x]));
            adj[idx[x]].push((ty + 1, base + t));
        }
    }
    Coloured { kinds, adj }
}

impl Coloured {
    fn refine(&self, mut colours: Vec<u32>) -> Vec<u32> {
        let mut count = distinct(&colours);
        loop {
            let sigs: Vec<Signature> = (0..colours.len())
                .map(|v| {
                    let mut nb: Vec<(u32, u32)> = self.adj[v].iter().map(|&(t, w)| (t, colours[w])).collect();
                    nb.sort_unstable();
                    (colours[v], nb)
                })
                .collect();
            let mut sorted: Vec<&Signature> = sigs.iter().collect();
            sorted.sort();
            sorted.dedup();
            let rank: BTreeMap<&Signature, u32> = sorted.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();
            colours = sigs.iter().map(|s| rank[s]).collect();
            let now = sorted.len();
            if now == count {
                return colours;
            }
            count = now;
        }
    }

    fn certificate(&self, labels: &[u32]) -> Vec<u32> {
        let n = labels.len();
        let mut kinds = vec![0; n];
        for v in 0..n {
            kinds[labels[v] as usize] = self.kinds[v];
        }
        let mut edges: Vec<[u32; 3]> = Vec::new();
        for v in 0..n {
            for &(t, w) in &self.adj[v] {
                edges.push([t, labels[v], labels[w]]);
            }
        }
        edges.sort_unstable();
        let mut out = Vec::with_capacity(1 + n + 3 * edges.len());
        out.push(n as u32);
        out.extend(kinds);
        out.extend(edges.into_iter().flatten());
        out
    }

    fn search(&self, colours: Vec<u32>, best: &mut Option<Vec<u32>>) {
        let colours = self.refine(colours);
        let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &colours {
            *sizes.entry(c).or_default() += 1;
        }
        let target = sizes.iter().filter(|(_, &s)| s > 1).min_by_key(|(&c, &s)| (s, c)).map(|(&c, _)| c);
        let Some(cell) = target else {
            let cert = self.certificate(&colours);
            if best.as_ref().is_none_or(|b| cert < *b) {
                *best = Some(cert);
            }
            return;
        };
        for v in (0..colours.len()).filter(|&v| colours[v] == cell) {
            let next: Vec<u32> =
                colours.iter().enumerate().map(|(u, &c)| 2 * c + u32::from(c == cell && u != v)).collect();
            self.search(next, best);
        }
    }
}

fn distinct(colours: &[u32]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Isomorphism-invariant certificate.
pub fn certificate(p: &Pattern, rel: Option<&Relation>) -> Vec<u32> {
    let g = build(p, rel);
    let mut best = None;
    g.search(g.kinds.clone(), &mut best);
    best.unwrap_or_default()
}

/// Whether two plain patterns are isomorphic.
pub fn isomorphic(p: &Pattern, q: &Pattern) -> bool {
    p.num_points() == q.num_points()
        && p.positive().len() == q.positive().len()
        && p.negative().len() == q.negative().len()
        && certificate(p, None) == certificate(q, None)
}
