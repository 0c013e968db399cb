//! Backtracking search for part-preserving homomorphisms.

use std::collections::{BTreeMap, HashSet};

use crate::pattern::{Pattern, Point, Relation};

const POS: u8 = 1;
const NEG: u8 = 2;
const NONE: u32 = u32::MAX;

/// A pattern compiled to dense indices. Points are indexed in ascending id
/// order and parts in ascending representative order.
pub(crate) struct Compiled {
    pub ids: Vec<Point>,
    pub part: Vec<u32>,
    pub parts: Vec<Vec<u32>>,
    pub adj: Vec<u8>,
    pub nbrs: Vec<Vec<(u32, u8)>>,
    pub tuples: Vec<Vec<u32>>,
    pub has_relation: bool,
    pub arity: usize,
}

impl Compiled {
    pub fn new(p: &Pattern, rel: Option<&Relation>) -> Self {
        let ids: Vec<Point> = p.points().collect();
        let index: BTreeMap<Point, u32> = ids.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let part_ids = p.parts();
        let part_index: BTreeMap<_, u32> = part_ids.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let part: Vec<u32> = ids.iter().map(|&x| part_index[&p.part_of(x).unwrap()]).collect();
        let mut parts = vec![Vec::new(); part_ids.len()];
        for (i, &q) in part.iter().enumerate() {
            parts[q as usize].push(i as u32);
        }
        let n = ids.len();
        let mut adj = vec![0u8; n * n];
        for (set, bit) in [(p.positive(), POS), (p.negative(), NEG)] {
            for e in set {
                let (a, b) = e.ends();
                let (a, b) = (index[&a] as usize, index[&b] as usize);
                adj[a * n + b] |= bit;
                adj[b * n + a] |= bit;
            }
        }
        let nbrs = (0..n)
            .map(|a| (0..n).filter(|&b| adj[a * n + b] != 0).map(|b| (b as u32, adj[a * n + b])).collect())
            .collect();
        let tuples =
            rel.map(|r| r.tuples.iter().map(|t| t.iter().map(|x| index[x]).collect()).collect()).unwrap_or_default();
        Compiled { ids, part, parts, adj, nbrs, tuples, has_relation: rel.is_some(), arity: rel.map_or(0, |r| r.arity) }
    }

    fn n(&self) -> usize {
        self.ids.len()
    }

    fn bits(&self, a: u32, b: u32) -> u8 {
        self.adj[a as usize * self.n() + b as usize]
    }

    /// Union of edge kinds at each point.
    fn point_kinds(&self) -> Vec<u8> {
        self.nbrs.iter().map(|l| l.iter().fold(0, |acc, &(_, b)| acc | b)).collect()
    }

    /// Per part: number of distinct neighbouring parts over positive, negative and mixed pairs.
    fn part_degrees(&self) -> Vec<[usize; 3]> {
        let k = self.parts.len();
        let mut seen = vec![[false; 3]; k * k];
        for a in 0..self.n() {
            for &(b, bits) in &self.nbrs[a] {
                let (pa, pb) = (self.part[a] as usize, self.part[b as usize] as usize);
                if bits & POS != 0 {
                    seen[pa * k + pb][0] = true;
                }
                if bits & NEG != 0 {
                    seen[pa * k + pb][1] = true;
                }
                if bits == POS | NEG {
                    seen[pa * k + pb][2] = true;
                }
            }
        }
        (0..k)
            .map(|pa| {
                let mut d = [0; 3];
                for pb in 0..k {
                    for (i, slot) in d.iter_mut().enumerate() {
                        *slot += usize::from(seen[pa * k + pb][i]);
                    }
                }
                d
            })
            .collect()
    }
}

struct TargetRelation {
    set: HashSet<Vec<u32>>,
    // by_pos[j][point] = tuples with `point` at position j
    by_pos: Vec<Vec<Vec<u32>>>,
    tuples: Vec<Vec<u32>>,
}

struct Search<'a> {
    src: &'a Compiled,
    tgt: &'a Compiled,
    order: Vec<u32>,
    img: Vec<u32>,
    part_img: Vec<u32>,
    used: Vec<bool>,
    allowed: Vec<bool>,
    part_allowed: Vec<bool>,
    tuples_of: Vec<Vec<(usize, usize)>>,
    trel: Option<TargetRelation>,
}

/// Finds a part-preserving homomorphism from `src` into `tgt`, as a point map
/// over dense indices. The caller is responsible for relation compatibility.
pub(crate) fn find(src: &Compiled, tgt: &Compiled) -> Option<Vec<u32>> {
    let ns = src.n();
    if ns == 0 {
        return Some(Vec::new());
    }
    if src.parts.len() > tgt.parts.len() {
        return None;
    }
    if !src.tuples.is_empty() && tgt.tuples.is_empty() {
        return None;
    }
    let tgt_has_both = tgt.adj.contains(&(POS | NEG));
    if !tgt_has_both && src.adj.contains(&(POS | NEG)) {
        return None;
    }

    let sk = src.point_kinds();
    let tk = tgt.point_kinds();
    let nt = tgt.n();
    let mut allowed = vec![false; ns * nt];
    for a in 0..ns {
        for t in 0..nt {
            allowed[a * nt + t] = sk[a] & tk[t] == sk[a];
        }
    }
    let sd = src.part_degrees();
    let td = tgt.part_degrees();
    let (ks, kt) = (src.parts.len(), tgt.parts.len());
    let mut part_allowed = vec![false; ks * kt];
    for a in 0..ks {
        for t in 0..kt {
            part_allowed[a * kt + t] = (0..3).all(|i| sd[a][i] <= td[t][i])
                && src.parts[a].iter().all(|&x| tgt.parts[t].iter().any(|&y| allowed[x as usize * nt + y as usize]));
        }
    }

    let mut tuples_of = vec![Vec::new(); ns];
    for (ti, t) in src.tuples.iter().enumerate() {
        for (pos, &x) in t.iter().enumerate() {
            tuples_of[x as usize].push((ti, pos));
        }
    }
    let trel = (!src.tuples.is_empty()).then(|| {
        let mut by_pos = vec![vec![Vec::new(); nt]; tgt.arity];
        for (ti, t) in tgt.tuples.iter().enumerate() {
            for (pos, &x) in t.iter().enumerate() {
                by_pos[pos][x as usize].push(ti as u32);
            }
        }
        TargetRelation { set: tgt.tuples.iter().cloned().collect(), by_pos, tuples: tgt.tuples.clone() }
    });

    let mut search = Search {
        src,
        tgt,
        order: search_order(src),
        img: vec![NONE; ns],
        part_img: vec![NONE; ks],
        used: vec![false; kt],
        allowed,
        part_allowed,
        tuples_of,
        trel,
    };
    if search.extend(0) {
        Some(search.img)
    } else {
        None
    }
}

/// Connectivity-first order: repeatedly take the point with the most edges to
/// already ordered points, then the most points of its part already ordered,
/// then its degree; ties by (part size, id).
fn search_order(src: &Compiled) -> Vec<u32> {
    let n = src.n();
    let mut placed = vec![false; n];
    let mut in_part = vec![0usize; src.parts.len()];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&x| !placed[x])
            .min_by_key(|&x| {
                let p = src.part[x] as usize;
                (
                    std::cmp::Reverse(links[x]),
                    std::cmp::Reverse(in_part[p]),
                    std::cmp::Reverse(src.nbrs[x].len()),
                    src.parts[p].len(),
                    x,
                )
            })
            .unwrap();
        placed[best] = true;
        in_part[src.part[best] as usize] += 1;
        for &(y, _) in &src.nbrs[best] {
            links[y as usize] += 1;
        }
        order.push(best as u32);
    }
    order
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        let sp = self.src.part[x as usize] as usize;
        let fixed = self.part_img[sp];
        if fixed != NONE {
            let cands = self.tgt.parts[fixed as usize].clone();
            return cands.into_iter().any(|t| self.try_point(depth, x, t));
        }
        let kt = self.tgt.parts.len();
        for tp in 0..kt {
            if self.used[tp] || !self.part_allowed[sp * kt + tp] {
                continue;
            }
            self.used[tp] = true;
            self.part_img[sp] = tp as u32;
            let cands = self.tgt.parts[tp].clone();
            if cands.into_iter().any(|t| self.try_point(depth, x, t)) {
                return true;
            }
            self.part_img[sp] = NONE;
            self.used[tp] = false;
        }
        false
    }

    fn try_point(&mut self, depth: usize, x: u32, t: u32) -> bool {
        let nt = self.tgt.n();
        if !self.allowed[x as usize * nt + t as usize] {
            return false;
        }
        for &(y, bits) in &self.src.nbrs[x as usize] {
            let iy = self.img[y as usize];
            if iy != NONE && self.tgt.bits(t, iy) & bits != bits {
                return false;
            }
        }
        self.img[x as usize] = t;
        if self.tuples_ok(x) && self.extend(depth + 1) {
            return true;
        }
        self.img[x as usize] = NONE;
        false
    }

    fn tuples_ok(&self, x: u32) -> bool {
        let Some(trel) = &self.trel else { return true };
        for &(ti, pos) in &self.tuples_of[x as usize] {
            let st = &self.src.tuples[ti];
            let image: Vec<u32> = st.iter().map(|&y| self.img[y as usize]).collect();
            if image.iter().all(|&i| i != NONE) {
                if !trel.set.contains(&image) {
                    return false;
                }
                continue;
            }
            let cands = &trel.by_pos[pos][image[pos] as usize];
            let fits = cands.iter().any(|&c| {
                let tt = &trel.tuples[c as usize];
                image.iter().zip(tt).all(|(&i, &j)| i == NONE || i == j)
            });
            if !fits {
                return false;
            }
        }
        true
    }
}
