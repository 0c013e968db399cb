//! Named patterns.
//!
//! Point ids are fixed so that tests and witnesses are reproducible. Within a
//! two-point block of `M` or `E` the first point is the top one.

use std::collections::BTreeSet;

use super::{pattern_from_graph, pts, AnyPattern, AugmentedPattern, Graph, Part, Pattern, PatternError, Point};

/// Catalogue keys accepted by [`make_named`]. `pivot:k` and `pivot_neq:k` take any `k >= 1`.
pub const NAMED_PATTERNS: &[&str] = &[
    "C3",
    "J",
    "K",
    "K_neq",
    "L",
    "M",
    "Mprime",
    "E",
    "C3_neq",
    "Jprime_neq",
    "pivot:k",
    "pivot_neq:k",
    "fig1a",
    "fig1b",
    "fig1c",
    "fig1d",
];

fn plain(parts: Vec<Vec<u32>>, pos: &[(u32, u32)], neg: &[(u32, u32)]) -> Pattern {
    Pattern::new(
        parts.into_iter().map(|p| p.into_iter().map(Point)),
        pos.iter().map(|&(a, b)| (Point(a), Point(b))),
        neg.iter().map(|&(a, b)| (Point(a), Point(b))),
    )
    .expect("catalogue entries are well formed")
}

fn neq_pairs(p: Pattern, pairs: &[(u32, u32)]) -> AugmentedPattern {
    AugmentedPattern::augment(p, 2, pairs.iter().map(|&(a, b)| vec![Point(a), Point(b)]))
        .expect("catalogue entries are well formed")
}

fn j() -> Pattern {
    plain(vec![vec![0], vec![1], vec![2]], &[], &[(0, 2), (1, 2)])
}

fn k() -> Pattern {
    // A = {a1, a2}, B = {b1, b2}, C = {c}
    plain(vec![vec![0, 1], vec![2, 3], vec![4]], &[], &[(0, 2), (1, 4), (3, 4)])
}

fn c3() -> Pattern {
    pattern_from_graph(&Graph::cycle(3))
}

fn m() -> Pattern {
    // A = {a1, a2}, B = {b1, b2}, C = {c1, c2}, D = {d1, d2}
    plain(
        vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]],
        &[(0, 2), (0, 3), (1, 2), (2, 4), (4, 6), (4, 7), (5, 6)],
        &[(1, 3), (5, 7)],
    )
}

const E_POSITIVE: [(u32, u32); 6] = [(0, 3), (1, 4), (0, 4), (1, 3), (0, 5), (2, 3)];

fn e() -> Pattern {
    // L = {top, mid, bot}, R = {top, mid, bot}
    plain(vec![vec![0, 1, 2], vec![3, 4, 5]], &E_POSITIVE, &[])
}

fn m_prime() -> Pattern {
    let mut pos = E_POSITIVE.to_vec();
    pos.extend([(6, 0), (6, 3)]);
    plain(vec![vec![0, 1, 2], vec![3, 4, 5], vec![6]], &pos, &[(2, 5), (1, 5), (2, 4)])
}

fn pivot_points(k: u32) -> (Pattern, Point, Point) {
    assert!(k >= 1, "pivot needs k >= 1");
    // centre: point 0 carries branches 0 and 1, point 1 carries branch 2
    let mut parts: Vec<Vec<Point>> = vec![vec![Point(0), Point(1)]];
    let mut neg = Vec::new();
    let mut next = 2u32;
    for branch in 0..3 {
        let mut prev = Point(if branch < 2 { 0 } else { 1 });
        for step in 1..=k {
            let inner = Point(next);
            next += 1;
            neg.push((prev, inner));
            if step < k {
                let outer = Point(next);
                next += 1;
                parts.push(vec![inner, outer]);
                prev = outer;
            } else {
                parts.push(vec![inner]);
            }
        }
    }
    (Pattern::new(parts, [], neg).expect("pivot is well formed"), Point(0), Point(1))
}

/// `Pivot(k)`: three branches of length `k` around a centre in which exactly two
/// of the three incidence points are merged.
pub fn make_pivot(k: u32) -> Pattern {
    pivot_points(k).0
}

/// `Pivot(k)` with the two centre points required to be distinct.
pub fn make_pivot_neq(k: u32) -> AugmentedPattern {
    let (p, a, b) = pivot_points(k);
    neq_pairs(p, &[(a.0, b.0)])
}

/// Two-part pattern whose augmented occurrence witnesses a relation not
/// closed under a `k`-ary operation. Points `0..=k` form `U` and
/// `k+1..=2k+1` form `V`; `p_i - q_i` is positive for `i < k` and negative for
/// `i = k`. The relation holds `(p_0..p_k)` and `(q_0..q_k)`.
pub fn polymorphism_pattern(k: usize) -> AugmentedPattern {
    let k32 = k as u32;
    let u: Vec<Point> = (0..=k32).map(Point).collect();
    let v: Vec<Point> = (k32 + 1..=2 * k32 + 1).map(Point).collect();
    let pos: Vec<(Point, Point)> = (0..k).map(|i| (u[i], v[i])).collect();
    let p = Pattern::new([u.clone(), v.clone()], pos, [(u[k], v[k])]).expect("well formed");
    AugmentedPattern::augment(p, k + 1, [u, v]).expect("well formed")
}

/// Adds part `U4` and points `p1, p2 ∈ U1`, `q1, q2 ∈ U4`, `r1, r2 ∈ U3`
/// joined by negatives `p1 r1`, `p2 q1`, `q2 r2`.
///
/// `roles` names `(U1, U2, U3)`. Requires exactly these three parts, at most
/// one negative edge on each of `U1 U2` and `U2 U3`, and no edge of any kind
/// on `U1 U3`.
pub fn make_p2_extension(p0: &Pattern, roles: [Part; 3]) -> Result<Pattern, PatternError> {
    let [u1, u2, u3] = roles;
    let parts: BTreeSet<Part> = p0.parts().into_iter().collect();
    let wanted: BTreeSet<Part> = roles.into_iter().collect();
    if parts.len() != 3 || wanted != parts {
        return Err(PatternError::PreconditionViolated(
            "pattern must have exactly three parts, named by the roles".into(),
        ));
    }
    let between = |edges: &BTreeSet<super::Edge>, a: Part, b: Part| {
        edges
            .iter()
            .filter(|e| {
                let (x, y) = e.ends();
                let (px, py) = (p0.part_of(x).unwrap(), p0.part_of(y).unwrap());
                (px == a && py == b) || (px == b && py == a)
            })
            .count()
    };
    if between(p0.negative(), u1, u2) > 1 {
        return Err(PatternError::PreconditionViolated("more than one negative edge between U1 and U2".into()));
    }
    if between(p0.negative(), u2, u3) > 1 {
        return Err(PatternError::PreconditionViolated("more than one negative edge between U2 and U3".into()));
    }
    if between(p0.negative(), u1, u3) + between(p0.positive(), u1, u3) > 0 {
        return Err(PatternError::PreconditionViolated("an edge joins U1 and U3".into()));
    }
    let base = p0.max_point().map_or(0, |p| p.0 + 1);
    let [p1, p2, q1, q2, r1, r2] = pts([base, base + 1, base + 2, base + 3, base + 4, base + 5]);
    let mut groups = p0.part_groups();
    groups.get_mut(&u1).unwrap().extend([p1, p2]);
    groups.get_mut(&u3).unwrap().extend([r1, r2]);
    groups.insert(Part(q1.0), vec![q1, q2]);
    let pos = p0.positive().iter().map(|e| e.ends());
    let neg = p0.negative().iter().map(|e| e.ends()).chain([(p1, r1), (p2, q1), (q2, r2)]);
    Pattern::new(groups.into_values(), pos, neg)
}

/// Looks up a catalogue pattern by key.
pub fn make_named(name: &str) -> Result<AnyPattern, PatternError> {
    let unknown = || PatternError::UnknownName(name.to_string());
    if let Some((head, arg)) = name.split_once(':') {
        let k: u32 = arg.parse().ok().filter(|&k| k >= 1).ok_or_else(unknown)?;
        return match head {
            "pivot" => Ok(make_pivot(k).into()),
            "pivot_neq" => Ok(make_pivot_neq(k).into()),
            _ => Err(unknown()),
        };
    }
    Ok(match name {
        "C3" => c3().into(),
        "J" => j().into(),
        "K" => k().into(),
        "K_neq" => neq_pairs(k(), &[(0, 1), (2, 3)]).into(),
        "L" => plain(vec![vec![0], vec![1], vec![2], vec![3]], &[], &[(0, 1), (1, 2), (2, 3)]).into(),
        "M" => m().into(),
        "Mprime" => m_prime().into(),
        "E" => e().into(),
        "C3_neq" => {
            let p = c3();
            let pairs: Vec<(u32, u32)> = p.part_groups().values().map(|v| (v[0].0, v[1].0)).collect();
            neq_pairs(p, &pairs).into()
        }
        "Jprime_neq" => {
            // {p, q}, {r1}, {r2}
            let p = plain(vec![vec![0, 1], vec![2], vec![3]], &[], &[(1, 2), (0, 3)]);
            neq_pairs(p, &[(0, 1)]).into()
        }
        "fig1a" => plain(vec![vec![0], vec![1], vec![2]], &[(0, 1)], &[(0, 2), (2, 1)]).into(),
        "fig1b" => plain(vec![vec![0], vec![1], vec![2, 3, 4]], &[(0, 1), (0, 2), (1, 2)], &[(0, 3), (4, 1)]).into(),
        "fig1c" => plain(vec![vec![0], vec![1]], &[(0, 1)], &[(0, 1)]).into(),
        "fig1d" => plain(vec![vec![0], vec![1], vec![2, 3, 4]], &[(0, 2), (1, 2)], &[(0, 3), (4, 1)]).into(),
        _ => return Err(unknown()),
    })
}
