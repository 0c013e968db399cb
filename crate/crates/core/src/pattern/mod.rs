//! Patterns: points grouped into parts, joined by positive and negative edges.
//!
//! A pattern generalises the microstructure of a binary CSP instance. Points
//! stand for candidate assignments, parts for variables, positive edges for
//! compatible pairs and negative edges for incompatible ones. Unlike a
//! microstructure, a pattern need not be complete: a cross-part pair may carry
//! no edge at all, or both kinds at once.

mod augmented;
mod catalogue;
mod graph;
mod instance;

pub use augmented::{
    instance_relation, AnyPattern, AugmentedPattern, OperationTable, Relation, RelationKind, RelationSpec,
};
pub use catalogue::{make_named, make_p2_extension, make_pivot, make_pivot_neq, polymorphism_pattern, NAMED_PATTERNS};
pub use graph::{pattern_from_graph, Graph};
pub use instance::{pattern_from_instance, Instance, Value, Var};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Opaque point identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub u32);

/// A part, named by its representative (smallest) point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Part(pub u32);

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Unordered point pair, stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Point, Point);

impl Edge {
    pub fn new(a: Point, b: Point) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn ends(self) -> (Point, Point) {
        (self.0, self.1)
    }

    pub fn contains(self, p: Point) -> bool {
        self.0 == p || self.1 == p
    }

    /// The endpoint opposite `p`. Panics if `p` is not an endpoint.
    pub fn other(self, p: Point) -> Point {
        if self.0 == p {
            self.1
        } else {
            assert_eq!(self.1, p, "point is not an endpoint of this edge");
            self.0
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("edge ({0}, {1}) joins two points of the same part")]
    SamePartEdge(Point, Point),
    #[error("unknown point {0}")]
    UnknownPoint(Point),
    #[error("point {0} is listed in more than one part")]
    DuplicatePoint(Point),
    #[error("unknown part {0}")]
    UnknownPart(Part),
    #[error("cannot subdivide part {0} against itself")]
    SamePart(Part),
    #[error("unknown named pattern {0:?}")]
    UnknownName(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("relation arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("operation table does not cover value {value} of variable {var}")]
    PartialTable { var: usize, value: u32 },
    #[error("malformed operation table: {0}")]
    BadTable(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("unknown vertex {0}")]
    UnknownVertex(u32),
}

/// A pattern `<X, E~, E+, E->` with parts stored as a representative map.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Pattern {
    part_of: BTreeMap<Point, Part>,
    positive: BTreeSet<Edge>,
    negative: BTreeSet<Edge>,
}

impl Pattern {
    /// Builds a pattern from explicit part lists. Empty parts are dropped.
    pub fn new<P, E1, E2>(parts: P, positive: E1, negative: E2) -> Result<Self, PatternError>
    where
        P: IntoIterator,
        P::Item: IntoIterator<Item = Point>,
        E1: IntoIterator<Item = (Point, Point)>,
        E2: IntoIterator<Item = (Point, Point)>,
    {
        let mut part_of = BTreeMap::new();
        for part in parts {
            let pts: Vec<Point> = part.into_iter().collect();
            let Some(&rep) = pts.iter().min() else {
                continue;
            };
            for p in pts {
                if part_of.insert(p, Part(rep.0)).is_some() {
                    return Err(PatternError::DuplicatePoint(p));
                }
            }
        }
        let mut pattern = Pattern { part_of, ..Default::default() };
        for (a, b) in positive {
            pattern.check_edge(a, b)?;
            pattern.positive.insert(Edge::new(a, b));
        }
        for (a, b) in negative {
            pattern.check_edge(a, b)?;
            pattern.negative.insert(Edge::new(a, b));
        }
        Ok(pattern)
    }

    /// Builds a pattern from a point list and an arbitrary point-to-label map;
    /// points sharing a label form one part.
    pub fn from_part_map<L: Ord>(
        points: impl IntoIterator<Item = Point>,
        part_of: &BTreeMap<Point, L>,
        positive: impl IntoIterator<Item = (Point, Point)>,
        negative: impl IntoIterator<Item = (Point, Point)>,
    ) -> Result<Self, PatternError> {
        let mut groups: BTreeMap<&L, Vec<Point>> = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for p in points {
            let label = part_of.get(&p).ok_or(PatternError::UnknownPoint(p))?;
            if !seen.insert(p) {
                return Err(PatternError::DuplicatePoint(p));
            }
            groups.entry(label).or_default().push(p);
        }
        if let Some(extra) = part_of.keys().find(|p| !seen.contains(p)) {
            return Err(PatternError::UnknownPoint(*extra));
        }
        Pattern::new(groups.into_values(), positive, negative)
    }

    fn check_edge(&self, a: Point, b: Point) -> Result<(), PatternError> {
        let pa = self.part_of.get(&a).ok_or(PatternError::UnknownPoint(a))?;
        let pb = self.part_of.get(&b).ok_or(PatternError::UnknownPoint(b))?;
        if pa == pb {
            return Err(PatternError::SamePartEdge(a, b));
        }
        Ok(())
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.part_of.keys().copied()
    }

    pub fn num_points(&self) -> usize {
        self.part_of.len()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.part_of.contains_key(&p)
    }

    pub fn part_of(&self, p: Point) -> Option<Part> {
        self.part_of.get(&p).copied()
    }

    /// Parts in ascending representative order.
    pub fn parts(&self) -> Vec<Part> {
        let set: BTreeSet<Part> = self.part_of.values().copied().collect();
        set.into_iter().collect()
    }

    pub fn num_parts(&self) -> usize {
        self.parts().len()
    }

    /// Points of `part`, ascending.
    pub fn part_points(&self, part: Part) -> Vec<Point> {
        self.part_of.iter().filter(|(_, &q)| q == part).map(|(&p, _)| p).collect()
    }

    /// Part-to-points grouping, ascending on both levels.
    pub fn part_groups(&self) -> BTreeMap<Part, Vec<Point>> {
        let mut groups: BTreeMap<Part, Vec<Point>> = BTreeMap::new();
        for (&p, &part) in &self.part_of {
            groups.entry(part).or_default().push(p);
        }
        groups
    }

    pub fn positive(&self) -> &BTreeSet<Edge> {
        &self.positive
    }

    pub fn negative(&self) -> &BTreeSet<Edge> {
        &self.negative
    }

    pub fn is_positive(&self, a: Point, b: Point) -> bool {
        self.positive.contains(&Edge::new(a, b))
    }

    pub fn is_negative(&self, a: Point, b: Point) -> bool {
        self.negative.contains(&Edge::new(a, b))
    }

    pub fn same_part(&self, a: Point, b: Point) -> bool {
        matches!((self.part_of(a), self.part_of(b)), (Some(x), Some(y)) if x == y)
    }

    pub fn is_negative_pattern(&self) -> bool {
        self.positive.is_empty()
    }

    pub fn max_point(&self) -> Option<Point> {
        self.part_of.keys().next_back().copied()
    }

    /// Pairs carrying both a positive and a negative edge.
    pub fn both_kinds(&self) -> impl Iterator<Item = Edge> + '_ {
        self.positive.intersection(&self.negative).copied()
    }

    /// Copy of this pattern with every positive edge removed.
    pub fn negative_reduct(&self) -> Pattern {
        Pattern { part_of: self.part_of.clone(), positive: BTreeSet::new(), negative: self.negative.clone() }
    }

    /// Unordered part pairs joined by at least one edge of either kind.
    pub fn edge_part_pairs(&self) -> BTreeSet<(Part, Part)> {
        self.positive
            .iter()
            .chain(self.negative.iter())
            .map(|e| {
                let (a, b) = e.ends();
                let (pa, pb) = (self.part_of[&a], self.part_of[&b]);
                if pa < pb {
                    (pa, pb)
                } else {
                    (pb, pa)
                }
            })
            .collect()
    }

    /// True iff every cross-part pair carries exactly one edge kind.
    pub fn is_complete(&self) -> bool {
        let pts: Vec<(Point, Part)> = self.part_of.iter().map(|(&p, &q)| (p, q)).collect();
        for (i, &(a, pa)) in pts.iter().enumerate() {
            for &(b, pb) in &pts[i + 1..] {
                if pa == pb {
                    continue;
                }
                if self.is_positive(a, b) == self.is_negative(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Subdivision at parts `u`, `v`.
    ///
    /// Each positive edge `x-y` between the parts becomes `x-z-y`; each
    /// negative edge becomes `x-z'` and `z''-y`. All fresh points form one new
    /// part. Returns the new pattern and the new part, or the pattern unchanged
    /// and `None` when no edge joins the two parts.
    pub fn subdivide(&self, u: Part, v: Part) -> Result<(Pattern, Option<Part>), PatternError> {
        let parts = self.parts();
        for p in [u, v] {
            if !parts.contains(&p) {
                return Err(PatternError::UnknownPart(p));
            }
        }
        if u == v {
            return Err(PatternError::SamePart(u));
        }
        let crosses = |e: &Edge| {
            let (a, b) = e.ends();
            let (pa, pb) = (self.part_of[&a], self.part_of[&b]);
            (pa == u && pb == v) || (pa == v && pb == u)
        };
        let pos: Vec<Edge> = self.positive.iter().copied().filter(crosses).collect();
        let neg: Vec<Edge> = self.negative.iter().copied().filter(crosses).collect();
        if pos.is_empty() && neg.is_empty() {
            return Ok((self.clone(), None));
        }
        // orient each edge as (point in u, point in v)
        let orient = |e: Edge| {
            let (a, b) = e.ends();
            if self.part_of[&a] == u {
                (a, b)
            } else {
                (b, a)
            }
        };
        let mut next = self.max_point().map_or(0, |p| p.0 + 1);
        let new_part = Part(next);
        let mut fresh = || {
            let p = Point(next);
            next += 1;
            p
        };
        let mut out = self.clone();
        for e in pos {
            let (x, y) = orient(e);
            let z = fresh();
            out.part_of.insert(z, new_part);
            out.positive.remove(&e);
            out.positive.insert(Edge::new(x, z));
            out.positive.insert(Edge::new(z, y));
        }
        for e in neg {
            let (x, y) = orient(e);
            let z1 = fresh();
            let z2 = fresh();
            out.part_of.insert(z1, new_part);
            out.part_of.insert(z2, new_part);
            out.negative.remove(&e);
            out.negative.insert(Edge::new(x, z1));
            out.negative.insert(Edge::new(z2, y));
        }
        Ok((out, Some(new_part)))
    }

    /// Renames points through `map`; parts follow their points.
    pub fn relabel(&self, map: &BTreeMap<Point, Point>) -> Result<Pattern, PatternError> {
        let groups = self.part_groups();
        let image = |p: &Point| map.get(p).copied().ok_or(PatternError::UnknownPoint(*p));
        let parts: Result<Vec<Vec<Point>>, _> = groups.values().map(|pts| pts.iter().map(image).collect()).collect();
        let pos: Result<Vec<_>, _> = self.positive.iter().map(|e| Ok((image(&e.0)?, image(&e.1)?))).collect();
        let neg: Result<Vec<_>, _> = self.negative.iter().map(|e| Ok((image(&e.0)?, image(&e.1)?))).collect();
        Pattern::new(parts?, pos?, neg?)
    }

    /// Negative edges incident to `p`.
    pub fn negative_degree(&self, p: Point) -> usize {
        self.negative.iter().filter(|e| e.contains(p)).count()
    }
}

/// Validating constructor mirroring the `(points, part_of, positive, negative)` form.
pub fn make_pattern<L: Ord>(
    points: impl IntoIterator<Item = Point>,
    part_of: &BTreeMap<Point, L>,
    positive: impl IntoIterator<Item = (Point, Point)>,
    negative: impl IntoIterator<Item = (Point, Point)>,
) -> Result<Pattern, PatternError> {
    Pattern::from_part_map(points, part_of, positive, negative)
}

/// Shorthand for building point ids in tests and catalogues.
pub(crate) fn pts<const N: usize>(ids: [u32; N]) -> [Point; N] {
    ids.map(Point)
}
