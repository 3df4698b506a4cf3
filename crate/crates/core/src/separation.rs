//! Many-sided separations `(A_1, ..., A_k, C)` and families of them.
//!
//! A separation keeps its sides in the order it was built with; side indices
//! in this module are 0-based positions into [`ManySidedSeparation::sides`].
//! Equality, ordering and hashing ignore side order: two separations are equal
//! when they have the same graph context, the same cutset, and the same
//! multiset of sides. The canonical side order sorts nonempty sides by their
//! minimum vertex (then size, then lexicographically) and puts empty sides last.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Clone)]
pub struct ManySidedSeparation {
    n: usize,
    sides: Vec<VertexSet>,
    cutset: VertexSet,
}

/// Which part of a separation a vertex was found in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Side(usize),
    Cutset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationViolation {
    /// Condition (i): a vertex outside `1..=n`.
    OutsideGraph { vertex: usize },
    /// Condition (ii): a vertex in two parts.
    Overlap { vertex: usize, first: Part, second: Part },
    /// Condition (iii): a vertex of the graph in no part.
    Uncovered { vertex: usize },
    /// Condition (iv): an edge between two sides.
    NotAnticomplete {
        first: usize,
        second: usize,
        edge: (usize, usize),
    },
    /// Strict mode only; a warning rather than a violation.
    EmptySide { side: usize },
}

impl SeparationViolation {
    pub fn is_warning(&self) -> bool {
        matches!(self, SeparationViolation::EmptySide { .. })
    }
}

impl fmt::Display for SeparationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |p: &Part| match p {
            Part::Side(i) => format!("side {}", i + 1),
            Part::Cutset => "cutset".to_string(),
        };
        match self {
            Self::OutsideGraph { vertex } => write!(f, "(i) vertex {vertex} is not in the graph"),
            Self::Overlap { vertex, first, second } => write!(
                f,
                "(ii) vertex {vertex} is in both {} and {}",
                part(first),
                part(second)
            ),
            Self::Uncovered { vertex } => write!(f, "(iii) vertex {vertex} is in no part"),
            Self::NotAnticomplete { first, second, edge } => write!(
                f,
                "(iv) edge {}-{} joins side {} and side {}",
                edge.0,
                edge.1,
                first + 1,
                second + 1
            ),
            Self::EmptySide { side } => write!(f, "warning: side {} is empty", side + 1),
        }
    }
}

/// Outcome of a non-crossing test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonCrossing {
    /// The lexicographically least pair `(i, j)` (0-based) with
    /// `(∪B ∖ B_j) ∪ D ⊆ A_i ∪ C` and `(∪A ∖ A_i) ∪ C ⊆ B_j ∪ D`.
    Witness { i: usize, j: usize },
    Crossing,
}

impl NonCrossing {
    pub fn is_crossing(self) -> bool {
        self == NonCrossing::Crossing
    }
}

impl ManySidedSeparation {
    pub fn new(n: usize, sides: Vec<VertexSet>, cutset: VertexSet) -> Result<Self> {
        if sides.len() < 2 {
            return Err(Error::TooFewSides(sides.len()));
        }
        Ok(ManySidedSeparation { n, sides, cutset })
    }

    pub fn two_sided(n: usize, first: VertexSet, second: VertexSet, cutset: VertexSet) -> Self {
        ManySidedSeparation {
            n,
            sides: vec![first, second],
            cutset,
        }
    }

    /// The separation whose sides are the components of `G ∖ cutset`.
    pub fn from_cutset(g: &Graph, cutset: &VertexSet) -> Result<Self> {
        g.check_range(cutset)?;
        let sides = g.components_unchecked(&g.vertices().difference(cutset));
        if sides.len() < 2 {
            return Err(Error::NotACutset(cutset.to_string()));
        }
        Ok(ManySidedSeparation {
            n: g.n(),
            sides,
            cutset: cutset.clone(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sides(&self) -> &[VertexSet] {
        &self.sides
    }

    pub fn side(&self, i: usize) -> &VertexSet {
        &self.sides[i]
    }

    pub fn cutset(&self) -> &VertexSet {
        &self.cutset
    }

    pub fn k(&self) -> usize {
        self.sides.len()
    }

    /// `A_i ∪ C`.
    pub fn region(&self, i: usize) -> VertexSet {
        self.sides[i].union(&self.cutset)
    }

    /// `(∪_p A_p ∖ A_i) ∪ C`: everything the separation covers except side `i`.
    pub fn rest(&self, i: usize) -> VertexSet {
        let mut out = self.cutset.clone();
        for (p, side) in self.sides.iter().enumerate() {
            if p != i {
                out.union_with(side);
            }
        }
        out
    }

    fn side_key(side: &VertexSet) -> (bool, usize, usize) {
        (side.is_empty(), side.first().unwrap_or(0), side.len())
    }

    fn canonical_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.sides.len()).collect();
        order.sort_by(|&a, &b| {
            let (x, y) = (&self.sides[a], &self.sides[b]);
            Self::side_key(x).cmp(&Self::side_key(y)).then_with(|| x.cmp(y))
        });
        order
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_order().iter().enumerate().all(|(a, &b)| a == b)
    }

    /// Copy with sides in canonical order.
    pub fn canonical(&self) -> Self {
        let sides = self
            .canonical_order()
            .into_iter()
            .map(|i| self.sides[i].clone())
            .collect();
        ManySidedSeparation {
            n: self.n,
            sides,
            cutset: self.cutset.clone(),
        }
    }

    fn check_context(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::ContextMismatch {
                expected: n,
                found: self.n,
            });
        }
        Ok(())
    }

    /// All violated conditions (i)-(iv); empty when valid.
    pub fn validate(&self, g: &Graph) -> Result<Vec<SeparationViolation>> {
        self.check_context(g.n())?;
        let mut out = Vec::new();
        let parts: Vec<(Part, &VertexSet)> = self
            .sides
            .iter()
            .enumerate()
            .map(|(i, s)| (Part::Side(i), s))
            .chain(std::iter::once((Part::Cutset, &self.cutset)))
            .collect();

        let mut all = VertexSet::new();
        for (_, set) in &parts {
            all.union_with(set);
        }
        for vertex in all.iter().filter(|&v| v == 0 || v > g.n()) {
            out.push(SeparationViolation::OutsideGraph { vertex });
        }
        for vertex in all.iter() {
            let mut holders = parts.iter().filter(|(_, s)| s.contains(vertex)).map(|p| p.0);
            if let (Some(first), Some(second)) = (holders.next(), holders.next()) {
                out.push(SeparationViolation::Overlap {
                    vertex,
                    first,
                    second,
                });
            }
        }
        for vertex in g.vertices().difference(&all).iter() {
            out.push(SeparationViolation::Uncovered { vertex });
        }
        for first in 0..self.k() {
            for second in first + 1..self.k() {
                if let Some(edge) = g.edge_between(&self.sides[first], &self.sides[second]) {
                    out.push(SeparationViolation::NotAnticomplete {
                        first,
                        second,
                        edge,
                    });
                }
            }
        }
        Ok(out)
    }

    /// [`ManySidedSeparation::validate`] plus an `EmptySide` warning per empty side.
    pub fn validate_strict(&self, g: &Graph) -> Result<Vec<SeparationViolation>> {
        let mut out = self.validate(g)?;
        for (side, s) in self.sides.iter().enumerate() {
            if s.is_empty() {
                out.push(SeparationViolation::EmptySide { side });
            }
        }
        Ok(out)
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.validate(g).is_ok_and(|v| v.is_empty())
    }

    pub fn noncrossing(&self, other: &Self) -> Result<NonCrossing> {
        self.check_context(other.n)?;
        let regions_a: Vec<_> = (0..self.k()).map(|i| self.region(i)).collect();
        let rests_a: Vec<_> = (0..self.k()).map(|i| self.rest(i)).collect();
        let regions_b: Vec<_> = (0..other.k()).map(|j| other.region(j)).collect();
        let rests_b: Vec<_> = (0..other.k()).map(|j| other.rest(j)).collect();
        for i in 0..self.k() {
            for j in 0..other.k() {
                if rests_b[j].is_subset(&regions_a[i]) && rests_a[i].is_subset(&regions_b[j]) {
                    return Ok(NonCrossing::Witness { i, j });
                }
            }
        }
        Ok(NonCrossing::Crossing)
    }

    /// The separation projection: one 2-sided separation per side, isolating
    /// that side against the union of the others.
    pub fn project(&self) -> SeparationFamily {
        let mut family = SeparationFamily::new(self.n);
        for i in 0..self.k() {
            let others = self
                .sides
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != i)
                .fold(VertexSet::new(), |acc, (_, s)| acc.union(s));
            family.insert_unchecked(ManySidedSeparation::two_sided(
                self.n,
                self.sides[i].clone(),
                others,
                self.cutset.clone(),
            ));
        }
        family
    }

    /// `(∪_{i∈I} A_i, ∪_{j∉I} A_j, C)` for a proper nonempty index set `I`.
    pub fn coarsen(&self, indices: &[usize]) -> Result<Self> {
        let chosen: BTreeSet<usize> = indices.iter().copied().collect();
        let bad = chosen.is_empty()
            || chosen.len() >= self.k()
            || chosen.iter().any(|&i| i >= self.k());
        if bad {
            return Err(Error::BadIndexSet {
                indices: indices.to_vec(),
                sides: self.k(),
            });
        }
        let (mut inside, mut outside) = (VertexSet::new(), VertexSet::new());
        for (i, side) in self.sides.iter().enumerate() {
            if chosen.contains(&i) {
                inside.union_with(side);
            } else {
                outside.union_with(side);
            }
        }
        Ok(ManySidedSeparation::two_sided(
            self.n,
            inside,
            outside,
            self.cutset.clone(),
        ))
    }
}

impl PartialEq for ManySidedSeparation {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ManySidedSeparation {}

impl Ord for ManySidedSeparation {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.canonical_order(), other.canonical_order());
        self.n
            .cmp(&other.n)
            .then_with(|| {
                a.iter()
                    .map(|&i| &self.sides[i])
                    .cmp(b.iter().map(|&j| &other.sides[j]))
            })
            .then_with(|| self.cutset.cmp(&other.cutset))
    }
}

impl PartialOrd for ManySidedSeparation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for ManySidedSeparation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        for i in self.canonical_order() {
            self.sides[i].hash(state);
        }
        self.cutset.hash(state);
    }
}

impl fmt::Display for ManySidedSeparation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for side in &self.sides {
            write!(f, "{side},")?;
        }
        write!(f, "{})", self.cutset)
    }
}

impl fmt::Debug for ManySidedSeparation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A duplicate-free set of canonical separations over one graph context,
/// kept sorted in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeparationFamily {
    n: usize,
    members: Vec<ManySidedSeparation>,
}

impl SeparationFamily {
    pub fn new(n: usize) -> Self {
        SeparationFamily {
            n,
            members: Vec::new(),
        }
    }

    pub fn from_members(
        n: usize,
        members: impl IntoIterator<Item = ManySidedSeparation>,
    ) -> Result<Self> {
        let mut family = Self::new(n);
        for s in members {
            family.insert(s)?;
        }
        Ok(family)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[ManySidedSeparation] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ManySidedSeparation> {
        self.members.iter()
    }

    pub fn contains(&self, s: &ManySidedSeparation) -> bool {
        self.members.binary_search(s).is_ok()
    }

    /// Inserts the canonical form of `s`; returns false for a duplicate.
    pub fn insert(&mut self, s: ManySidedSeparation) -> Result<bool> {
        s.check_context(self.n)?;
        Ok(self.insert_unchecked(s))
    }

    fn insert_unchecked(&mut self, s: ManySidedSeparation) -> bool {
        match self.members.binary_search(&s) {
            Ok(_) => false,
            Err(at) => {
                self.members.insert(at, s.canonical());
                true
            }
        }
    }

    /// The first crossing pair `(a, b)`, `a < b`, as member indices.
    pub fn first_crossing(&self) -> Option<(usize, usize)> {
        for a in 0..self.members.len() {
            for b in a + 1..self.members.len() {
                if self.members[a]
                    .noncrossing(&self.members[b])
                    .expect("uniform context")
                    .is_crossing()
                {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_laminar(&self) -> bool {
        self.first_crossing().is_none()
    }

    /// `Err(NotLaminar)` naming the first crossing pair.
    pub fn require_laminar(&self) -> Result<()> {
        match self.first_crossing() {
            Some((a, b)) => Err(Error::NotLaminar(
                self.members[a].to_string(),
                self.members[b].to_string(),
            )),
            None => Ok(()),
        }
    }

    pub fn project(&self) -> SeparationFamily {
        let mut out = SeparationFamily::new(self.n);
        for s in &self.members {
            for t in s.project().members {
                out.insert_unchecked(t);
            }
        }
        out
    }

    /// Every member's violations, tagged by member index.
    pub fn validate(&self, g: &Graph) -> Result<Vec<(usize, SeparationViolation)>> {
        let mut out = Vec::new();
        for (m, s) in self.members.iter().enumerate() {
            out.extend(s.validate(g)?.into_iter().map(|v| (m, v)));
        }
        Ok(out)
    }
}

impl<'a> IntoIterator for &'a SeparationFamily {
    type Item = &'a ManySidedSeparation;
    type IntoIter = std::slice::Iter<'a, ManySidedSeparation>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
