//! Deciduous tree decompositions from laminar families.
//!
//! Every (member, side) pair is a [`Flag`]. Two flags of different members
//! face each other when each member lies in the other's flagged side and no
//! third member sits on the way between them; facing flags are merged into
//! [`LocationClass`]es. The decomposition has one center node per member
//! (bag = its cutset) and one outer node per class (bag = the intersection of
//! the flagged regions), with a center joined to the classes of its flags.
//! The result is always re-validated before it is returned.

use serde_json::json;

use crate::certificate::Certificate;
use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::separation::{ManySidedSeparation, NonCrossing, SeparationFamily};
use crate::vertex_set::VertexSet;

/// A side `side` of family member `member`, both 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag {
    pub member: usize,
    pub side: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocationClass {
    pub flags: Vec<Flag>,
    pub region: VertexSet,
}

/// The smallest side `i` of `s` whose region `A_i ∪ C` contains
/// `(∪B ∖ B_j) ∪ D` for some side `j` of `other`.
pub fn side_of(s: &ManySidedSeparation, other: &ManySidedSeparation) -> Result<usize> {
    if s.noncrossing(other)?.is_crossing() {
        return Err(Error::CrossingPair(s.to_string(), other.to_string()));
    }
    let rests: Vec<VertexSet> = (0..other.k()).map(|j| other.rest(j)).collect();
    (0..s.k())
        .find(|&i| {
            let region = s.region(i);
            rests.iter().any(|r| r.is_subset(&region))
        })
        .ok_or_else(|| Error::CrossingPair(s.to_string(), other.to_string()))
}

/// The first `(member, side)` in canonical order whose region holds the core
/// of every other member. Such a pair exists in every nonempty laminar family.
pub fn find_outermost(f: &SeparationFamily) -> Result<(usize, usize)> {
    f.require_laminar()?;
    let members = f.members();
    let rests: Vec<Vec<VertexSet>> = members
        .iter()
        .map(|s| (0..s.k()).map(|j| s.rest(j)).collect())
        .collect();
    for (m, s) in members.iter().enumerate() {
        for i in 0..s.k() {
            let region = s.region(i);
            let holds_all = (0..members.len())
                .filter(|&o| o != m)
                .all(|o| rests[o].iter().any(|r| r.is_subset(&region)));
            if holds_all {
                return Ok((m, i));
            }
        }
    }
    Err(Error::InternalInvariant(Box::new(Certificate::new(
        "find-outermost",
        None,
        f,
        json!({ "problem": "laminar family without an outermost side" }),
    ))))
}

/// `matrix[m][o]` is the side of member `m` facing member `o`; the diagonal
/// is unused. Both orientations of a pair come from one non-crossing witness
/// `(i, j)`, so that when `o` fits in several sides of `m` (possible when the
/// core of `o` lies inside the cutset of `m`) the choice agrees with the side
/// of `o` facing `m`.
fn side_matrix(f: &SeparationFamily) -> Result<Vec<Vec<usize>>> {
    let members = f.members();
    let mut matrix = vec![vec![0; members.len()]; members.len()];
    for (m, s) in members.iter().enumerate() {
        for (o, other) in members.iter().enumerate().skip(m + 1) {
            match s.noncrossing(other)? {
                NonCrossing::Witness { i, j } => {
                    matrix[m][o] = i;
                    matrix[o][m] = j;
                }
                NonCrossing::Crossing => {
                    return Err(Error::NotLaminar(s.to_string(), other.to_string()))
                }
            }
        }
    }
    Ok(matrix)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, a: usize) -> usize {
        let mut root = a;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut at = a;
        while self.0[at] != root {
            at = std::mem::replace(&mut self.0[at], root);
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Location classes of `f`, ordered by their smallest flag.
pub fn locations(f: &SeparationFamily) -> Result<Vec<LocationClass>> {
    f.require_laminar()?;
    let members = f.members();
    if members.is_empty() {
        return Ok(vec![LocationClass {
            flags: vec![],
            region: VertexSet::full(f.n()),
        }]);
    }
    let side = side_matrix(f)?;

    let mut offsets = Vec::with_capacity(members.len());
    let mut flags = Vec::new();
    for (member, s) in members.iter().enumerate() {
        offsets.push(flags.len());
        flags.extend((0..s.k()).map(|side| Flag { member, side }));
    }
    let mut classes = UnionFind((0..flags.len()).collect());

    for m in 0..members.len() {
        for o in m + 1..members.len() {
            let (i, j) = (side[m][o], side[o][m]);
            // a third member strictly between m and o separates them and
            // lies in side i of m and side j of o
            let blocked = (0..members.len()).any(|b| {
                b != m
                    && b != o
                    && side[m][b] == i
                    && side[o][b] == j
                    && side[b][m] != side[b][o]
            });
            if !blocked {
                classes.union(offsets[m] + i, offsets[o] + j);
            }
        }
    }

    let mut grouped: Vec<Vec<Flag>> = Vec::new();
    let mut slot = vec![usize::MAX; flags.len()];
    for (id, &flag) in flags.iter().enumerate() {
        let root = classes.find(id);
        if slot[root] == usize::MAX {
            slot[root] = grouped.len();
            grouped.push(Vec::new());
        }
        grouped[slot[root]].push(flag);
    }

    grouped
        .into_iter()
        .map(|flags| {
            let mut region = VertexSet::full(f.n());
            let mut last_member = None;
            for flag in &flags {
                if last_member == Some(flag.member) {
                    return Err(Error::InternalInvariant(Box::new(Certificate::new(
                        "locations",
                        None,
                        f,
                        json!({
                            "problem": "two flags of one member share a location",
                            "flags": flag_pairs(&flags),
                        }),
                    ))));
                }
                last_member = Some(flag.member);
                region = region.intersection(&members[flag.member].region(flag.side));
            }
            Ok(LocationClass { flags, region })
        })
        .collect()
}

fn flag_pairs(flags: &[Flag]) -> Vec<[usize; 2]> {
    flags.iter().map(|f| [f.member + 1, f.side + 1]).collect()
}

/// Builds a deciduous tree decomposition of `g` whose `tau_star` is `f`.
///
/// Nodes `0..f.len()` are the centers (member order), followed by one node per
/// location class. Any failure of the post-validation is reported as
/// `InternalInvariant` with a certificate.
pub fn build_deciduous_td(g: &Graph, f: &SeparationFamily) -> Result<TreeDecomposition> {
    if f.n() != g.n() {
        return Err(Error::ContextMismatch {
            expected: g.n(),
            found: f.n(),
        });
    }
    if let Some((m, violation)) = f.validate(g)?.into_iter().next() {
        return Err(Error::InvalidSeparation(format!(
            "{}: {violation}",
            f.members()[m]
        )));
    }
    let classes = locations(f)?;
    let members = f.members();

    let mut class_of = Vec::with_capacity(members.len());
    for s in members {
        class_of.push(vec![usize::MAX; s.k()]);
    }
    for (c, class) in classes.iter().enumerate() {
        for flag in &class.flags {
            class_of[flag.member][flag.side] = c;
        }
    }

    let mut bags: Vec<VertexSet> = members.iter().map(|s| s.cutset().clone()).collect();
    bags.extend(classes.iter().map(|c| c.region.clone()));
    let edges: Vec<(usize, usize)> = class_of
        .iter()
        .enumerate()
        .flat_map(|(m, sides)| sides.iter().map(move |&c| (m, members.len() + c)))
        .collect();

    let certificate = |problems: Vec<String>| {
        let classes: Vec<_> = classes
            .iter()
            .map(|c| json!({ "flags": flag_pairs(&c.flags), "region": c.region }))
            .collect();
        Error::InternalInvariant(Box::new(Certificate::new(
            "build-deciduous-td",
            Some(g),
            f,
            json!({
                "problems": problems,
                "classes": classes,
                "bags": bags,
                "tree_edges": edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect::<Vec<_>>(),
            }),
        )))
    };

    let td = match TreeDecomposition::new(g.n(), bags.clone(), edges.clone()) {
        Ok(td) => td,
        Err(e) => return Err(certificate(vec![e.to_string()])),
    };
    let violations = td.validate(g)?;
    if !violations.is_empty() {
        return Err(certificate(violations.iter().map(|v| v.to_string()).collect()));
    }
    match td.leaf_bipartition() {
        Ok(split) if split.x == (0..members.len()).collect::<Vec<_>>() => {}
        Ok(split) => {
            return Err(certificate(vec![format!(
                "center nodes {:?} are not the deciduous X class",
                split.x
            )]))
        }
        Err(e) => return Err(certificate(vec![e.to_string()])),
    }
    match td.tau_star(g) {
        Ok(back) if back == *f => Ok(td),
        Ok(back) => Err(certificate(vec![format!(
            "tau_star of the result is {:?}",
            back.members()
        )])),
        Err(e) => Err(certificate(vec![e.to_string()])),
    }
}
