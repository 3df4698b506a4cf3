use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::separation::{ManySidedSeparation, SeparationFamily};

pub const BRUTEFORCE_MAX_N: usize = 9;

type Set = BTreeSet<usize>;

fn plain(set: &crate::vertex_set::VertexSet) -> Set {
    set.iter().collect()
}

/// Non-crossing of two 2-sided separations read directly off the
/// definition: some `i, j` in `{1, 2}` with `A_{3-i} ∪ C ⊆ B_j ∪ D` and
/// `B_{3-j} ∪ D ⊆ A_i ∪ C`.
pub fn noncrossing_2sided_reference(
    s1: &ManySidedSeparation,
    s2: &ManySidedSeparation,
) -> Result<bool> {
    for s in [s1, s2] {
        if s.k() != 2 {
            return Err(Error::NotTwoSided(s.k()));
        }
    }
    let a = [plain(s1.side(0)), plain(s1.side(1))];
    let b = [plain(s2.side(0)), plain(s2.side(1))];
    let (c, d) = (plain(s1.cutset()), plain(s2.cutset()));
    for i in 0..2 {
        for j in 0..2 {
            let a_other: Set = a[1 - i].union(&c).copied().collect();
            let b_region: Set = b[j].union(&d).copied().collect();
            let b_other: Set = b[1 - j].union(&d).copied().collect();
            let a_region: Set = a[i].union(&c).copied().collect();
            if a_other.is_subset(&b_region) && b_other.is_subset(&a_region) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn adjacency(g: &Graph) -> Vec<Set> {
    let mut adj = vec![Set::new(); g.n() + 1];
    for &(u, v) in g.edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    adj
}

/// Components of `G[keep]` by breadth-first search.
pub fn components_reference(g: &Graph, keep: &Set) -> Vec<Set> {
    let adj = adjacency(g);
    let mut seen = Set::new();
    let mut out = Vec::new();
    for &start in keep {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = Set::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if keep.contains(&w) && seen.insert(w) {
                    comp.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

fn remainder_components(g: &Graph, removed: &Set) -> usize {
    let keep: Set = (1..=g.n()).filter(|v| !removed.contains(v)).collect();
    components_reference(g, &keep).len()
}

/// `(is a cutset, is a minimal cutset)` by the definition: a cutset leaves at
/// least two components, and a minimal one has no proper subset that leaves
/// the graph disconnected.
pub fn minimal_cutset_by_subsets(g: &Graph, cutset: &Set) -> (bool, bool) {
    if remainder_components(g, cutset) < 2 {
        return (false, false);
    }
    let members: Vec<usize> = cutset.iter().copied().collect();
    let proper_subsets = (0u64..(1 << members.len()) - 1).map(|mask| {
        members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect::<Set>()
    });
    let minimal = proper_subsets
        .into_iter()
        .all(|sub| remainder_components(g, &sub) <= 1);
    (true, minimal)
}

/// Every many-sided separation of `g` with nonempty sides, found by
/// enumerating all ways to split the vertices into a cutset and an unordered
/// collection of at least two pairwise anticomplete blocks.
pub fn enum_mseps_bruteforce(g: &Graph) -> Result<SeparationFamily> {
    if g.n() > BRUTEFORCE_MAX_N {
        return Err(Error::TooLarge {
            what: format!("separation enumeration on {} vertices", g.n()),
            limit: BRUTEFORCE_MAX_N,
        });
    }
    let adj = adjacency(g);
    let mut labels = vec![0usize; g.n() + 1];
    let mut family = SeparationFamily::new(g.n());
    assign(g, &adj, 1, 0, &mut labels, &mut family);
    Ok(family)
}

// label 0 = cutset, label b >= 1 = block b; blocks are numbered in order of
// first use so each unordered split is produced once
fn assign(
    g: &Graph,
    adj: &[Set],
    v: usize,
    blocks: usize,
    labels: &mut Vec<usize>,
    family: &mut SeparationFamily,
) {
    if v > g.n() {
        if blocks >= 2 {
            let mut sides = vec![crate::vertex_set::VertexSet::new(); blocks];
            let mut cutset = crate::vertex_set::VertexSet::new();
            for (u, &label) in labels.iter().enumerate().skip(1) {
                match label {
                    0 => cutset.insert(u),
                    b => sides[b - 1].insert(u),
                };
            }
            let s = ManySidedSeparation::new(g.n(), sides, cutset).expect("at least two sides");
            family.insert(s).expect("same context");
        }
        return;
    }
    for label in 0..=blocks + 1 {
        let clash = label != 0
            && adj[v]
                .iter()
                .any(|&u| u < v && labels[u] != 0 && labels[u] != label);
        if clash {
            continue;
        }
        labels[v] = label;
        assign(g, adj, v + 1, blocks.max(label), labels, family);
    }
    labels[v] = 0;
}

/// Deciduousness by its definition: every leaf-to-leaf path has even length.
pub fn deciduous_by_paths(nodes: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let leaves: Vec<usize> = (0..nodes).filter(|&t| adj[t].len() <= 1).collect();
    leaves.iter().all(|&from| {
        let mut dist = vec![usize::MAX; nodes];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(t) = queue.pop_front() {
            for &s in &adj[t] {
                if dist[s] == usize::MAX {
                    dist[s] = dist[t] + 1;
                    queue.push_back(s);
                }
            }
        }
        leaves.iter().all(|&to| dist[to] % 2 == 0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex_set::VertexSet;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    fn sep(n: usize, sides: &[&[usize]], c: &[usize]) -> ManySidedSeparation {
        let sides = sides.iter().map(|s| s.iter().copied().collect()).collect();
        ManySidedSeparation::new(n, sides, c.iter().copied().collect()).unwrap()
    }

    #[test]
    fn reference_noncrossing_examples() {
        let nested = (sep(5, &[&[1], &[3, 4, 5]], &[2]), sep(5, &[&[1, 2, 3], &[5]], &[4]));
        assert!(noncrossing_2sided_reference(&nested.0, &nested.1).unwrap());
        let c4 = (sep(4, &[&[2], &[4]], &[1, 3]), sep(4, &[&[1], &[3]], &[2, 4]));
        assert!(!noncrossing_2sided_reference(&c4.0, &c4.1).unwrap());
        assert!(noncrossing_2sided_reference(&c4.0, &c4.0).unwrap());
        let star = sep(4, &[&[2], &[3], &[4]], &[1]);
        assert!(matches!(
            noncrossing_2sided_reference(&star, &c4.0),
            Err(Error::NotTwoSided(3))
        ));
    }

    #[test]
    fn bruteforce_counts() {
        assert_eq!(
            enum_mseps_bruteforce(&path(3)).unwrap().members(),
            &[sep(3, &[&[1], &[3]], &[2])]
        );
        // P4 has five: cutsets {2}, {3}, {2,3}, {1,3}, {2,4}
        let p4 = enum_mseps_bruteforce(&path(4)).unwrap();
        let cutsets: BTreeSet<VertexSet> = p4.iter().map(|s| s.cutset().clone()).collect();
        assert_eq!(
            cutsets,
            BTreeSet::from([[2].into(), [3].into(), [2, 3].into(), [1, 3].into(), [2, 4].into()])
        );
        assert_eq!(p4.len(), 5);
        let k3 = Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(enum_mseps_bruteforce(&k3).unwrap().is_empty());
        assert!(matches!(enum_mseps_bruteforce(&path(10)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn bruteforce_includes_many_sided() {
        let star = Graph::new(4, [(1, 2), (1, 3), (1, 4)]).unwrap();
        let all = enum_mseps_bruteforce(&star).unwrap();
        assert!(all.contains(&sep(4, &[&[2], &[3], &[4]], &[1])));
        assert!(all.iter().all(|s| s.is_valid(&star)));
    }

    #[test]
    fn definitional_minimal_cutset() {
        let p5 = path(5);
        assert_eq!(minimal_cutset_by_subsets(&p5, &Set::from([2, 4])), (true, false));
        assert_eq!(minimal_cutset_by_subsets(&p5, &Set::from([3])), (true, true));
        assert_eq!(minimal_cutset_by_subsets(&p5, &Set::new()), (false, false));
    }

    #[test]
    fn path_parity() {
        assert!(deciduous_by_paths(1, &[]));
        assert!(!deciduous_by_paths(2, &[(0, 1)]));
        assert!(deciduous_by_paths(3, &[(0, 1), (1, 2)]));
        assert!(deciduous_by_paths(4, &[(0, 1), (1, 2), (1, 3)]));
        assert!(!deciduous_by_paths(4, &[(0, 1), (1, 2), (2, 3)]));
    }
}
