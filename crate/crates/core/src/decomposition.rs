//! Tree decompositions, deciduous trees and the separation maps `tau`
//! (one 2-sided separation per tree edge) and `tau_star` (one many-sided
//! separation per center node).
//!
//! Tree nodes are 0-based indices into the bag list.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::separation::{ManySidedSeparation, SeparationFamily};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    n: usize,
    bags: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TdViolation {
    NotATree(String),
    BagOutOfRange { node: usize, vertex: usize },
    /// Condition (i).
    UncoveredVertex(usize),
    /// Condition (ii).
    UncoveredEdge(usize, usize),
    /// Condition (iii).
    DisconnectedSupport(usize),
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::NotATree(why) => write!(f, "not a tree: {why}"),
            TdViolation::BagOutOfRange { node, vertex } => {
                write!(f, "bag {} holds vertex {vertex} outside the graph", node + 1)
            }
            TdViolation::UncoveredVertex(v) => write!(f, "(i) vertex {v} is in no bag"),
            TdViolation::UncoveredEdge(u, v) => write!(f, "(ii) edge {u}-{v} is in no bag"),
            TdViolation::DisconnectedSupport(v) => {
                write!(f, "(iii) the bags holding vertex {v} are not connected")
            }
        }
    }
}

/// Proper 2-coloring of a deciduous tree with every leaf in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl TreeDecomposition {
    /// Checks only that there is at least one node and that edges reference
    /// existing, distinct nodes. Tree shape and conditions (i)-(iii) are
    /// checked by [`TreeDecomposition::validate`].
    pub fn new(n: usize, bags: Vec<VertexSet>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if bags.is_empty() {
            return Err(Error::NotATree("no nodes".into()));
        }
        for &(a, b) in &edges {
            if a >= bags.len() || b >= bags.len() {
                return Err(Error::NotATree(format!(
                    "edge {}-{} references a missing node",
                    a + 1,
                    b + 1
                )));
            }
            if a == b {
                return Err(Error::NotATree(format!("loop at node {}", a + 1)));
            }
        }
        Ok(TreeDecomposition { n, bags, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn bag(&self, node: usize) -> &VertexSet {
        &self.bags[node]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    fn tree_problem(&self) -> Option<String> {
        let nodes = self.bags.len();
        if self.edges.len() != nodes - 1 {
            return Some(format!("{nodes} nodes but {} edges", self.edges.len()));
        }
        let reached = reach(&self.neighbors(), 0, |_| true);
        let missing = reached.iter().position(|r| !r)?;
        Some(format!("node {} is unreachable from node 1", missing + 1))
    }

    pub fn is_tree(&self) -> bool {
        self.tree_problem().is_none()
    }

    fn require_tree(&self) -> Result<()> {
        match self.tree_problem() {
            Some(why) => Err(Error::NotATree(why)),
            None => Ok(()),
        }
    }

    /// Every violated condition; empty when `self` is a tree decomposition of `g`.
    pub fn validate(&self, g: &Graph) -> Result<Vec<TdViolation>> {
        if g.n() != self.n {
            return Err(Error::ContextMismatch {
                expected: g.n(),
                found: self.n,
            });
        }
        let mut out = Vec::new();
        if let Some(why) = self.tree_problem() {
            out.push(TdViolation::NotATree(why));
        }
        for (node, bag) in self.bags.iter().enumerate() {
            for vertex in bag.iter().filter(|&v| v == 0 || v > g.n()) {
                out.push(TdViolation::BagOutOfRange { node, vertex });
            }
        }
        let covered = self.bags.iter().fold(VertexSet::new(), |acc, b| acc.union(b));
        for v in g.vertices().difference(&covered).iter() {
            out.push(TdViolation::UncoveredVertex(v));
        }
        for &(u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
                out.push(TdViolation::UncoveredEdge(u, v));
            }
        }
        let adj = self.neighbors();
        for v in covered.iter().filter(|&v| v >= 1 && v <= g.n()) {
            let holders: Vec<usize> = (0..self.bags.len())
                .filter(|&t| self.bags[t].contains(v))
                .collect();
            let seen = reach(&adj, holders[0], |t| self.bags[t].contains(v));
            if holders.iter().any(|&t| !seen[t]) {
                out.push(TdViolation::DisconnectedSupport(v));
            }
        }
        Ok(out)
    }

    fn require_valid(&self, g: &Graph) -> Result<()> {
        match self.validate(g)?.first() {
            Some(v) => Err(Error::InvalidDecomposition(v.to_string())),
            None => Ok(()),
        }
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64).max().unwrap_or(0) - 1
    }

    /// Smallest bag size minus one, as the width formula reads when taken
    /// literally with `min`. Kept only for comparison with [`width`](Self::width).
    pub fn paper_literal_width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64).min().unwrap_or(0) - 1
    }

    /// The 2-coloring with all leaves in `y`, or `NotDeciduous` naming two
    /// leaves at odd distance. A single node is deciduous with `x` empty.
    pub fn leaf_bipartition(&self) -> Result<Bipartition> {
        self.require_tree()?;
        let adj = self.neighbors();
        let mut color = vec![u8::MAX; adj.len()];
        color[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(t) = queue.pop_front() {
            for &s in &adj[t] {
                if color[s] == u8::MAX {
                    color[s] = 1 - color[t];
                    queue.push_back(s);
                }
            }
        }
        if adj.len() == 1 {
            return Ok(Bipartition {
                x: vec![],
                y: vec![0],
            });
        }
        let leaves: Vec<usize> = (0..adj.len()).filter(|&t| adj[t].len() == 1).collect();
        let leaf_color = color[leaves[0]];
        if let Some(&odd) = leaves.iter().find(|&&l| color[l] != leaf_color) {
            return Err(Error::NotDeciduous(leaves[0] + 1, odd + 1));
        }
        let (y, x) = (0..adj.len()).partition(|&t| color[t] == leaf_color);
        Ok(Bipartition { x, y })
    }

    pub fn is_deciduous(&self) -> bool {
        self.leaf_bipartition().is_ok()
    }

    fn bags_union(&self, mask: &[bool]) -> VertexSet {
        let mut out = VertexSet::new();
        for (t, &inside) in mask.iter().enumerate() {
            if inside {
                out.union_with(&self.bags[t]);
            }
        }
        out
    }

    /// The separation of tree edge `edge`: cutset `χ(t1) ∩ χ(t2)`, sides the
    /// bag unions of the two subtrees minus the cutset.
    pub fn edge_separation(&self, edge: usize) -> ManySidedSeparation {
        let (t1, t2) = self.edges[edge];
        let adj = self.neighbors();
        let cutset = self.bags[t1].intersection(&self.bags[t2]);
        let first = reach(&adj, t1, |t| t != t2);
        let second: Vec<bool> = first.iter().map(|r| !r).collect();
        ManySidedSeparation::two_sided(
            self.n,
            self.bags_union(&first).difference(&cutset),
            self.bags_union(&second).difference(&cutset),
            cutset,
        )
    }

    /// The many-sided separation of node `x`: cutset `χ(x)`, one side per
    /// neighbor holding that branch's bag union minus `χ(x)`.
    pub fn node_separation(&self, x: usize) -> Result<ManySidedSeparation> {
        let adj = self.neighbors();
        let cutset = self.bags[x].clone();
        let sides = adj[x]
            .iter()
            .map(|&y| {
                let branch = reach_avoiding(&adj, y, x);
                self.bags_union(&branch).difference(&cutset)
            })
            .collect();
        ManySidedSeparation::new(self.n, sides, cutset)
    }

    pub fn tau(&self, g: &Graph) -> Result<SeparationFamily> {
        self.require_valid(g)?;
        let mut family = SeparationFamily::new(self.n);
        for e in 0..self.edges.len() {
            family.insert(self.edge_separation(e))?;
        }
        Ok(family)
    }

    pub fn tau_star(&self, g: &Graph) -> Result<SeparationFamily> {
        self.require_valid(g)?;
        let split = self.leaf_bipartition()?;
        let mut family = SeparationFamily::new(self.n);
        for &x in &split.x {
            family.insert(self.node_separation(x)?)?;
        }
        Ok(family)
    }
}

/// Nodes reachable from `start` through nodes accepted by `allow`.
fn reach(adj: &[Vec<usize>], start: usize, allow: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(t) = stack.pop() {
        for &s in &adj[t] {
            if !seen[s] && allow(s) {
                seen[s] = true;
                stack.push(s);
            }
        }
    }
    seen
}

fn reach_avoiding(adj: &[Vec<usize>], start: usize, blocked: usize) -> Vec<bool> {
    reach(adj, start, |t| t != blocked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    fn td(n: usize, bags: &[&[usize]], edges: &[(usize, usize)]) -> TreeDecomposition {
        let bags = bags.iter().map(|b| b.iter().copied().collect()).collect();
        TreeDecomposition::new(n, bags, edges.to_vec()).unwrap()
    }

    fn sep(n: usize, sides: &[&[usize]], c: &[usize]) -> ManySidedSeparation {
        let sides = sides.iter().map(|s| s.iter().copied().collect()).collect();
        ManySidedSeparation::new(n, sides, c.iter().copied().collect()).unwrap()
    }

    fn p5_path_td() -> TreeDecomposition {
        td(
            5,
            &[&[1, 2], &[2], &[2, 3, 4], &[4], &[4, 5]],
            &[(0, 1), (1, 2), (2, 3), (3, 4)],
        )
    }

    #[test]
    fn validate_examples() {
        let p3 = path(3);
        assert!(td(3, &[&[1, 2], &[2, 3]], &[(0, 1)]).validate(&p3).unwrap().is_empty());
        let v = td(3, &[&[1, 2], &[2]], &[(0, 1)]).validate(&p3).unwrap();
        assert!(v.contains(&TdViolation::UncoveredVertex(3)));
        let v = td(3, &[&[1, 2], &[2], &[1, 3]], &[(0, 1), (1, 2)])
            .validate(&Graph::new(3, [(1, 2), (1, 3)]).unwrap())
            .unwrap();
        assert_eq!(v, vec![TdViolation::DisconnectedSupport(1)]);
        let v = td(3, &[&[1, 2], &[2, 3], &[1, 3]], &[(0, 1), (1, 2), (2, 0)])
            .validate(&p3)
            .unwrap();
        assert!(matches!(v[0], TdViolation::NotATree(_)));
        let v = td(3, &[&[1, 2], &[3]], &[(0, 1)]).validate(&p3).unwrap();
        assert_eq!(v, vec![TdViolation::UncoveredEdge(2, 3)]);
        assert!(matches!(
            td(3, &[&[1, 2, 3]], &[]).validate(&path(4)),
            Err(Error::ContextMismatch { .. })
        ));
        assert!(TreeDecomposition::new(3, vec![], vec![]).is_err());
        assert!(TreeDecomposition::new(3, vec![VertexSet::new()], vec![(0, 1)]).is_err());
    }

    #[test]
    fn width_examples() {
        assert_eq!(td(3, &[&[1, 2], &[2, 3]], &[(0, 1)]).width(), 1);
        assert_eq!(td(5, &[&[1, 2, 3, 4, 5]], &[]).width(), 4);
        let star = td(4, &[&[1], &[1, 2], &[1, 3], &[1, 4]], &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(star.width(), 1);
        assert_eq!(star.paper_literal_width(), 0);
    }

    #[test]
    fn bipartition_examples() {
        let star = td(4, &[&[1], &[1, 2], &[1, 3], &[1, 4]], &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(
            star.leaf_bipartition().unwrap(),
            Bipartition {
                x: vec![0],
                y: vec![1, 2, 3]
            }
        );
        let pair = td(3, &[&[1, 2], &[2, 3]], &[(0, 1)]);
        assert!(matches!(pair.leaf_bipartition(), Err(Error::NotDeciduous(..))));
        assert_eq!(p5_path_td().leaf_bipartition().unwrap().x, vec![1, 3]);
        let single = td(3, &[&[1, 2, 3]], &[]);
        assert_eq!(
            single.leaf_bipartition().unwrap(),
            Bipartition { x: vec![], y: vec![0] }
        );
        let four = td(3, &[&[1], &[1], &[1], &[1]], &[(0, 1), (1, 2), (2, 3)]);
        assert!(!four.is_deciduous());
    }

    #[test]
    fn tau_examples() {
        let p3 = path(3);
        let f = td(3, &[&[1, 2], &[2, 3]], &[(0, 1)]).tau(&p3).unwrap();
        assert_eq!(f.members(), &[sep(3, &[&[1], &[3]], &[2])]);

        let f = p5_path_td().tau(&path(5)).unwrap();
        assert_eq!(
            f.members(),
            &[sep(5, &[&[1], &[3, 4, 5]], &[2]), sep(5, &[&[1, 2, 3], &[5]], &[4])]
        );
        assert!(td(5, &[&[1, 2, 3, 4, 5]], &[]).tau(&path(5)).unwrap().is_empty());
        assert!(matches!(
            td(3, &[&[1, 2], &[2]], &[(0, 1)]).tau(&p3),
            Err(Error::InvalidDecomposition(_))
        ));
    }

    #[test]
    fn tau_star_examples() {
        let star_graph = Graph::new(4, [(1, 2), (1, 3), (1, 4)]).unwrap();
        let star = td(4, &[&[1], &[1, 2], &[1, 3], &[1, 4]], &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(
            star.tau_star(&star_graph).unwrap().members(),
            &[sep(4, &[&[2], &[3], &[4]], &[1])]
        );
        let f = p5_path_td().tau_star(&path(5)).unwrap();
        assert_eq!(
            f.members(),
            &[sep(5, &[&[1], &[3, 4, 5]], &[2]), sep(5, &[&[1, 2, 3], &[5]], &[4])]
        );
        assert!(td(5, &[&[1, 2, 3, 4, 5]], &[]).tau_star(&path(5)).unwrap().is_empty());
        let pair = td(3, &[&[1, 2], &[2, 3]], &[(0, 1)]);
        assert!(matches!(pair.tau_star(&path(3)), Err(Error::NotDeciduous(..))));
    }
}
