//! Simple undirected graphs on vertices `1..=n` and cutset machinery.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Default cap on the number of candidate subsets examined by
/// [`Graph::enum_minimal_cutsets`].
pub const DEFAULT_SUBSET_LIMIT: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    // index 0 unused
    adj: Vec<VertexSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutsetVerdict {
    NotCutset,
    CutsetNotMinimal,
    Minimal,
}

impl Graph {
    /// Builds a simple graph. Edge order is irrelevant; edges are stored
    /// normalized as `(u, v)` with `u < v`, sorted.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![VertexSet::new(); n + 1];
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !adj[u].insert(v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[v].insert(u);
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        Ok(Graph { n, edges: list, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u <= self.n && self.adj[u].contains(v)
    }

    pub(crate) fn check_range(&self, set: &VertexSet) -> Result<()> {
        match set.iter().find(|&v| v == 0 || v > self.n) {
            Some(vertex) => Err(Error::OutOfRange { vertex, n: self.n }),
            None => Ok(()),
        }
    }

    /// First edge with one end in `x` and the other in `y`, if any.
    pub(crate) fn edge_between(&self, x: &VertexSet, y: &VertexSet) -> Option<(usize, usize)> {
        x.iter().find_map(|u| {
            self.adj[u]
                .intersection(y)
                .first()
                .map(|v| (u.min(v), u.max(v)))
        })
    }

    /// True iff no edge has one end in `x` and the other in `y`.
    pub fn anticomplete(&self, x: &VertexSet, y: &VertexSet) -> Result<bool> {
        self.check_range(x)?;
        self.check_range(y)?;
        Ok(self.edge_between(x, y).is_none())
    }

    /// Connected components of the subgraph induced on `within`, ordered by
    /// minimum vertex.
    pub fn components_within(&self, within: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_range(within)?;
        Ok(self.components_unchecked(within))
    }

    pub(crate) fn components_unchecked(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut unseen = within.clone();
        let mut out = Vec::new();
        while let Some(start) = unseen.first() {
            let mut comp = VertexSet::singleton(start);
            unseen.remove(start);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for w in self.adj[u].intersection(&unseen).iter() {
                    unseen.remove(w);
                    comp.insert(w);
                    queue.push_back(w);
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_unchecked(&self.vertices()).len() <= 1
    }

    /// Classifies `cutset` using the neighbor-in-every-component test: a
    /// cutset is minimal iff each of its vertices has a neighbor in every
    /// component of the remainder.
    pub fn is_minimal_cutset(&self, cutset: &VertexSet) -> Result<CutsetVerdict> {
        if !self.is_connected() {
            return Err(Error::NotConnectedGraph);
        }
        self.check_range(cutset)?;
        Ok(self.cutset_verdict(cutset))
    }

    fn cutset_verdict(&self, cutset: &VertexSet) -> CutsetVerdict {
        let comps = self.components_unchecked(&self.vertices().difference(cutset));
        if comps.len() < 2 {
            return CutsetVerdict::NotCutset;
        }
        let touches_all = cutset
            .iter()
            .all(|c| comps.iter().all(|comp| self.adj[c].intersects(comp)));
        if touches_all {
            CutsetVerdict::Minimal
        } else {
            CutsetVerdict::CutsetNotMinimal
        }
    }

    /// All minimal cutsets of size at most `max_size`, in ascending set order.
    pub fn enum_minimal_cutsets(&self, max_size: usize) -> Result<Vec<VertexSet>> {
        self.enum_minimal_cutsets_with_limit(max_size, DEFAULT_SUBSET_LIMIT)
    }

    /// As [`Graph::enum_minimal_cutsets`], failing with `TooLarge` when more
    /// than `subset_limit` candidate subsets would be examined.
    pub fn enum_minimal_cutsets_with_limit(
        &self,
        max_size: usize,
        subset_limit: usize,
    ) -> Result<Vec<VertexSet>> {
        if !self.is_connected() {
            return Err(Error::NotConnectedGraph);
        }
        let max_size = max_size.min(self.n);
        let mut candidates: usize = 1;
        let mut binom: usize = 1;
        for k in 1..=max_size {
            binom = binom.saturating_mul(self.n + 1 - k) / k;
            candidates = candidates.saturating_add(binom);
        }
        if candidates > subset_limit {
            return Err(Error::TooLarge {
                what: format!("{candidates} candidate subsets of {} vertices", self.n),
                limit: subset_limit,
            });
        }

        let mut out = Vec::new();
        let mut current = Vec::with_capacity(max_size);
        self.collect_cutsets(1, max_size, &mut current, &mut out);
        out.sort();
        Ok(out)
    }

    fn collect_cutsets(
        &self,
        next: usize,
        max_size: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<VertexSet>,
    ) {
        if !current.is_empty() {
            let set: VertexSet = current.iter().copied().collect();
            if self.cutset_verdict(&set) == CutsetVerdict::Minimal {
                out.push(set);
            }
        }
        if current.len() == max_size {
            return;
        }
        for v in next..=self.n {
            current.push(v);
            self.collect_cutsets(v + 1, max_size, current, out);
            current.pop();
        }
    }
}
