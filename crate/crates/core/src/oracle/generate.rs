//! Deterministic instance generators. Every output is a pure function of the
//! parameters and the seed.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::separation::{ManySidedSeparation, SeparationFamily};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GraphModel {
    Path { n: usize },
    Cycle { n: usize },
    /// `K_{1,leaves}` with center 1.
    Star { leaves: usize },
    /// Vertex `(r, c)` is `r * cols + c + 1`.
    Grid { rows: usize, cols: usize },
    /// Uniform labeled tree via a random Prüfer sequence.
    Tree { n: usize },
    Gnp { n: usize, p: f64 },
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gen_graph(model: GraphModel, seed: u64) -> Result<Graph> {
    let bad = |why: &str| Err(Error::BadParams(format!("{model:?}: {why}")));
    match model {
        GraphModel::Path { n } => {
            if n == 0 {
                return bad("need n >= 1");
            }
            Graph::new(n, (1..n).map(|i| (i, i + 1)))
        }
        GraphModel::Cycle { n } => {
            if n < 3 {
                return bad("need n >= 3");
            }
            Graph::new(n, (1..=n).map(|i| (i, i % n + 1)))
        }
        GraphModel::Star { leaves } => {
            if leaves == 0 {
                return bad("need at least one leaf");
            }
            Graph::new(leaves + 1, (2..=leaves + 1).map(|v| (1, v)))
        }
        GraphModel::Grid { rows, cols } => {
            if rows == 0 || cols == 0 {
                return bad("need rows, cols >= 1");
            }
            let id = |r: usize, c: usize| r * cols + c + 1;
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        edges.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < rows {
                        edges.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
            Graph::new(rows * cols, edges)
        }
        GraphModel::Tree { n } => {
            if n == 0 {
                return bad("need n >= 1");
            }
            Graph::new(n, random_tree_edges(n, &mut rng(seed)))
        }
        GraphModel::Gnp { n, p } => {
            if n == 0 || !(0.0..=1.0).contains(&p) {
                return bad("need n >= 1 and 0 <= p <= 1");
            }
            let mut r = rng(seed);
            let edges: Vec<(usize, usize)> = (1..=n)
                .tuple_combinations()
                .filter(|_| r.gen_bool(p))
                .collect();
            Graph::new(n, edges)
        }
    }
}

/// Edges of a uniform random labeled tree on `1..=n`.
fn random_tree_edges(n: usize, r: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if n < 2 {
        return vec![];
    }
    let prufer: Vec<usize> = (0..n - 2).map(|_| r.gen_range(1..=n)).collect();
    let mut degree = vec![1usize; n + 1];
    for &v in &prufer {
        degree[v] += 1;
    }
    let mut leaves: BTreeSet<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &prufer {
        let leaf = leaves.pop_first().expect("a tree always has a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    edges
}

/// A random connected graph on `n` vertices: `G(n, p)` resampled until
/// connected, with `p` drawn from `[0.25, 0.75)`.
pub fn gen_connected(n: usize, seed: u64) -> Result<Graph> {
    let mut r = rng(seed);
    loop {
        let p = r.gen_range(0.25..0.75);
        let g = gen_graph(GraphModel::Gnp { n, p }, r.gen())?;
        if g.is_connected() {
            return Ok(g);
        }
    }
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).tuple_combinations().collect()
}

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &(a, b))| (a + 1, b + 1));
    Graph::new(n, edges).expect("simple by construction")
}

/// Every connected labeled graph on exactly `n` vertices (`n <= 6`).
pub fn labeled_connected(n: usize) -> Result<Vec<Graph>> {
    if n > 6 {
        return Err(Error::TooLarge {
            what: format!("labeled graphs on {n} vertices"),
            limit: 6,
        });
    }
    let pairs = pair_index(n);
    Ok((0u64..1 << pairs.len())
        .map(|mask| graph_from_mask(n, &pairs, mask))
        .filter(Graph::is_connected)
        .collect())
}

fn canonical_mask(n: usize, edges: &[(usize, usize)], pairs: &[(usize, usize)]) -> u64 {
    let index: BTreeMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    (0..n)
        .permutations(n)
        .map(|perm| {
            edges.iter().fold(0u64, |mask, &(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                mask | 1 << index[&(x.min(y), x.max(y))]
            })
        })
        .min()
        .unwrap_or(0)
}

/// One representative of every isomorphism class of connected graphs on
/// `1..=nmax` vertices (`nmax <= 7`), ordered by vertex count.
pub fn connected_catalog(nmax: usize) -> Result<Vec<Graph>> {
    if nmax > 7 {
        return Err(Error::TooLarge {
            what: format!("graph catalog up to {nmax} vertices"),
            limit: 7,
        });
    }
    let mut out = Vec::new();
    // each class as (0-based edge list) for the current size
    let mut layer: Vec<Vec<(usize, usize)>> = vec![vec![]];
    for n in 1..=nmax {
        if n > 1 {
            let pairs = pair_index(n);
            let mut seen = BTreeMap::new();
            for base in &layer {
                for mask in 1u64..1 << (n - 1) {
                    let mut edges = base.clone();
                    edges.extend((0..n - 1).filter(|i| mask >> i & 1 == 1).map(|i| (i, n - 1)));
                    seen.entry(canonical_mask(n, &edges, &pairs)).or_insert(edges);
                }
            }
            layer = seen.into_values().collect();
        }
        for edges in &layer {
            out.push(Graph::new(n, edges.iter().map(|&(a, b)| (a + 1, b + 1)))?);
        }
    }
    Ok(out)
}

fn rooted_code(adj: &[Vec<usize>], node: usize, parent: usize) -> String {
    let mut children: Vec<String> = adj[node]
        .iter()
        .filter(|&&c| c != parent)
        .map(|&c| rooted_code(adj, c, node))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

fn tree_code(nodes: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    // peel leaves down to the one or two centers
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut remaining = nodes;
    let mut layer: Vec<usize> = (0..nodes).filter(|&t| degree[t] <= 1).collect();
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &t in &layer {
            for &s in &adj[t] {
                degree[s] -= 1;
                if degree[s] == 1 {
                    next.push(s);
                }
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|&c| rooted_code(&adj, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

/// One representative edge list (0-based nodes) of every unlabeled tree with
/// `1..=max_nodes` nodes.
pub fn trees_up_to(max_nodes: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<(usize, usize)>> = vec![vec![]];
    for nodes in 1..=max_nodes {
        if nodes > 1 {
            let mut seen = BTreeMap::new();
            for base in &layer {
                for attach in 0..nodes - 1 {
                    let mut edges = base.clone();
                    edges.push((attach, nodes - 1));
                    seen.entry(tree_code(nodes, &edges)).or_insert(edges);
                }
            }
            layer = seen.into_values().collect();
        }
        out.extend(layer.iter().map(|e| (nodes, e.clone())));
    }
    out
}

/// A random valid tree decomposition and a graph it decomposes. Each vertex
/// gets a random connected set of tree nodes; graph edges are drawn among
/// pairs that share a bag.
pub fn random_decomposition(nodes: usize, n: usize, seed: u64) -> Result<(Graph, TreeDecomposition)> {
    if nodes == 0 || n == 0 {
        return Err(Error::BadParams("need at least one node and one vertex".into()));
    }
    let mut r = rng(seed);
    let tree: Vec<(usize, usize)> = random_tree_edges(nodes, &mut r)
        .into_iter()
        .map(|(a, b)| (a - 1, b - 1))
        .collect();
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in &tree {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut bags = vec![VertexSet::new(); nodes];
    for v in 1..=n {
        let mut support = vec![r.gen_range(0..nodes)];
        let target = r.gen_range(1..=nodes.min(3));
        while support.len() < target {
            let frontier: Vec<usize> = support
                .iter()
                .flat_map(|&t| adj[t].iter().copied())
                .filter(|t| !support.contains(t))
                .collect();
            match frontier.choose(&mut r) {
                Some(&t) => support.push(t),
                None => break,
            }
        }
        for t in support {
            bags[t].insert(v);
        }
    }
    let mut edges = BTreeSet::new();
    let p = r.gen_range(0.3..0.9);
    for bag in &bags {
        for (u, v) in bag.iter().tuple_combinations() {
            if r.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    let g = Graph::new(n, edges)?;
    let td = TreeDecomposition::new(n, bags, tree)?;
    Ok((g, td))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyStrategy {
    /// Scan minimal-cutset separations in order, keeping each one that is
    /// non-crossing with everything kept so far. Seed 0 scans in canonical
    /// order; any other seed scans a seeded shuffle.
    MinimalCutsetsGreedy,
    /// Every laminar family of minimal-cutset separations that is maximal
    /// subject to the member cap.
    Exhaustive,
}

pub const EXHAUSTIVE_MAX_N: usize = 10;

/// Laminar families of separations `(components of G ∖ C, C)` over minimal
/// cutsets `C`. The greedy strategy yields exactly one family.
pub fn gen_laminar_family(
    g: &Graph,
    strategy: FamilyStrategy,
    seed: u64,
    max_members: usize,
) -> Result<Vec<SeparationFamily>> {
    if !g.is_connected() {
        return Err(Error::NotConnectedGraph);
    }
    if strategy == FamilyStrategy::Exhaustive && g.n() > EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge {
            what: format!("exhaustive family generation on {} vertices", g.n()),
            limit: EXHAUSTIVE_MAX_N,
        });
    }
    let mut candidates = g
        .enum_minimal_cutsets(g.n())?
        .iter()
        .map(|c| ManySidedSeparation::from_cutset(g, c))
        .collect::<Result<Vec<_>>>()?;
    let compatible = |a: &ManySidedSeparation, b: &ManySidedSeparation| {
        !a.noncrossing(b).expect("same graph").is_crossing()
    };

    match strategy {
        FamilyStrategy::MinimalCutsetsGreedy => {
            if seed != 0 {
                candidates.shuffle(&mut rng(seed));
            }
            let mut kept: Vec<ManySidedSeparation> = Vec::new();
            for s in candidates {
                if kept.len() >= max_members {
                    break;
                }
                if kept.iter().all(|t| compatible(t, &s)) {
                    kept.push(s);
                }
            }
            Ok(vec![SeparationFamily::from_members(g.n(), kept)?])
        }
        FamilyStrategy::Exhaustive => {
            let count = candidates.len();
            let ok: Vec<Vec<bool>> = (0..count)
                .map(|a| (0..count).map(|b| a == b || compatible(&candidates[a], &candidates[b])).collect())
                .collect();
            let mut out = Vec::new();
            let mut chosen = Vec::new();
            extend_cliques(&ok, 0, max_members, &mut chosen, &mut |clique| {
                let members = clique.iter().map(|&i| candidates[i].clone());
                out.push(SeparationFamily::from_members(g.n(), members).expect("same graph"));
            });
            Ok(out)
        }
    }
}

fn extend_cliques(
    ok: &[Vec<bool>],
    from: usize,
    cap: usize,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let fits = |c: usize, chosen: &[usize]| !chosen.contains(&c) && chosen.iter().all(|&d| ok[c][d]);
    if chosen.len() == cap || !(0..ok.len()).any(|c| fits(c, chosen)) {
        emit(chosen);
        return;
    }
    for c in from..ok.len() {
        if fits(c, chosen) {
            chosen.push(c);
            extend_cliques(ok, c + 1, cap, chosen, emit);
            chosen.pop();
        }
    }
}
