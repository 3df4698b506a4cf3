//! End-to-end acceptance criteria A1-A8, shared by the `acceptance` test
//! target and `lamsep selfcheck`.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::builder::build_deciduous_td;
use crate::certificate::Certificate;
use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{CutsetVerdict, Graph};
use crate::oracle::generate::{
    connected_catalog, gen_connected, gen_graph, gen_laminar_family, labeled_connected,
    random_decomposition, FamilyStrategy, GraphModel,
};
use crate::oracle::reference::{
    components_reference, enum_mseps_bruteforce, minimal_cutset_by_subsets,
    noncrossing_2sided_reference,
};
use crate::oracle::report::minimal_cutset_hypothesis;
use crate::separation::{ManySidedSeparation, SeparationFamily};
use crate::vertex_set::VertexSet;

const MAX_EXAMPLES: usize = 5;

#[derive(Clone, Debug)]
pub struct AcceptanceConfig {
    /// Largest vertex count of the exhaustive graph catalog (A2, A3, A5).
    pub nmax: usize,
    pub jobs: usize,
    /// Seed of the sampled graphs in A4.
    pub seed: u64,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig {
            nmax: 6,
            jobs: 1,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: &'static str,
    pub title: &'static str,
    pub instances: usize,
    pub failures: usize,
    /// Up to five failure descriptions.
    pub examples: Vec<String>,
    pub certificates: Vec<Certificate>,
    pub elapsed: Duration,
    pub limit: Duration,
    pub passed: bool,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} ({} instances, {} failures, {:.2}s of {}s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.instances,
            self.failures,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )?;
        for e in &self.examples {
            write!(f, "\n    {e}")?;
        }
        Ok(())
    }
}

/// Collects per-instance outcomes of one criterion.
struct Tally {
    id: &'static str,
    title: &'static str,
    limit: Duration,
    start: Instant,
    instances: usize,
    failures: usize,
    examples: Vec<String>,
    certificates: Vec<Certificate>,
    min_instances: usize,
}

impl Tally {
    fn new(id: &'static str, title: &'static str, limit_secs: u64) -> Self {
        Tally {
            id,
            title,
            limit: Duration::from_secs(limit_secs),
            start: Instant::now(),
            instances: 0,
            failures: 0,
            examples: Vec::new(),
            certificates: Vec::new(),
            min_instances: 1,
        }
    }

    fn record(&mut self, outcome: Outcome) {
        self.instances += 1;
        if let Err((message, certificate)) = outcome {
            self.failures += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(message);
            }
            if let Some(c) = certificate {
                if self.certificates.len() < MAX_EXAMPLES {
                    self.certificates.push(*c);
                }
            }
        }
    }

    fn finish(mut self) -> CriterionResult {
        let elapsed = self.start.elapsed();
        if self.instances < self.min_instances {
            self.examples.push(format!(
                "only {} instances, need at least {}",
                self.instances, self.min_instances
            ));
        }
        CriterionResult {
            id: self.id,
            title: self.title,
            passed: self.failures == 0
                && self.instances >= self.min_instances
                && elapsed < self.limit,
            instances: self.instances,
            failures: self.failures,
            examples: self.examples,
            certificates: self.certificates,
            elapsed,
            limit: self.limit,
        }
    }
}

type Outcome = std::result::Result<(), (String, Option<Box<Certificate>>)>;

fn failed(label: &str, message: impl fmt::Display) -> Outcome {
    Err((format!("{label}: {message}"), None))
}

fn build_outcome(label: &str, g: &Graph, f: &SeparationFamily) -> std::result::Result<TreeDecomposition, (String, Option<Box<Certificate>>)> {
    match build_deciduous_td(g, f) {
        Ok(td) => Ok(td),
        Err(Error::InternalInvariant(c)) => Err((format!("{label}: internal invariant in {}", c.check), Some(c))),
        Err(e) => Err((format!("{label}: {e}"), None)),
    }
}

fn parallel<T: Sync, R: Send>(jobs: usize, items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

/// A laminar-family instance with a printable label.
#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub graph: Graph,
    pub family: SeparationFamily,
}

fn families_of(label: &str, g: &Graph, runs: &[(FamilyStrategy, u64, usize)]) -> Result<Vec<Instance>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &(strategy, seed, cap) in runs {
        for family in gen_laminar_family(g, strategy, seed, cap)? {
            let key: Vec<ManySidedSeparation> = family.members().to_vec();
            if seen.insert(key) {
                out.push(Instance {
                    label: format!("{label} {strategy:?} seed={seed} cap={cap} #{}", out.len()),
                    graph: g.clone(),
                    family,
                });
            }
        }
    }
    Ok(out)
}

/// Greedy families on paths, cycles, grids, random trees and `G(n, p)` with
/// at most 12 vertices.
pub fn wide_corpus() -> Result<Vec<Instance>> {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in 3..=12 {
        graphs.push((format!("path({n})"), gen_graph(GraphModel::Path { n }, 0)?));
    }
    for n in 4..=12 {
        graphs.push((format!("cycle({n})"), gen_graph(GraphModel::Cycle { n }, 0)?));
    }
    for (rows, cols) in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4)] {
        graphs.push((
            format!("grid({rows},{cols})"),
            gen_graph(GraphModel::Grid { rows, cols }, 0)?,
        ));
    }
    for n in 4..=12 {
        for seed in 0..8 {
            graphs.push((format!("tree({n}) seed={seed}"), gen_graph(GraphModel::Tree { n }, seed)?));
        }
    }
    for n in 5..=12 {
        for seed in 0..8 {
            graphs.push((format!("gnp({n}) seed={seed}"), gen_connected(n, seed)?));
        }
    }
    let runs: Vec<(FamilyStrategy, u64, usize)> = (0..4)
        .flat_map(|seed| [2, 3, 12].map(|cap| (FamilyStrategy::MinimalCutsetsGreedy, seed, cap)))
        .collect();
    let mut out = Vec::new();
    for (label, g) in graphs {
        out.extend(families_of(&label, &g, &runs)?);
    }
    Ok(out)
}

/// Both generator strategies, at most four members, on every connected graph
/// of the catalog up to `nmax` vertices.
pub fn catalog_corpus(nmax: usize) -> Result<Vec<Instance>> {
    let runs = [
        (FamilyStrategy::MinimalCutsetsGreedy, 0, 4),
        (FamilyStrategy::Exhaustive, 0, 4),
    ];
    let mut out = Vec::new();
    for (i, g) in connected_catalog(nmax)?.iter().enumerate() {
        out.extend(families_of(&format!("catalog#{i} n={}", g.n()), g, &runs)?);
    }
    Ok(out)
}

/// Hand-built decompositions, plus their graphs.
pub fn fixture_decompositions() -> Vec<(String, Graph, TreeDecomposition)> {
    let set = |v: &[usize]| v.iter().copied().collect::<VertexSet>();
    let path = |n: usize| gen_graph(GraphModel::Path { n }, 0).expect("valid");
    type Fixture = (&'static str, Graph, Vec<VertexSet>, Vec<(usize, usize)>);
    let fixtures: Vec<Fixture> = vec![
        ("p3 two bags", path(3), vec![set(&[1, 2]), set(&[2, 3])], vec![(0, 1)]),
        (
            "p5 path of five bags",
            path(5),
            vec![set(&[1, 2]), set(&[2]), set(&[2, 3, 4]), set(&[4]), set(&[4, 5])],
            vec![(0, 1), (1, 2), (2, 3), (3, 4)],
        ),
        (
            "star decomposition",
            gen_graph(GraphModel::Star { leaves: 3 }, 0).expect("valid"),
            vec![set(&[1]), set(&[1, 2]), set(&[1, 3]), set(&[1, 4])],
            vec![(0, 1), (0, 2), (0, 3)],
        ),
        ("single bag", path(5), vec![set(&[1, 2, 3, 4, 5])], vec![]),
        (
            "c4 two triangles",
            gen_graph(GraphModel::Cycle { n: 4 }, 0).expect("valid"),
            vec![set(&[1, 2, 3]), set(&[1, 3, 4])],
            vec![(0, 1)],
        ),
    ];
    fixtures
        .into_iter()
        .map(|(label, g, bags, edges)| {
            let td = TreeDecomposition::new(g.n(), bags, edges).expect("well-formed fixture");
            (label.to_string(), g, td)
        })
        .collect()
}

pub fn a1_tau_star_laminar(cfg: &AcceptanceConfig) -> Result<CriterionResult> {
    let mut tally = Tally::new("A1", "tau_star of built decompositions is laminar", 60);
    tally.min_instances = 500;
    let corpus = wide_corpus()?;
    let outcomes = parallel(cfg.jobs, &corpus, |inst| -> Outcome {
        let td = build_outcome(&inst.label, &inst.graph, &inst.family)?;
        match td.tau_star(&inst.graph) {
            Ok(f) if f.is_laminar() => Ok(()),
            Ok(_) => failed(&inst.label, "tau_star is not laminar"),
            Err(e) => failed(&inst.label, e),
        }
    });
    outcomes.into_iter().for_each(|o| tally.record(o));
    Ok(tally.finish())
}

pub fn a2_round_trip(cfg: &AcceptanceConfig) -> Result<CriterionResult> {
    let mut tally = Tally::new("A2", "build round trip: valid, deciduous, tau_star = family", 120);
    let corpus = catalog_corpus(cfg.nmax)?;
    let outcomes = parallel(cfg.jobs, &corpus, |inst| -> Outcome {
        let (g, f) = (&inst.graph, &inst.family);
        let td = build_outcome(&inst.label, g, f)?;
        match td.validate(g) {
            Ok(v) if v.is_empty() => {}
            Ok(v) => return failed(&inst.label, &v[0]),
            Err(e) => return failed(&inst.label, e),
        }
        if let Err(e) = td.leaf_bipartition() {
            return failed(&inst.label, e);
        }
        match td.tau_star(g) {
            Ok(back) if back == *f => Ok(()),
            Ok(back) => failed(&inst.label, format!("tau_star = {:?}", back.members())),
            Err(e) => failed(&inst.label, e),
        }
    });
    outcomes.into_iter().for_each(|o| tally.record(o));
    Ok(tally.finish())
}

pub fn a3_projection_laminar(cfg: &AcceptanceConfig) -> Result<CriterionResult> {
    let mut tally = Tally::new("A3", "projection of a laminar family is laminar", 30);
    let corpus = catalog_corpus(cfg.nmax)?;
    let outcomes = parallel(cfg.jobs, &corpus, |inst| -> Outcome {
        let projected = inst.family.project();
        match projected.first_crossing() {
            None => Ok(()),
            Some((a, b)) => failed(
                &inst.label,
                format!("{} crosses {}", projected.members()[a], projected.members()[b]),
            ),
        }
    });
    outcomes.into_iter().for_each(|o| tally.record(o));
    Ok(tally.finish())
}

fn cutset_outcome(label: &str, g: &Graph, cutset: &VertexSet) -> Outcome {
    let verdict = g.is_minimal_cutset(cutset).map_err(|e| (format!("{label}: {e}"), None))?;
    let plain: BTreeSet<usize> = cutset.iter().collect();
    let expected = match minimal_cutset_by_subsets(g, &plain) {
        (false, _) => CutsetVerdict::NotCutset,
        (true, false) => CutsetVerdict::CutsetNotMinimal,
        (true, true) => CutsetVerdict::Minimal,
    };
    if verdict != expected {
        return failed(label, format!("C = {cutset}: {verdict:?} but definition gives {expected:?}"));
    }
    if verdict == CutsetVerdict::Minimal {
        let keep: BTreeSet<usize> = (1..=g.n()).filter(|v| !plain.contains(v)).collect();
        for comp in components_reference(g, &keep) {
            for c in &plain {
                if !comp.iter().any(|&a| g.has_edge(*c, a)) {
                    return failed(label, format!("C = {cutset}: {c} has no neighbor in {comp:?}"));
                }
            }
        }
    }
    Ok(())
}

pub fn a4_minimal_cutsets(cfg: &AcceptanceConfig) -> Result<CriterionResult> {
    let mut tally = Tally::new("A4", "minimal cutset vertices touch every component", 60);
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in 1..=5 {
        for (i, g) in labeled_connected(n)?.into_iter().enumerate() {
            graphs.push((format!("labeled n={n} #{i}"), g));
        }
    }
    for i in 0..200u64 {
        let n = 2 + (i % 6) as usize;
        let seed = cfg.seed.wrapping_mul(1_000_003).wrapping_add(i);
        graphs.push((format!("sampled n={n} seed={seed}"), gen_connected(n, seed)?));
    }
    let outcomes = parallel(cfg.jobs, &graphs, |(label, g)| {
        let mut local = Vec::new();
        for mask in 0u64..(1 << g.n()) - 1 {
            let cutset: VertexSet = (1..=g.n()).filter(|v| mask >> (v - 1) & 1 == 1).collect();
            local.push(cutset_outcome(label, g, &cutset));
        }
        local
    });
    outcomes.into_iter().flatten().for_each(|o| tally.record(o));
    Ok(tally.finish())
}

pub fn a5_tau_equals_projection(cfg: &AcceptanceConfig) -> Result<CriterionResult> {
    let mut tally = Tally::new("A5", "tau of the built decomposition equals the projection", 60);
    let corpus: Vec<Instance> = catalog_corpus(cfg.nmax)?
        .into_iter()
        .filter(|inst| minimal_cutset_hypothesis(&inst.graph, &inst.family))
        .collect();
    let outcomes = parallel(cfg.jobs, &corpus, |inst| -> Outcome {
        let td = build_outcome(&inst.label, &inst.graph, &inst.family)?;
        match td.tau(&inst.graph) {
            Ok(tau) if tau == inst.family.project() => Ok(()),
            Ok(tau) => failed(&inst.label, format!("tau = {:?}", tau.members())),
            Err(e) => failed(&inst.label, e),
        }
    });
    outcomes.into_iter().for_each(|o| tally.record(o));
    Ok(tally.finish())
}

/// Every valid 2-sided separation of `g`, empty sides included.
pub fn all_two_sided(g: &Graph) -> SeparationFamily {
    let mut out = SeparationFamily::new(g.n());
    let total = 3usize.pow(g.n() as u32);
    for code in 0..total {
        let mut parts = [VertexSet::new(), VertexSet::new(), VertexSet::new()];
        let mut rest = code;
        for v in 1..=g.n() {
            parts[rest % 3].insert(v);
            rest /= 3;
        }
        let [a, b, c] = parts;
        let s = ManySidedSeparation::two_sided(g.n(), a, b, c);
        if s.is_valid(g) {
            out.insert(s).expect("same context");
        }
    }
    out
}

pub fn a6_two_sided_agreement(cfg: &AcceptanceConfig) -> Result<CriterionResult> {
    let mut tally = Tally::new("A6", "many-sided non-crossing agrees with the 2-sided definition", 60);
    let mut graphs = Vec::new();
    for n in 1..=5 {
        graphs.extend(labeled_connected(n)?);
    }
    let outcomes = parallel(cfg.jobs, &graphs, |g| {
        let seps = all_two_sided(g);
        let mut local = Vec::new();
        for s in &seps {
            for t in &seps {
                let ours = !s.noncrossing(t).expect("same context").is_crossing();
                let reference = noncrossing_2sided_reference(s, t).expect("two-sided");
                local.push(if ours == reference {
                    Ok(())
                } else {
                    failed(&format!("n={}", g.n()), format!("{s} vs {t}: {ours} but reference {reference}"))
                });
            }
        }
        local
    });
    outcomes.into_iter().flatten().for_each(|o| tally.record(o));
    Ok(tally.finish())
}

pub fn a7_tau_laminar(cfg: &AcceptanceConfig) -> Result<CriterionResult> {
    let mut tally = Tally::new("A7", "tau of every decomposition is laminar", 30);
    let mut decompositions: Vec<(String, Graph, TreeDecomposition)> = fixture_decompositions();
    for seed in 0..300u64 {
        let (g, td) = random_decomposition(1 + (seed % 9) as usize, 1 + (seed % 11) as usize, seed)?;
        decompositions.push((format!("random decomposition seed={seed}"), g, td));
    }
    let mut corpus = catalog_corpus(cfg.nmax)?;
    corpus.extend(wide_corpus()?);
    let built = parallel(cfg.jobs, &corpus, |inst| {
        build_deciduous_td(&inst.graph, &inst.family)
            .map(|td| (inst.label.clone(), inst.graph.clone(), td))
            .map_err(|e| format!("{}: {e}", inst.label))
    });
    for b in built {
        match b {
            Ok(d) => decompositions.push(d),
            Err(message) => tally.record(Err((message, None))),
        }
    }
    let outcomes = parallel(cfg.jobs, &decompositions, |(label, g, td)| -> Outcome {
        match td.tau(g) {
            Ok(f) if f.is_laminar() => Ok(()),
            Ok(_) => failed(label, "tau is not laminar"),
            Err(e) => failed(label, e),
        }
    });
    outcomes.into_iter().for_each(|o| tally.record(o));
    Ok(tally.finish())
}

pub fn a8_fixed_points(_cfg: &AcceptanceConfig) -> Result<CriterionResult> {
    let mut tally = Tally::new("A8", "fixed-point counts and the P5 decomposition", 60);
    let path = |n| gen_graph(GraphModel::Path { n }, 0);
    let k3 = Graph::new(3, [(1, 2), (2, 3), (1, 3)])?;
    for (label, g, expected) in [("P3", path(3)?, 1), ("P4", path(4)?, 4), ("K3", k3, 0)] {
        let found = enum_mseps_bruteforce(&g)?.len();
        tally.record(if found == expected {
            Ok(())
        } else {
            failed(label, format!("expected {expected} separations, found {found}"))
        });
    }

    let p5 = path(5)?;
    let family = SeparationFamily::from_members(
        5,
        [2, 4].map(|c| ManySidedSeparation::from_cutset(&p5, &[c].into()).expect("cutset")),
    )?;
    let outcome = build_outcome("P5", &p5, &family).and_then(|td| {
        let mut bags = td.bags().to_vec();
        bags.sort();
        let mut expected: Vec<VertexSet> =
            vec![[1, 2].into(), [2].into(), [2, 3, 4].into(), [4].into(), [4, 5].into()];
        expected.sort();
        let degrees: Vec<usize> = td.neighbors().iter().map(Vec::len).collect();
        let is_path = td.node_count() == 5 && degrees.iter().all(|&d| d <= 2) && td.is_tree();
        if bags == expected && is_path {
            Ok(())
        } else {
            failed("P5", format!("bags {bags:?}, degrees {degrees:?}"))
        }
    });
    tally.record(outcome);
    Ok(tally.finish())
}

pub fn run_all(cfg: &AcceptanceConfig) -> Result<Vec<CriterionResult>> {
    Ok(vec![
        a1_tau_star_laminar(cfg)?,
        a2_round_trip(cfg)?,
        a3_projection_laminar(cfg)?,
        a4_minimal_cutsets(cfg)?,
        a5_tau_equals_projection(cfg)?,
        a6_two_sided_agreement(cfg)?,
        a7_tau_laminar(cfg)?,
        a8_fixed_points(cfg)?,
    ])
}
