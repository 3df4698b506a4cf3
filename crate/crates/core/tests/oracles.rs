use std::collections::BTreeSet;

use lamsep::oracle::generate::{
    connected_catalog, gen_graph, gen_laminar_family, random_decomposition, FamilyStrategy, GraphModel,
};
use lamsep::oracle::reference::{enum_mseps_bruteforce, minimal_cutset_by_subsets};
use lamsep::{CutsetVerdict, Graph, VertexSet};

#[test]
fn minimal_cutset_verdicts_match_the_definition_up_to_seven_vertices() {
    let graphs = connected_catalog(7).unwrap();
    assert_eq!(graphs.len(), 1 + 1 + 2 + 6 + 21 + 112 + 853);
    for g in &graphs {
        for mask in 0u32..(1 << g.n()) - 1 {
            let plain: BTreeSet<usize> = (1..=g.n()).filter(|v| mask >> (v - 1) & 1 == 1).collect();
            let cutset: VertexSet = plain.iter().copied().collect();
            let expected = match minimal_cutset_by_subsets(g, &plain) {
                (false, _) => CutsetVerdict::NotCutset,
                (true, false) => CutsetVerdict::CutsetNotMinimal,
                (true, true) => CutsetVerdict::Minimal,
            };
            assert_eq!(g.is_minimal_cutset(&cutset).unwrap(), expected, "{:?} {cutset}", g.edges());
        }
    }
}

#[test]
fn enumerated_separations_are_valid_with_nonempty_sides() {
    for g in connected_catalog(6).unwrap() {
        for s in enum_mseps_bruteforce(&g).unwrap().iter() {
            assert!(s.validate_strict(&g).unwrap().is_empty(), "{s}");
            assert!(s.k() >= 2);
        }
    }
}

#[test]
fn enumeration_contains_every_minimal_cutset_separation() {
    for g in connected_catalog(6).unwrap() {
        let all = enum_mseps_bruteforce(&g).unwrap();
        for f in gen_laminar_family(&g, FamilyStrategy::MinimalCutsetsGreedy, 0, usize::MAX).unwrap() {
            for s in f.iter() {
                assert!(all.contains(s), "{s}");
            }
        }
    }
}

#[test]
fn generators_are_pure_functions_of_their_seed() {
    let gnp = GraphModel::Gnp { n: 8, p: 0.3 };
    assert_eq!(gen_graph(gnp, 42).unwrap(), gen_graph(gnp, 42).unwrap());
    let tree = GraphModel::Tree { n: 12 };
    assert_eq!(gen_graph(tree, 3).unwrap(), gen_graph(tree, 3).unwrap());
    let distinct: BTreeSet<Vec<(usize, usize)>> =
        (0..20).map(|seed| gen_graph(tree, seed).unwrap().edges().to_vec()).collect();
    assert!(distinct.len() > 10);

    let g = gen_graph(GraphModel::Grid { rows: 3, cols: 3 }, 0).unwrap();
    for seed in [0, 1, 99] {
        assert_eq!(
            gen_laminar_family(&g, FamilyStrategy::MinimalCutsetsGreedy, seed, 5).unwrap(),
            gen_laminar_family(&g, FamilyStrategy::MinimalCutsetsGreedy, seed, 5).unwrap()
        );
    }
    let (g1, td1) = random_decomposition(6, 9, 5).unwrap();
    let (g2, td2) = random_decomposition(6, 9, 5).unwrap();
    assert_eq!((g1, td1.bags()), (g2, td2.bags()));
}

#[test]
fn grid_example() {
    let g: Graph = gen_graph(GraphModel::Grid { rows: 2, cols: 3 }, 0).unwrap();
    assert_eq!((g.n(), g.edges().len()), (6, 7));
}
