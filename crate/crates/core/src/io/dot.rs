use std::fmt::Write;

use crate::decomposition::TreeDecomposition;

/// DOT rendering with bags as labels. Center nodes of a deciduous tree are
/// drawn as ellipses, everything else as boxes.
pub fn td_to_dot(td: &TreeDecomposition) -> String {
    let centers = td.leaf_bipartition().map(|b| b.x).unwrap_or_default();
    let mut out = String::from("graph td {\n  node [shape=box];\n");
    for (i, bag) in td.bags().iter().enumerate() {
        let shape = if centers.contains(&i) { ", shape=ellipse" } else { "" };
        writeln!(out, "  {} [label=\"{}: {}\"{}];", i + 1, i + 1, bag, shape).unwrap();
    }
    for (a, b) in td.edges() {
        writeln!(out, "  {} -- {};", a + 1, b + 1).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex_set::VertexSet;

    #[test]
    fn dot_output() {
        let td = TreeDecomposition::new(
            3,
            vec![VertexSet::from([1, 2]), VertexSet::from([2]), VertexSet::from([2, 3])],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        assert_eq!(
            td_to_dot(&td),
            "graph td {\n  node [shape=box];\n  1 [label=\"1: {1,2}\"];\n  2 [label=\"2: {2}\", shape=ellipse];\n  3 [label=\"3: {2,3}\"];\n  1 -- 2;\n  2 -- 3;\n}\n"
        );
    }
}
