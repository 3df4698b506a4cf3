//! PACE-style text formats.
//!
//! Graphs (`.gr`): `p tw <n> <m>` then one `u v` line per edge; `c` lines are
//! comments. A plain edge list (first line `n`, then `u v` lines) is also
//! accepted.
//!
//! Decompositions (`.td`): `s td <#bags> <max-bag-size> <n>`, then
//! `b <bag-id> <v...>` lines and `<i> <j>` tree edges, all 1-based. The
//! writer records the center class of a deciduous tree in a
//! `c x-class: <ids>` comment, which readers ignore.

use std::fmt::Write;

use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.first() {
            None | Some(&"c") => None,
            Some(_) => Some((i + 1, words)),
        }
    })
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number(line: usize, word: &str) -> Result<usize> {
    word.parse()
        .map_err(|_| parse_error(line, format!("expected a non-negative integer, found {word:?}")))
}

fn pair(line: usize, words: &[&str]) -> Result<(usize, usize)> {
    match words {
        [a, b] => Ok((number(line, a)?, number(line, b)?)),
        _ => Err(parse_error(line, "expected two integers")),
    }
}

pub fn read_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_error(0, "empty graph file"))?;
    let (n, declared) = match header.as_slice() {
        ["p", "tw", n, m] => (number(line, n)?, Some(number(line, m)?)),
        ["p", ..] => return Err(parse_error(line, "expected `p tw <n> <m>`")),
        [n] => (number(line, n)?, None),
        _ => return Err(parse_error(line, "expected a `p tw` header or a vertex count")),
    };
    let mut edges = Vec::new();
    for (line, words) in lines {
        edges.push(pair(line, &words)?);
    }
    if let Some(m) = declared {
        if m != edges.len() {
            return Err(parse_error(
                line,
                format!("header declares {m} edges, found {}", edges.len()),
            ));
        }
    }
    Graph::new(n, edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.n(), g.edges().len());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_td(text: &str) -> Result<TreeDecomposition> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_error(0, "empty decomposition file"))?;
    let (count, max_bag, n) = match header.as_slice() {
        ["s", "td", b, w, n] => (number(line, b)?, number(line, w)?, number(line, n)?),
        _ => return Err(parse_error(line, "expected `s td <#bags> <max-bag-size> <n>`")),
    };
    let mut bags: Vec<Option<VertexSet>> = vec![None; count];
    let mut edges = Vec::new();
    for (line, words) in lines {
        if words[0] == "b" {
            let id = number(line, words.get(1).copied().unwrap_or(""))?;
            if id == 0 || id > count {
                return Err(parse_error(line, format!("bag id {id} outside 1..={count}")));
            }
            if bags[id - 1].is_some() {
                return Err(parse_error(line, format!("bag {id} defined twice")));
            }
            let members = words[2..]
                .iter()
                .map(|w| number(line, w))
                .collect::<Result<VertexSet>>()?;
            bags[id - 1] = Some(members);
        } else {
            let (a, b) = pair(line, &words)?;
            if a == 0 || b == 0 || a > count || b > count {
                return Err(parse_error(line, format!("tree edge {a} {b} names a missing bag")));
            }
            edges.push((a - 1, b - 1));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| parse_error(line, format!("bag {} is missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    let actual = bags.iter().map(VertexSet::len).max().unwrap_or(0);
    if actual != max_bag {
        return Err(parse_error(
            line,
            format!("header declares max bag size {max_bag}, found {actual}"),
        ));
    }
    TreeDecomposition::new(n, bags, edges)
}

pub fn write_td(td: &TreeDecomposition) -> String {
    let max_bag = td.bags().iter().map(VertexSet::len).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.node_count(), max_bag, td.n());
    if let Ok(split) = td.leaf_bipartition() {
        out.push_str("c x-class:");
        for x in split.x {
            write!(out, " {}", x + 1).unwrap();
        }
        out.push('\n');
    }
    for (i, bag) in td.bags().iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    for (a, b) in td.edges() {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const P5_GR: &str = "p tw 5 4\n1 2\n2 3\n3 4\n4 5\n";
    const P5_TD: &str = "s td 5 3 5\nc x-class: 2 4\nb 1 1 2\nb 2 2\nb 3 2 3 4\nb 4 4\nb 5 4 5\n1 2\n2 3\n3 4\n4 5\n";

    #[test]
    fn graph_formats() {
        let g = read_graph(P5_GR).unwrap();
        assert_eq!(g.edges().len(), 4);
        assert_eq!(write_graph(&g), P5_GR);
        let plain = read_graph("c a comment\n5\n4 5\n1 2\n\n3 2\n3 4\n").unwrap();
        assert_eq!(plain, g);
        assert!(matches!(read_graph("p tw 5 3\n1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(read_graph("p tw 3 1\n1 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_graph("p tw 3 1\n1 4\n"), Err(Error::OutOfRange { .. })));
        assert!(matches!(read_graph(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn td_formats() {
        let td = read_td(P5_TD).unwrap();
        assert_eq!(td.node_count(), 5);
        assert_eq!(td.bag(2), &VertexSet::from([2, 3, 4]));
        assert_eq!(write_td(&td), P5_TD);
        let shuffled = "s td 2 2 3\n1 2\nb 2 3 2\nc hi\nb 1 1 2\n";
        let td = read_td(shuffled).unwrap();
        assert_eq!(td.bag(1), &VertexSet::from([2, 3]));
        assert_eq!(write_td(&td), "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
        assert!(read_td("s td 2 2 3\nb 1 1 2\n1 2\n").is_err());
        assert!(read_td("s td 1 3 3\nb 1 1 2\n").is_err());
        assert!(read_td("s td 1 2 3\nb 1 1 2\nb 1 2 3\n").is_err());
        let single = read_td("s td 1 0 0\nb 1\n").unwrap();
        assert_eq!(write_td(&single), "s td 1 0 0\nc x-class:\nb 1\n");
    }
}
