//! Family JSON:
//!
//! ```text
//! {
//!   "n": 5,
//!   "separations": [
//!     {"cutset": [2], "sides": [[1], [3, 4, 5]]},
//!     {"cutset": [4], "sides": [[1, 2, 3], [5]]}
//!   ]
//! }
//! ```
//!
//! Vertices are 1-based. Readers accept any side and member order; the
//! writer emits the canonical order, one separation per line.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::separation::{ManySidedSeparation, SeparationFamily};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphRecord {
    fn from(g: &Graph) -> Self {
        GraphRecord {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl GraphRecord {
    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().map(|e| (e[0], e[1])))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationRecord {
    pub cutset: Vec<usize>,
    pub sides: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub n: usize,
    pub separations: Vec<SeparationRecord>,
}

impl From<&SeparationFamily> for FamilyRecord {
    fn from(f: &SeparationFamily) -> Self {
        FamilyRecord {
            n: f.n(),
            separations: f
                .iter()
                .map(|s| SeparationRecord {
                    cutset: s.cutset().to_vec(),
                    sides: s.sides().iter().map(VertexSet::to_vec).collect(),
                })
                .collect(),
        }
    }
}

impl FamilyRecord {
    pub fn to_family(&self) -> Result<SeparationFamily> {
        let mut family = SeparationFamily::new(self.n);
        for record in &self.separations {
            let sides = record
                .sides
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect();
            let s = ManySidedSeparation::new(self.n, sides, record.cutset.iter().copied().collect())?;
            family.insert(s)?;
        }
        Ok(family)
    }
}

pub fn read_family(text: &str) -> Result<SeparationFamily> {
    let record: FamilyRecord = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    record.to_family()
}

fn write_list(out: &mut String, items: impl IntoIterator<Item = usize>) {
    out.push('[');
    for (i, v) in items.into_iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write!(out, "{v}").unwrap();
    }
    out.push(']');
}

pub fn write_family(f: &SeparationFamily) -> String {
    let mut out = format!("{{\n  \"n\": {},\n  \"separations\": [", f.n());
    for (m, s) in f.iter().enumerate() {
        out.push_str(if m == 0 { "\n    " } else { ",\n    " });
        out.push_str("{\"cutset\": ");
        write_list(&mut out, s.cutset());
        out.push_str(", \"sides\": [");
        for (i, side) in s.sides().iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            write_list(&mut out, side);
        }
        out.push_str("]}");
    }
    if !f.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const P5_FAMILY: &str = "{
  \"n\": 5,
  \"separations\": [
    {\"cutset\": [2], \"sides\": [[1], [3, 4, 5]]},
    {\"cutset\": [4], \"sides\": [[1, 2, 3], [5]]}
  ]
}
";

    #[test]
    fn family_round_trip_is_byte_exact() {
        let f = read_family(P5_FAMILY).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(write_family(&f), P5_FAMILY);
        assert_eq!(
            write_family(&SeparationFamily::new(3)),
            "{\n  \"n\": 3,\n  \"separations\": []\n}\n"
        );
    }

    #[test]
    fn reader_accepts_any_order() {
        let text = r#"{"separations": [{"sides": [[5], [3, 2, 1]], "cutset": [4]},
            {"cutset": [2], "sides": [[5, 4, 3], [1]]}], "n": 5}"#;
        assert_eq!(write_family(&read_family(text).unwrap()), P5_FAMILY);
    }

    #[test]
    fn reader_errors() {
        assert!(matches!(read_family("{\"n\": 5"), Err(Error::Parse { .. })));
        let one_side = r#"{"n": 3, "separations": [{"cutset": [], "sides": [[1, 2, 3]]}]}"#;
        assert!(matches!(read_family(one_side), Err(Error::TooFewSides(1))));
    }
}
