use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::json::{FamilyRecord, GraphRecord};
use crate::separation::SeparationFamily;

/// Machine-readable record of a failed check, replayable from the CLI.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphRecord>,
    pub family: FamilyRecord,
    #[serde(default)]
    pub details: serde_json::Value,
}

impl Certificate {
    pub fn new(
        check: &str,
        graph: Option<&Graph>,
        family: &SeparationFamily,
        details: serde_json::Value,
    ) -> Self {
        Certificate {
            check: check.to_string(),
            graph: graph.map(GraphRecord::from),
            family: FamilyRecord::from(family),
            details,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("certificate serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }
}
