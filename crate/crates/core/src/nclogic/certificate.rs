use serde::{Deserialize, Serialize};

use super::classify::{Classification, Kind};
use crate::graph::format::{from_graph6, to_graph6};
use crate::graph::{ExclusivityGraph, GraphError};

/// Self-contained record of a pair verdict.
///
/// ```json
/// {"graph":"G?bFF_","d":3,"kind":"TIFS","a":0,"b_or_c":7,
///  "witness":[true,false,...],"raw_step2_verdict":true,"exhaustive":true}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub graph: String,
    pub d: usize,
    pub kind: Kind,
    pub a: usize,
    pub b_or_c: usize,
    pub witness: Option<Vec<bool>>,
    pub raw_step2_verdict: bool,
    pub exhaustive: bool,
}

impl Certificate {
    pub fn new(g: &ExclusivityGraph, d: usize, c: &Classification) -> Self {
        Certificate {
            graph: to_graph6(g),
            d,
            kind: c.kind,
            a: c.a,
            b_or_c: c.b_or_c,
            witness: c.witness_sat.as_ref().map(|w| w.values.clone()),
            raw_step2_verdict: c.raw_step2_verdict,
            exhaustive: true,
        }
    }

    pub fn parse_graph(&self) -> Result<ExclusivityGraph, GraphError> {
        from_graph6(self.graph.as_bytes())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
