use std::fmt;
use std::time::Duration;

use serde::Serialize;

use crate::square::Square;
use crate::transversal::Transversal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Found(Transversal),
    NotFound,
    Infeasible,
}

impl Outcome {
    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn transversal(&self) -> Option<&Transversal> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Found(_) => "found",
            Outcome::NotFound => "not_found",
            Outcome::Infeasible => "infeasible",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    Constructive,
    MultSplit,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Constructive => "constructive",
            Method::MultSplit => "mult-split",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub outcome: Outcome,
    pub method: Method,
    pub node_count: u64,
    pub elapsed: Duration,
    /// Number of transversals, in count and all modes.
    pub count: Option<u64>,
    /// Every transversal, in all mode.
    pub all: Option<Vec<Transversal>>,
}

/// Serialized form of a [`SolveReport`]; cells are `[row, col, symbol]`
/// with 1-based coordinates and original symbols.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReportJson {
    pub outcome: &'static str,
    pub method: Method,
    pub cells: Vec<[u64; 3]>,
    pub node_count: u64,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all: Option<Vec<Vec<[u64; 3]>>>,
}

impl SolveReport {
    pub fn to_json(&self, square: &Square) -> SolveReportJson {
        SolveReportJson {
            outcome: self.outcome.tag(),
            method: self.method,
            cells: self
                .outcome
                .transversal()
                .map(|t| t.triples(square))
                .unwrap_or_default(),
            node_count: self.node_count,
            elapsed_ms: self.elapsed.as_secs_f64() * 1e3,
            count: self.count,
            all: self
                .all
                .as_ref()
                .map(|ts| ts.iter().map(|t| t.triples(square)).collect()),
        }
    }
}
