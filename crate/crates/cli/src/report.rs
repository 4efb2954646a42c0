//! JSON documents written to stdout.

use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub kmax: usize,
}

/// Echo of the effective search parameters.
#[derive(Debug, Serialize)]
pub struct Params {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algo: Option<&'static str>,
    pub k: usize,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agg: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub non_overlapping: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    /// Set when the result carries no optimality guarantee.
    pub heuristic: bool,
}

impl Params {
    pub fn new(command: &str, k: usize, r: usize) -> Self {
        Self {
            command: command.to_owned(),
            mode: None,
            algo: None,
            k,
            r,
            s: None,
            epsilon: None,
            agg: None,
            alpha: None,
            beta: None,
            strategy: None,
            seed: None,
            non_overlapping: false,
            threads: None,
            heuristic: false,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CommunityOut {
    pub rank: usize,
    pub value: f64,
    pub size: usize,
    /// Original vertex labels, ascending.
    pub members: Vec<u64>,
}

#[derive(Debug, Serialize)]
pub struct SearchReport {
    pub params: Params,
    pub graph: GraphStats,
    pub communities: Vec<CommunityOut>,
    pub wall_time_ms: f64,
}

/// The part of a stored report that `eval-ndcg` reads back.
#[derive(Debug, Deserialize)]
pub struct RankingIn {
    pub communities: Vec<CommunityOut>,
}

#[derive(Debug, Serialize)]
pub struct NdcgReport {
    pub ndcg: f64,
    pub r: usize,
}

#[derive(Debug, Serialize)]
pub struct CoreOut {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub components: usize,
}

#[derive(Debug, Serialize)]
pub struct CoreStatsReport {
    pub graph: GraphStats,
    pub cores: Vec<CoreOut>,
}

#[derive(Debug, Serialize)]
pub struct FilesReport {
    pub graph: GraphStats,
    pub files: Vec<String>,
}
