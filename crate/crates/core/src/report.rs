//! Side-by-side comparison of the three distributed algorithms against the
//! exact optimum, in the shape of the evaluation tables: cover size, message
//! count, deflection from the optimum and the approximation ratio.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::kernel::{self, MessageKind, SimConfig, SimError};
use crate::oracle::{self, ApproxReport, OracleError};
use crate::programs::bfs::BfsProgram;
use crate::programs::greedy::GreedyProgram;
use crate::programs::matching::MatchingProgram;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    BruteForce,
    Greedy,
    Matching,
    Bfs,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::BruteForce => "brute_force",
            Algorithm::Greedy => "greedy",
            Algorithm::Matching => "matching",
            Algorithm::Bfs => "bfs",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        match name {
            "brute_force" => Some(Algorithm::BruteForce),
            "greedy" => Some(Algorithm::Greedy),
            "matching" => Some(Algorithm::Matching),
            "bfs" => Some(Algorithm::Bfs),
            _ => None,
        }
    }
}

/// One comparison row. `messages` is `None` for the brute-force oracle
/// (rendered as `N/A`); `ratio` is the three-decimal rendering or
/// `"INVALID"` when the cover fails validity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareRow {
    pub algorithm: Algorithm,
    pub cover_size: u64,
    pub messages: Option<u64>,
    #[serde(default)]
    pub per_kind_messages: BTreeMap<MessageKind, u64>,
    pub deflection: i64,
    pub ratio: String,
    pub valid: bool,
}

#[derive(Debug, Error)]
pub enum CompareError {
    #[error("comparison requires a connected graph")]
    Disconnected,
    #[error("oracle failed: {0}")]
    Oracle(#[from] OracleError),
    #[error("{algorithm} run failed: {source}")]
    Sim {
        algorithm: &'static str,
        source: SimError,
    },
    #[error("line {line}: malformed report row {content:?}")]
    Parse { line: usize, content: String },
}

/// Runs the exact oracle plus all three algorithms on `g` and builds the
/// four comparison rows. Enumeration serves as the oracle up to its size
/// guard; branch-and-bound takes over beyond it.
pub fn compare(g: &Graph, cfg: &SimConfig) -> Result<Vec<CompareRow>, CompareError> {
    if !g.is_connected() {
        return Err(CompareError::Disconnected);
    }
    let oracle_result = if g.node_count() <= oracle::ENUMERATE_MAX_NODES {
        oracle::min_vertex_cover_enumerate(g)?
    } else {
        oracle::min_vertex_cover_bnb(g)?
    };
    let opt = oracle_result.size;

    let mut rows = vec![CompareRow {
        algorithm: Algorithm::BruteForce,
        cover_size: opt,
        messages: None,
        per_kind_messages: BTreeMap::new(),
        deflection: 0,
        ratio: oracle::format_ratio_3dp(1, 1),
        valid: true,
    }];

    let sim = |algorithm: Algorithm| -> Result<kernel::SimResult, CompareError> {
        let wrap = |source| CompareError::Sim {
            algorithm: algorithm.name(),
            source,
        };
        match algorithm {
            Algorithm::Greedy => kernel::run(g, &GreedyProgram::from_config(cfg), cfg).map_err(wrap),
            Algorithm::Matching => kernel::run(g, &MatchingProgram::new(), cfg).map_err(wrap),
            Algorithm::Bfs => {
                let program = BfsProgram::from_config(g, cfg).map_err(|e| wrap(e.into()))?;
                kernel::run(g, &program, cfg).map_err(wrap)
            }
            Algorithm::BruteForce => unreachable!(),
        }
    };

    for algorithm in [Algorithm::Greedy, Algorithm::Matching, Algorithm::Bfs] {
        let res = sim(algorithm)?;
        let size = res.cover.len() as u64;
        let ratio = match oracle::approximation_report(g, &res.cover, opt)? {
            ApproxReport::Valid { rendered, .. } => rendered,
            ApproxReport::Invalid => "INVALID".to_string(),
        };
        rows.push(CompareRow {
            algorithm,
            cover_size: size,
            messages: Some(res.total_messages),
            per_kind_messages: res.message_counts,
            deflection: size as i64 - opt as i64,
            ratio,
            valid: res.is_valid_cover,
        });
    }
    Ok(rows)
}

/// CSV rendering: header plus one row per algorithm, LF line endings.
/// Per-kind message counts are not part of the CSV schema.
pub fn to_csv(rows: &[CompareRow]) -> String {
    let mut out = String::from("algorithm,cover_size,messages,deflection,ratio,valid\n");
    for row in rows {
        let messages = row
            .messages
            .map_or_else(|| "N/A".to_string(), |m| m.to_string());
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.algorithm.name(),
            row.cover_size,
            messages,
            row.deflection,
            row.ratio,
            row.valid
        ));
    }
    out
}

/// Parses [`to_csv`] output back into rows (with empty per-kind maps, which
/// the CSV schema does not carry).
pub fn from_csv(text: &str) -> Result<Vec<CompareRow>, CompareError> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 || line.is_empty() {
            continue;
        }
        let bad = || CompareError::Parse {
            line: idx + 1,
            content: line.to_string(),
        };
        let fields: Vec<&str> = line.split(',').collect();
        let [algorithm, cover_size, messages, deflection, ratio, valid] = fields[..] else {
            return Err(bad());
        };
        rows.push(CompareRow {
            algorithm: Algorithm::from_name(algorithm).ok_or_else(bad)?,
            cover_size: cover_size.parse().map_err(|_| bad())?,
            messages: if messages == "N/A" {
                None
            } else {
                Some(messages.parse().map_err(|_| bad())?)
            },
            per_kind_messages: BTreeMap::new(),
            deflection: deflection.parse().map_err(|_| bad())?,
            ratio: ratio.to_string(),
            valid: valid.parse().map_err(|_| bad())?,
        });
    }
    Ok(rows)
}

pub fn to_json(rows: &[CompareRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize")
}

pub fn from_json(text: &str) -> Result<Vec<CompareRow>, serde_json::Error> {
    serde_json::from_str(text)
}

/// Plain-text table for terminals.
pub fn render_table(rows: &[CompareRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<12} {:>10} {:>10} {:>10} {:>8} {:>7}   {}\n",
        "algorithm", "cover", "messages", "deflection", "ratio", "valid", "per-kind"
    ));
    for row in rows {
        let messages = row
            .messages
            .map_or_else(|| "N/A".to_string(), |m| m.to_string());
        let per_kind = row
            .per_kind_messages
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(k, c)| format!("{k:?}={c}"))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!(
            "{:<12} {:>10} {:>10} {:>10} {:>8} {:>7}   {}\n",
            row.algorithm.name(),
            row.cover_size,
            messages,
            row.deflection,
            row.ratio,
            row.valid,
            per_kind
        ));
    }
    out
}
