//! Edge hierarchies: every edge carries a rank and queries only follow
//! edges whose rank does not drop below the rank the search arrived with.

pub mod construct;
mod hierarchy;
mod query;
mod unpack;

use std::fmt;
use std::str::FromStr;

pub use construct::{build_edge_hierarchy, build_edge_hierarchy_observed, OracleKind, RoundLog};
pub use hierarchy::{EdgeHierarchy, EhEdge};
pub use query::{compute_min_vertices, eh_query, EhQuery, QueryResult, RelaxRecord, TraceEntry};
pub use unpack::unpack_path;

pub type Rank = u64;

/// Rank of an edge that still has to be ranked.
pub const UNRANKED: Rank = Rank::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum StallPolicy {
    #[default]
    None,
    OnDemand,
    InAdvance,
    /// Stall on demand restricted to the given fraction of the highest
    /// ranked incident edges.
    Partial(f64),
}

impl StallPolicy {
    /// The grid swept by the random query benchmark.
    pub fn benchmark_grid() -> Vec<StallPolicy> {
        let mut out = vec![StallPolicy::None, StallPolicy::OnDemand, StallPolicy::InAdvance];
        out.extend((0..=10).map(|i| StallPolicy::Partial(i as f64 / 10.0)));
        out
    }

    /// Number of check edges examined out of `degree`.
    pub fn check_prefix(&self, degree: usize) -> usize {
        match *self {
            StallPolicy::OnDemand => degree,
            StallPolicy::Partial(f) => {
                // guard against 0.3 * 10 = 3.0000000000000004
                let k = (f * degree as f64 - 1e-9).ceil();
                (k.max(0.0) as usize).min(degree)
            }
            StallPolicy::None | StallPolicy::InAdvance => 0,
        }
    }
}

impl fmt::Display for StallPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StallPolicy::None => write!(f, "none"),
            StallPolicy::OnDemand => write!(f, "on-demand"),
            StallPolicy::InAdvance => write!(f, "in-advance"),
            StallPolicy::Partial(x) => write!(f, "partial:{x:.1}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown stall policy {0:?}; expected none, on-demand, in-advance or partial:<fraction>")]
pub struct ParseStallPolicyError(String);

impl FromStr for StallPolicy {
    type Err = ParseStallPolicyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(StallPolicy::None),
            "on-demand" => Ok(StallPolicy::OnDemand),
            "in-advance" => Ok(StallPolicy::InAdvance),
            _ => {
                let f = s
                    .strip_prefix("partial:")
                    .and_then(|x| x.parse::<f64>().ok())
                    .filter(|f| (0.0..=1.0).contains(f))
                    .ok_or_else(|| ParseStallPolicyError(s.to_string()))?;
                Ok(StallPolicy::Partial(f))
            }
        }
    }
}

impl FromStr for OracleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ch" => Ok(OracleKind::Ch),
            "dijkstra" => Ok(OracleKind::Dijkstra),
            _ => Err(format!("unknown oracle {s:?}; expected ch or dijkstra")),
        }
    }
}
