//! Optimal planning: A* with admissible heuristics, plus exhaustive oracles
//! used to check it.

mod astar;
mod hmax;
mod oracle;
pub mod random;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

pub use astar::astar;
pub use hmax::{h_max, HMax};
pub use oracle::{brute_force_optimal, enumerate_goal_states, pareto_front, GoalStateCost, OracleError};

use crate::strips::Plan;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Heuristic {
    Blind,
    HMax,
    /// Number of unmet goal fluents. Not admissible; satisficing use only.
    GoalCount,
}

impl Heuristic {
    pub fn is_admissible(&self) -> bool {
        !matches!(self, Heuristic::GoalCount)
    }
}

impl FromStr for Heuristic {
    type Err = String;
    fn from_str(s: &str) -> Result<Heuristic, String> {
        match s.to_ascii_lowercase().as_str() {
            "blind" => Ok(Heuristic::Blind),
            "hmax" | "h_max" | "h-max" => Ok(Heuristic::HMax),
            "goalcount" | "goal-count" => Ok(Heuristic::GoalCount),
            other => Err(format!("unknown heuristic '{other}' (blind, hmax, goalcount)")),
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Heuristic::Blind => "blind",
            Heuristic::HMax => "hmax",
            Heuristic::GoalCount => "goalcount",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_expansions: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchLimits {
    fn default() -> SearchLimits {
        SearchLimits { max_expansions: 1_000_000, time_limit: Some(Duration::from_secs(30)) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Solved(Plan),
    ProvedUnsolvable,
    ResourceLimit,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Solved(_) => "solved",
            Outcome::ProvedUnsolvable => "unsolvable",
            Outcome::ResourceLimit => "resource-limit",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub expanded: u64,
    pub generated: u64,
    pub elapsed: Duration,
}

impl SearchResult {
    pub fn plan(&self) -> Option<&Plan> {
        match &self.outcome {
            Outcome::Solved(p) => Some(p),
            _ => None,
        }
    }
}
