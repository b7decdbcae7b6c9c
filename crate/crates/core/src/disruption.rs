//! Plan disruption: how far the reached goal state strays from the initial state.

use serde::Serialize;

use crate::error::ExecError;
use crate::strips::{FluentSet, Plan, State, Task};

/// `|init △ final|` together with the fluents on each side of the difference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisruptionReport {
    pub value: usize,
    /// Held initially, no longer held at the end.
    pub removed: FluentSet,
    /// Not held initially, held at the end.
    pub introduced: FluentSet,
}

impl DisruptionReport {
    pub fn to_json(&self, task: &Task) -> DisruptionJson {
        let names = |s: &FluentSet| {
            let mut v: Vec<String> = task.state_names(s).into_iter().map(String::from).collect();
            v.sort();
            v
        };
        DisruptionJson {
            value: self.value,
            removed: names(&self.removed),
            introduced: names(&self.introduced),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisruptionJson {
    pub value: usize,
    pub removed: Vec<String>,
    pub introduced: Vec<String>,
}

/// Disruption bounds computed from the task alone.
///
/// `upper` is `|F| - lower` as originally proposed. It is not a sound bound
/// on every plan: with `F = {a, b}`, `I = {a}`, `G = {b}` the only goal
/// state reachable by swapping `a` for `b` has disruption 2 while
/// `upper = 1`. Treat it as an estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DisruptionBounds {
    pub lower: usize,
    pub upper: usize,
}

pub fn state_disruption(init: &State, final_state: &State) -> DisruptionReport {
    let removed = init.difference(final_state);
    let introduced = final_state.difference(init);
    DisruptionReport { value: removed.len() + introduced.len(), removed, introduced }
}

pub fn plan_disruption(task: &Task, plan: &Plan) -> Result<DisruptionReport, ExecError> {
    let fin = task.final_state(plan)?;
    Ok(state_disruption(task.init(), &fin))
}

pub fn disruption_bounds(task: &Task) -> DisruptionBounds {
    let lower = task.goal().difference(task.init()).len();
    DisruptionBounds { lower, upper: task.num_fluents() - lower }
}
