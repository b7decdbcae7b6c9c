//! Exhaustive reference solvers: enumerate the reachable state space, then
//! run uniform-cost search over the explicit graph.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::time::Instant;

use thiserror::Error;

use super::{Outcome, SearchResult};
use crate::cost::Cost;
use crate::disruption::state_disruption;
use crate::strips::{ActionId, Plan, State, Task};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("reachable state space exceeds the budget of {0} states")]
    ResourceLimit(usize),
}

struct StateGraph {
    states: Vec<State>,
    edges: Vec<Vec<(usize, ActionId, Cost)>>,
}

fn explore(task: &Task, budget: usize) -> Result<StateGraph, OracleError> {
    let mut states = vec![task.init().clone()];
    let mut ids: HashMap<State, usize> = HashMap::from([(task.init().clone(), 0)]);
    let mut edges = vec![Vec::new()];
    let mut frontier = VecDeque::from([0usize]);
    while let Some(i) = frontier.pop_front() {
        let s = states[i].clone();
        for a in task.action_ids() {
            if !task.applicable(&s, a) {
                continue;
            }
            let t = task.action(a).successor(&s);
            let j = match ids.get(&t) {
                Some(&j) => j,
                None => {
                    if states.len() >= budget {
                        return Err(OracleError::ResourceLimit(budget));
                    }
                    let j = states.len();
                    ids.insert(t.clone(), j);
                    states.push(t);
                    edges.push(Vec::new());
                    frontier.push_back(j);
                    j
                }
            };
            edges[i].push((j, a, task.action(a).cost));
        }
    }
    Ok(StateGraph { states, edges })
}

type Predecessors = Vec<Option<(usize, ActionId)>>;

/// Cheapest cost and predecessor for every reachable state.
fn dijkstra(g: &StateGraph) -> (Vec<Option<Cost>>, Predecessors) {
    let n = g.states.len();
    let mut dist: Vec<Option<Cost>> = vec![None; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::from([Reverse((Cost::ZERO, 0usize))]);
    dist[0] = Some(Cost::ZERO);
    while let Some(Reverse((d, i))) = heap.pop() {
        if done[i] {
            continue;
        }
        done[i] = true;
        for &(j, a, c) in &g.edges[i] {
            let nd = d + c;
            if dist[j].is_none_or(|old| nd < old) {
                dist[j] = Some(nd);
                pred[j] = Some((i, a));
                heap.push(Reverse((nd, j)));
            }
        }
    }
    (dist, pred)
}

/// Ground-truth optimal plan by exhaustive uniform-cost search.
pub fn brute_force_optimal(task: &Task, budget: usize) -> SearchResult {
    let start = Instant::now();
    let graph = match explore(task, budget) {
        Ok(g) => g,
        Err(_) => {
            return SearchResult { outcome: Outcome::ResourceLimit, expanded: budget as u64, generated: 0, elapsed: start.elapsed() }
        }
    };
    let (dist, pred) = dijkstra(&graph);
    let best = (0..graph.states.len())
        .filter(|&i| task.is_goal(&graph.states[i]))
        .filter_map(|i| dist[i].map(|d| (d, i)))
        .min();
    let generated = graph.edges.iter().map(Vec::len).sum::<usize>() as u64;
    let outcome = match best {
        Some((_, mut i)) => {
            let mut steps = Vec::new();
            while let Some((p, a)) = pred[i] {
                steps.push(a);
                i = p;
            }
            steps.reverse();
            Outcome::Solved(Plan::new(steps))
        }
        None => Outcome::ProvedUnsolvable,
    };
    SearchResult { outcome, expanded: graph.states.len() as u64, generated, elapsed: start.elapsed() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoalStateCost {
    pub state: State,
    pub cost: Cost,
    pub disruption: usize,
}

/// Every reachable goal state with the cheapest cost of reaching it.
pub fn enumerate_goal_states(task: &Task, budget: usize) -> Result<Vec<GoalStateCost>, OracleError> {
    let graph = explore(task, budget)?;
    let (dist, _) = dijkstra(&graph);
    let mut out: Vec<GoalStateCost> = graph
        .states
        .iter()
        .zip(dist)
        .filter(|(s, _)| task.is_goal(s))
        .filter_map(|(s, d)| {
            d.map(|cost| GoalStateCost { state: s.clone(), cost, disruption: state_disruption(task.init(), s).value })
        })
        .collect();
    out.sort_by(|a, b| (a.cost, a.disruption, &a.state).cmp(&(b.cost, b.disruption, &b.state)));
    Ok(out)
}

/// Non-dominated `(cost, disruption)` points, ascending in cost.
pub fn pareto_front(points: &[GoalStateCost]) -> Vec<(Cost, usize)> {
    let mut pts: Vec<(Cost, usize)> = points.iter().map(|p| (p.cost, p.disruption)).collect();
    pts.sort();
    pts.dedup();
    let mut front: Vec<(Cost, usize)> = Vec::new();
    for (c, d) in pts {
        if front.last().is_none_or(|&(_, best)| d < best) {
            front.push((c, d));
        }
    }
    front
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strips::tests::table_task;
    use crate::{FluentSet, GroundAction};

    #[test]
    fn table_task_oracle() {
        let t = table_task();
        let r = brute_force_optimal(&t, 100_000);
        assert_eq!(t.plan_cost(r.plan().unwrap()), Cost::integer(20));
        let goals = enumerate_goal_states(&t, 100_000).unwrap();
        let cdb = t.state_from_names(["C", "D", "B"]).unwrap();
        assert!(goals.iter().any(|g| g.state == cdb && g.cost == Cost::integer(20) && g.disruption == 3));
    }

    #[test]
    fn unsolvable_toy() {
        let t = Task::new(vec!["p".into()], vec![], FluentSet::empty(1), FluentSet::full(1)).unwrap();
        assert_eq!(brute_force_optimal(&t, 10).outcome, Outcome::ProvedUnsolvable);
        assert!(enumerate_goal_states(&t, 10).unwrap().is_empty());
    }

    #[test]
    fn goal_in_init_listed_at_zero() {
        let t = Task::new(vec!["p".into()], vec![], FluentSet::full(1), FluentSet::empty(1)).unwrap();
        let goals = enumerate_goal_states(&t, 10).unwrap();
        assert_eq!(goals[0].state, *t.init());
        assert_eq!(goals[0].cost, Cost::ZERO);
    }

    #[test]
    fn budget_is_enforced() {
        // A counter over 3 bits reaches 8 states.
        let n = 3;
        let mut acts = Vec::new();
        for i in 0..n {
            let mut a = GroundAction::noop(format!("set{i}"), n, Cost::ONE);
            a.add.insert(crate::FluentId(i));
            acts.push(a);
        }
        let t = Task::new((0..n).map(|i| format!("b{i}")).collect(), acts, FluentSet::empty(n), FluentSet::full(n)).unwrap();
        assert!(matches!(enumerate_goal_states(&t, 4), Err(OracleError::ResourceLimit(4))));
        assert_eq!(brute_force_optimal(&t, 4).outcome, Outcome::ResourceLimit);
        assert_eq!(enumerate_goal_states(&t, 8).unwrap().len(), 1);
    }

    #[test]
    fn front_keeps_only_non_dominated() {
        let s = FluentSet::empty(0);
        let p = |c: u64, d: usize| GoalStateCost { state: s.clone(), cost: Cost::integer(c), disruption: d };
        let pts = vec![p(9, 8), p(12, 3), p(10, 5), p(11, 5), p(9, 9), p(13, 3)];
        assert_eq!(
            pareto_front(&pts),
            vec![(Cost::integer(9), 8), (Cost::integer(10), 5), (Cost::integer(12), 3)]
        );
    }
}
