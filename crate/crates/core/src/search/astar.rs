use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};
use std::time::Instant;

use super::{HMax, Heuristic, Outcome, SearchLimits, SearchResult};
use crate::cost::Cost;
use crate::strips::{ActionId, Plan, State, Task};

struct Node {
    state: State,
    g: Cost,
    /// `None` marks a relaxed dead end; such nodes are never queued.
    h: Option<Cost>,
    parent: Option<(usize, ActionId)>,
    expanded_at: Option<Cost>,
}

enum Evaluator {
    Blind,
    HMax(HMax),
    GoalCount,
}

impl Evaluator {
    fn new(task: &Task, h: Heuristic) -> Evaluator {
        match h {
            Heuristic::Blind => Evaluator::Blind,
            Heuristic::HMax => Evaluator::HMax(HMax::new(task)),
            Heuristic::GoalCount => Evaluator::GoalCount,
        }
    }

    fn eval(&self, task: &Task, s: &State) -> Option<Cost> {
        match self {
            Evaluator::Blind => Some(Cost::ZERO),
            Evaluator::HMax(h) => h.evaluate(s),
            Evaluator::GoalCount => Some(Cost::integer(task.goal().difference(s).len() as u64)),
        }
    }
}

/// A* over the explicit state space with full-state duplicate detection.
///
/// Queue order is `(f, h, insertion)` ascending. Nodes are reopened when a
/// cheaper path turns up, so optimality only needs an admissible `h`.
pub fn astar(task: &Task, heuristic: Heuristic, limits: SearchLimits) -> SearchResult {
    let start = Instant::now();
    let eval = Evaluator::new(task, heuristic);
    let mut nodes: Vec<Node> = Vec::new();
    let mut index: HashMap<State, usize> = HashMap::new();
    let mut open: BinaryHeap<Reverse<(Cost, Cost, u64, usize)>> = BinaryHeap::new();
    let mut seq = 0u64;
    let mut expanded = 0u64;
    let mut generated = 1u64;

    let init = task.init().clone();
    let h0 = eval.eval(task, &init);
    index.insert(init.clone(), 0);
    nodes.push(Node { state: init, g: Cost::ZERO, h: h0, parent: None, expanded_at: None });
    if let Some(h) = h0 {
        open.push(Reverse((h, h, seq, 0)));
        seq += 1;
    }

    let finish = |outcome, expanded, generated| SearchResult { outcome, expanded, generated, elapsed: start.elapsed() };

    while let Some(Reverse((_, _, _, idx))) = open.pop() {
        let node = &nodes[idx];
        if node.expanded_at.is_some_and(|g| g <= node.g) {
            continue;
        }
        if task.is_goal(&node.state) {
            return finish(Outcome::Solved(extract_plan(&nodes, idx)), expanded, generated);
        }
        if expanded >= limits.max_expansions
            || (expanded.is_multiple_of(256) && limits.time_limit.is_some_and(|t| start.elapsed() > t))
        {
            return finish(Outcome::ResourceLimit, expanded, generated);
        }
        expanded += 1;
        let g = node.g;
        nodes[idx].expanded_at = Some(g);
        let state = nodes[idx].state.clone();

        for a in task.action_ids() {
            let act = task.action(a);
            if !act.is_applicable(&state) {
                continue;
            }
            generated += 1;
            let succ = act.successor(&state);
            let g2 = g + act.cost;
            match index.entry(succ) {
                Entry::Vacant(e) => {
                    let h = eval.eval(task, e.key());
                    let id = nodes.len();
                    nodes.push(Node { state: e.key().clone(), g: g2, h, parent: Some((idx, a)), expanded_at: None });
                    e.insert(id);
                    if let Some(h) = h {
                        open.push(Reverse((g2 + h, h, seq, id)));
                        seq += 1;
                    }
                }
                Entry::Occupied(e) => {
                    let id = *e.get();
                    let n = &mut nodes[id];
                    if g2 < n.g {
                        n.g = g2;
                        n.parent = Some((idx, a));
                        if let Some(h) = n.h {
                            open.push(Reverse((g2 + h, h, seq, id)));
                            seq += 1;
                        }
                    }
                }
            }
        }
    }
    finish(Outcome::ProvedUnsolvable, expanded, generated)
}

fn extract_plan(nodes: &[Node], mut idx: usize) -> Plan {
    let mut steps = Vec::new();
    while let Some((p, a)) = nodes[idx].parent {
        steps.push(a);
        idx = p;
    }
    steps.reverse();
    Plan::new(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strips::tests::table_task;
    use crate::{FluentId, FluentSet, GroundAction, Validation};

    fn solve(t: &Task, h: Heuristic) -> SearchResult {
        astar(t, h, SearchLimits::default())
    }

    #[test]
    fn table_task_optimal() {
        let t = table_task();
        for h in [Heuristic::Blind, Heuristic::HMax] {
            let r = solve(&t, h);
            let p = r.plan().expect("solved");
            assert_eq!(t.plan_cost(p), Cost::integer(20));
            assert_eq!(t.plan_names(p), vec!["a1", "a2"]);
        }
    }

    #[test]
    fn goal_in_init_gives_empty_plan() {
        let t = Task::new(vec!["p".into()], vec![GroundAction::noop("x", 1, Cost::ONE)], FluentSet::full(1), FluentSet::full(1))
            .unwrap();
        let r = solve(&t, Heuristic::Blind);
        assert_eq!(r.outcome, Outcome::Solved(Plan::default()));
    }

    #[test]
    fn unsolvable_is_proved() {
        let t = Task::new(vec!["p".into()], vec![GroundAction::noop("x", 1, Cost::ONE)], FluentSet::empty(1), FluentSet::full(1))
            .unwrap();
        assert_eq!(solve(&t, Heuristic::Blind).outcome, Outcome::ProvedUnsolvable);
        assert_eq!(solve(&t, Heuristic::HMax).outcome, Outcome::ProvedUnsolvable);
    }

    #[test]
    fn expansion_budget() {
        let t = table_task();
        let r = astar(&t, Heuristic::Blind, SearchLimits { max_expansions: 1, time_limit: None });
        assert_eq!(r.outcome, Outcome::ResourceLimit);
    }

    #[test]
    fn prefers_cheap_long_path() {
        // Direct action costs 5; a three-step chain costs 3.
        let n = 4;
        let mut direct = GroundAction::noop("direct", n, Cost::integer(5));
        direct.pre_pos.insert(FluentId(0));
        direct.add.insert(FluentId(3));
        let step = |name: &str, from: usize, to: usize| {
            let mut a = GroundAction::noop(name, n, Cost::ONE);
            a.pre_pos.insert(FluentId(from));
            a.add.insert(FluentId(to));
            a
        };
        let t = Task::new(
            (0..n).map(|i| format!("p{i}")).collect(),
            vec![direct, step("s1", 0, 1), step("s2", 1, 2), step("s3", 2, 3)],
            FluentSet::from_ids(n, [FluentId(0)]),
            FluentSet::from_ids(n, [FluentId(3)]),
        )
        .unwrap();
        for h in [Heuristic::Blind, Heuristic::HMax] {
            let r = solve(&t, h);
            let p = r.plan().unwrap();
            assert_eq!(t.plan_cost(p), Cost::integer(3));
            assert_eq!(t.validate(p), Validation::GoalReaching);
        }
    }
}
