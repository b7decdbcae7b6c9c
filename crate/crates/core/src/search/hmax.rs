use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::cost::Cost;
use crate::strips::{FluentId, State, Task};

/// Precomputed precondition/effect indices for repeated h_max evaluation.
///
/// Negative preconditions are dropped, which only relaxes the task
/// further, so the estimate stays admissible.
#[derive(Clone, Debug)]
pub struct HMax {
    pre_count: Vec<usize>,
    /// Actions listing each fluent as a positive precondition.
    consumers: Vec<Vec<usize>>,
    adds: Vec<Vec<usize>>,
    costs: Vec<Cost>,
    goal: Vec<usize>,
    is_goal: Vec<bool>,
}

impl HMax {
    pub fn new(task: &Task) -> HMax {
        let n = task.num_fluents();
        let mut consumers = vec![Vec::new(); n];
        let mut pre_count = Vec::with_capacity(task.actions().len());
        let mut adds = Vec::with_capacity(task.actions().len());
        let mut costs = Vec::with_capacity(task.actions().len());
        for (i, a) in task.actions().iter().enumerate() {
            for f in a.pre_pos.iter() {
                consumers[f.0].push(i);
            }
            pre_count.push(a.pre_pos.len());
            adds.push(a.add.iter().map(|f| f.0).collect());
            costs.push(a.cost);
        }
        let goal: Vec<usize> = task.goal().iter().map(|f| f.0).collect();
        let mut is_goal = vec![false; n];
        for &g in &goal {
            is_goal[g] = true;
        }
        HMax { pre_count, consumers, adds, costs, goal, is_goal }
    }

    /// Cost of the most expensive goal fluent in the delete relaxation, or
    /// `None` when some goal fluent is relaxed-unreachable.
    pub fn evaluate(&self, s: &State) -> Option<Cost> {
        let n = self.consumers.len();
        let mut value: Vec<Option<Cost>> = vec![None; n];
        let mut remaining = self.pre_count.clone();
        let mut queue = BinaryHeap::new();
        for f in s.iter() {
            value[f.0] = Some(Cost::ZERO);
            queue.push(Reverse((Cost::ZERO, f.0)));
        }
        let mut goals_left = self.goal.iter().filter(|&&g| !s.contains(FluentId(g))).count();
        if goals_left == 0 {
            return Some(Cost::ZERO);
        }
        let fire = |a: usize, at: Cost, value: &mut Vec<Option<Cost>>, queue: &mut BinaryHeap<Reverse<(Cost, usize)>>| {
            let c = at + self.costs[a];
            for &f in &self.adds[a] {
                if value[f].is_none_or(|v| c < v) {
                    value[f] = Some(c);
                    queue.push(Reverse((c, f)));
                }
            }
        };
        for a in 0..self.pre_count.len() {
            if self.pre_count[a] == 0 {
                fire(a, Cost::ZERO, &mut value, &mut queue);
            }
        }
        let mut closed = vec![false; n];
        let mut worst = Cost::ZERO;
        while let Some(Reverse((c, f))) = queue.pop() {
            if closed[f] || value[f] != Some(c) {
                continue;
            }
            closed[f] = true;
            if self.is_goal[f] {
                worst = worst.max(c);
                goals_left -= usize::from(!s.contains(FluentId(f)));
                if goals_left == 0 {
                    return Some(worst);
                }
            }
            // Fluents close in non-decreasing order, so the last
            // precondition to close carries the maximum.
            for &a in &self.consumers[f] {
                remaining[a] -= 1;
                if remaining[a] == 0 {
                    fire(a, c, &mut value, &mut queue);
                }
            }
        }
        None
    }
}

pub fn h_max(task: &Task, s: &State) -> Option<Cost> {
    HMax::new(task).evaluate(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strips::tests::table_task;
    use crate::{FluentSet, GroundAction};

    #[test]
    fn zero_at_goal() {
        let t = table_task();
        let s = t.state_from_names(["D", "A"]).unwrap();
        assert_eq!(h_max(&t, &s), Some(Cost::ZERO));
    }

    #[test]
    fn table_task_initial_value() {
        let t = table_task();
        assert_eq!(h_max(&t, t.init()), Some(Cost::integer(20)));
        let s = t.state_from_names(["C"]).unwrap();
        assert_eq!(h_max(&t, &s), Some(Cost::integer(10)));
    }

    #[test]
    fn unreachable_goal_is_infinite() {
        let t = table_task();
        assert_eq!(h_max(&t, &t.empty_state()), None);
    }

    #[test]
    fn takes_max_not_sum() {
        // Two independent goals with costs 3 and 5.
        let mk = |name: &str, f: usize, c: u64| {
            let mut a = GroundAction::noop(name, 2, Cost::integer(c));
            a.add.insert(FluentId(f));
            a
        };
        let t = Task::new(
            vec!["p".into(), "q".into()],
            vec![mk("a", 0, 3), mk("b", 1, 5)],
            FluentSet::empty(2),
            FluentSet::full(2),
        )
        .unwrap();
        assert_eq!(h_max(&t, t.init()), Some(Cost::integer(5)));
    }

    #[test]
    fn ignores_negative_preconditions() {
        let mut a = GroundAction::noop("a", 2, Cost::integer(2));
        a.pre_neg.insert(FluentId(0));
        a.add.insert(FluentId(1));
        let t = Task::new(
            vec!["p".into(), "q".into()],
            vec![a],
            FluentSet::from_ids(2, [FluentId(0)]),
            FluentSet::from_ids(2, [FluentId(1)]),
        )
        .unwrap();
        // Really unsolvable, relaxed cost 2.
        assert_eq!(h_max(&t, t.init()), Some(Cost::integer(2)));
    }
}
