//! Ground STRIPS tasks and their execution semantics.

mod fluent_set;
pub mod json;

use std::collections::HashMap;
use std::fmt;

pub use fluent_set::{FluentSet, State};
pub use json::{task_from_json, task_to_json};

use crate::cost::Cost;
use crate::error::{ExecError, TaskError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FluentId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionId(pub usize);

impl fmt::Display for FluentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fluent {
    pub id: FluentId,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundAction {
    pub name: String,
    pub pre_pos: FluentSet,
    pub pre_neg: FluentSet,
    pub add: FluentSet,
    pub del: FluentSet,
    pub cost: Cost,
}

impl GroundAction {
    /// An action with empty preconditions and effects over `universe` fluents.
    pub fn noop(name: impl Into<String>, universe: usize, cost: Cost) -> GroundAction {
        let e = FluentSet::empty(universe);
        GroundAction {
            name: name.into(),
            pre_pos: e.clone(),
            pre_neg: e.clone(),
            add: e.clone(),
            del: e,
            cost,
        }
    }

    pub fn is_applicable(&self, s: &State) -> bool {
        self.pre_pos.is_subset(s) && self.pre_neg.is_disjoint(s)
    }

    /// `(s \ del) ∪ add`, without checking applicability.
    pub fn successor(&self, s: &State) -> State {
        let mut next = s.difference(&self.del);
        next.union_with(&self.add);
        next
    }
}

/// Outcome of checking a plan against a task.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    GoalReaching,
    NonGoal,
    Invalid { step: usize },
}

/// An ordered sequence of actions of one task, stored by id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Plan {
    pub steps: Vec<ActionId>,
}

impl Plan {
    pub fn new(steps: Vec<ActionId>) -> Plan {
        Plan { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl FromIterator<ActionId> for Plan {
    fn from_iter<I: IntoIterator<Item = ActionId>>(iter: I) -> Plan {
        Plan { steps: iter.into_iter().collect() }
    }
}

/// Final state of a plan execution plus every state traversed, `s0` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Execution {
    pub final_state: State,
    pub trace: Vec<State>,
}

/// A ground STRIPS task `⟨F, A, I, G⟩`. Immutable once built.
#[derive(Clone, Debug)]
pub struct Task {
    fluents: Vec<Fluent>,
    actions: Vec<GroundAction>,
    init: State,
    goal: State,
    fluent_index: HashMap<String, FluentId>,
    action_index: HashMap<String, ActionId>,
}

impl PartialEq for Task {
    fn eq(&self, other: &Task) -> bool {
        self.fluents == other.fluents
            && self.actions == other.actions
            && self.init == other.init
            && self.goal == other.goal
    }
}

impl Eq for Task {}

impl Task {
    pub fn new(
        fluent_names: Vec<String>,
        actions: Vec<GroundAction>,
        init: State,
        goal: State,
    ) -> Result<Task, TaskError> {
        let n = fluent_names.len();
        let mut fluent_index = HashMap::with_capacity(n);
        let mut fluents = Vec::with_capacity(n);
        for (i, name) in fluent_names.into_iter().enumerate() {
            if fluent_index.insert(name.clone(), FluentId(i)).is_some() {
                return Err(TaskError::DuplicateFluent(name));
            }
            fluents.push(Fluent { id: FluentId(i), name });
        }
        let check_universe = |s: &FluentSet| {
            if s.universe() != n {
                Err(TaskError::FluentOutOfRange { id: s.universe(), size: n })
            } else {
                Ok(())
            }
        };
        check_universe(&init)?;
        check_universe(&goal)?;
        let mut action_index = HashMap::with_capacity(actions.len());
        for (i, a) in actions.iter().enumerate() {
            for s in [&a.pre_pos, &a.pre_neg, &a.add, &a.del] {
                check_universe(s)?;
            }
            if let Some(f) = a.add.intersection(&a.del).iter().next() {
                return Err(TaskError::AddDeleteOverlap {
                    action: a.name.clone(),
                    fluent: fluents[f.0].name.clone(),
                });
            }
            if let Some(f) = a.pre_pos.intersection(&a.pre_neg).iter().next() {
                return Err(TaskError::PreconditionOverlap {
                    action: a.name.clone(),
                    fluent: fluents[f.0].name.clone(),
                });
            }
            if action_index.insert(a.name.clone(), ActionId(i)).is_some() {
                return Err(TaskError::DuplicateAction(a.name.clone()));
            }
        }
        Ok(Task { fluents, actions, init, goal, fluent_index, action_index })
    }

    pub fn num_fluents(&self) -> usize {
        self.fluents.len()
    }

    pub fn fluents(&self) -> &[Fluent] {
        &self.fluents
    }

    pub fn fluent_name(&self, f: FluentId) -> &str {
        &self.fluents[f.0].name
    }

    pub fn fluent_id(&self, name: &str) -> Option<FluentId> {
        self.fluent_index.get(name).copied()
    }

    pub fn actions(&self) -> &[GroundAction] {
        &self.actions
    }

    pub fn action(&self, a: ActionId) -> &GroundAction {
        &self.actions[a.0]
    }

    pub fn action_id(&self, name: &str) -> Option<ActionId> {
        self.action_index.get(name).copied()
    }

    pub fn action_ids(&self) -> impl Iterator<Item = ActionId> {
        (0..self.actions.len()).map(ActionId)
    }

    pub fn init(&self) -> &State {
        &self.init
    }

    pub fn goal(&self) -> &State {
        &self.goal
    }

    pub fn empty_state(&self) -> State {
        FluentSet::empty(self.num_fluents())
    }

    /// Builds a state from fluent names; unknown names are an error.
    pub fn state_from_names<S: AsRef<str>>(
        &self,
        names: impl IntoIterator<Item = S>,
    ) -> Result<State, TaskError> {
        let mut s = self.empty_state();
        for n in names {
            let n = n.as_ref();
            s.insert(self.fluent_id(n).ok_or_else(|| TaskError::UnknownFluent(n.to_string()))?);
        }
        Ok(s)
    }

    pub fn state_names(&self, s: &State) -> Vec<&str> {
        s.iter().map(|f| self.fluent_name(f)).collect()
    }

    pub fn is_goal(&self, s: &State) -> bool {
        self.goal.is_subset(s)
    }

    pub fn applicable(&self, s: &State, a: ActionId) -> bool {
        self.actions[a.0].is_applicable(s)
    }

    pub fn progress(&self, s: &State, a: ActionId) -> Result<State, ExecError> {
        let act = &self.actions[a.0];
        if !act.is_applicable(s) {
            return Err(ExecError::NotApplicable(act.name.clone()));
        }
        Ok(act.successor(s))
    }

    pub fn apply_plan(&self, s: &State, plan: &Plan) -> Result<Execution, ExecError> {
        let mut trace = Vec::with_capacity(plan.len() + 1);
        trace.push(s.clone());
        let mut cur = s.clone();
        for (step, &a) in plan.steps.iter().enumerate() {
            cur = self.progress(&cur, a).map_err(|_| ExecError::NotApplicableAtStep {
                step,
                action: self.actions[a.0].name.clone(),
            })?;
            trace.push(cur.clone());
        }
        Ok(Execution { final_state: cur, trace })
    }

    /// Final state after running the plan from `init`.
    pub fn final_state(&self, plan: &Plan) -> Result<State, ExecError> {
        let mut cur = self.init.clone();
        for (step, &a) in plan.steps.iter().enumerate() {
            let act = &self.actions[a.0];
            if !act.is_applicable(&cur) {
                return Err(ExecError::NotApplicableAtStep { step, action: act.name.clone() });
            }
            cur = act.successor(&cur);
        }
        Ok(cur)
    }

    pub fn validate(&self, plan: &Plan) -> Validation {
        match self.final_state(plan) {
            Ok(s) if self.is_goal(&s) => Validation::GoalReaching,
            Ok(_) => Validation::NonGoal,
            Err(ExecError::NotApplicableAtStep { step, .. }) => Validation::Invalid { step },
            Err(ExecError::NotApplicable(_)) => unreachable!(),
        }
    }

    pub fn plan_cost(&self, plan: &Plan) -> Cost {
        plan.steps.iter().map(|a| self.actions[a.0].cost).sum()
    }

    pub fn plan_names(&self, plan: &Plan) -> Vec<&str> {
        plan.steps.iter().map(|a| self.actions[a.0].name.as_str()).collect()
    }

    /// Resolves action names into a plan of this task.
    pub fn plan_from_names<S: AsRef<str>>(
        &self,
        names: impl IntoIterator<Item = S>,
    ) -> Option<Plan> {
        names.into_iter().map(|n| self.action_id(n.as_ref())).collect()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The four-fluent, two-action running example.
    pub(crate) fn table_task() -> Task {
        let names: Vec<String> = ["A", "B", "C", "D"].iter().map(|s| s.to_string()).collect();
        let ids = |xs: &[usize]| FluentSet::from_ids(4, xs.iter().map(|&i| FluentId(i)));
        let a1 = GroundAction {
            name: "a1".into(),
            pre_pos: ids(&[0]),
            pre_neg: ids(&[]),
            add: ids(&[2]),
            del: ids(&[0, 1]),
            cost: Cost::integer(10),
        };
        let a2 = GroundAction {
            name: "a2".into(),
            pre_pos: ids(&[2]),
            pre_neg: ids(&[]),
            add: ids(&[3, 1]),
            del: ids(&[0]),
            cost: Cost::integer(10),
        };
        Task::new(names, vec![a1, a2], ids(&[0, 1]), ids(&[3])).unwrap()
    }

    fn st(t: &Task, names: &[&str]) -> State {
        t.state_from_names(names).unwrap()
    }

    #[test]
    fn applicable_examples() {
        let t = table_task();
        let s = st(&t, &["A", "B"]);
        assert!(t.applicable(&s, ActionId(0)));
        assert!(!t.applicable(&s, ActionId(1)));
        let noop = GroundAction::noop("n", 0, Cost::ZERO);
        assert!(noop.is_applicable(&FluentSet::empty(0)));
    }

    #[test]
    fn negative_preconditions_block() {
        let mut a = GroundAction::noop("n", 2, Cost::ZERO);
        a.pre_neg.insert(FluentId(1));
        assert!(a.is_applicable(&FluentSet::from_ids(2, [FluentId(0)])));
        assert!(!a.is_applicable(&FluentSet::from_ids(2, [FluentId(1)])));
    }

    #[test]
    fn progress_examples() {
        let t = table_task();
        let s1 = t.progress(&st(&t, &["A", "B"]), ActionId(0)).unwrap();
        assert_eq!(s1, st(&t, &["C"]));
        let s2 = t.progress(&s1, ActionId(1)).unwrap();
        assert_eq!(s2, st(&t, &["C", "D", "B"]));
        assert!(matches!(
            t.progress(&st(&t, &["A"]), ActionId(1)),
            Err(ExecError::NotApplicable(_))
        ));
        let noop = GroundAction::noop("n", 4, Cost::ZERO);
        assert_eq!(noop.successor(&s2), s2);
    }

    #[test]
    fn apply_plan_examples() {
        let t = table_task();
        let p = Plan::new(vec![ActionId(0), ActionId(1)]);
        let ex = t.apply_plan(t.init(), &p).unwrap();
        assert_eq!(ex.final_state, st(&t, &["C", "D", "B"]));
        assert_eq!(ex.trace.len(), 3);
        assert_eq!(ex.trace[1], st(&t, &["C"]));

        let empty = t.apply_plan(t.init(), &Plan::default()).unwrap();
        assert_eq!(empty.trace, vec![t.init().clone()]);
        assert_eq!(empty.final_state, *t.init());

        let bad = Plan::new(vec![ActionId(1), ActionId(0)]);
        assert_eq!(
            t.apply_plan(t.init(), &bad),
            Err(ExecError::NotApplicableAtStep { step: 0, action: "a2".into() })
        );
    }

    #[test]
    fn validate_examples() {
        let t = table_task();
        assert_eq!(t.validate(&Plan::new(vec![ActionId(0), ActionId(1)])), Validation::GoalReaching);
        assert_eq!(t.validate(&Plan::new(vec![ActionId(0)])), Validation::NonGoal);
        assert_eq!(t.validate(&Plan::new(vec![ActionId(1)])), Validation::Invalid { step: 0 });
        let trivial = Task::new(vec!["p".into()], vec![], FluentSet::full(1), FluentSet::full(1)).unwrap();
        assert_eq!(trivial.validate(&Plan::default()), Validation::GoalReaching);
    }

    #[test]
    fn plan_cost_examples() {
        let t = table_task();
        assert_eq!(t.plan_cost(&Plan::new(vec![ActionId(0), ActionId(1)])), Cost::integer(20));
        assert_eq!(t.plan_cost(&Plan::default()), Cost::ZERO);
        assert_eq!(
            t.plan_cost(&Plan::new(vec![ActionId(1), ActionId(0), ActionId(1)])),
            t.plan_cost(&Plan::new(vec![ActionId(0), ActionId(1), ActionId(1)]))
        );
    }

    #[test]
    fn rejects_add_delete_overlap() {
        let mut a = GroundAction::noop("bad", 1, Cost::ZERO);
        a.add.insert(FluentId(0));
        a.del.insert(FluentId(0));
        let e = Task::new(vec!["p".into()], vec![a], FluentSet::empty(1), FluentSet::empty(1));
        assert!(matches!(e, Err(TaskError::AddDeleteOverlap { .. })));
    }

    #[test]
    fn rejects_precondition_overlap_and_duplicates() {
        let mut a = GroundAction::noop("bad", 1, Cost::ZERO);
        a.pre_pos.insert(FluentId(0));
        a.pre_neg.insert(FluentId(0));
        let e = Task::new(vec!["p".into()], vec![a], FluentSet::empty(1), FluentSet::empty(1));
        assert!(matches!(e, Err(TaskError::PreconditionOverlap { .. })));

        let e = Task::new(vec!["p".into(), "p".into()], vec![], FluentSet::empty(2), FluentSet::empty(2));
        assert!(matches!(e, Err(TaskError::DuplicateFluent(_))));

        let n = GroundAction::noop("x", 1, Cost::ZERO);
        let e = Task::new(vec!["p".into()], vec![n.clone(), n], FluentSet::empty(1), FluentSet::empty(1));
        assert!(matches!(e, Err(TaskError::DuplicateAction(_))));
    }

    #[test]
    fn rejects_wrong_universe() {
        let e = Task::new(vec!["p".into()], vec![], FluentSet::empty(2), FluentSet::empty(1));
        assert!(matches!(e, Err(TaskError::FluentOutOfRange { .. })));
    }
}
