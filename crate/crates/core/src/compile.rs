//! Lazy and eager compilations that fold plan disruption into action costs.
//!
//! The lazy task lets the original actions run until the goal holds, then
//! fires `goalstate`, checks every fluent once (`collect` when it kept its
//! initial truth value, `forgo` at cost ω otherwise) and finishes with
//! `end`. The eager task keeps the original structure and charges ω per
//! effect that diverges from the initial state, action by action.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::disruption::state_disruption;
use crate::error::{CompileError, CostError, TaskError};
use crate::strips::json::TaskJson;
use crate::strips::{ActionId, FluentId, FluentSet, GroundAction, Plan, Task, Validation};

/// Strictly positive weight of disruption relative to action cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Omega(Cost);

impl Omega {
    pub fn new(weight: Cost) -> Result<Omega, CostError> {
        if weight.is_zero() {
            return Err(CostError::Parse("omega must be positive".into()));
        }
        Ok(Omega(weight))
    }

    pub fn one() -> Omega {
        Omega(Cost::ONE)
    }

    pub fn weight(&self) -> Cost {
        self.0
    }

    /// The three weights of the standard experiment grid: 1/1000, 1, 1000.
    pub fn standard_grid() -> [Omega; 3] {
        [Omega(Cost::new(1, 1000).unwrap()), Omega(Cost::ONE), Omega(Cost::integer(1000))]
    }
}

impl std::str::FromStr for Omega {
    type Err = CostError;
    fn from_str(s: &str) -> Result<Omega, CostError> {
        Omega::new(s.parse()?)
    }
}

impl fmt::Display for Omega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Lazy,
    Eager,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Lazy => "lazy",
            Mode::Eager => "eager",
        })
    }
}

/// What a compiled action stands for. Fluent ids refer to the original task.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionRole {
    Original(ActionId),
    GoalState,
    Collect(FluentId),
    Forgo(FluentId),
    End,
}

/// A compiled task together with what is needed to map plans back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledTask {
    pub task: Task,
    pub roles: Vec<ActionRole>,
    pub omega: Omega,
    pub mode: Mode,
    pub origin: Task,
    role_index: HashMap<ActionRole, ActionId>,
}

/// Split of a compiled plan's cost into the original part and the
/// disruption surcharge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CostDecomposition {
    pub base: Cost,
    pub disruption_part: Cost,
    pub disruption_units: Cost,
}

impl CostDecomposition {
    pub fn total(&self) -> Cost {
        self.base + self.disruption_part
    }
}

fn unique_name(taken: &mut HashSet<String>, wanted: String) -> String {
    let mut name = wanted;
    while taken.contains(&name) {
        name.push('_');
    }
    taken.insert(name.clone());
    name
}

pub fn compile_lazy(task: &Task, omega: Omega) -> CompiledTask {
    let n = task.num_fluents();
    let init_ids: Vec<FluentId> = task.init().iter().collect();

    let mut taken: HashSet<String> = task.fluents().iter().map(|f| f.name.clone()).collect();
    let mut names: Vec<String> = task.fluents().iter().map(|f| f.name.clone()).collect();
    let mut init_marker = vec![None; n];
    for &f in &init_ids {
        init_marker[f.0] = Some(FluentId(names.len()));
        names.push(unique_name(&mut taken, format!("init_{}", task.fluent_name(f))));
    }
    let checked: Vec<FluentId> = (0..n)
        .map(|f| {
            let id = FluentId(names.len());
            names.push(unique_name(&mut taken, format!("checked_{}", task.fluent_name(FluentId(f)))));
            id
        })
        .collect();
    let ga = FluentId(names.len());
    names.push(unique_name(&mut taken, "ga".into()));
    let end = FluentId(names.len());
    names.push(unique_name(&mut taken, "end".into()));
    let size = names.len();
    let set = |ids: &[FluentId]| FluentSet::from_ids(size, ids.iter().copied());

    let mut actions = Vec::with_capacity(task.actions().len() + 2 * n + 2);
    let mut roles = Vec::with_capacity(actions.capacity());
    let mut action_names: HashSet<String> = task.actions().iter().map(|a| a.name.clone()).collect();

    for (i, a) in task.actions().iter().enumerate() {
        let mut pre_neg = a.pre_neg.widened(size);
        pre_neg.insert(ga);
        actions.push(GroundAction {
            name: a.name.clone(),
            pre_pos: a.pre_pos.widened(size),
            pre_neg,
            add: a.add.widened(size),
            del: a.del.widened(size),
            cost: a.cost,
        });
        roles.push(ActionRole::Original(ActionId(i)));
    }

    let mut goal_action = GroundAction::noop(unique_name(&mut action_names, "goalstate".into()), size, Cost::ZERO);
    goal_action.pre_pos = task.goal().widened(size);
    goal_action.add = set(&[ga]);
    actions.push(goal_action);
    roles.push(ActionRole::GoalState);

    for f in (0..n).map(FluentId) {
        let fname = task.fluent_name(f);
        let collect = match init_marker[f.0] {
            Some(marker) => GroundAction {
                name: unique_name(&mut action_names, format!("collect_{fname}")),
                pre_pos: set(&[f, marker, ga]),
                pre_neg: set(&[checked[f.0], end]),
                add: set(&[checked[f.0]]),
                del: set(&[]),
                cost: Cost::ZERO,
            },
            None => GroundAction {
                name: unique_name(&mut action_names, format!("collect_{fname}")),
                pre_pos: set(&[ga]),
                pre_neg: set(&[f, checked[f.0], end]),
                add: set(&[checked[f.0]]),
                del: set(&[]),
                cost: Cost::ZERO,
            },
        };
        let forgo = GroundAction {
            name: unique_name(&mut action_names, format!("forgo_{fname}")),
            pre_pos: set(&[ga]),
            pre_neg: set(&[checked[f.0], end]),
            add: set(&[checked[f.0]]),
            del: set(&[]),
            cost: omega.weight(),
        };
        actions.push(collect);
        roles.push(ActionRole::Collect(f));
        actions.push(forgo);
        roles.push(ActionRole::Forgo(f));
    }

    let mut end_pre = set(&checked);
    end_pre.insert(ga);
    let mut end_action = GroundAction::noop(unique_name(&mut action_names, "end".into()), size, Cost::ZERO);
    end_action.pre_pos = end_pre;
    end_action.add = set(&[end]);
    actions.push(end_action);
    roles.push(ActionRole::End);

    let mut init = task.init().widened(size);
    for m in init_marker.iter().flatten() {
        init.insert(*m);
    }
    let compiled = Task::new(names, actions, init, set(&[end]))
        .expect("lazy compilation preserves task invariants");
    CompiledTask::assemble(compiled, roles, omega, Mode::Lazy, task.clone())
}

/// Number of effects of `a` that move away from the initial state.
pub fn eager_penalty_count(a: &GroundAction, init: &FluentSet) -> usize {
    a.add.difference(init).len() + a.del.intersection(init).len()
}

pub fn compile_eager(task: &Task, omega: Omega) -> CompiledTask {
    let actions = task
        .actions()
        .iter()
        .map(|a| GroundAction {
            cost: a.cost + omega.weight().scale(eager_penalty_count(a, task.init()) as u64),
            ..a.clone()
        })
        .collect();
    let names = task.fluents().iter().map(|f| f.name.clone()).collect();
    let compiled = Task::new(names, actions, task.init().clone(), task.goal().clone())
        .expect("eager compilation preserves task invariants");
    let roles = task.action_ids().map(ActionRole::Original).collect();
    CompiledTask::assemble(compiled, roles, omega, Mode::Eager, task.clone())
}

impl CompiledTask {
    fn assemble(task: Task, roles: Vec<ActionRole>, omega: Omega, mode: Mode, origin: Task) -> CompiledTask {
        let mut role_index = HashMap::with_capacity(roles.len());
        for (i, r) in roles.iter().enumerate() {
            role_index.entry(*r).or_insert(ActionId(i));
        }
        CompiledTask { task, roles, omega, mode, origin, role_index }
    }

    pub fn role(&self, a: ActionId) -> ActionRole {
        self.roles[a.0]
    }

    fn find_role(&self, role: ActionRole) -> ActionId {
        self.role_index[&role]
    }

    /// Extends a plan of the original task with the goal marker, one check
    /// per fluent in id order and the end action. Checks use `collect`
    /// exactly when the fluent kept its initial truth value.
    pub fn map_plan_lazy(&self, plan: &Plan) -> Result<Plan, CompileError> {
        assert_eq!(self.mode, Mode::Lazy, "map_plan_lazy needs a lazy compilation");
        let fin = self.origin.final_state(plan).map_err(|e| CompileError::InvalidSourcePlan(e.to_string()))?;
        if !self.origin.is_goal(&fin) {
            return Err(CompileError::InvalidSourcePlan("goal not reached".into()));
        }
        let mut steps: Vec<ActionId> = plan.steps.iter().map(|&a| self.find_role(ActionRole::Original(a))).collect();
        steps.push(self.find_role(ActionRole::GoalState));
        let init = self.origin.init();
        for f in (0..self.origin.num_fluents()).map(FluentId) {
            let role = if init.contains(f) == fin.contains(f) {
                ActionRole::Collect(f)
            } else {
                ActionRole::Forgo(f)
            };
            steps.push(self.find_role(role));
        }
        steps.push(self.find_role(ActionRole::End));
        Ok(Plan::new(steps))
    }

    fn require_solution(&self, plan: &Plan) -> Result<(), CompileError> {
        match self.task.validate(plan) {
            Validation::GoalReaching => Ok(()),
            Validation::NonGoal => Err(CompileError::InvalidPlan("goal not reached".into())),
            Validation::Invalid { step } => Err(CompileError::InvalidPlan(format!(
                "step {step} ('{}') not applicable",
                self.task.action(plan.steps[step]).name
            ))),
        }
    }

    pub fn decompose_cost(&self, plan: &Plan) -> Result<CostDecomposition, CompileError> {
        self.require_solution(plan)?;
        let (base, disruption_part) = match self.mode {
            Mode::Lazy => {
                let mut base = Cost::ZERO;
                let mut part = Cost::ZERO;
                for &a in &plan.steps {
                    match self.roles[a.0] {
                        ActionRole::Original(_) => base += self.task.action(a).cost,
                        ActionRole::Forgo(_) => part += self.task.action(a).cost,
                        _ => {}
                    }
                }
                (base, part)
            }
            Mode::Eager => {
                let total = self.task.plan_cost(plan);
                let base: Cost = plan
                    .steps
                    .iter()
                    .map(|&a| match self.roles[a.0] {
                        ActionRole::Original(o) => self.origin.action(o).cost,
                        _ => unreachable!("eager tasks only hold original actions"),
                    })
                    .sum();
                let part = total.checked_sub(base).expect("eager costs never undercut the originals");
                (base, part)
            }
        };
        Ok(CostDecomposition {
            base,
            disruption_part,
            disruption_units: disruption_part / self.omega.weight(),
        })
    }

    /// Recovers the plan of the original task inside a compiled solution.
    pub fn strip_plan(&self, plan: &Plan) -> Result<Plan, CompileError> {
        self.require_solution(plan)?;
        Ok(plan
            .steps
            .iter()
            .filter_map(|&a| match self.roles[a.0] {
                ActionRole::Original(o) => Some(o),
                _ => None,
            })
            .collect())
    }

    /// Image of an original plan under the eager compilation.
    pub fn map_plan_eager(&self, plan: &Plan) -> Plan {
        assert_eq!(self.mode, Mode::Eager);
        plan.clone()
    }

    /// True disruption of the original plan hidden in a compiled solution.
    pub fn stripped_disruption(&self, plan: &Plan) -> Result<usize, CompileError> {
        let stripped = self.strip_plan(plan)?;
        let fin = self
            .origin
            .final_state(&stripped)
            .map_err(|e| CompileError::InvalidPlan(e.to_string()))?;
        Ok(state_disruption(self.origin.init(), &fin).value)
    }

    pub fn to_json(&self) -> CompiledTaskJson {
        let roles = self
            .task
            .actions()
            .iter()
            .zip(&self.roles)
            .map(|(a, r)| {
                let (role, fluent) = match r {
                    ActionRole::Original(_) => ("original", None),
                    ActionRole::GoalState => ("goalstate", None),
                    ActionRole::Collect(f) => ("collect", Some(self.origin.fluent_name(*f).to_string())),
                    ActionRole::Forgo(f) => ("forgo", Some(self.origin.fluent_name(*f).to_string())),
                    ActionRole::End => ("end", None),
                };
                (a.name.clone(), RoleJson { role: role.into(), fluent })
            })
            .collect();
        CompiledTaskJson {
            task: TaskJson::from_task(&self.task),
            mode: self.mode,
            omega: self.omega.weight(),
            roles,
        }
    }

    /// Reattaches a compiled task read from JSON to its original task.
    pub fn from_json(json: &CompiledTaskJson, origin: &Task) -> Result<CompiledTask, TaskError> {
        let task = json.task.to_task()?;
        let omega = Omega::new(json.omega)?;
        let bad = |msg: String| TaskError::Json(msg);
        let roles = task
            .actions()
            .iter()
            .map(|a| {
                let r = json.roles.get(&a.name).ok_or_else(|| bad(format!("no role for '{}'", a.name)))?;
                let fluent = || {
                    let name = r.fluent.as_deref().ok_or_else(|| bad(format!("role of '{}' lacks a fluent", a.name)))?;
                    origin.fluent_id(name).ok_or_else(|| TaskError::UnknownFluent(name.to_string()))
                };
                Ok(match r.role.as_str() {
                    "original" => ActionRole::Original(
                        origin.action_id(&a.name).ok_or_else(|| bad(format!("'{}' not in original task", a.name)))?,
                    ),
                    "goalstate" => ActionRole::GoalState,
                    "collect" => ActionRole::Collect(fluent()?),
                    "forgo" => ActionRole::Forgo(fluent()?),
                    "end" => ActionRole::End,
                    other => return Err(bad(format!("unknown role '{other}'"))),
                })
            })
            .collect::<Result<Vec<_>, TaskError>>()?;
        Ok(CompiledTask::assemble(task, roles, omega, json.mode, origin.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleJson {
    pub role: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fluent: Option<String>,
}

/// Grounded-task JSON extended with the compilation mode, ω and a role per
/// action name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompiledTaskJson {
    #[serde(flatten)]
    pub task: TaskJson,
    pub mode: Mode,
    pub omega: Cost,
    pub roles: BTreeMap<String, RoleJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disruption::plan_disruption;
    use crate::strips::tests::table_task;

    fn pi() -> Plan {
        Plan::new(vec![ActionId(0), ActionId(1)])
    }

    #[test]
    fn lazy_table_task_shape() {
        let c = compile_lazy(&table_task(), Omega::one());
        assert_eq!(c.task.num_fluents(), 12);
        assert_eq!(c.task.actions().len(), 12);
        assert_eq!(c.task.state_names(c.task.goal()), vec!["end"]);
        assert_eq!(c.task.state_names(c.task.init()), vec!["A", "B", "init_A", "init_B"]);
        let names: Vec<&str> = c.task.actions().iter().map(|a| a.name.as_str()).collect();
        assert_eq!(
            names,
            vec![
                "a1", "a2", "goalstate", "collect_A", "forgo_A", "collect_B", "forgo_B", "collect_C",
                "forgo_C", "collect_D", "forgo_D", "end"
            ]
        );
        let a1 = c.task.action(ActionId(0));
        assert_eq!(c.task.state_names(&a1.pre_neg), vec!["ga"]);
    }

    #[test]
    fn lazy_check_actions_follow_initial_truth() {
        let c = compile_lazy(&table_task(), Omega::one());
        let t = &c.task;
        let by = |n: &str| t.action(t.action_id(n).unwrap());
        // A holds initially: positive case.
        assert_eq!(t.state_names(&by("collect_A").pre_pos), vec!["A", "init_A", "ga"]);
        assert_eq!(t.state_names(&by("collect_A").pre_neg), vec!["checked_A", "end"]);
        // C does not: negative case.
        assert_eq!(t.state_names(&by("collect_C").pre_pos), vec!["ga"]);
        assert_eq!(t.state_names(&by("collect_C").pre_neg), vec!["C", "checked_C", "end"]);
        assert_eq!(t.state_names(&by("forgo_C").pre_pos), vec!["ga"]);
        assert_eq!(by("forgo_C").cost, Cost::ONE);
        assert_eq!(by("collect_C").cost, Cost::ZERO);
        assert_eq!(
            t.state_names(&by("end").pre_pos),
            vec!["checked_A", "checked_B", "checked_C", "checked_D", "ga"]
        );
    }

    #[test]
    fn lazy_empty_task() {
        let empty = Task::new(vec![], vec![], FluentSet::empty(0), FluentSet::empty(0)).unwrap();
        let c = compile_lazy(&empty, Omega::one());
        assert_eq!(c.task.state_names(&FluentSet::full(2)), vec!["ga", "end"]);
        assert_eq!(c.task.actions().len(), 2);
        let p = c.map_plan_lazy(&Plan::default()).unwrap();
        assert_eq!(c.task.validate(&p), Validation::GoalReaching);
    }

    #[test]
    fn aux_names_avoid_collisions() {
        let t = Task::new(
            vec!["ga".into(), "end".into()],
            vec![GroundAction::noop("goalstate", 2, Cost::ONE)],
            FluentSet::empty(2),
            FluentSet::empty(2),
        )
        .unwrap();
        let c = compile_lazy(&t, Omega::one());
        assert_eq!(c.task.fluent_name(FluentId(4)), "ga_");
        assert_eq!(c.task.fluent_name(FluentId(5)), "end_");
        assert_eq!(c.task.action(ActionId(1)).name, "goalstate_");
    }

    #[test]
    fn lazy_mapping_of_table_task_plan() {
        let c = compile_lazy(&table_task(), Omega::one());
        let mapped = c.map_plan_lazy(&pi()).unwrap();
        assert_eq!(
            c.task.plan_names(&mapped),
            vec!["a1", "a2", "goalstate", "forgo_A", "collect_B", "forgo_C", "forgo_D", "end"]
        );
        assert_eq!(c.task.validate(&mapped), Validation::GoalReaching);
        assert_eq!(c.task.plan_cost(&mapped), Cost::integer(23));
        let d = c.decompose_cost(&mapped).unwrap();
        assert_eq!((d.base, d.disruption_part, d.disruption_units), (Cost::integer(20), Cost::integer(3), Cost::integer(3)));
        assert_eq!(c.strip_plan(&mapped).unwrap(), pi());
        assert_eq!(c.stripped_disruption(&mapped).unwrap(), 3);
    }

    #[test]
    fn lazy_mapping_rejects_bad_source() {
        let c = compile_lazy(&table_task(), Omega::one());
        assert!(matches!(c.map_plan_lazy(&Plan::new(vec![ActionId(0)])), Err(CompileError::InvalidSourcePlan(_))));
        assert!(matches!(c.map_plan_lazy(&Plan::new(vec![ActionId(1)])), Err(CompileError::InvalidSourcePlan(_))));
    }

    #[test]
    fn identity_plan_maps_to_all_collects() {
        let t = Task::new(vec!["p".into(), "q".into()], vec![], FluentSet::from_ids(2, [FluentId(0)]), FluentSet::from_ids(2, [FluentId(0)]))
            .unwrap();
        let c = compile_lazy(&t, Omega::one());
        let m = c.map_plan_lazy(&Plan::default()).unwrap();
        assert_eq!(c.task.plan_names(&m), vec!["goalstate", "collect_p", "collect_q", "end"]);
        assert_eq!(c.decompose_cost(&m).unwrap().disruption_part, Cost::ZERO);
    }

    #[test]
    fn originals_blocked_after_goal_marker() {
        let c = compile_lazy(&table_task(), Omega::one());
        let t = &c.task;
        let mut s = t.init().clone();
        s.insert(t.fluent_id("ga").unwrap());
        s.insert(t.fluent_id("C").unwrap());
        for a in t.action_ids().filter(|&a| matches!(c.role(a), ActionRole::Original(_))) {
            assert!(!t.applicable(&s, a));
        }
    }

    #[test]
    fn eager_table_task_costs() {
        let c = compile_eager(&table_task(), Omega::one());
        assert_eq!(c.task.action(ActionId(0)).cost, Cost::integer(13));
        assert_eq!(c.task.action(ActionId(1)).cost, Cost::integer(12));
        let d = c.decompose_cost(&pi()).unwrap();
        assert_eq!((d.base, d.disruption_part, d.disruption_units), (Cost::integer(20), Cost::integer(5), Cost::integer(5)));
        assert_eq!(c.strip_plan(&pi()).unwrap(), pi());
        assert_eq!(c.stripped_disruption(&pi()).unwrap(), 3);
    }

    #[test]
    fn eager_small_omega_is_exact() {
        let w: Omega = "0.001".parse().unwrap();
        let c = compile_eager(&table_task(), w);
        assert_eq!(c.task.action(ActionId(0)).cost, "10003/1000".parse().unwrap());
    }

    #[test]
    fn eager_leaves_initially_consistent_actions_alone() {
        let mut a = GroundAction::noop("keep", 2, Cost::integer(4));
        a.add.insert(FluentId(0));
        a.del.insert(FluentId(1));
        let t = Task::new(vec!["p".into(), "q".into()], vec![a], FluentSet::from_ids(2, [FluentId(0)]), FluentSet::empty(2)).unwrap();
        let c = compile_eager(&t, Omega::one());
        assert_eq!(c.task.action(ActionId(0)).cost, Cost::integer(4));
    }

    #[test]
    fn decomposition_scales_with_omega() {
        let big: Omega = "1000".parse().unwrap();
        let lazy = compile_lazy(&table_task(), big);
        let d = lazy.decompose_cost(&lazy.map_plan_lazy(&pi()).unwrap()).unwrap();
        assert_eq!((d.disruption_part, d.disruption_units), (Cost::integer(3000), Cost::integer(3)));
        let eager = compile_eager(&table_task(), big);
        let d = eager.decompose_cost(&pi()).unwrap();
        assert_eq!((d.disruption_part, d.disruption_units), (Cost::integer(5000), Cost::integer(5)));
    }

    #[test]
    fn decompose_rejects_invalid_plans() {
        let c = compile_lazy(&table_task(), Omega::one());
        assert!(matches!(c.decompose_cost(&Plan::new(vec![ActionId(0)])), Err(CompileError::InvalidPlan(_))));
        assert!(matches!(c.strip_plan(&Plan::new(vec![ActionId(1)])), Err(CompileError::InvalidPlan(_))));
    }

    #[test]
    fn json_round_trip_keeps_roles() {
        let t = table_task();
        for c in [compile_lazy(&t, "1/1000".parse().unwrap()), compile_eager(&t, Omega::one())] {
            let text = serde_json::to_string(&c.to_json()).unwrap();
            let parsed: CompiledTaskJson = serde_json::from_str(&text).unwrap();
            let back = CompiledTask::from_json(&parsed, &t).unwrap();
            assert_eq!(back.mode, c.mode);
            assert_eq!(back.omega, c.omega);
            // Ids may be renumbered by canonical ordering; compare by name.
            for a in c.task.action_ids() {
                let name = &c.task.action(a).name;
                let b = back.task.action_id(name).unwrap();
                assert_eq!(back.role(b), c.role(a));
                assert_eq!(back.task.action(b).cost, c.task.action(a).cost);
            }
        }
        let v = serde_json::to_value(compile_lazy(&t, Omega::one()).to_json()).unwrap();
        assert_eq!(v["roles"]["forgo_A"], serde_json::json!({"role": "forgo", "fluent": "A"}));
        assert_eq!(v["mode"], "lazy");
    }

    #[test]
    fn greedy_lazy_mapping_equals_disruption_on_table_task_prefixes() {
        let t = table_task();
        let c = compile_lazy(&t, Omega::one());
        let d = c.decompose_cost(&c.map_plan_lazy(&pi()).unwrap()).unwrap();
        assert_eq!(d.disruption_part, Cost::integer(plan_disruption(&t, &pi()).unwrap().value as u64));
    }
}
