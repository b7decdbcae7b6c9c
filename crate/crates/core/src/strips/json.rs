//! Grounded-task JSON interchange format.
//!
//! ```json
//! {"fluents": [..], "actions": [{"name", "pre_pos", "pre_neg", "add", "del",
//!   "cost": {"num", "den"}}], "init": [..], "goal": [..]}
//! ```
//!
//! Writing is canonical: every name list is sorted lexicographically and
//! actions are ordered by name. Reading assigns fluent ids in file order.

use serde::{Deserialize, Serialize};

use super::{FluentSet, GroundAction, Task};
use crate::cost::Cost;
use crate::error::TaskError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub name: String,
    pub pre_pos: Vec<String>,
    pub pre_neg: Vec<String>,
    pub add: Vec<String>,
    pub del: Vec<String>,
    pub cost: Cost,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskJson {
    pub fluents: Vec<String>,
    pub actions: Vec<ActionJson>,
    pub init: Vec<String>,
    pub goal: Vec<String>,
}

fn sorted_names(task: &Task, s: &FluentSet) -> Vec<String> {
    let mut v: Vec<String> = s.iter().map(|f| task.fluent_name(f).to_string()).collect();
    v.sort();
    v
}

impl TaskJson {
    pub fn from_task(task: &Task) -> TaskJson {
        let mut fluents: Vec<String> = task.fluents().iter().map(|f| f.name.clone()).collect();
        fluents.sort();
        let mut actions: Vec<ActionJson> = task
            .actions()
            .iter()
            .map(|a| ActionJson {
                name: a.name.clone(),
                pre_pos: sorted_names(task, &a.pre_pos),
                pre_neg: sorted_names(task, &a.pre_neg),
                add: sorted_names(task, &a.add),
                del: sorted_names(task, &a.del),
                cost: a.cost,
            })
            .collect();
        actions.sort_by(|a, b| a.name.cmp(&b.name));
        TaskJson {
            fluents,
            actions,
            init: sorted_names(task, task.init()),
            goal: sorted_names(task, task.goal()),
        }
    }

    pub fn to_task(&self) -> Result<Task, TaskError> {
        // Resolve names against a bare task first so lookups share one index.
        let n = self.fluents.len();
        let shell = Task::new(self.fluents.clone(), vec![], FluentSet::empty(n), FluentSet::empty(n))?;
        let set = |names: &[String]| shell.state_from_names(names);
        let actions = self
            .actions
            .iter()
            .map(|a| {
                Ok(GroundAction {
                    name: a.name.clone(),
                    pre_pos: set(&a.pre_pos)?,
                    pre_neg: set(&a.pre_neg)?,
                    add: set(&a.add)?,
                    del: set(&a.del)?,
                    cost: a.cost,
                })
            })
            .collect::<Result<Vec<_>, TaskError>>()?;
        Task::new(self.fluents.clone(), actions, set(&self.init)?, set(&self.goal)?)
    }
}

pub fn task_to_json(task: &Task) -> String {
    serde_json::to_string_pretty(&TaskJson::from_task(task)).expect("task json serializes")
}

pub fn task_from_json(text: &str) -> Result<Task, TaskError> {
    let j: TaskJson = serde_json::from_str(text).map_err(|e| TaskError::Json(e.to_string()))?;
    j.to_task()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strips::tests::table_task;

    #[test]
    fn canonical_round_trip() {
        let t = table_task();
        let text = task_to_json(&t);
        let back = task_from_json(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(task_to_json(&back), text);
    }

    #[test]
    fn canonical_sorting() {
        let t = table_task();
        let j = TaskJson::from_task(&t);
        assert_eq!(j.actions[1].add, vec!["B".to_string(), "D".to_string()]);
        let v = serde_json::to_value(&j).unwrap();
        assert_eq!(v["actions"][0]["cost"], serde_json::json!({"num": 10, "den": 1}));
        assert_eq!(v["goal"], serde_json::json!(["D"]));
    }

    #[test]
    fn unknown_fluent_is_rejected() {
        let text = r#"{"fluents":["p"],"actions":[],"init":["q"],"goal":[]}"#;
        assert_eq!(task_from_json(text), Err(TaskError::UnknownFluent("q".into())));
        assert!(matches!(task_from_json("{"), Err(TaskError::Json(_))));
    }

    #[test]
    fn negative_cost_is_rejected() {
        let text = r#"{"fluents":[],"actions":[{"name":"x","pre_pos":[],"pre_neg":[],"add":[],"del":[],
            "cost":{"num":1,"den":0}}],"init":[],"goal":[]}"#;
        assert!(matches!(task_from_json(text), Err(TaskError::Json(_))));
    }
}
