//! The `ground`, `compile`, `solve` and `evaluate` commands over in-memory text.

use std::path::Path;

use disruptplan::compile::{compile_eager, compile_lazy, CompiledTask, CompiledTaskJson, CostDecomposition, Mode, Omega};
use disruptplan::cost::lcm_scale;
use disruptplan::disruption::{disruption_bounds, plan_disruption, DisruptionBounds, DisruptionJson};
use disruptplan::pddl::{emit_pddl, ground, parse_domain, parse_plan, parse_problem, write_plan, GroundOptions, PddlSource};
use disruptplan::search::{astar, Heuristic, Outcome, SearchLimits};
use disruptplan::strips::json::TaskJson;
use disruptplan::strips::{task_from_json, task_to_json};
use disruptplan::{Task, Validation};
use serde::Serialize;

use crate::error::{CliError, Result};

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Canonical grounded-task JSON for a domain/problem pair.
pub fn ground_text(domain: &str, problem: &str, options: GroundOptions) -> Result<String> {
    let d = parse_domain(domain)?;
    let p = parse_problem(problem, &d)?;
    Ok(task_to_json(&ground(&d, &p, options)?))
}

pub fn compile_task(task_json: &str, mode: Mode, omega: Omega) -> Result<CompiledTask> {
    let task = task_from_json(task_json)?;
    Ok(match mode {
        Mode::Lazy => compile_lazy(&task, omega),
        Mode::Eager => compile_eager(&task, omega),
    })
}

pub fn compiled_json(c: &CompiledTask) -> String {
    serde_json::to_string_pretty(&c.to_json()).expect("compiled task serializes")
}

/// Writes `domain.pddl` and `problem.pddl` into `dir` and returns the cost scale.
pub fn emit_to_dir(c: &CompiledTask, dir: &Path) -> Result<u64> {
    let scale = lcm_scale(c.task.actions().iter().map(|a| &a.cost));
    let e = emit_pddl(c, scale)?;
    std::fs::create_dir_all(dir).map_err(|err| CliError::io(dir, err))?;
    write_file(&dir.join("domain.pddl"), &e.domain)?;
    write_file(&dir.join("problem.pddl"), &e.problem)?;
    Ok(scale)
}

/// A task file: plain grounded-task JSON, or a compiled task carrying roles.
pub struct LoadedTask {
    pub task: Task,
    pub compiled: Option<CompiledTaskJson>,
}

impl LoadedTask {
    pub fn parse(text: &str) -> Result<LoadedTask> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if value.get("roles").is_some() {
            let json: CompiledTaskJson = serde_json::from_value(value)?;
            Ok(LoadedTask { task: json.task.to_task()?, compiled: Some(json) })
        } else {
            let json: TaskJson = serde_json::from_value(value)?;
            Ok(LoadedTask { task: json.to_task()?, compiled: None })
        }
    }

    pub fn source(&self) -> PddlSource<'_> {
        match &self.compiled {
            Some(c) => PddlSource::Roles(&self.task, &c.roles),
            None => PddlSource::Task(&self.task),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveStats {
    pub outcome: &'static str,
    pub cost: String,
    pub plan_length: usize,
    /// Disruption of the plan in this task; absent for compiled input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disruption: Option<usize>,
    pub expanded: u64,
    pub generated: u64,
    pub elapsed_s: f64,
}

pub struct Solved {
    pub plan_text: String,
    pub stats: SolveStats,
}

pub fn solve_text(task_json: &str, heuristic: Heuristic, limits: SearchLimits) -> Result<Solved> {
    let loaded = LoadedTask::parse(task_json)?;
    let task = &loaded.task;
    let result = astar(task, heuristic, limits);
    let plan = match result.outcome {
        Outcome::Solved(p) => p,
        Outcome::ProvedUnsolvable => return Err(CliError::Unsolvable),
        Outcome::ResourceLimit => return Err(CliError::ResourceLimit { expanded: result.expanded }),
    };
    let disruption = match loaded.compiled {
        Some(_) => None,
        None => Some(plan_disruption(task, &plan).expect("solutions execute").value),
    };
    Ok(Solved {
        plan_text: write_plan(&plan, loaded.source()),
        stats: SolveStats {
            outcome: "solved",
            cost: task.plan_cost(&plan).to_string(),
            plan_length: plan.len(),
            disruption,
            expanded: result.expanded,
            generated: result.generated,
            elapsed_s: result.elapsed.as_secs_f64(),
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub base: String,
    pub disruption_part: String,
    pub disruption_units: String,
}

impl From<CostDecomposition> for Decomposition {
    fn from(d: CostDecomposition) -> Decomposition {
        Decomposition {
            base: d.base.to_string(),
            disruption_part: d.disruption_part.to_string(),
            disruption_units: d.disruption_units.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EvaluateReport {
    pub valid: bool,
    /// Cost of the plan as given, in the compiled task when one is supplied.
    pub cost: String,
    pub plan_length: usize,
    /// Disruption in the original task, of the stripped plan when compiled.
    pub disruption: DisruptionJson,
    pub bounds: DisruptionBounds,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Decomposition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stripped_cost: Option<String>,
}

fn require_solution(task: &Task, plan: &disruptplan::Plan) -> Result<()> {
    match task.validate(plan) {
        Validation::GoalReaching => Ok(()),
        Validation::NonGoal => Err(CliError::InvalidPlan(format!("goal not reached after {} steps", plan.len()))),
        Validation::Invalid { step } => Err(CliError::InvalidPlan(format!(
            "step {} ('{}') is not applicable",
            step + 1,
            task.action(plan.steps[step]).name
        ))),
    }
}

/// Checks a plan file against a task, or against its compilation when
/// `compiled_json` is given.
pub fn evaluate_text(task_json: &str, plan_text: &str, compiled_json: Option<&str>) -> Result<EvaluateReport> {
    let origin = task_from_json(task_json)?;
    let bounds = disruption_bounds(&origin);
    match compiled_json {
        None => {
            let plan = parse_plan(plan_text, &origin)?;
            require_solution(&origin, &plan)?;
            let report = plan_disruption(&origin, &plan).expect("validated plan executes");
            Ok(EvaluateReport {
                valid: true,
                cost: origin.plan_cost(&plan).to_string(),
                plan_length: plan.len(),
                disruption: report.to_json(&origin),
                bounds,
                decomposition: None,
                stripped_cost: None,
            })
        }
        Some(text) => {
            let json: CompiledTaskJson = serde_json::from_str(text)?;
            let c = CompiledTask::from_json(&json, &origin)?;
            let plan = parse_plan(plan_text, &c)?;
            require_solution(&c.task, &plan)?;
            let stripped = c.strip_plan(&plan)?;
            let report = plan_disruption(&origin, &stripped).map_err(|e| CliError::InvalidPlan(e.to_string()))?;
            Ok(EvaluateReport {
                valid: true,
                cost: c.task.plan_cost(&plan).to_string(),
                plan_length: plan.len(),
                disruption: report.to_json(&origin),
                bounds,
                decomposition: Some(c.decompose_cost(&plan)?.into()),
                stripped_cost: Some(origin.plan_cost(&stripped).to_string()),
            })
        }
    }
}
