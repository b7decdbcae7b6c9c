use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use crate::compile::{ActionRole, CompiledTask, RoleJson};
use crate::cost::Cost;
use crate::error::PddlError;
use crate::strips::{ActionId, FluentSet, Task};

/// Symbols the emitted text cannot use as predicate or action names.
const RESERVED: [&str; 7] = ["and", "not", "increase", "total-cost", "define", "domain", "problem"];

/// What a plan or PDDL text is written against.
#[derive(Clone, Copy, Debug)]
pub enum PddlSource<'a> {
    Task(&'a Task),
    Compiled(&'a CompiledTask),
    /// A compiled task read back from JSON without its original task; the
    /// map gives each action's role by name.
    Roles(&'a Task, &'a BTreeMap<String, RoleJson>),
}

impl<'a> From<&'a Task> for PddlSource<'a> {
    fn from(t: &'a Task) -> PddlSource<'a> {
        PddlSource::Task(t)
    }
}

impl<'a> From<&'a CompiledTask> for PddlSource<'a> {
    fn from(c: &'a CompiledTask) -> PddlSource<'a> {
        PddlSource::Compiled(c)
    }
}

impl<'a> PddlSource<'a> {
    pub fn task(&self) -> &'a Task {
        match self {
            PddlSource::Task(t) => t,
            PddlSource::Compiled(c) => &c.task,
            PddlSource::Roles(t, _) => t,
        }
    }
}

/// Lowercases and maps every run of characters outside `[a-z0-9]` to one `-`.
pub fn mangle(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    for c in name.chars().flat_map(char::to_lowercase) {
        if c.is_ascii_lowercase() || c.is_ascii_digit() {
            out.push(c);
        } else if !out.ends_with('-') {
            out.push('-');
        }
    }
    let trimmed = out.trim_matches('-');
    match trimmed.chars().next() {
        Some(c) if c.is_ascii_lowercase() => trimmed.to_string(),
        Some(_) => format!("x-{trimmed}"),
        None => "x".to_string(),
    }
}

fn claim(used: &mut HashSet<String>, base: String) -> String {
    if used.insert(base.clone()) {
        return base;
    }
    let name = (2..).map(|k| format!("{base}-{k}")).find(|n| !used.contains(n)).unwrap();
    used.insert(name.clone());
    name
}

/// Deterministic PDDL names for every fluent and action, indexed by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PddlNaming {
    pub fluents: Vec<String>,
    pub actions: Vec<String>,
}

impl PddlNaming {
    pub fn new(src: PddlSource<'_>) -> PddlNaming {
        let task = src.task();
        let mut used: HashSet<String> = RESERVED.iter().map(|s| s.to_string()).collect();
        let fluents = task.fluents().iter().map(|f| claim(&mut used, mangle(&f.name))).collect();

        let mut used: HashSet<String> = RESERVED.iter().map(|s| s.to_string()).collect();
        let actions = task
            .action_ids()
            .map(|a| {
                let base = match src {
                    PddlSource::Task(t) => format!("orig-{}", mangle(&t.action(a).name)),
                    PddlSource::Compiled(c) => match c.role(a) {
                        ActionRole::Original(o) => format!("orig-{}", mangle(&c.origin.action(o).name)),
                        ActionRole::GoalState => "goalstate".to_string(),
                        ActionRole::Collect(f) => format!("collect-{}", mangle(c.origin.fluent_name(f))),
                        ActionRole::Forgo(f) => format!("forgo-{}", mangle(c.origin.fluent_name(f))),
                        ActionRole::End => "end-reached".to_string(),
                    },
                    PddlSource::Roles(t, roles) => {
                        let name = &t.action(a).name;
                        let r = roles.get(name);
                        let fluent = || mangle(r.and_then(|r| r.fluent.as_deref()).unwrap_or(name));
                        match r.map(|r| r.role.as_str()) {
                            Some("goalstate") => "goalstate".to_string(),
                            Some("collect") => format!("collect-{}", fluent()),
                            Some("forgo") => format!("forgo-{}", fluent()),
                            Some("end") => "end-reached".to_string(),
                            _ => format!("orig-{}", mangle(name)),
                        }
                    }
                };
                claim(&mut used, base)
            })
            .collect();
        PddlNaming { fluents, actions }
    }

    pub fn action(&self, a: ActionId) -> &str {
        &self.actions[a.0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmittedPddl {
    pub domain: String,
    pub problem: String,
    pub naming: PddlNaming,
}

/// Writes `src` as a domain of 0-ary predicates and 0-parameter actions.
///
/// Action costs are multiplied by `scale` and must then be integers.
pub fn emit_pddl<'a>(src: impl Into<PddlSource<'a>>, scale: u64) -> Result<EmittedPddl, PddlError> {
    let src = src.into();
    let task = src.task();
    let naming = PddlNaming::new(src);
    let mut costs = Vec::with_capacity(task.actions().len());
    for a in task.actions() {
        let k = a.cost * Cost::integer(scale);
        if !k.is_integer() {
            return Err(PddlError::NonIntegerCost { action: a.name.clone(), scale });
        }
        costs.push(k);
    }
    let negative = task.actions().iter().any(|a| !a.pre_neg.is_empty());
    let atom = |f: crate::FluentId| format!("({})", naming.fluents[f.0]);
    let conj = |parts: Vec<String>| {
        if parts.is_empty() {
            "(and)".to_string()
        } else {
            format!("(and {})", parts.join(" "))
        }
    };
    let set = |s: &FluentSet| s.iter().map(atom).collect::<Vec<_>>();

    let name = mangle(&format!("{}-{}", task.num_fluents(), task.actions().len()));
    let mut d = String::new();
    writeln!(d, "(define (domain task-{name})").unwrap();
    write!(d, "  (:requirements :strips").unwrap();
    if negative {
        write!(d, " :negative-preconditions").unwrap();
    }
    writeln!(d, " :action-costs)").unwrap();
    writeln!(d, "  (:predicates").unwrap();
    for f in &naming.fluents {
        writeln!(d, "    ({f})").unwrap();
    }
    writeln!(d, "  )").unwrap();
    writeln!(d, "  (:functions (total-cost) - number)").unwrap();
    for (i, a) in task.actions().iter().enumerate() {
        let mut pre = set(&a.pre_pos);
        pre.extend(a.pre_neg.iter().map(|f| format!("(not {})", atom(f))));
        let mut eff = set(&a.add);
        eff.extend(a.del.iter().map(|f| format!("(not {})", atom(f))));
        eff.push(format!("(increase (total-cost) {})", costs[i]));
        writeln!(d, "  (:action {}", naming.actions[i]).unwrap();
        writeln!(d, "    :parameters ()").unwrap();
        writeln!(d, "    :precondition {}", conj(pre)).unwrap();
        writeln!(d, "    :effect {})", conj(eff)).unwrap();
    }
    writeln!(d, ")").unwrap();

    let mut p = String::new();
    writeln!(p, "(define (problem instance-{name})").unwrap();
    writeln!(p, "  (:domain task-{name})").unwrap();
    writeln!(p, "  (:init").unwrap();
    for f in task.init().iter() {
        writeln!(p, "    {}", atom(f)).unwrap();
    }
    writeln!(p, "    (= (total-cost) 0))").unwrap();
    writeln!(p, "  (:goal {})", conj(set(task.goal()))).unwrap();
    writeln!(p, "  (:metric minimize (total-cost)))").unwrap();
    Ok(EmittedPddl { domain: d, problem: p, naming })
}
