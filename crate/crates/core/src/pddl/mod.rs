//! A PDDL subset: `:strips`, `:typing`, `:negative-preconditions` and
//! `:action-costs`. Parsing, grounding, emission and plan files.

pub mod ast;
mod emit;
mod ground;
mod parser;
mod plan_file;
pub mod sexpr;

pub use emit::{emit_pddl, mangle, EmittedPddl, PddlNaming, PddlSource};
pub use ground::{ground, GroundOptions};
pub use parser::{parse_domain, parse_problem};
pub use plan_file::{parse_plan, write_plan};

use crate::error::PddlError;
use crate::strips::Task;

/// Parses and grounds a domain/problem pair with default options.
pub fn load_task(domain: &str, problem: &str) -> Result<Task, PddlError> {
    let d = parse_domain(domain)?;
    let p = parse_problem(problem, &d)?;
    ground(&d, &p, GroundOptions::default())
}
