use std::collections::HashMap;

use super::emit::{PddlNaming, PddlSource};
use super::sexpr::parse_one;
use crate::error::PddlError;
use crate::strips::{ActionId, Plan};

/// `drive(truck c a)` becomes `drive truck c a`, the token form of a plan line.
fn token_form(name: &str) -> String {
    name.to_lowercase()
        .replace(['(', ')'], " ")
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

/// Reads one action per line, by mangled or original name.
///
/// Text after `;` is a comment; blank lines are skipped.
pub fn parse_plan<'a>(text: &str, src: impl Into<PddlSource<'a>>) -> Result<Plan, PddlError> {
    let src = src.into();
    let task = src.task();
    let naming = PddlNaming::new(src);
    let mut index: HashMap<String, ActionId> = HashMap::new();
    for a in task.action_ids() {
        index.entry(token_form(&task.action(a).name)).or_insert(a);
    }
    // Mangled names take precedence over original ones.
    for a in task.action_ids() {
        index.insert(naming.action(a).to_string(), a);
    }

    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split(';').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let unknown = || PddlError::UnknownAction { line: i + 1, text: line.to_string() };
        let e = parse_one(line).map_err(|_| unknown())?;
        let items = e.list().ok_or_else(unknown)?;
        let tokens = items.iter().map(|t| t.atom().map(str::to_string)).collect::<Option<Vec<_>>>().ok_or_else(unknown)?;
        let key = tokens.join(" ");
        steps.push(*index.get(&key).ok_or_else(unknown)?);
    }
    Ok(Plan::new(steps))
}

/// One `(name)` line per step using mangled names, then a cost comment.
pub fn write_plan<'a>(plan: &Plan, src: impl Into<PddlSource<'a>>) -> String {
    let src = src.into();
    let task = src.task();
    let naming = PddlNaming::new(src);
    let mut out = String::new();
    for &a in &plan.steps {
        out.push('(');
        out.push_str(naming.action(a));
        out.push_str(")\n");
    }
    out.push_str(&format!("; cost = {} (general cost)\n", task.plan_cost(plan)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compile::{compile_lazy, Omega};
    use crate::cost::Cost;
    use crate::strips::tests::table_task;

    #[test]
    fn mangled_names() {
        let t = table_task();
        let p = parse_plan("(orig-a1)\n(orig-a2)\n", &t).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(t.plan_cost(&p), Cost::integer(20));
    }

    #[test]
    fn empty_and_trailer() {
        let t = table_task();
        assert!(parse_plan("", &t).unwrap().is_empty());
        let p = parse_plan("(orig-a1)\n(ORIG-A2)\n; cost = 23 (unit cost)\n", &t).unwrap();
        assert_eq!(t.plan_names(&p), vec!["a1", "a2"]);
    }

    #[test]
    fn original_names_and_errors() {
        let t = table_task();
        assert_eq!(parse_plan("(a2) ; trailing\n", &t).unwrap().len(), 1);
        match parse_plan("(a1)\n\n(nope)\n", &t) {
            Err(PddlError::UnknownAction { line, text }) => {
                assert_eq!(line, 3);
                assert_eq!(text, "(nope)");
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_plan("a1", &t).is_err());
    }

    #[test]
    fn write_then_read() {
        let c = compile_lazy(&table_task(), Omega::one());
        let plan = Plan::new(c.task.action_ids().filter(|&a| c.task.action(a).name == "a1").collect());
        let text = write_plan(&plan, &c);
        assert!(text.starts_with("(orig-a1)\n; cost = 10"));
        assert_eq!(parse_plan(&text, &c).unwrap(), plan);
    }

    #[test]
    fn grounded_names_with_arguments() {
        use crate::corpus::{LOGISTICS_DOMAIN, LOGISTICS_PROBLEM};
        use crate::pddl::{ground, parse_domain, parse_problem, GroundOptions};
        let d = parse_domain(LOGISTICS_DOMAIN).unwrap();
        let t = ground(&d, &parse_problem(LOGISTICS_PROBLEM, &d).unwrap(), GroundOptions::default()).unwrap();
        let p = parse_plan("(drive truck c a)\n(orig-load-green-truck-c)\n", &t).unwrap();
        assert_eq!(t.plan_names(&p), vec!["drive(truck c a)", "load(green truck c)"]);
    }
}
