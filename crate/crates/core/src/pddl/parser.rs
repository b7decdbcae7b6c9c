use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::ast::*;
use super::sexpr::{parse_one, Sexpr};
use crate::cost::Cost;
use crate::error::PddlError;

const SUPPORTED_REQUIREMENTS: [&str; 4] = [":strips", ":typing", ":negative-preconditions", ":action-costs"];
const UNSUPPORTED_FORMS: [&str; 9] = ["or", "imply", "exists", "forall", "when", "=", "either", "decrease", "assign"];

fn unsupported(name: &str) -> PddlError {
    PddlError::UnsupportedFeature(name.to_string())
}

fn expect_atom<'a>(e: &'a Sexpr, what: &str) -> Result<&'a str, PddlError> {
    e.atom().ok_or_else(|| e.expected(what))
}

fn expect_list<'a>(e: &'a Sexpr, what: &str) -> Result<&'a [Sexpr], PddlError> {
    e.list().ok_or_else(|| e.expected(what))
}

/// Splits `(define (<kind> name) sections...)`.
fn define_form<'a>(e: &'a Sexpr, kind: &str) -> Result<(&'a str, &'a [Sexpr]), PddlError> {
    let items = expect_list(e, "'(define ...)'")?;
    if items.first().and_then(Sexpr::atom) != Some("define") {
        return Err(e.expected("'define'"));
    }
    let header = items.get(1).ok_or_else(|| e.expected(&format!("'({kind} <name>)'")))?;
    let h = expect_list(header, &format!("'({kind} <name>)'"))?;
    if h.len() != 2 || h[0].atom() != Some(kind) {
        return Err(header.expected(&format!("'({kind} <name>)'")));
    }
    Ok((expect_atom(&h[1], "a name")?, &items[2..]))
}

/// Parses `a b - t c - u d` into `(name, type)` pairs; untyped names get `object`.
fn typed_list(items: &[Sexpr]) -> Result<Vec<(String, String)>, PddlError> {
    let mut out = Vec::new();
    let mut pending: Vec<String> = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let e = &items[i];
        match e {
            Sexpr::List { .. } => {
                if e.head() == Some("either") {
                    return Err(unsupported("either"));
                }
                return Err(e.expected("a name or '-'"));
            }
            Sexpr::Atom { text, .. } if text == "-" => {
                let ty = items.get(i + 1).ok_or_else(|| e.expected("a type after '-'"))?;
                if ty.head() == Some("either") {
                    return Err(unsupported("either"));
                }
                let ty = expect_atom(ty, "a type name")?;
                if pending.is_empty() {
                    return Err(e.expected("a name before '-'"));
                }
                out.extend(pending.drain(..).map(|n| (n, ty.to_string())));
                i += 2;
            }
            Sexpr::Atom { text, .. } => {
                pending.push(text.clone());
                i += 1;
            }
        }
    }
    out.extend(pending.into_iter().map(|n| (n, ROOT_TYPE.to_string())));
    Ok(out)
}

fn parse_atom(e: &Sexpr) -> Result<AtomAst, PddlError> {
    let items = expect_list(e, "an atom '(predicate args...)'")?;
    let head = items.first().ok_or_else(|| e.expected("a predicate name"))?;
    let predicate = expect_atom(head, "a predicate name")?;
    if UNSUPPORTED_FORMS.contains(&predicate) {
        return Err(unsupported(predicate));
    }
    let args = items[1..]
        .iter()
        .map(|a| {
            let t = expect_atom(a, "a variable or object name")?;
            Ok(if t.starts_with('?') { Term::Var(t.to_string()) } else { Term::Const(t.to_string()) })
        })
        .collect::<Result<_, PddlError>>()?;
    Ok(AtomAst { predicate: predicate.to_string(), args })
}

fn parse_literal(e: &Sexpr) -> Result<Literal, PddlError> {
    if e.head() == Some("not") {
        let items = e.list().unwrap();
        if items.len() != 2 {
            return Err(e.expected("'(not <atom>)'"));
        }
        if items[1].head() == Some("not") {
            return Err(unsupported("nested not"));
        }
        return Ok(Literal { positive: false, atom: parse_atom(&items[1])? });
    }
    Ok(Literal { positive: true, atom: parse_atom(e)? })
}

/// Flattens `(and ...)` nesting into its conjuncts.
fn conjuncts(e: &Sexpr) -> Result<Vec<&Sexpr>, PddlError> {
    expect_list(e, "a condition")?;
    if e.head() == Some("and") {
        let mut out = Vec::new();
        for c in &e.list().unwrap()[1..] {
            out.extend(conjuncts(c)?);
        }
        Ok(out)
    } else {
        Ok(vec![e])
    }
}

fn parse_cost_amount(e: &Sexpr) -> Result<Cost, PddlError> {
    let text = expect_atom(e, "a constant cost")?;
    text.parse::<Cost>().map_err(|_| e.expected("a non-negative numeric constant"))
}

fn is_total_cost(e: &Sexpr) -> bool {
    e.list().is_some_and(|l| l.len() == 1 && l[0].atom() == Some("total-cost"))
}

struct Scope<'a> {
    domain: &'a DomainAst,
    vars: HashMap<&'a str, &'a str>,
    constants: HashMap<&'a str, &'a str>,
}

impl Scope<'_> {
    /// Arity and type compatibility of an atom inside an action schema.
    fn check(&self, atom: &AtomAst) -> Result<(), PddlError> {
        let decl = self
            .domain
            .predicate(&atom.predicate)
            .ok_or_else(|| PddlError::UnknownPredicate(atom.predicate.clone()))?;
        if decl.params.len() != atom.args.len() {
            return Err(PddlError::Type(format!(
                "'{}' takes {} arguments, got {}",
                atom.predicate,
                decl.params.len(),
                atom.args.len()
            )));
        }
        for (arg, (_, want)) in atom.args.iter().zip(&decl.params) {
            let have = match arg {
                Term::Var(v) => *self
                    .vars
                    .get(v.as_str())
                    .ok_or_else(|| PddlError::Type(format!("unbound variable {v} in '{}'", atom.predicate)))?,
                Term::Const(c) => *self.constants.get(c.as_str()).ok_or_else(|| PddlError::UnknownObject(c.clone()))?,
            };
            // Variables may range over a supertype; instances outside the
            // predicate's type then never match an atom.
            if !self.domain.is_subtype(have, want) && !self.domain.is_subtype(want, have) {
                return Err(PddlError::Type(format!(
                    "argument of type '{have}' does not fit '{want}' in '{}'",
                    atom.predicate
                )));
            }
        }
        Ok(())
    }
}

fn parse_action(items: &[Sexpr], form: &Sexpr, domain: &DomainAst) -> Result<ActionSchema, PddlError> {
    let name = expect_atom(items.get(1).ok_or_else(|| form.expected("an action name"))?, "an action name")?;
    let mut params = Vec::new();
    let mut pre_expr = None;
    let mut eff_expr = None;
    let mut i = 2;
    while i < items.len() {
        let key = expect_atom(&items[i], "an action keyword")?;
        let val = items.get(i + 1).ok_or_else(|| items[i].expected("a value after the keyword"))?;
        match key {
            ":parameters" => params = typed_list(expect_list(val, "a parameter list")?)?,
            ":precondition" => pre_expr = Some(val),
            ":effect" => eff_expr = Some(val),
            other => return Err(unsupported(other)),
        }
        i += 2;
    }
    for (_, ty) in &params {
        if !domain.types.contains_key(ty) {
            return Err(PddlError::UnknownType(ty.clone()));
        }
    }
    let scope = Scope {
        domain,
        vars: params.iter().map(|(v, t)| (v.as_str(), t.as_str())).collect(),
        constants: domain.constants.iter().map(|(c, t)| (c.as_str(), t.as_str())).collect(),
    };

    let mut precondition = Vec::new();
    if let Some(pre) = pre_expr {
        for c in conjuncts(pre)? {
            let lit = parse_literal(c)?;
            scope.check(&lit.atom)?;
            precondition.push(lit);
        }
    }

    let mut add = Vec::new();
    let mut del = Vec::new();
    let mut cost = None;
    if let Some(eff) = eff_expr {
        for c in conjuncts(eff)? {
            if c.head() == Some("increase") {
                let l = c.list().unwrap();
                if l.len() != 3 || !is_total_cost(&l[1]) {
                    return Err(unsupported("numeric effect other than (increase (total-cost) k)"));
                }
                let amount = parse_cost_amount(&l[2])?;
                cost = Some(cost.unwrap_or(Cost::ZERO) + amount);
                continue;
            }
            let lit = parse_literal(c)?;
            scope.check(&lit.atom)?;
            if lit.positive {
                add.push(lit.atom);
            } else {
                del.push(lit.atom);
            }
        }
    }
    Ok(ActionSchema {
        name: name.to_string(),
        params,
        precondition,
        add,
        del,
        cost: cost.unwrap_or(Cost::ONE),
    })
}

pub fn parse_domain(text: &str) -> Result<DomainAst, PddlError> {
    let root = parse_one(text)?;
    let (name, sections) = define_form(&root, "domain")?;
    let mut domain = DomainAst {
        name: name.to_string(),
        requirements: BTreeSet::new(),
        types: BTreeMap::from([(ROOT_TYPE.to_string(), ROOT_TYPE.to_string())]),
        constants: Vec::new(),
        predicates: Vec::new(),
        actions: Vec::new(),
    };
    let mut action_forms = Vec::new();
    for sec in sections {
        let items = expect_list(sec, "a domain section")?;
        let key = items.first().map(|k| expect_atom(k, "a section keyword")).transpose()?.unwrap_or("");
        match key {
            ":requirements" => {
                for r in &items[1..] {
                    let r = expect_atom(r, "a requirement flag")?;
                    if !SUPPORTED_REQUIREMENTS.contains(&r) {
                        return Err(unsupported(r));
                    }
                    domain.requirements.insert(r.to_string());
                }
            }
            ":types" => {
                for (t, parent) in typed_list(&items[1..])? {
                    domain.types.entry(parent.clone()).or_insert_with(|| ROOT_TYPE.to_string());
                    domain.types.insert(t, parent);
                }
            }
            ":constants" => domain.constants.extend(typed_list(&items[1..])?),
            ":predicates" => {
                for p in &items[1..] {
                    let pl = expect_list(p, "a predicate declaration")?;
                    let pname = expect_atom(pl.first().ok_or_else(|| p.expected("a predicate name"))?, "a predicate name")?;
                    domain.predicates.push(PredicateDecl { name: pname.to_string(), params: typed_list(&pl[1..])? });
                }
            }
            ":functions" => {
                let fs = typed_list_of_lists(&items[1..])?;
                if fs.iter().any(|f| f != "total-cost") {
                    return Err(unsupported("numeric fluents"));
                }
            }
            ":action" => action_forms.push(sec),
            "" => return Err(sec.expected("a section keyword")),
            other => return Err(unsupported(other)),
        }
    }
    for (c, t) in &domain.constants {
        if !domain.types.contains_key(t) {
            return Err(PddlError::UnknownType(format!("{t} (constant {c})")));
        }
    }
    for p in &domain.predicates {
        for (_, t) in &p.params {
            if !domain.types.contains_key(t) {
                return Err(PddlError::UnknownType(t.clone()));
            }
        }
    }
    for sec in action_forms {
        let a = parse_action(sec.list().unwrap(), sec, &domain)?;
        domain.actions.push(a);
    }
    Ok(domain)
}

/// Function declarations: `(total-cost) - number` style entries.
fn typed_list_of_lists(items: &[Sexpr]) -> Result<Vec<String>, PddlError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < items.len() {
        match &items[i] {
            Sexpr::Atom { text, .. } if text == "-" => i += 2,
            e => {
                let l = expect_list(e, "a function declaration")?;
                out.push(expect_atom(l.first().ok_or_else(|| e.expected("a function name"))?, "a function name")?.to_string());
                i += 1;
            }
        }
    }
    Ok(out)
}

fn ground_atom(
    e: &Sexpr,
    domain: &DomainAst,
    objects: &HashMap<String, String>,
) -> Result<GroundAtomAst, PddlError> {
    let atom = parse_atom(e)?;
    let decl = domain
        .predicate(&atom.predicate)
        .ok_or_else(|| PddlError::UnknownPredicate(atom.predicate.clone()))?;
    if decl.params.len() != atom.args.len() {
        return Err(PddlError::Type(format!(
            "'{}' takes {} arguments, got {}",
            atom.predicate,
            decl.params.len(),
            atom.args.len()
        )));
    }
    let mut args = Vec::with_capacity(atom.args.len());
    for (arg, (_, want)) in atom.args.iter().zip(&decl.params) {
        let name = match arg {
            Term::Const(c) => c,
            Term::Var(v) => return Err(PddlError::Type(format!("variable {v} in a ground literal"))),
        };
        let ty = objects.get(name).ok_or_else(|| PddlError::UnknownObject(name.clone()))?;
        if !domain.is_subtype(ty, want) {
            return Err(PddlError::Type(format!(
                "object '{name}' of type '{ty}' used as '{want}' in '{}'",
                atom.predicate
            )));
        }
        args.push(name.clone());
    }
    Ok(GroundAtomAst { predicate: atom.predicate, args })
}

pub fn parse_problem(text: &str, domain: &DomainAst) -> Result<ProblemAst, PddlError> {
    let root = parse_one(text)?;
    let (name, sections) = define_form(&root, "problem")?;
    let mut problem = ProblemAst {
        name: name.to_string(),
        domain: String::new(),
        objects: Vec::new(),
        init: Vec::new(),
        goal: Vec::new(),
        minimize_total_cost: false,
    };
    let mut objects: HashMap<String, String> = domain.constants.iter().cloned().collect();
    let mut init_forms = None;
    let mut goal_form = None;
    for sec in sections {
        let items = expect_list(sec, "a problem section")?;
        let key = items.first().map(|k| expect_atom(k, "a section keyword")).transpose()?.unwrap_or("");
        match key {
            ":domain" => {
                problem.domain = expect_atom(items.get(1).ok_or_else(|| sec.expected("a domain name"))?, "a domain name")?.to_string()
            }
            ":requirements" => {
                for r in &items[1..] {
                    let r = expect_atom(r, "a requirement flag")?;
                    if !SUPPORTED_REQUIREMENTS.contains(&r) {
                        return Err(unsupported(r));
                    }
                }
            }
            ":objects" => {
                for (o, t) in typed_list(&items[1..])? {
                    if !domain.types.contains_key(&t) {
                        return Err(PddlError::UnknownType(t));
                    }
                    objects.insert(o.clone(), t.clone());
                    problem.objects.push((o, t));
                }
            }
            ":init" => init_forms = Some(&items[1..]),
            ":goal" => goal_form = Some(items.get(1).ok_or_else(|| sec.expected("a goal condition"))?),
            ":metric" => {
                if items.len() != 3 || items[1].atom() != Some("minimize") || !is_total_cost(&items[2]) {
                    return Err(unsupported("metric other than (minimize (total-cost))"));
                }
                problem.minimize_total_cost = true;
            }
            "" => return Err(sec.expected("a section keyword")),
            other => return Err(unsupported(other)),
        }
    }
    if problem.domain != domain.name {
        return Err(PddlError::DomainMismatch { expected: domain.name.clone(), found: problem.domain.clone() });
    }
    for e in init_forms.unwrap_or(&[]) {
        if e.head() == Some("=") {
            let l = e.list().unwrap();
            if l.len() == 3 && is_total_cost(&l[1]) && parse_cost_amount(&l[2]).is_ok_and(|c| c.is_zero()) {
                continue;
            }
            return Err(unsupported("numeric initial value"));
        }
        problem.init.push(ground_atom(e, domain, &objects)?);
    }
    if let Some(g) = goal_form {
        for c in conjuncts(g)? {
            if c.head() == Some("not") {
                return Err(unsupported("negative goal"));
            }
            problem.goal.push(ground_atom(c, domain, &objects)?);
        }
    }
    Ok(problem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{LOGISTICS_DOMAIN, LOGISTICS_PROBLEM};

    #[test]
    fn minimal_domain_defaults_to_unit_cost() {
        let d = parse_domain("(define (domain tiny) (:predicates (p)) (:action go :parameters () :effect (p)))").unwrap();
        assert_eq!(d.actions.len(), 1);
        assert_eq!(d.actions[0].cost, Cost::ONE);
        assert!(d.actions[0].precondition.is_empty());
    }

    #[test]
    fn logistics_domain_shape() {
        let d = parse_domain(LOGISTICS_DOMAIN).unwrap();
        assert_eq!(d.actions.len(), 3);
        assert_eq!(d.predicates.len(), 3);
        assert!(d.is_subtype("truck", "locatable"));
        assert!(d.is_subtype("package", "object"));
        assert!(!d.is_subtype("location", "locatable"));
    }

    #[test]
    fn rejects_features_outside_the_subset() {
        let derived = "(define (domain d) (:predicates (p)) (:derived (p) (p)))";
        assert_eq!(parse_domain(derived), Err(PddlError::UnsupportedFeature(":derived".into())));
        let adl = "(define (domain d) (:requirements :adl))";
        assert_eq!(parse_domain(adl), Err(PddlError::UnsupportedFeature(":adl".into())));
        let cond = "(define (domain d) (:predicates (p) (q)) (:action a :parameters () :effect (when (p) (q))))";
        assert_eq!(parse_domain(cond), Err(PddlError::UnsupportedFeature("when".into())));
        let or = "(define (domain d) (:predicates (p) (q)) (:action a :parameters () :precondition (or (p) (q)) :effect (q)))";
        assert_eq!(parse_domain(or), Err(PddlError::UnsupportedFeature("or".into())));
    }

    #[test]
    fn keywords_are_case_insensitive() {
        let d = parse_domain("(DEFINE (DOMAIN Up) (:PREDICATES (P)) (:ACTION Go :PARAMETERS () :EFFECT (AND (P) (INCREASE (TOTAL-COST) 4))))")
            .unwrap();
        assert_eq!(d.name, "up");
        assert_eq!(d.actions[0].cost, Cost::integer(4));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_domain("(define (domain d)\n  (:predicates (p)").unwrap_err();
        assert!(matches!(e, PddlError::Syntax { line: 2, .. }), "{e:?}");
    }

    #[test]
    fn undeclared_predicate_and_arity() {
        let e = parse_domain("(define (domain d) (:predicates (p ?x)) (:action a :parameters (?x) :effect (q ?x)))");
        assert_eq!(e, Err(PddlError::UnknownPredicate("q".into())));
        let e = parse_domain("(define (domain d) (:predicates (p ?x)) (:action a :parameters (?x) :effect (p)))");
        assert!(matches!(e, Err(PddlError::Type(_))));
        let e = parse_domain("(define (domain d) (:predicates (p ?x)) (:action a :parameters (?x - thing) :effect (p ?x)))");
        assert_eq!(e, Err(PddlError::UnknownType("thing".into())));
    }

    #[test]
    fn logistics_problem() {
        let d = parse_domain(LOGISTICS_DOMAIN).unwrap();
        let p = parse_problem(LOGISTICS_PROBLEM, &d).unwrap();
        assert_eq!(p.objects.len(), 6);
        let dynamic_init = p.init.iter().filter(|a| a.predicate != "road").count();
        assert_eq!(dynamic_init, 3);
        assert_eq!(p.goal.len(), 2);
        assert!(p.minimize_total_cost);
    }

    #[test]
    fn empty_goal() {
        let d = parse_domain(LOGISTICS_DOMAIN).unwrap();
        let p = parse_problem("(define (problem e) (:domain logistics) (:objects t - truck) (:init) (:goal (and)))", &d).unwrap();
        assert!(p.goal.is_empty());
    }

    #[test]
    fn ill_typed_goal_literals() {
        let d = parse_domain(LOGISTICS_DOMAIN).unwrap();
        let wrong_arity = "(define (problem e) (:domain logistics) (:objects t - truck a - location) (:init) (:goal (at t)))";
        assert!(matches!(parse_problem(wrong_arity, &d), Err(PddlError::Type(_))));
        let wrong_type = "(define (problem e) (:domain logistics) (:objects t - truck a - location) (:init) (:goal (at a t)))";
        assert!(matches!(parse_problem(wrong_type, &d), Err(PddlError::Type(_))));
        let unknown = "(define (problem e) (:domain logistics) (:objects t - truck) (:init) (:goal (at t nowhere)))";
        assert_eq!(parse_problem(unknown, &d), Err(PddlError::UnknownObject("nowhere".into())));
        let neg = "(define (problem e) (:domain logistics) (:objects t - truck a - location) (:init) (:goal (not (at t a))))";
        assert!(matches!(parse_problem(neg, &d), Err(PddlError::UnsupportedFeature(_))));
    }

    #[test]
    fn domain_name_must_match() {
        let d = parse_domain(LOGISTICS_DOMAIN).unwrap();
        let p = "(define (problem e) (:domain other) (:init) (:goal (and)))";
        assert!(matches!(parse_problem(p, &d), Err(PddlError::DomainMismatch { .. })));
    }
}
