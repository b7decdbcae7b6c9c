use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::ast::*;
use crate::error::PddlError;
use crate::strips::{FluentId, FluentSet, GroundAction, Task};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroundOptions {
    /// Drop static predicates, pruning actions whose static preconditions
    /// fail in the initial state.
    pub prune_static: bool,
    /// Upper bound on the projected number of ground actions.
    pub max_actions: u64,
}

impl Default for GroundOptions {
    fn default() -> GroundOptions {
        GroundOptions { prune_static: true, max_actions: 1_000_000 }
    }
}

/// Ground atom keyed by predicate declaration index and object indices.
type AtomKey = (usize, Vec<usize>);

struct Grounder<'a> {
    domain: &'a DomainAst,
    objects: Vec<(String, String)>,
    object_index: HashMap<String, usize>,
    pred_index: HashMap<&'a str, usize>,
    is_static: Vec<bool>,
    static_facts: HashSet<AtomKey>,
}

fn display_atom(pred: &str, args: &[&str]) -> String {
    if args.is_empty() {
        pred.to_string()
    } else {
        format!("{pred}({})", args.join(" "))
    }
}

impl<'a> Grounder<'a> {
    fn candidates(&self, ty: &str) -> Vec<usize> {
        (0..self.objects.len()).filter(|&o| self.domain.is_subtype(&self.objects[o].1, ty)).collect()
    }

    fn instantiate(&self, atom: &AtomAst, binding: &HashMap<&str, usize>) -> AtomKey {
        let args = atom
            .args
            .iter()
            .map(|t| match t {
                Term::Var(v) => binding[v.as_str()],
                Term::Const(c) => self.object_index[c],
            })
            .collect();
        (self.pred_index[atom.predicate.as_str()], args)
    }

    fn bound(atom: &AtomAst, binding: &HashMap<&str, usize>) -> bool {
        atom.args.iter().all(|t| match t {
            Term::Var(v) => binding.contains_key(v.as_str()),
            Term::Const(_) => true,
        })
    }

    /// Whether the atom's object types fit the predicate signature.
    fn well_typed(&self, key: &AtomKey) -> bool {
        let decl = &self.domain.predicates[key.0];
        key.1.iter().zip(&decl.params).all(|(&o, (_, t))| self.domain.is_subtype(&self.objects[o].1, t))
    }
}

struct RawAction {
    name: String,
    pre_pos: BTreeSet<AtomKey>,
    pre_neg: BTreeSet<AtomKey>,
    add: BTreeSet<AtomKey>,
    del: BTreeSet<AtomKey>,
    cost: crate::Cost,
}

pub fn ground(domain: &DomainAst, problem: &ProblemAst, options: GroundOptions) -> Result<Task, PddlError> {
    let mut objects: Vec<(String, String)> = domain.constants.clone();
    for o in &problem.objects {
        if !objects.iter().any(|(n, _)| n == &o.0) {
            objects.push(o.clone());
        }
    }
    let object_index: HashMap<String, usize> = objects.iter().enumerate().map(|(i, (n, _))| (n.clone(), i)).collect();
    let mut g = Grounder {
        domain,
        objects,
        object_index,
        pred_index: domain.predicates.iter().enumerate().map(|(i, p)| (p.name.as_str(), i)).collect(),
        is_static: vec![true; domain.predicates.len()],
        static_facts: HashSet::new(),
    };
    if options.prune_static {
        for a in &domain.actions {
            for atom in a.add.iter().chain(&a.del) {
                g.is_static[g.pred_index[atom.predicate.as_str()]] = false;
            }
        }
    } else {
        g.is_static.iter_mut().for_each(|s| *s = false);
    }

    let ground_key = |atom: &GroundAtomAst| -> Result<AtomKey, PddlError> {
        let args = atom
            .args
            .iter()
            .map(|a| g.object_index.get(a).copied().ok_or_else(|| PddlError::UnknownObject(a.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((g.pred_index[atom.predicate.as_str()], args))
    };
    let init_keys: Vec<AtomKey> = problem.init.iter().map(&ground_key).collect::<Result<_, _>>()?;
    let goal_keys: Vec<AtomKey> = problem.goal.iter().map(&ground_key).collect::<Result<_, _>>()?;
    g.static_facts = init_keys.iter().filter(|k| g.is_static[k.0]).cloned().collect();

    let mut projected: u128 = 0;
    for a in &domain.actions {
        projected += a.params.iter().map(|(_, t)| g.candidates(t).len() as u128).product::<u128>();
    }
    if projected > options.max_actions as u128 {
        return Err(PddlError::GroundingExplosion { projected, limit: options.max_actions });
    }

    let mut raw = Vec::new();
    for schema in &domain.actions {
        let cands: Vec<Vec<usize>> = schema.params.iter().map(|(_, t)| g.candidates(t)).collect();
        let mut binding: HashMap<&str, usize> = HashMap::new();
        bind(&g, schema, &cands, 0, &mut binding, &mut raw);
    }

    let mut atoms: BTreeSet<AtomKey> = BTreeSet::new();
    if options.prune_static {
        for a in &raw {
            atoms.extend(a.pre_pos.iter().chain(&a.pre_neg).chain(&a.add).chain(&a.del).cloned());
        }
        atoms.extend(init_keys.iter().filter(|k| !g.is_static[k.0]).cloned());
        for k in &goal_keys {
            // A static goal fact that holds initially is dropped; one that
            // does not hold stays as an unreachable fluent.
            if !(g.is_static[k.0] && g.static_facts.contains(k)) {
                atoms.insert(k.clone());
            }
        }
    } else {
        for (pi, decl) in domain.predicates.iter().enumerate() {
            let cands: Vec<Vec<usize>> = decl.params.iter().map(|(_, t)| g.candidates(t)).collect();
            for args in cartesian(&cands) {
                atoms.insert((pi, args));
            }
        }
    }

    let ids: BTreeMap<AtomKey, FluentId> = atoms.iter().enumerate().map(|(i, k)| (k.clone(), FluentId(i))).collect();
    let n = ids.len();
    let name_of = |k: &AtomKey| {
        let args: Vec<&str> = k.1.iter().map(|&o| g.objects[o].0.as_str()).collect();
        display_atom(&domain.predicates[k.0].name, &args)
    };
    let fluent_names: Vec<String> = atoms.iter().map(name_of).collect();
    let to_set = |keys: &BTreeSet<AtomKey>| FluentSet::from_ids(n, keys.iter().map(|k| ids[k]));

    let actions = raw
        .iter()
        .map(|a| GroundAction {
            name: a.name.clone(),
            pre_pos: to_set(&a.pre_pos),
            pre_neg: to_set(&a.pre_neg),
            add: to_set(&a.add),
            del: to_set(&a.del),
            cost: a.cost,
        })
        .collect();
    let init = FluentSet::from_ids(n, init_keys.iter().filter_map(|k| ids.get(k).copied()));
    let goal = FluentSet::from_ids(n, goal_keys.iter().filter_map(|k| ids.get(k).copied()));
    Ok(Task::new(fluent_names, actions, init, goal)?)
}

fn cartesian(cands: &[Vec<usize>]) -> Vec<Vec<usize>> {
    cands.iter().fold(vec![Vec::new()], |acc, c| {
        acc.into_iter()
            .flat_map(|prefix| {
                c.iter().map(move |&o| {
                    let mut v = prefix.clone();
                    v.push(o);
                    v
                })
            })
            .collect()
    })
}

fn bind<'s>(
    g: &Grounder<'_>,
    schema: &'s ActionSchema,
    cands: &[Vec<usize>],
    depth: usize,
    binding: &mut HashMap<&'s str, usize>,
    out: &mut Vec<RawAction>,
) {
    // Reject as soon as a fully bound static precondition fails.
    for lit in &schema.precondition {
        let pi = g.pred_index[lit.atom.predicate.as_str()];
        if g.is_static[pi] && Grounder::bound(&lit.atom, binding) {
            let holds = g.static_facts.contains(&g.instantiate(&lit.atom, binding));
            if holds != lit.positive {
                return;
            }
        }
    }
    if depth < schema.params.len() {
        let var = schema.params[depth].0.as_str();
        for &o in &cands[depth] {
            binding.insert(var, o);
            bind(g, schema, cands, depth + 1, binding, out);
        }
        binding.remove(var);
        return;
    }

    let mut a = RawAction {
        name: {
            let args: Vec<&str> = schema.params.iter().map(|(v, _)| g.objects[binding[v.as_str()]].0.as_str()).collect();
            display_atom(&schema.name, &args)
        },
        pre_pos: BTreeSet::new(),
        pre_neg: BTreeSet::new(),
        add: BTreeSet::new(),
        del: BTreeSet::new(),
        cost: schema.cost,
    };
    for lit in &schema.precondition {
        let k = g.instantiate(&lit.atom, binding);
        if g.is_static[k.0] {
            continue;
        }
        if !g.well_typed(&k) {
            // An ill-typed positive precondition can never hold; an
            // ill-typed negative one always does.
            if lit.positive {
                return;
            }
            continue;
        }
        if lit.positive {
            a.pre_pos.insert(k);
        } else {
            a.pre_neg.insert(k);
        }
    }
    if !a.pre_pos.is_disjoint(&a.pre_neg) {
        return;
    }
    a.add = schema.add.iter().map(|x| g.instantiate(x, binding)).filter(|k| g.well_typed(k)).collect();
    // Add wins over delete for the same atom.
    a.del = schema
        .del
        .iter()
        .map(|x| g.instantiate(x, binding))
        .filter(|k| g.well_typed(k) && !a.add.contains(k))
        .collect();
    out.push(a);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{LOGISTICS_DOMAIN, LOGISTICS_PROBLEM};
    use crate::pddl::{parse_domain, parse_problem};
    use crate::search::enumerate_goal_states;

    fn logistics(options: GroundOptions) -> Task {
        let d = parse_domain(LOGISTICS_DOMAIN).unwrap();
        let p = parse_problem(LOGISTICS_PROBLEM, &d).unwrap();
        ground(&d, &p, options).unwrap()
    }

    #[test]
    fn logistics_golden_counts() {
        let t = logistics(GroundOptions::default());
        assert_eq!(t.num_fluents(), 11);
        assert_eq!(t.actions().len(), 18);
        let drives = t.actions().iter().filter(|a| a.name.starts_with("drive")).count();
        assert_eq!(drives, 6);
        assert_eq!(t.state_names(t.init()), vec!["at(truck c)", "at(green c)", "at(blue b)"]);
        assert_eq!(t.state_names(t.goal()), vec!["at(green a)", "at(blue c)"]);
        assert!(t.action_id("drive(truck c a)").is_some());
        assert!(t.action_id("drive(truck c c)").is_none());
    }

    #[test]
    fn zero_parameter_schema_grounds_once() {
        let d = parse_domain("(define (domain z) (:predicates (p) (q)) (:action go :parameters () :precondition (p) :effect (q)))").unwrap();
        let p = parse_problem("(define (problem z1) (:domain z) (:init (p)) (:goal (q)))", &d).unwrap();
        let t = ground(&d, &p, GroundOptions::default()).unwrap();
        assert_eq!(t.actions().len(), 1);
        assert_eq!(t.actions()[0].name, "go");
        // p is static and true, so it disappears from F and the precondition.
        assert_eq!(t.num_fluents(), 1);
        assert!(t.actions()[0].pre_pos.is_empty());
    }

    #[test]
    fn missing_road_prunes_drives() {
        let d = parse_domain(LOGISTICS_DOMAIN).unwrap();
        let text = LOGISTICS_PROBLEM.replace("(road a b) (road b a)", "");
        let p = parse_problem(&text, &d).unwrap();
        let pruned = ground(&d, &p, GroundOptions::default()).unwrap();
        let full = ground(&d, &p, GroundOptions { prune_static: false, ..Default::default() }).unwrap();
        let drives = |t: &Task| t.actions().iter().filter(|a| a.name.starts_with("drive")).map(|a| a.name.clone()).collect::<BTreeSet<_>>();
        // Brute-force reference: every drive whose road fact holds in init.
        let expected: BTreeSet<String> = drives(&full)
            .into_iter()
            .filter(|name| {
                let a = full.action(full.action_id(name).unwrap());
                a.pre_pos.iter().filter(|f| full.fluent_name(*f).starts_with("road")).all(|f| full.init().contains(f))
            })
            .collect();
        assert_eq!(drives(&pruned), expected);
        assert_eq!(expected.len(), 4);
        assert!(!drives(&pruned).contains("drive(truck a b)"));
    }

    #[test]
    fn explosion_limit() {
        let d = parse_domain(LOGISTICS_DOMAIN).unwrap();
        let p = parse_problem(LOGISTICS_PROBLEM, &d).unwrap();
        let e = ground(&d, &p, GroundOptions { max_actions: 10, ..Default::default() });
        assert!(matches!(e, Err(PddlError::GroundingExplosion { .. })));
    }

    #[test]
    fn pruning_preserves_reachable_goal_states() {
        let d = parse_domain(LOGISTICS_DOMAIN).unwrap();
        let p = parse_problem(LOGISTICS_PROBLEM, &d).unwrap();
        let pruned = ground(&d, &p, GroundOptions::default()).unwrap();
        let full = ground(&d, &p, GroundOptions { prune_static: false, ..Default::default() }).unwrap();
        let project = |t: &Task, keep: &Task| {
            let mut out: Vec<(Vec<String>, crate::Cost)> = enumerate_goal_states(t, 1_000_000)
                .unwrap()
                .into_iter()
                .map(|g| {
                    let mut names: Vec<String> = t
                        .state_names(&g.state)
                        .into_iter()
                        .filter(|n| keep.fluent_id(n).is_some())
                        .map(String::from)
                        .collect();
                    names.sort();
                    (names, g.cost)
                })
                .collect();
            out.sort();
            out
        };
        assert_eq!(project(&pruned, &pruned), project(&full, &pruned));
    }

    #[test]
    fn static_negative_precondition() {
        let d = parse_domain(
            "(define (domain s) (:requirements :negative-preconditions) (:predicates (blocked ?x) (done ?x))
               (:action act :parameters (?x) :precondition (not (blocked ?x)) :effect (done ?x)))",
        )
        .unwrap();
        let p = parse_problem("(define (problem s1) (:domain s) (:objects u v) (:init (blocked u)) (:goal (and)))", &d).unwrap();
        let t = ground(&d, &p, GroundOptions::default()).unwrap();
        assert_eq!(t.plan_names(&t.action_ids().collect()), vec!["act(v)"]);
    }
}
