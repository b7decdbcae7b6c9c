//! Bundled benchmark tasks: the logistics example, the micro task and three
//! small generated families (blocks, delivery, switches).

use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::PddlError;
use crate::pddl::load_task;
use crate::strips::{task_from_json, Task};

pub const LOGISTICS_DOMAIN: &str = include_str!("../../../corpus/logistics/domain.pddl");
pub const LOGISTICS_PROBLEM: &str = include_str!("../../../corpus/logistics/p01.pddl");
pub const TABLE_JSON: &str = include_str!("../../../corpus/micro/table.json");

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const SEED_VAR: &str = "DISRUPTPLAN_SEED";
const PROBLEMS_PER_FAMILY: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TaskSource {
    Pddl { domain: String, problem: String },
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub domain: String,
    pub problem: String,
    pub source: TaskSource,
}

impl CorpusEntry {
    pub fn load(&self) -> Result<Task, PddlError> {
        match &self.source {
            TaskSource::Pddl { domain, problem } => load_task(domain, problem),
            TaskSource::Json(text) => Ok(task_from_json(text)?),
        }
    }
}

/// Family seed from the environment, falling back to [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn bundled(seed: u64) -> Vec<CorpusEntry> {
    let pddl = |domain: &str, problem: &str, d: &str, p: String| CorpusEntry {
        domain: domain.into(),
        problem: problem.into(),
        source: TaskSource::Pddl { domain: d.into(), problem: p },
    };
    let mut out = vec![
        pddl("logistics", "p01", LOGISTICS_DOMAIN, LOGISTICS_PROBLEM.to_string()),
        CorpusEntry { domain: "micro".into(), problem: "table".into(), source: TaskSource::Json(TABLE_JSON.into()) },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 1..=PROBLEMS_PER_FAMILY {
        let name = format!("p{i:02}");
        out.push(pddl("blocks", &name, BLOCKS_DOMAIN, blocks_problem(&name, &mut rng)));
    }
    for i in 1..=PROBLEMS_PER_FAMILY {
        let name = format!("p{i:02}");
        out.push(pddl("delivery", &name, DELIVERY_DOMAIN, delivery_problem(&name, &mut rng)));
    }
    out.push(pddl("switches", "p01", SWITCHES_DOMAIN, SWITCHES_P01.to_string()));
    for i in 2..=PROBLEMS_PER_FAMILY {
        let name = format!("p{i:02}");
        out.push(pddl("switches", &name, SWITCHES_DOMAIN, switches_problem(&name, &mut rng)));
    }
    out
}

/// Reads a corpus directory: each subdirectory is a domain holding
/// `domain.pddl` plus problem files, or grounded-task `.json` files.
pub fn load_dir(root: &Path) -> std::io::Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let mut dirs: Vec<_> = std::fs::read_dir(root)?.filter_map(Result::ok).map(|e| e.path()).filter(|p| p.is_dir()).collect();
    dirs.sort();
    for dir in dirs {
        let domain_name = dir.file_name().unwrap().to_string_lossy().into_owned();
        let mut files: Vec<_> = std::fs::read_dir(&dir)?.filter_map(Result::ok).map(|e| e.path()).collect();
        files.sort();
        let domain_file = dir.join("domain.pddl");
        let domain_text = if domain_file.exists() { Some(std::fs::read_to_string(&domain_file)?) } else { None };
        for f in files {
            let stem = f.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let source = match f.extension().and_then(|e| e.to_str()) {
                Some("json") => TaskSource::Json(std::fs::read_to_string(&f)?),
                Some("pddl") if f != domain_file => match &domain_text {
                    Some(d) => TaskSource::Pddl { domain: d.clone(), problem: std::fs::read_to_string(&f)? },
                    None => continue,
                },
                _ => continue,
            };
            out.push(CorpusEntry { domain: domain_name.clone(), problem: stem, source });
        }
    }
    Ok(out)
}

pub const BLOCKS_DOMAIN: &str = "; Three-block world without a gripper. Unit costs.
(define (domain blocks)
  (:requirements :strips :typing :action-costs)
  (:types block)
  (:predicates (on ?x ?y - block) (ontable ?x - block) (clear ?x - block) (diff ?x ?y - block))
  (:functions (total-cost) - number)
  (:action move
    :parameters (?x ?from ?to - block)
    :precondition (and (clear ?x) (on ?x ?from) (clear ?to) (diff ?x ?from) (diff ?x ?to) (diff ?from ?to))
    :effect (and (on ?x ?to) (not (on ?x ?from)) (clear ?from) (not (clear ?to)) (increase (total-cost) 1)))
  (:action unstack
    :parameters (?x ?from - block)
    :precondition (and (clear ?x) (on ?x ?from) (diff ?x ?from))
    :effect (and (ontable ?x) (not (on ?x ?from)) (clear ?from) (increase (total-cost) 1)))
  (:action stack
    :parameters (?x ?to - block)
    :precondition (and (clear ?x) (ontable ?x) (clear ?to) (diff ?x ?to))
    :effect (and (on ?x ?to) (not (ontable ?x)) (not (clear ?to)) (increase (total-cost) 1))))
";

pub const DELIVERY_DOMAIN: &str = "; A robot carrying packages along a corridor. Unit costs.
(define (domain delivery)
  (:requirements :strips :typing :action-costs)
  (:types cell package)
  (:predicates (robot-at ?c - cell) (pkg-at ?p - package ?c - cell) (holding ?p - package) (adjacent ?a ?b - cell))
  (:functions (total-cost) - number)
  (:action move
    :parameters (?from ?to - cell)
    :precondition (and (robot-at ?from) (adjacent ?from ?to))
    :effect (and (robot-at ?to) (not (robot-at ?from)) (increase (total-cost) 1)))
  (:action pick
    :parameters (?p - package ?c - cell)
    :precondition (and (robot-at ?c) (pkg-at ?p ?c))
    :effect (and (holding ?p) (not (pkg-at ?p ?c)) (increase (total-cost) 1)))
  (:action drop
    :parameters (?p - package ?c - cell)
    :precondition (and (robot-at ?c) (holding ?p))
    :effect (and (pkg-at ?p ?c) (not (holding ?p)) (increase (total-cost) 1))))
";

pub const SWITCHES_DOMAIN: &str = "; Lamps lit by spending a switch, or hardwired at a higher price.
(define (domain switches)
  (:requirements :strips :typing :negative-preconditions :action-costs)
  (:types switch lamp)
  (:predicates (on ?s - switch) (lit ?l - lamp) (wired ?s - switch ?l - lamp))
  (:functions (total-cost) - number)
  (:action flip-on
    :parameters (?s - switch)
    :precondition (not (on ?s))
    :effect (and (on ?s) (increase (total-cost) 1)))
  (:action flip-off
    :parameters (?s - switch)
    :precondition (on ?s)
    :effect (and (not (on ?s)) (increase (total-cost) 1)))
  (:action power
    :parameters (?s - switch ?l - lamp)
    :precondition (and (on ?s) (wired ?s ?l))
    :effect (and (lit ?l) (not (on ?s)) (increase (total-cost) 1)))
  (:action hardwire
    :parameters (?l - lamp)
    :effect (and (lit ?l) (increase (total-cost) 4))))
";

/// Powering is cheapest but turns the switch off; hardwiring keeps it on.
pub const SWITCHES_P01: &str = "(define (problem p01)
  (:domain switches)
  (:objects s0 s1 - switch l0 l1 - lamp)
  (:init (on s0) (wired s0 l0) (wired s1 l1) (= (total-cost) 0))
  (:goal (and (lit l0)))
  (:metric minimize (total-cost)))
";

fn problem_text(name: &str, domain: &str, objects: &str, init: &[String], goal: &[String]) -> String {
    let mut s = String::new();
    writeln!(s, "(define (problem {name})").unwrap();
    writeln!(s, "  (:domain {domain})").unwrap();
    writeln!(s, "  (:objects {objects})").unwrap();
    writeln!(s, "  (:init {} (= (total-cost) 0))", init.join(" ")).unwrap();
    writeln!(s, "  (:goal (and {}))", goal.join(" ")).unwrap();
    writeln!(s, "  (:metric minimize (total-cost)))").unwrap();
    s
}

/// Random tower configuration as `on`/`ontable`/`clear` atoms.
fn random_towers(blocks: &[&str], rng: &mut ChaCha8Rng) -> (Vec<String>, Vec<String>) {
    let mut order = blocks.to_vec();
    order.shuffle(rng);
    let mut placement = Vec::new();
    let mut clear = Vec::new();
    for (i, b) in order.iter().enumerate() {
        if i > 0 && rng.gen_bool(0.5) {
            placement.push(format!("(on {b} {})", order[i - 1]));
        } else {
            if i > 0 {
                clear.push(format!("(clear {})", order[i - 1]));
            }
            placement.push(format!("(ontable {b})"));
        }
    }
    clear.push(format!("(clear {})", order.last().unwrap()));
    (placement, clear)
}

fn blocks_problem(name: &str, rng: &mut ChaCha8Rng) -> String {
    let blocks = ["b1", "b2", "b3"];
    let (mut init, clear) = random_towers(&blocks, rng);
    init.extend(clear);
    for x in blocks {
        for y in blocks {
            if x != y {
                init.push(format!("(diff {x} {y})"));
            }
        }
    }
    // Redraw goals that already hold initially.
    let goal = loop {
        let (target, _) = random_towers(&blocks, rng);
        let k = rng.gen_range(1..=2);
        let goal: Vec<String> = target.choose_multiple(rng, k).cloned().collect();
        if goal.iter().any(|g| !init.contains(g)) {
            break goal;
        }
    };
    problem_text(name, "blocks", "b1 b2 b3 - block", &init, &goal)
}

fn delivery_problem(name: &str, rng: &mut ChaCha8Rng) -> String {
    let cells = ["c0", "c1", "c2"];
    let packages = ["p1", "p2"];
    let mut init = vec![format!("(robot-at {})", cells.choose(rng).unwrap())];
    for w in cells.windows(2) {
        init.push(format!("(adjacent {} {})", w[0], w[1]));
        init.push(format!("(adjacent {} {})", w[1], w[0]));
    }
    let mut goal = Vec::new();
    for p in packages {
        let here = *cells.choose(rng).unwrap();
        init.push(format!("(pkg-at {p} {here})"));
        if rng.gen_bool(0.75) {
            let there = cells.iter().filter(|&&c| c != here).collect::<Vec<_>>();
            goal.push(format!("(pkg-at {p} {})", there.choose(rng).unwrap()));
        }
    }
    if goal.is_empty() || rng.gen_bool(0.3) {
        goal.push(format!("(robot-at {})", cells.choose(rng).unwrap()));
    }
    problem_text(name, "delivery", "c0 c1 c2 - cell p1 p2 - package", &init, &goal)
}

fn switches_problem(name: &str, rng: &mut ChaCha8Rng) -> String {
    let switches = ["s0", "s1", "s2"];
    let lamps = ["l0", "l1", "l2"];
    let mut init = Vec::new();
    for s in switches {
        if rng.gen_bool(0.6) {
            init.push(format!("(on {s})"));
        }
    }
    let mut dark = Vec::new();
    for l in lamps {
        init.push(format!("(wired {} {l})", switches.choose(rng).unwrap()));
        if rng.gen_bool(0.3) {
            init.push(format!("(lit {l})"));
        } else {
            dark.push(l);
        }
    }
    if dark.is_empty() {
        dark.push(lamps[0]);
    }
    let k = rng.gen_range(1..=2).min(dark.len());
    let goal: Vec<String> = dark.choose_multiple(rng, k).map(|l| format!("(lit {l})")).collect();
    problem_text(name, "switches", "s0 s1 s2 - switch l0 l1 l2 - lamp", &init, &goal)
}
