//! Experiment harness: every corpus task solved as is and through both
//! compilations over a grid of disruption weights.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use disruptplan::compile::{compile_eager, compile_lazy, CompiledTask, Omega};
use disruptplan::corpus::CorpusEntry;
use disruptplan::disruption::{disruption_bounds, plan_disruption};
use disruptplan::search::{astar, enumerate_goal_states, pareto_front, Heuristic, Outcome, SearchLimits, SearchResult};
use disruptplan::{Cost, Plan, Task};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::svg::{scatter_svg, Series};

pub const RESULTS_HEADER: &str =
    "domain,problem,approach,omega,outcome,cost,base_cost,disruption,disruption_units,expansions,elapsed_s";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Approach {
    Original,
    Eager,
    Lazy,
}

impl Approach {
    pub fn label(self) -> &'static str {
        match self {
            Approach::Original => "original",
            Approach::Eager => "eager",
            Approach::Lazy => "lazy",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub corpus: Vec<CorpusEntry>,
    pub omegas: Vec<Omega>,
    pub heuristic: Heuristic,
    pub limits: SearchLimits,
    /// Each row is timed this many times; the fastest run is reported.
    pub repeats: usize,
    pub jobs: usize,
    /// State budget for the Pareto enumeration.
    pub oracle_budget: usize,
}

impl BenchConfig {
    pub fn new(corpus: Vec<CorpusEntry>) -> BenchConfig {
        BenchConfig {
            corpus,
            omegas: Omega::standard_grid().to_vec(),
            heuristic: Heuristic::HMax,
            limits: SearchLimits::default(),
            repeats: 3,
            jobs: 1,
            oracle_budget: 200_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRow {
    pub domain: String,
    pub problem: String,
    pub approach: Approach,
    /// `None` for the original task, which has no weight.
    pub omega: Option<Omega>,
    pub outcome: String,
    pub cost: Option<Cost>,
    pub base_cost: Option<Cost>,
    /// True disruption of the plan in the original task.
    pub disruption: Option<usize>,
    /// Disruption as charged by the compiled task.
    pub disruption_units: Option<Cost>,
    pub lower_bound: usize,
    pub expansions: u64,
    pub elapsed_s: f64,
}

impl ExperimentRow {
    pub fn solved(&self) -> bool {
        self.outcome == "solved"
    }

    fn csv(&self) -> String {
        let opt = |c: &Option<Cost>| c.map(|c| c.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{:.6}",
            self.domain,
            self.problem,
            self.approach.label(),
            self.omega.map(|w| w.to_string()).unwrap_or_default(),
            self.outcome,
            opt(&self.cost),
            opt(&self.base_cost),
            self.disruption.map(|d| d.to_string()).unwrap_or_default(),
            opt(&self.disruption_units),
            self.expansions,
            self.elapsed_s,
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OverheadRow {
    pub domain: String,
    pub problem: String,
    pub approach: Approach,
    pub omega: Omega,
    pub original_s: f64,
    pub approach_s: f64,
}

impl OverheadRow {
    pub fn factor(&self) -> f64 {
        self.approach_s / self.original_s.max(1e-9)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParetoRow {
    pub domain: String,
    pub problem: String,
    pub cost: Cost,
    pub disruption: usize,
}

#[derive(Clone, Debug, Default)]
pub struct BenchReport {
    pub rows: Vec<ExperimentRow>,
    pub overhead: Vec<OverheadRow>,
    pub pareto: Vec<ParetoRow>,
    /// Problems whose state space exceeded the oracle budget.
    pub pareto_skipped: Vec<(String, String)>,
}

struct Job<'a> {
    entry: &'a CorpusEntry,
    approach: Approach,
    omega: Option<Omega>,
}

fn solve_once(entry: &CorpusEntry, approach: Approach, omega: Option<Omega>, h: Heuristic, limits: SearchLimits) -> Result<(Task, Option<CompiledTask>, SearchResult, Duration)> {
    let start = Instant::now();
    let task = entry.load()?;
    let compiled = match (approach, omega) {
        (Approach::Original, _) => None,
        (Approach::Eager, Some(w)) => Some(compile_eager(&task, w)),
        (Approach::Lazy, Some(w)) => Some(compile_lazy(&task, w)),
        (_, None) => unreachable!("compiled approaches carry a weight"),
    };
    let result = astar(compiled.as_ref().map_or(&task, |c| &c.task), h, limits);
    Ok((task, compiled, result, start.elapsed()))
}

fn run_job(job: &Job<'_>, config: &BenchConfig) -> ExperimentRow {
    let mut row = ExperimentRow {
        domain: job.entry.domain.clone(),
        problem: job.entry.problem.clone(),
        approach: job.approach,
        omega: job.omega,
        outcome: String::new(),
        cost: None,
        base_cost: None,
        disruption: None,
        disruption_units: None,
        lower_bound: 0,
        expansions: 0,
        elapsed_s: 0.0,
    };
    let mut best: Option<Duration> = None;
    let mut last = None;
    for _ in 0..config.repeats.max(1) {
        match solve_once(job.entry, job.approach, job.omega, config.heuristic, config.limits) {
            Ok((task, compiled, result, elapsed)) => {
                best = Some(best.map_or(elapsed, |b| b.min(elapsed)));
                last = Some((task, compiled, result));
            }
            Err(e) => {
                row.outcome = format!("error: {e}").replace(',', ";");
                return row;
            }
        }
    }
    let (task, compiled, result) = last.expect("at least one repeat");
    row.elapsed_s = best.unwrap_or_default().as_secs_f64();
    row.expansions = result.expanded;
    row.outcome = result.outcome.label().to_string();
    row.lower_bound = disruption_bounds(&task).lower;
    if let Outcome::Solved(plan) = &result.outcome {
        fill_solution(&mut row, &task, compiled.as_ref(), plan);
    }
    row
}

fn fill_solution(row: &mut ExperimentRow, task: &Task, compiled: Option<&CompiledTask>, plan: &Plan) {
    match compiled {
        None => {
            row.cost = Some(task.plan_cost(plan));
            row.base_cost = row.cost;
            row.disruption = Some(plan_disruption(task, plan).expect("solutions execute").value);
        }
        Some(c) => {
            row.cost = Some(c.task.plan_cost(plan));
            let d = c.decompose_cost(plan).expect("solutions reach the goal");
            row.base_cost = Some(d.base);
            row.disruption_units = Some(d.disruption_units);
            row.disruption = Some(c.stripped_disruption(plan).expect("solutions reach the goal"));
        }
    }
}

pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    let mut jobs = Vec::new();
    for entry in &config.corpus {
        jobs.push(Job { entry, approach: Approach::Original, omega: None });
        for &w in &config.omegas {
            jobs.push(Job { entry, approach: Approach::Eager, omega: Some(w) });
            jobs.push(Job { entry, approach: Approach::Lazy, omega: Some(w) });
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let mut rows: Vec<ExperimentRow> = pool.install(|| jobs.par_iter().map(|j| run_job(j, config)).collect());
    rows.sort_by(|a, b| (&a.domain, &a.problem, a.approach, a.omega).cmp(&(&b.domain, &b.problem, b.approach, b.omega)));

    let overhead = overhead_rows(&rows);
    let fronts: Vec<Option<Vec<ParetoRow>>> = pool.install(|| {
        config
            .corpus
            .par_iter()
            .map(|e| {
                let task = e.load().ok()?;
                let goals = enumerate_goal_states(&task, config.oracle_budget).ok()?;
                Some(
                    pareto_front(&goals)
                        .into_iter()
                        .map(|(cost, disruption)| ParetoRow { domain: e.domain.clone(), problem: e.problem.clone(), cost, disruption })
                        .collect(),
                )
            })
            .collect()
    });
    let mut pareto = Vec::new();
    let mut pareto_skipped = Vec::new();
    for (e, f) in config.corpus.iter().zip(fronts) {
        match f {
            Some(points) => pareto.extend(points),
            None => pareto_skipped.push((e.domain.clone(), e.problem.clone())),
        }
    }
    Ok(BenchReport { rows, overhead, pareto, pareto_skipped })
}

/// Time ratios against the original task, for problems every row solved.
pub fn overhead_rows(rows: &[ExperimentRow]) -> Vec<OverheadRow> {
    let mut by_problem: BTreeMap<(&str, &str), Vec<&ExperimentRow>> = BTreeMap::new();
    for r in rows {
        by_problem.entry((&r.domain, &r.problem)).or_default().push(r);
    }
    let mut out = Vec::new();
    for ((domain, problem), group) in by_problem {
        if !group.iter().all(|r| r.solved()) {
            continue;
        }
        let Some(orig) = group.iter().find(|r| r.approach == Approach::Original) else { continue };
        for r in group.iter().filter(|r| r.approach != Approach::Original) {
            out.push(OverheadRow {
                domain: domain.to_string(),
                problem: problem.to_string(),
                approach: r.approach,
                omega: r.omega.expect("compiled rows carry a weight"),
                original_s: orig.elapsed_s,
                approach_s: r.elapsed_s,
            });
        }
    }
    out
}

impl BenchReport {
    pub fn results_csv(&self) -> String {
        let mut s = String::from(RESULTS_HEADER);
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.csv());
            s.push('\n');
        }
        s
    }

    pub fn overhead_csv(&self) -> String {
        let mut s = String::from("domain,problem,approach,omega,original_s,approach_s,factor\n");
        for o in &self.overhead {
            writeln!(
                s,
                "{},{},{},{},{:.6},{:.6},{:.3}",
                o.domain,
                o.problem,
                o.approach.label(),
                o.omega,
                o.original_s,
                o.approach_s,
                o.factor()
            )
            .unwrap();
        }
        s
    }

    pub fn pareto_csv(&self) -> String {
        let mut s = String::from("domain,problem,cost,disruption\n");
        for p in &self.pareto {
            writeln!(s, "{},{},{},{}", p.domain, p.problem, p.cost, p.disruption).unwrap();
        }
        s
    }

    /// Compiled-task disruption against original-task disruption, one
    /// series per approach and weight.
    pub fn scatter(&self) -> String {
        let original: BTreeMap<(&str, &str), usize> = self
            .rows
            .iter()
            .filter(|r| r.approach == Approach::Original)
            .filter_map(|r| Some(((r.domain.as_str(), r.problem.as_str()), r.disruption?)))
            .collect();
        let mut series: BTreeMap<(Approach, Omega), Vec<(f64, f64)>> = BTreeMap::new();
        for r in self.rows.iter().filter(|r| r.approach != Approach::Original) {
            if let (Some(&x), Some(y), Some(w)) = (original.get(&(r.domain.as_str(), r.problem.as_str())), r.disruption, r.omega) {
                series.entry((r.approach, w)).or_default().push((x as f64, y as f64));
            }
        }
        let series: Vec<Series> = series
            .into_iter()
            .map(|((a, w), points)| Series { label: format!("{} w={w}", a.label()), points })
            .collect();
        scatter_svg(&series, "original-task plan disruption", "compiled-task plan disruption")
    }

    pub fn write_to(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let files = [
            ("results.csv", self.results_csv()),
            ("overhead.csv", self.overhead_csv()),
            ("pareto.csv", self.pareto_csv()),
            ("scatter.svg", self.scatter()),
        ];
        for (name, text) in files {
            let path = dir.join(name);
            std::fs::write(&path, text).map_err(|e| CliError::io(path, e))?;
        }
        Ok(())
    }
}
