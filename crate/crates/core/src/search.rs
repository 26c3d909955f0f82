//! Instrumented forward state-space search, the original-vs-macro benchmark
//! and the planner-selection experiment over built-in configurations.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kg::{Graph, Iri};
use crate::macros::{augment_domain, MacroSchema};
use crate::mapper::iri;
use crate::pddl::{DomainDef, ProblemDef};
use crate::select::{random_picks, select_ontology, SelectError};
use crate::strips::{applicable, successor, validate_plan, Grounding, Plan, PlanStep, State, StripsError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    BreadthFirst,
    GreedyBestFirst,
    AStar,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::BreadthFirst => "breadth-first",
            Algorithm::GreedyBestFirst => "greedy-best-first",
            Algorithm::AStar => "a-star",
        }
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_lowercase().as_str() {
            "breadth-first" | "bfs" => Ok(Algorithm::BreadthFirst),
            "greedy-best-first" | "gbfs" => Ok(Algorithm::GreedyBestFirst),
            "a-star" | "astar" => Ok(Algorithm::AStar),
            other => Err(format!("unknown algorithm '{other}' (breadth-first, greedy-best-first, a-star)")),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Heuristic {
    GoalCount,
    Zero,
}

impl Heuristic {
    pub fn as_str(self) -> &'static str {
        match self {
            Heuristic::GoalCount => "goal-count",
            Heuristic::Zero => "zero",
        }
    }
}

impl FromStr for Heuristic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_lowercase().as_str() {
            "goal-count" | "goalcount" => Ok(Heuristic::GoalCount),
            "zero" | "blind" => Ok(Heuristic::Zero),
            other => Err(format!("unknown heuristic '{other}' (goal-count, zero)")),
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub algorithm: Algorithm,
    pub heuristic: Heuristic,
    pub max_expansions: u64,
    pub max_seconds: f64,
    /// Recorded with results only; tie-breaking is FIFO by generation order.
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            algorithm: Algorithm::GreedyBestFirst,
            heuristic: Heuristic::GoalCount,
            max_expansions: 1_000_000,
            max_seconds: 60.0,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn new(algorithm: Algorithm, heuristic: Heuristic) -> Self {
        SearchConfig { algorithm, heuristic, ..SearchConfig::default() }
    }

    pub fn check(&self) -> Result<(), SearchError> {
        if self.max_expansions == 0 || !self.max_seconds.is_finite() || self.max_seconds <= 0.0 {
            return Err(SearchError::BadConfig("limits must be positive and finite".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub expanded: u64,
    pub evaluated: u64,
    pub generated: u64,
    pub plan_cost: Option<u64>,
    pub wall_time: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Solved,
    /// The reachable state space holds no goal state.
    Exhausted,
    LimitExceeded,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::Solved => "solved",
            SearchStatus::Exhausted => "exhausted",
            SearchStatus::LimitExceeded => "limit-exceeded",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Grounding(#[from] StripsError),
    #[error("search config: {0}")]
    BadConfig(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub plan: Option<Plan>,
    pub status: SearchStatus,
    pub stats: SearchStats,
}

struct Node {
    state: State,
    parent: Option<(usize, usize)>,
    g: u64,
}

fn h(task: &Grounding, heuristic: Heuristic, s: &State) -> u64 {
    match heuristic {
        Heuristic::GoalCount => task.unsatisfied_goals(s) as u64,
        Heuristic::Zero => 0,
    }
}

enum Open {
    Fifo(VecDeque<usize>),
    // (priority, tie, generation index, node)
    Heap(BinaryHeap<Reverse<(u64, u64, u64, usize)>>),
}

pub fn solve(d: &DomainDef, p: &ProblemDef, cfg: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    cfg.check()?;
    let task = Grounding::new(d, p)?;
    Ok(solve_grounded(&task, cfg))
}

/// Search over a prepared grounding. Goal test on pop; duplicates dropped on
/// generation, except that A* reopens a state reached more cheaply.
pub fn solve_grounded(task: &Grounding, cfg: &SearchConfig) -> SearchOutcome {
    let start = Instant::now();
    let deadline = Duration::from_secs_f64(cfg.max_seconds);
    let mut stats = SearchStats::default();
    let mut nodes: Vec<Node> = Vec::new();
    let mut index: HashMap<State, usize> = HashMap::new();
    let mut counter: u64 = 0;
    let mut open = match cfg.algorithm {
        Algorithm::BreadthFirst => Open::Fifo(VecDeque::new()),
        _ => Open::Heap(BinaryHeap::new()),
    };

    let push = |open: &mut Open, counter: &mut u64, id: usize, g: u64, hv: u64| {
        *counter += 1;
        match open {
            Open::Fifo(q) => q.push_back(id),
            Open::Heap(heap) => {
                let key = match cfg.algorithm {
                    Algorithm::AStar => (g + hv, hv),
                    _ => (hv, 0),
                };
                heap.push(Reverse((key.0, key.1, *counter, id)));
            }
        }
    };

    stats.generated += 1;
    stats.evaluated += 1;
    let h0 = h(task, cfg.heuristic, &task.init);
    nodes.push(Node { state: task.init.clone(), parent: None, g: 0 });
    index.insert(task.init.clone(), 0);
    push(&mut open, &mut counter, 0, 0, h0);

    let finish = |stats: &mut SearchStats, status, plan: Option<Plan>| {
        stats.plan_cost = plan.as_ref().map(|p| p.cost);
        stats.wall_time = start.elapsed().as_secs_f64();
        SearchOutcome { plan, status, stats: stats.clone() }
    };

    loop {
        let popped = match &mut open {
            Open::Fifo(q) => q.pop_front(),
            Open::Heap(heap) => loop {
                match heap.pop() {
                    None => break None,
                    Some(Reverse((f, hv, _, id))) => {
                        // Stale entry for a reopened node.
                        if cfg.algorithm == Algorithm::AStar && f != nodes[id].g + hv {
                            continue;
                        }
                        break Some(id);
                    }
                }
            },
        };
        let Some(id) = popped else {
            return finish(&mut stats, SearchStatus::Exhausted, None);
        };
        if task.is_goal(&nodes[id].state) {
            let plan = extract(task, &nodes, id);
            return finish(&mut stats, SearchStatus::Solved, Some(plan));
        }
        if stats.expanded >= cfg.max_expansions || (stats.expanded % 256 == 0 && start.elapsed() > deadline) {
            return finish(&mut stats, SearchStatus::LimitExceeded, None);
        }
        stats.expanded += 1;
        let g = nodes[id].g;
        for (ai, a) in task.actions.iter().enumerate() {
            if !applicable(&nodes[id].state, a) {
                continue;
            }
            let next = successor(&nodes[id].state, a);
            stats.generated += 1;
            let ng = g + a.cost;
            match index.get(&next) {
                Some(&old) => {
                    if cfg.algorithm == Algorithm::AStar && ng < nodes[old].g {
                        nodes[old].g = ng;
                        nodes[old].parent = Some((id, ai));
                        stats.evaluated += 1;
                        let hv = h(task, cfg.heuristic, &next);
                        push(&mut open, &mut counter, old, ng, hv);
                    }
                }
                None => {
                    stats.evaluated += 1;
                    let hv = h(task, cfg.heuristic, &next);
                    let nid = nodes.len();
                    index.insert(next.clone(), nid);
                    nodes.push(Node { state: next, parent: Some((id, ai)), g: ng });
                    push(&mut open, &mut counter, nid, ng, hv);
                }
            }
        }
    }
}

fn extract(task: &Grounding, nodes: &[Node], mut id: usize) -> Plan {
    let mut steps = Vec::new();
    while let Some((parent, action)) = nodes[id].parent {
        steps.push(task.actions[action].step());
        id = parent;
    }
    steps.reverse();
    Plan::new(steps)
}

/// Rewrites macro steps into their two primitive steps.
pub fn expand_plan(plan: &Plan, macros: &[MacroSchema]) -> Plan {
    let by_name: HashMap<&str, &MacroSchema> = macros.iter().map(|m| (m.name(), m)).collect();
    let mut steps = Vec::new();
    for s in &plan.steps {
        match by_name.get(s.action.as_str()) {
            Some(m) => {
                let p = &m.provenance;
                let pick = |slots: &[usize]| slots.iter().map(|&i| s.args[i].clone()).collect();
                steps.push(PlanStep { action: p.first.clone(), args: pick(&p.first_args) });
                steps.push(PlanStep { action: p.second.clone(), args: pick(&p.second_args) });
            }
            None => steps.push(s.clone()),
        }
    }
    Plan::new(steps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Original,
    Macro,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Original => "original",
            Variant::Macro => "macro",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub problem: String,
    pub variant: Variant,
    pub status: SearchStatus,
    pub stats: SearchStats,
    /// Plan length after rewriting macro steps into primitive ones.
    pub primitive_cost: Option<u64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VariantMeans {
    pub solved: usize,
    pub failed: usize,
    pub expanded: f64,
    pub evaluated: f64,
    pub generated: f64,
    pub cost: f64,
    pub primitive_cost: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub domain: String,
    pub macros: Vec<String>,
    pub rows: Vec<BenchRow>,
    pub original: VariantMeans,
    #[serde(rename = "macro")]
    pub with_macros: VariantMeans,
    /// Problems where the macro variant expanded more nodes or failed.
    pub regressions: Vec<String>,
}

/// Means over solved rows of one variant.
pub fn variant_means(rows: &[BenchRow], v: Variant) -> VariantMeans {
    let rows: Vec<&BenchRow> = rows.iter().filter(|r| r.variant == v).collect();
    let solved: Vec<&&BenchRow> = rows.iter().filter(|r| r.status == SearchStatus::Solved).collect();
    let n = solved.len();
    let mean = |f: &dyn Fn(&BenchRow) -> u64| {
        if n == 0 {
            0.0
        } else {
            solved.iter().map(|r| f(r) as f64).sum::<f64>() / n as f64
        }
    };
    VariantMeans {
        solved: n,
        failed: rows.len() - n,
        expanded: mean(&|r| r.stats.expanded),
        evaluated: mean(&|r| r.stats.evaluated),
        generated: mean(&|r| r.stats.generated),
        cost: mean(&|r| r.stats.plan_cost.unwrap_or(0)),
        primitive_cost: mean(&|r| r.primitive_cost.unwrap_or(0)),
    }
}

fn bench_row(
    d: &DomainDef,
    original: &DomainDef,
    p: &ProblemDef,
    v: Variant,
    macros: &[MacroSchema],
    cfg: &SearchConfig,
) -> BenchRow {
    match solve(d, p, cfg) {
        Err(e) => BenchRow {
            problem: p.name.clone(),
            variant: v,
            status: SearchStatus::Exhausted,
            stats: SearchStats::default(),
            primitive_cost: None,
            error: Some(e.to_string()),
        },
        Ok(out) => {
            let mut error = None;
            let primitive = out.plan.as_ref().map(|plan| {
                let expanded = expand_plan(plan, macros);
                let report = validate_plan(original, p, &expanded);
                if !report.valid {
                    error = Some(format!("expanded plan rejected: {report}"));
                }
                expanded.cost
            });
            BenchRow {
                problem: p.name.clone(),
                variant: v,
                status: out.status,
                stats: out.stats,
                primitive_cost: primitive,
                error,
            }
        }
    }
}

/// Solves every problem with the original domain and with the top-`k`
/// macros added. Problems run in parallel; row order is problem order, the
/// original variant first.
pub fn bench_compare(
    d: &DomainDef,
    macros: &[MacroSchema],
    k: usize,
    problems: &[ProblemDef],
    cfg: &SearchConfig,
) -> BenchReport {
    let used = &macros[..k.min(macros.len())];
    let augmented = augment_domain(d, used, used.len());
    let jobs: Vec<(&ProblemDef, Variant)> = problems.iter().flat_map(|p| [(p, Variant::Original), (p, Variant::Macro)]).collect();
    let rows: Vec<BenchRow> = jobs
        .par_iter()
        .map(|(p, v)| match v {
            Variant::Original => bench_row(d, d, p, *v, &[], cfg),
            Variant::Macro => bench_row(&augmented, d, p, *v, used, cfg),
        })
        .collect();
    let regressions = rows
        .chunks(2)
        .filter(|pair| {
            let (o, m) = (&pair[0], &pair[1]);
            let failed = m.status != SearchStatus::Solved && o.status == SearchStatus::Solved;
            let slower =
                o.status == SearchStatus::Solved && m.status == SearchStatus::Solved && m.stats.expanded > o.stats.expanded;
            failed || slower
        })
        .map(|pair| pair[0].problem.clone())
        .collect();
    BenchReport {
        domain: d.name.clone(),
        macros: used.iter().map(|m| m.name().to_string()).collect(),
        original: variant_means(&rows, Variant::Original),
        with_macros: variant_means(&rows, Variant::Macro),
        rows,
        regressions,
    }
}

impl BenchReport {
    /// `problem,variant,expanded,evaluated,generated,cost,time`; unsolved
    /// rows leave cost empty.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["problem", "variant", "expanded", "evaluated", "generated", "cost", "time"]).expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.problem.clone(),
                r.variant.as_str().to_string(),
                r.stats.expanded.to_string(),
                r.stats.evaluated.to_string(),
                r.stats.generated.to_string(),
                r.stats.plan_cost.map(|c| c.to_string()).unwrap_or_default(),
                format!("{:.6}", r.stats.wall_time),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "domain {}  macros [{}]", self.domain, self.macros.join(", "))?;
        writeln!(
            f,
            "{:<16} {:<9} {:<15} {:>10} {:>10} {:>10} {:>5} {:>5} {:>9}",
            "problem", "variant", "status", "expanded", "evaluated", "generated", "cost", "prim", "time"
        )?;
        for r in &self.rows {
            let opt = |x: Option<u64>| x.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "{:<16} {:<9} {:<15} {:>10} {:>10} {:>10} {:>5} {:>5} {:>9.3}",
                r.problem,
                r.variant.as_str(),
                r.status.as_str(),
                r.stats.expanded,
                r.stats.evaluated,
                r.stats.generated,
                opt(r.stats.plan_cost),
                opt(r.primitive_cost),
                r.stats.wall_time
            )?;
        }
        for (name, m) in [("original", &self.original), ("macro", &self.with_macros)] {
            writeln!(
                f,
                "mean {name:<9} solved {:>3} failed {:>3}  expanded {:.2}  evaluated {:.2}  generated {:.2}  cost {:.2}  primitive {:.2}",
                m.solved, m.failed, m.expanded, m.evaluated, m.generated, m.cost, m.primitive_cost
            )?;
        }
        if !self.regressions.is_empty() {
            writeln!(f, "regressions: {}", self.regressions.join(", "))?;
        }
        Ok(())
    }
}

/// A named search configuration that plays the part of a planner.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BuiltinPlanner {
    pub name: &'static str,
    pub config: SearchConfig,
}

pub fn builtin_planners() -> Vec<BuiltinPlanner> {
    vec![
        BuiltinPlanner { name: "astar-goalcount", config: SearchConfig::new(Algorithm::AStar, Heuristic::GoalCount) },
        BuiltinPlanner { name: "bfs", config: SearchConfig::new(Algorithm::BreadthFirst, Heuristic::Zero) },
        BuiltinPlanner { name: "gbfs-goalcount", config: SearchConfig::new(Algorithm::GreedyBestFirst, Heuristic::GoalCount) },
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolicyRow {
    pub domain: String,
    pub problem: String,
    pub policy: String,
    pub planner: Option<String>,
    pub status: Option<SearchStatus>,
    pub expanded: Option<u64>,
    pub cost: Option<u64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolicySummary {
    pub policy: String,
    pub solved: usize,
    pub failed: usize,
    pub mean_expanded: f64,
    pub mean_cost: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolicyReport {
    pub seed: u64,
    pub rows: Vec<PolicyRow>,
    pub summary: Vec<PolicySummary>,
}

fn summarize(rows: &[PolicyRow], policy: &str) -> PolicySummary {
    let mine: Vec<&PolicyRow> = rows.iter().filter(|r| r.policy == policy).collect();
    let solved: Vec<&&PolicyRow> = mine.iter().filter(|r| r.status == Some(SearchStatus::Solved)).collect();
    let n = solved.len();
    let mean =
        |f: &dyn Fn(&PolicyRow) -> u64| if n == 0 { 0.0 } else { solved.iter().map(|r| f(r) as f64).sum::<f64>() / n as f64 };
    PolicySummary {
        policy: policy.to_string(),
        solved: n,
        failed: mine.len() - n,
        mean_expanded: mean(&|r| r.expanded.unwrap_or(0)),
        mean_cost: mean(&|r| r.cost.unwrap_or(0)),
    }
}

/// For each problem, picks a built-in planner by recorded relevance and by a
/// seeded uniform draw, then solves with each pick. Averages cover solved
/// rows only; failures are counted separately.
pub fn policy_experiment(
    g: &Graph,
    suites: &[(DomainDef, Vec<ProblemDef>)],
    planners: &[BuiltinPlanner],
    base: &SearchConfig,
    seed: u64,
) -> PolicyReport {
    let candidates: Vec<Iri> = planners.iter().map(|p| iri::planner(p.name)).collect();
    let mut picks = random_picks(planners.len(), seed);
    let mut jobs: Vec<(&DomainDef, &ProblemDef, &'static str, Result<usize, SelectError>)> = Vec::new();
    for (d, problems) in suites {
        let domain = iri::domain(&d.name);
        for p in problems {
            let chosen = select_ontology(g, &domain, &candidates)
                .map(|o| candidates.iter().position(|c| *c == o.chosen).expect("chosen from candidates"));
            jobs.push((d, p, "ontology", chosen));
            let r = picks.next().ok_or(SelectError::NoCandidates);
            jobs.push((d, p, "random", r));
        }
    }
    let rows: Vec<PolicyRow> = jobs
        .par_iter()
        .map(|(d, p, policy, chosen)| {
            let mut row = PolicyRow {
                domain: d.name.clone(),
                problem: p.name.clone(),
                policy: policy.to_string(),
                planner: None,
                status: None,
                expanded: None,
                cost: None,
                error: None,
            };
            match chosen {
                Err(e) => row.error = Some(e.to_string()),
                Ok(i) => {
                    let planner = &planners[*i];
                    row.planner = Some(planner.name.to_string());
                    let cfg = SearchConfig {
                        max_expansions: base.max_expansions,
                        max_seconds: base.max_seconds,
                        seed,
                        ..planner.config.clone()
                    };
                    match solve(d, p, &cfg) {
                        Ok(out) => {
                            row.status = Some(out.status);
                            row.expanded = Some(out.stats.expanded);
                            row.cost = out.stats.plan_cost;
                        }
                        Err(e) => row.error = Some(e.to_string()),
                    }
                }
            }
            row
        })
        .collect();
    let summary = vec![summarize(&rows, "ontology"), summarize(&rows, "random")];
    PolicyReport { seed, rows, summary }
}

impl fmt::Display for PolicyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<14} {:<14} {:<9} {:<16} {:<15} {:>9} {:>5}",
            "domain", "problem", "policy", "planner", "status", "expanded", "cost"
        )?;
        for r in &self.rows {
            let opt = |x: Option<u64>| x.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
            let status = match (&r.status, &r.error) {
                (Some(s), _) => s.as_str().to_string(),
                (None, Some(e)) => e.clone(),
                (None, None) => "-".into(),
            };
            writeln!(
                f,
                "{:<14} {:<14} {:<9} {:<16} {:<15} {:>9} {:>5}",
                r.domain,
                r.problem,
                r.policy,
                r.planner.as_deref().unwrap_or("-"),
                status,
                opt(r.expanded),
                opt(r.cost)
            )?;
        }
        for s in &self.summary {
            writeln!(
                f,
                "{:<9} solved {:>3} failed {:>3}  avg expanded {:.2}  avg cost {:.2}",
                s.policy, s.solved, s.failed, s.mean_expanded, s.mean_cost
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pddl::{parse_domain, parse_problem};

    const BW: &str = include_str!("../fixtures/blocksworld/domain.pddl");

    fn bw(problem: &str) -> (DomainDef, ProblemDef) {
        let d = parse_domain(BW).unwrap();
        let p = parse_problem(problem, &d).unwrap();
        (d, p)
    }

    #[test]
    fn goal_already_true() {
        let (d, p) = bw("(define (problem t) (:domain blocksworld) (:objects a) (:init (ontable a) (clear a) (handempty)) (:goal (ontable a)))");
        let out = solve(&d, &p, &SearchConfig::default()).unwrap();
        assert_eq!(out.status, SearchStatus::Solved);
        assert!(out.plan.unwrap().is_empty());
        assert_eq!(out.stats.expanded, 0);
    }

    #[test]
    fn unreachable_goal_exhausts() {
        let (d, p) = bw("(define (problem t) (:domain blocksworld) (:objects a b) (:init (ontable a) (clear a) (ontable b) (clear b) (handempty)) (:goal (on a a)))");
        let out = solve(&d, &p, &SearchConfig::new(Algorithm::BreadthFirst, Heuristic::Zero)).unwrap();
        assert_eq!(out.status, SearchStatus::Exhausted);
        assert!(out.plan.is_none());
    }

    #[test]
    fn limit_is_not_exhaustion() {
        let (d, p) = bw("(define (problem t) (:domain blocksworld) (:objects a b c) (:init (ontable a) (clear a) (ontable b) (clear b) (ontable c) (clear c) (handempty)) (:goal (and (on a b) (on b c))))");
        let cfg = SearchConfig { max_expansions: 1, ..SearchConfig::new(Algorithm::BreadthFirst, Heuristic::Zero) };
        assert_eq!(solve(&d, &p, &cfg).unwrap().status, SearchStatus::LimitExceeded);
        let bad = SearchConfig { max_expansions: 0, ..SearchConfig::default() };
        assert!(solve(&d, &p, &bad).is_err());
    }

    #[test]
    fn counters_are_ordered() {
        let (d, p) = bw("(define (problem t) (:domain blocksworld) (:objects a b c) (:init (on c a) (ontable a) (ontable b) (clear b) (clear c) (handempty)) (:goal (and (on a b) (on b c))))");
        for alg in [Algorithm::BreadthFirst, Algorithm::GreedyBestFirst, Algorithm::AStar] {
            let out = solve(&d, &p, &SearchConfig::new(alg, Heuristic::GoalCount)).unwrap();
            let s = &out.stats;
            assert!(s.generated >= s.evaluated && s.evaluated >= s.expanded, "{alg}: {s:?}");
            assert!(validate_plan(&d, &p, out.plan.as_ref().unwrap()).valid);
        }
    }
}
