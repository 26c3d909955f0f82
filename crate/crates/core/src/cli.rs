//! The `plankb` command line.
//!
//! Exit codes: 0 success, 1 domain error (syntax, validation, unsolvable
//! input, missing data), 2 usage error. Graph state lives only in Turtle
//! files named on the command line; relative paths resolve against
//! `PLANKB_WORKSPACE` when it is set.

use std::ffi::OsString;
use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::kg::{class, export_turtle, import_turtle, plan_class, query, Graph, Iri};
use crate::macros::{augment_domain, mine_pairs, rank_macros, store_macros, MacroReport};
use crate::mapper::{self, display_term, iri, map_ipc_results, CompetencyQuery, StoredPlan};
use crate::pddl::{parse_domain, parse_problem, print_domain, print_problem, validate_domain, DomainDef, ProblemDef};
use crate::search::{bench_compare, solve, Algorithm, Heuristic, SearchConfig};
use crate::select::{read_ipc_csv, select_ontology, select_random};
use crate::strips::{validate_plan, Plan};

pub const WORKSPACE_ENV: &str = "PLANKB_WORKSPACE";

#[derive(Parser, Debug)]
#[command(name = "plankb", version, about = "Planning knowledge toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
    Turtle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Ontology,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    BreadthFirst,
    GreedyBestFirst,
    AStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum HeuristicArg {
    GoalCount,
    Zero,
}

#[derive(clap::Args, Debug)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "greedy-best-first")]
    algo: AlgoArg,
    #[arg(long, value_enum, default_value = "goal-count")]
    heuristic: HeuristicArg,
    #[arg(long, default_value_t = 1_000_000)]
    max_expansions: u64,
    #[arg(long, default_value_t = 60.0)]
    max_seconds: f64,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        let algorithm = match self.algo {
            AlgoArg::BreadthFirst => Algorithm::BreadthFirst,
            AlgoArg::GreedyBestFirst => Algorithm::GreedyBestFirst,
            AlgoArg::AStar => Algorithm::AStar,
        };
        let heuristic = match self.heuristic {
            HeuristicArg::GoalCount => Heuristic::GoalCount,
            HeuristicArg::Zero => Heuristic::Zero,
        };
        SearchConfig { algorithm, heuristic, max_expansions: self.max_expansions, max_seconds: self.max_seconds, seed: 0 }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a domain (and optionally a problem) and print it canonically.
    Parse { domain: PathBuf, problem: Option<PathBuf> },
    /// Map a domain, its problems and stored plans into a Turtle graph.
    BuildKg {
        domain: PathBuf,
        problems: Vec<PathBuf>,
        /// Directory of `<problem>.plan` or `<problem>.<planner>.plan` files.
        #[arg(long)]
        plans: Option<PathBuf>,
        /// Planner recorded for plan files that do not name one.
        #[arg(long, default_value = "bfs")]
        planner: String,
        /// Existing graph to extend.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Answer a competency question.
    Query {
        #[arg(long)]
        id: String,
        #[arg(long = "arg", value_name = "KEY=VALUE")]
        args: Vec<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        graph: PathBuf,
    },
    /// Add `planner,domain,solved,total` competition results to a graph.
    IngestIpc {
        results: PathBuf,
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Choose a planner for a domain.
    SelectPlanner {
        #[arg(long)]
        domain: String,
        #[arg(long, value_enum)]
        policy: PolicyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Candidate planners; defaults to every planner in the graph.
        #[arg(long = "candidate")]
        candidates: Vec<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        graph: PathBuf,
    },
    /// Rank adjacent action pairs from stored plans.
    MineMacros {
        #[arg(long)]
        domain: String,
        /// Domain file used to check chaining and compose macros.
        #[arg(long)]
        pddl: Option<PathBuf>,
        /// Write the graph with composed macros stored back.
        #[arg(long)]
        store: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
        graph: PathBuf,
    },
    /// Add the top-k macros of a report to a domain.
    Augment {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        macros: PathBuf,
        #[arg(short, default_value_t = 2)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve one problem with the built-in planner.
    Solve {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        problem: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare the original and macro-augmented domain on a problem set.
    Bench {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        problems: PathBuf,
        #[arg(long)]
        macros: Option<PathBuf>,
        #[arg(short, default_value_t = 2)]
        k: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Failure of a subcommand, mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

fn domain_err(context: impl Display, e: impl Display) -> CliError {
    CliError::Domain(format!("{context}: {e}"))
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

struct Ctx {
    workspace: Option<PathBuf>,
}

impl Ctx {
    fn path(&self, p: &Path) -> PathBuf {
        match &self.workspace {
            Some(w) if p.is_relative() => w.join(p),
            _ => p.to_path_buf(),
        }
    }

    fn read(&self, p: &Path) -> Result<String, CliError> {
        fs::read_to_string(self.path(p)).map_err(|e| domain_err(p.display(), e))
    }

    fn write(&self, p: &Path, text: &str) -> Result<(), CliError> {
        let full = self.path(p);
        if let Some(dir) = full.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| domain_err(dir.display(), e))?;
        }
        fs::write(&full, text).map_err(|e| domain_err(full.display(), e))
    }

    fn domain(&self, p: &Path) -> Result<DomainDef, CliError> {
        let d = parse_domain(&self.read(p)?).map_err(|e| domain_err(p.display(), e))?;
        if let Some(issue) = validate_domain(&d).first() {
            return Err(domain_err(p.display(), issue));
        }
        Ok(d)
    }

    fn problem(&self, p: &Path, d: &DomainDef) -> Result<ProblemDef, CliError> {
        parse_problem(&self.read(p)?, d).map_err(|e| domain_err(p.display(), e))
    }

    fn graph(&self, p: &Path) -> Result<Graph, CliError> {
        import_turtle(&self.read(p)?).map_err(|e| domain_err(p.display(), e))
    }

    fn base(&self, p: Option<&PathBuf>) -> Result<Graph, CliError> {
        match p {
            Some(p) => self.graph(p),
            None => Ok(Graph::new()),
        }
    }

    fn problems_in(&self, dir: &Path, d: &DomainDef) -> Result<Vec<ProblemDef>, CliError> {
        let mut files: Vec<PathBuf> = fs::read_dir(self.path(dir))
            .map_err(|e| domain_err(dir.display(), e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "pddl"))
            .collect();
        files.sort();
        files.iter().map(|f| self.problem(f, d)).collect()
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| domain_err("output", e))
}

fn emit_or_write(ctx: &Ctx, out: &mut dyn Write, target: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match target {
        Some(p) => ctx.write(p, text),
        None => emit(out, text),
    }
}

fn json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize") + "\n"
}

/// Entry point used by the binary and by tests. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let ctx = Ctx { workspace: std::env::var_os(WORKSPACE_ENV).map(PathBuf::from) };
    match dispatch(&ctx, cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let msg = match &e {
                CliError::Usage(m) => format!("usage error: {m}\nRun `plankb --help` for the synopsis.\n"),
                CliError::Domain(m) => format!("error: {m}\n"),
            };
            let _ = err.write_all(msg.as_bytes());
            e.code()
        }
    }
}

fn dispatch(ctx: &Ctx, cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Parse { domain, problem } => {
            let d = ctx.domain(&domain)?;
            emit(out, &print_domain(&d))?;
            if let Some(p) = problem {
                let p = ctx.problem(&p, &d)?;
                emit(out, "\n")?;
                emit(out, &print_problem(&p))?;
            }
            Ok(())
        }
        Command::BuildKg { domain, problems, plans, planner, base, output } => {
            let d = ctx.domain(&domain)?;
            let mut loaded = Vec::new();
            for p in &problems {
                let stem = p.file_stem().map(|s| s.to_string_lossy().to_lowercase()).unwrap_or_default();
                loaded.push((stem, ctx.problem(p, &d)?));
            }
            let stored = match plans {
                Some(dir) => read_plans(ctx, &dir, &d, &loaded, &planner)?,
                None => Vec::new(),
            };
            let mut g = ctx.base(base.as_ref())?;
            let defs: Vec<ProblemDef> = loaded.into_iter().map(|(_, p)| p).collect();
            mapper::build_graph(&mut g, &d, &defs, &stored).map_err(|e| domain_err("mapping", e))?;
            ctx.write(&output, &export_turtle(&g))?;
            emit(out, &format!("{} triples, {} problems, {} plans -> {}\n", g.len(), defs.len(), stored.len(), output.display()))
        }
        Command::Query { id, args, format, graph } => {
            let id: CompetencyQuery = id.parse().map_err(|e| usage(format!("{e}")))?;
            let args = mapper::parse_args(args.iter().map(String::as_str)).map_err(usage)?;
            let g = ctx.graph(&graph)?;
            let q = mapper::build_query(id, &args).map_err(|e| usage(e.to_string()))?;
            let rows = query::run(&g, &q);
            let vars = result_vars(&q, &rows);
            emit(out, &render_rows(&vars, &rows, format)?)
        }
        Command::IngestIpc { results, base, output } => {
            let text = ctx.read(&results)?;
            let rows = read_ipc_csv(text.as_bytes()).map_err(|e| domain_err(results.display(), e))?;
            let mut g = ctx.base(base.as_ref())?;
            let triples = map_ipc_results(&rows).map_err(|e| domain_err(results.display(), e))?;
            g.extend(triples).expect("mapper emits no variables");
            ctx.write(&output, &export_turtle(&g))?;
            emit(out, &format!("{} records, {} triples -> {}\n", rows.len(), g.len(), output.display()))
        }
        Command::SelectPlanner { domain, policy, seed, candidates, format, graph } => {
            let g = ctx.graph(&graph)?;
            let domain_iri = iri::resolve(&domain, iri::domain);
            let mut cands: Vec<Iri> = if candidates.is_empty() {
                g.instances_of(&plan_class(class::PLANNER)).into_iter().cloned().collect()
            } else {
                candidates.iter().map(|c| iri::resolve(c, iri::planner)).collect()
            };
            cands.sort();
            cands.dedup();
            let outcome = match policy {
                PolicyArg::Ontology => select_ontology(&g, &domain_iri, &cands),
                PolicyArg::Random => select_random(&cands, seed),
            }
            .map_err(|e| domain_err("select-planner", e))?;
            match format {
                Format::Json => emit(out, &json(&outcome)),
                _ => emit(out, &format!("{outcome}\n")),
            }
        }
        Command::MineMacros { domain, pddl, store, format, output, graph } => {
            let mut g = ctx.graph(&graph)?;
            let domain_iri = iri::resolve(&domain, iri::domain);
            let pairs = mine_pairs(&g, &domain_iri).map_err(|e| domain_err("mine-macros", e))?;
            let d = pddl.map(|p| ctx.domain(&p)).transpose()?;
            let name = d.as_ref().map(|d| d.name.clone()).unwrap_or_else(|| iri::slug(&domain));
            let report = MacroReport::build(&name, &pairs, d.as_ref());
            if let Some(target) = store {
                let d = d.as_ref().ok_or_else(|| usage("--store needs --pddl to compose macros"))?;
                let macros = rank_macros(d, &pairs);
                store_macros(&mut g, &domain_iri, &macros).map_err(|e| domain_err("mine-macros", e))?;
                ctx.write(&target, &export_turtle(&g))?;
            }
            let text = match format {
                Format::Json => json(&report),
                Format::Table => report.to_string(),
                other => return Err(usage(format!("mine-macros does not write {other:?}"))),
            };
            emit_or_write(ctx, out, output.as_ref(), &text)
        }
        Command::Augment { domain, macros, k, output } => {
            let d = ctx.domain(&domain)?;
            let report = read_report(ctx, &macros)?;
            let ms = rank_macros(&d, &report_pairs(&report));
            let augmented = augment_domain(&d, &ms, k);
            emit_or_write(ctx, out, output.as_ref(), &print_domain(&augmented))
        }
        Command::Solve { domain, problem, search, output } => {
            let d = ctx.domain(&domain)?;
            let p = ctx.problem(&problem, &d)?;
            let result = solve(&d, &p, &search.config()).map_err(|e| domain_err("solve", e))?;
            let s = &result.stats;
            let summary = format!(
                "; {} expanded {} evaluated {} generated {} time {:.3}s\n",
                result.status.as_str(),
                s.expanded,
                s.evaluated,
                s.generated,
                s.wall_time
            );
            match result.plan {
                Some(plan) => {
                    emit_or_write(ctx, out, output.as_ref(), &plan.to_text())?;
                    emit(out, &summary)
                }
                None => Err(CliError::Domain(format!("no plan for {}{}", p.name, summary.trim_end()))),
            }
        }
        Command::Bench { domain, problems, macros, k, search, format, output } => {
            let d = ctx.domain(&domain)?;
            let ps = ctx.problems_in(&problems, &d)?;
            let ms = match macros {
                Some(m) => rank_macros(&d, &report_pairs(&read_report(ctx, &m)?)),
                None => Vec::new(),
            };
            let report = bench_compare(&d, &ms, k, &ps, &search.config());
            let text = match format {
                Format::Csv => report.to_csv(),
                Format::Json => json(&report),
                Format::Table => report.to_string(),
                Format::Turtle => return Err(usage("bench writes table, csv or json")),
            };
            emit_or_write(ctx, out, output.as_ref(), &text)
        }
    }
}

fn read_report(ctx: &Ctx, p: &Path) -> Result<MacroReport, CliError> {
    serde_json::from_str(&ctx.read(p)?).map_err(|e| domain_err(p.display(), e))
}

/// Pairs in report order. A report built with a domain file keeps only the
/// pairs that chain.
fn report_pairs(r: &MacroReport) -> Vec<crate::macros::LiftedPair> {
    if r.pairs.iter().any(|e| e.reason.is_some() || e.chains) {
        r.chaining_pairs()
    } else {
        r.pairs.iter().map(|e| e.pair.clone()).collect()
    }
}

fn read_plans(
    ctx: &Ctx,
    dir: &Path,
    d: &DomainDef,
    problems: &[(String, ProblemDef)],
    default_planner: &str,
) -> Result<Vec<StoredPlan>, CliError> {
    let mut files: Vec<PathBuf> = fs::read_dir(ctx.path(dir))
        .map_err(|e| domain_err(dir.display(), e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "plan"))
        .collect();
    files.sort();
    let mut out = Vec::new();
    for f in files {
        let stem = f.file_stem().map(|s| s.to_string_lossy().to_lowercase()).unwrap_or_default();
        let find = |key: &str| problems.iter().find(|(file, p)| file == key || p.name == key).map(|(_, p)| p);
        let (problem, planner) = match find(&stem) {
            Some(p) => (p, default_planner.to_lowercase()),
            None => match stem.rsplit_once('.').and_then(|(key, planner)| find(key).map(|p| (p, planner.to_string()))) {
                Some(found) => found,
                None => continue,
            },
        };
        let plan = Plan::parse(&ctx.read(&f)?).map_err(|e| domain_err(f.display(), e))?;
        let report = validate_plan(d, problem, &plan);
        if !report.valid {
            return Err(domain_err(f.display(), report));
        }
        out.push(StoredPlan { problem: problem.name.clone(), planner, plan });
    }
    Ok(out)
}

fn result_vars(q: &query::Query, rows: &[query::Bindings]) -> Vec<String> {
    if let Some(c) = &q.count {
        return vec![c.clone()];
    }
    if let Some(s) = &q.select {
        return s.clone();
    }
    let mut vars: Vec<String> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
    vars.sort();
    vars.dedup();
    vars
}

fn render_rows(vars: &[String], rows: &[query::Bindings], format: Format) -> Result<String, CliError> {
    let cell = |r: &query::Bindings, v: &str| r.get(v).map(display_term).unwrap_or_default();
    match format {
        Format::Json => {
            let v: Vec<serde_json::Map<String, serde_json::Value>> =
                rows.iter().map(|r| vars.iter().map(|v| (v.clone(), serde_json::Value::String(cell(r, v)))).collect()).collect();
            Ok(json(&v))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(vars).map_err(|e| domain_err("csv", e))?;
            for r in rows {
                w.write_record(vars.iter().map(|v| cell(r, v))).map_err(|e| domain_err("csv", e))?;
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| domain_err("csv", e))?).expect("csv output is UTF-8"))
        }
        Format::Table => {
            let mut s = vars.join("\t");
            s.push('\n');
            for r in rows {
                s.push_str(&vars.iter().map(|v| cell(r, v)).collect::<Vec<_>>().join("\t"));
                s.push('\n');
            }
            Ok(s)
        }
        Format::Turtle => Err(usage("query results are written as table, json or csv")),
    }
}
