//! Fixture loading and independent reference implementations used as test
//! oracles. Nothing here calls into the grounding, search or query engine of
//! the library.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::path::{Path, PathBuf};

use plankb::kg::{Graph, Term as KTerm, Triple};
use plankb::macros::{augment_domain, MacroSchema};
use plankb::pddl::{parse_domain, parse_problem, Atom, DomainDef, ProblemDef, Term};
use plankb::pddl::{ActionSchema, Literal, PredicateSchema, TypedName, OBJECT};
use plankb::strips::Plan;
use proptest::prelude::*;

pub const DOMAINS: [&str; 3] = ["blocksworld", "gripper", "driverlog"];

pub fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

pub fn read(rel: &str) -> String {
    std::fs::read_to_string(fixture(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn domain(name: &str) -> DomainDef {
    parse_domain(&read(&format!("{name}/domain.pddl"))).unwrap()
}

fn sorted_files(dir: &Path, ext: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> =
        std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|x| x == ext)).collect();
    v.sort();
    v
}

fn stem(p: &Path) -> String {
    p.file_stem().unwrap().to_string_lossy().into_owned()
}

/// Problems of a bundled domain keyed by file stem, in file order.
pub fn problems(name: &str) -> Vec<(String, ProblemDef)> {
    let d = domain(name);
    sorted_files(&fixture(&format!("{name}/problems")), "pddl")
        .into_iter()
        .map(|f| (stem(&f), parse_problem(&std::fs::read_to_string(&f).unwrap(), &d).unwrap()))
        .collect()
}

/// Raw text of the stored plan files of a bundled domain, keyed by stem.
pub fn plan_texts(name: &str) -> Vec<(String, String)> {
    sorted_files(&fixture(&format!("plans/{name}")), "plan")
        .into_iter()
        .map(|f| (stem(&f), std::fs::read_to_string(&f).unwrap()))
        .collect()
}

pub fn plans(name: &str) -> Vec<(String, Plan)> {
    plan_texts(name).into_iter().map(|(s, t)| (s, Plan::parse(&t).unwrap())).collect()
}

// ---------------------------------------------------------------------------
// Naive STRIPS semantics over string atoms.

pub type NState = BTreeSet<String>;

pub fn atom_text(pred: &str, args: &[String]) -> String {
    if args.is_empty() {
        format!("({pred})")
    } else {
        format!("({} {})", pred, args.join(" "))
    }
}

fn subst(a: &Atom, b: &HashMap<String, String>) -> (String, Vec<String>) {
    let args = a
        .args
        .iter()
        .map(|t| match t {
            Term::Var(v) => b[v].clone(),
            Term::Const(c) => c.clone(),
        })
        .collect();
    (a.predicate.clone(), args)
}

/// A ground action built by direct substitution.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NAction {
    pub name: String,
    pub args: Vec<String>,
    pub pre_pos: Vec<String>,
    pub pre_neg: Vec<String>,
    pub add: Vec<String>,
    pub del: Vec<String>,
}

impl NAction {
    pub fn applicable(&self, s: &NState) -> bool {
        self.pre_pos.iter().all(|a| s.contains(a)) && self.pre_neg.iter().all(|a| !s.contains(a))
    }

    pub fn apply(&self, s: &NState) -> NState {
        let mut out: NState = s.iter().filter(|a| !self.del.contains(a)).cloned().collect();
        out.extend(self.add.iter().cloned());
        out
    }
}

pub fn objects_with_types(d: &DomainDef, p: &ProblemDef) -> Vec<(String, String)> {
    d.constants.iter().chain(&p.objects).map(|o| (o.name.clone(), o.ty.clone())).collect()
}

/// Instantiates one schema under explicit arguments; `None` when a type or
/// equality constraint fails.
pub fn instantiate(d: &DomainDef, p: &ProblemDef, name: &str, args: &[String]) -> Option<NAction> {
    let schema = d.action(name)?;
    if schema.params.len() != args.len() {
        return None;
    }
    let objs = objects_with_types(d, p);
    let mut b = HashMap::new();
    for (param, arg) in schema.params.iter().zip(args) {
        let ty = objs.iter().find(|(n, _)| n == arg).map(|(_, t)| t.clone())?;
        if !d.is_subtype(&ty, &param.ty) {
            return None;
        }
        b.insert(param.name.clone(), arg.clone());
    }
    let mut a = NAction { name: name.into(), args: args.to_vec(), pre_pos: vec![], pre_neg: vec![], add: vec![], del: vec![] };
    for l in &schema.precondition {
        let (pred, xs) = subst(&l.atom, &b);
        if pred == "=" {
            if (xs[0] == xs[1]) != l.positive {
                return None;
            }
            continue;
        }
        let t = atom_text(&pred, &xs);
        if l.positive {
            a.pre_pos.push(t)
        } else {
            a.pre_neg.push(t)
        }
    }
    for x in &schema.add {
        let (pred, xs) = subst(x, &b);
        a.add.push(atom_text(&pred, &xs));
    }
    for x in &schema.del {
        let (pred, xs) = subst(x, &b);
        let t = atom_text(&pred, &xs);
        if !a.add.contains(&t) {
            a.del.push(t);
        }
    }
    Some(a)
}

/// Every type-consistent instantiation, by brute-force cartesian product.
pub fn naive_ground(d: &DomainDef, p: &ProblemDef) -> Vec<NAction> {
    let objs: Vec<String> = objects_with_types(d, p).into_iter().map(|(n, _)| n).collect();
    let mut out = Vec::new();
    for s in &d.actions {
        let n = s.params.len();
        let total = objs.len().pow(n as u32);
        for mut code in 0..total {
            let mut args = Vec::with_capacity(n);
            for _ in 0..n {
                args.push(objs[code % objs.len()].clone());
                code /= objs.len();
            }
            if let Some(a) = instantiate(d, p, &s.name, &args) {
                out.push(a);
            }
        }
    }
    out
}

pub fn init_state(p: &ProblemDef) -> NState {
    p.init.iter().map(|a| a.to_string()).collect()
}

pub fn goal_holds(p: &ProblemDef, s: &NState) -> bool {
    p.goal.iter().all(|l| s.contains(&l.atom.to_string()) == l.positive)
}

/// Step-by-step simulation. Returns the 1-based index of the first failing
/// step, `Some(len + 1)` when only the goal fails, `None` when valid.
pub fn naive_validate(d: &DomainDef, p: &ProblemDef, plan: &Plan) -> Option<usize> {
    let mut s = init_state(p);
    for (i, st) in plan.steps.iter().enumerate() {
        let Some(a) = instantiate(d, p, &st.action, &st.args) else {
            return Some(i + 1);
        };
        if !a.applicable(&s) {
            return Some(i + 1);
        }
        s = a.apply(&s);
    }
    if goal_holds(p, &s) {
        None
    } else {
        Some(plan.steps.len() + 1)
    }
}

/// Reachable states by exhaustive breadth-first enumeration, capped.
pub fn reachable(d: &DomainDef, p: &ProblemDef, cap: usize) -> Option<Vec<NState>> {
    let acts = naive_ground(d, p);
    let init = init_state(p);
    let mut seen: HashSet<NState> = HashSet::from([init.clone()]);
    let mut order = vec![init.clone()];
    let mut q = VecDeque::from([init]);
    while let Some(s) = q.pop_front() {
        for a in acts.iter().filter(|a| a.applicable(&s)) {
            let t = a.apply(&s);
            if seen.insert(t.clone()) {
                if seen.len() > cap {
                    return None;
                }
                order.push(t.clone());
                q.push_back(t);
            }
        }
    }
    Some(order)
}

/// Optimal unit-cost plan length by exhaustive layered enumeration, or
/// `Err(())` if the reachable space exceeds `cap`. `Ok(None)` = unsolvable.
pub fn optimal_cost(d: &DomainDef, p: &ProblemDef, cap: usize) -> Result<Option<u64>, ()> {
    let acts = naive_ground(d, p);
    let init = init_state(p);
    let mut seen: HashSet<NState> = HashSet::from([init.clone()]);
    let mut layer = vec![init];
    let mut depth = 0;
    loop {
        if layer.iter().any(|s| goal_holds(p, s)) {
            return Ok(Some(depth));
        }
        let mut next = Vec::new();
        for s in &layer {
            for a in acts.iter().filter(|a| a.applicable(s)) {
                let t = a.apply(s);
                if seen.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        if seen.len() > cap {
            return Err(());
        }
        if next.is_empty() {
            return Ok(None);
        }
        layer = next;
        depth += 1;
    }
}

// ---------------------------------------------------------------------------
// Reference evaluator for basic graph patterns.

pub type Pattern = (KTerm, KTerm, KTerm);

fn unify_term(pat: &KTerm, val: &KTerm, b: &mut BTreeMap<String, KTerm>) -> bool {
    match pat {
        KTerm::Var(v) => match b.get(v) {
            Some(x) => x == val,
            None => {
                b.insert(v.clone(), val.clone());
                true
            }
        },
        other => other == val,
    }
}

/// Nested loops over a linear scan, one pattern at a time, in given order.
pub fn nested_loop(g: &Graph, pats: &[Pattern]) -> Vec<BTreeMap<String, KTerm>> {
    let triples: Vec<&Triple> = g.iter().collect();
    let mut rows = vec![BTreeMap::new()];
    for (s, p, o) in pats {
        let mut next = Vec::new();
        for r in &rows {
            for t in &triples {
                let mut b = r.clone();
                if unify_term(s, &KTerm::Iri(t.subject.clone()), &mut b)
                    && unify_term(p, &KTerm::Iri(t.predicate.clone()), &mut b)
                    && unify_term(o, &t.object, &mut b)
                {
                    next.push(b);
                }
            }
        }
        rows = next;
    }
    if pats.is_empty() {
        return Vec::new();
    }
    rows.sort();
    rows
}

// ---------------------------------------------------------------------------
// Sliding-window pair counter over raw plan text.

/// Name-level and argument-pattern counts of adjacent steps, read straight
/// from plan text. Patterns are written as `name(i j) name(k l)` with
/// objects replaced by first-appearance indices.
pub fn sliding_window(texts: &[String]) -> (BTreeMap<(String, String), u64>, BTreeMap<String, u64>) {
    let mut names = BTreeMap::new();
    let mut patterns = BTreeMap::new();
    for text in texts {
        let steps: Vec<Vec<String>> = text
            .lines()
            .map(|l| l.split(';').next().unwrap().trim())
            .filter(|l| !l.is_empty())
            .map(|l| l.trim_matches(|c| c == '(' || c == ')').split_whitespace().map(|s| s.to_lowercase()).collect())
            .collect();
        for w in steps.windows(2) {
            *names.entry((w[0][0].clone(), w[1][0].clone())).or_insert(0) += 1;
            let mut seen: Vec<String> = Vec::new();
            let mut show = |step: &Vec<String>| {
                let idx: Vec<String> = step[1..]
                    .iter()
                    .map(|o| {
                        let i = seen.iter().position(|s| s == o).unwrap_or_else(|| {
                            seen.push(o.clone());
                            seen.len() - 1
                        });
                        i.to_string()
                    })
                    .collect();
                format!("{}({})", step[0], idx.join(" "))
            };
            let key = format!("{} {}", show(&w[0]), show(&w[1]));
            *patterns.entry(key).or_insert(0) += 1;
        }
    }
    (names, patterns)
}

// ---------------------------------------------------------------------------
// Graph fixtures built through the mapper.

/// The mapped graph of a bundled domain, its problems and optionally its
/// stored plans (attributed to the `bfs` planner).
pub fn mapped_graph(name: &str, with_plans: bool) -> Graph {
    use plankb::mapper::{build_graph, StoredPlan};
    let d = domain(name);
    let ps = problems(name);
    let stored: Vec<StoredPlan> = if with_plans {
        plans(name)
            .into_iter()
            .map(|(stem, plan)| {
                let p = &ps.iter().find(|(s, _)| *s == stem).unwrap().1;
                StoredPlan { problem: p.name.clone(), planner: "bfs".into(), plan }
            })
            .collect()
    } else {
        Vec::new()
    };
    let defs: Vec<ProblemDef> = ps.into_iter().map(|(_, p)| p).collect();
    let mut g = Graph::new();
    build_graph(&mut g, &d, &defs, &stored).unwrap();
    g
}

/// The bundled competition results as a graph.
pub fn ipc_graph() -> Graph {
    let rows = plankb::select::read_ipc_csv(read("ipc/ipc2011-optimal.csv").as_bytes()).unwrap();
    let mut g = Graph::new();
    g.extend(plankb::mapper::map_ipc_results(&rows).unwrap()).unwrap();
    g
}

// ---------------------------------------------------------------------------
// Generated STRIPS domains over `object`.

fn ident() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9-]{0,5}".prop_filter("reserved words", |s| !matches!(s.as_str(), "and" | "not" | "either" | "object" | "define"))
}

prop_compose! {
    pub fn arb_domain()(
        name in ident(),
        arities in prop::collection::vec(0usize..3, 1..5),
        acts in prop::collection::vec((0usize..3, prop::collection::vec((any::<prop::sample::Index>(), any::<bool>(), prop::collection::vec(any::<prop::sample::Index>(), 3)), 1..5)), 1..4),
    ) -> DomainDef {
        let preds: Vec<PredicateSchema> = arities.iter().enumerate().map(|(i, &n)| PredicateSchema {
            name: format!("p{i}"),
            params: (0..n).map(|j| TypedName::new(format!("v{j}"), OBJECT)).collect(),
        }).collect();
        let mut actions = Vec::new();
        for (ai, (nparams, lits)) in acts.into_iter().enumerate() {
            let params: Vec<TypedName> = (0..nparams).map(|j| TypedName::new(format!("x{j}"), OBJECT)).collect();
            let mut a = ActionSchema { name: format!("a{ai}"), params, precondition: vec![], add: vec![], del: vec![] };
            for (k, (pi, positive, args)) in lits.into_iter().enumerate() {
                let pred = &preds[pi.index(preds.len())];
                if pred.arity() > 0 && nparams == 0 {
                    continue;
                }
                let terms = (0..pred.arity()).map(|j| Term::var(format!("x{}", args[j].index(nparams)))).collect();
                let atom = Atom::new(pred.name.clone(), terms);
                match k % 3 {
                    0 => a.precondition.push(if positive { Literal::pos(atom) } else { Literal::neg(atom) }),
                    1 => a.add.push(atom),
                    _ => a.del.push(atom),
                }
            }
            a.normalize();
            actions.push(a);
        }
        let mut requirements = std::collections::BTreeSet::from(["strips".to_string()]);
        if actions.iter().any(|a| a.precondition.iter().any(|l| !l.positive)) {
            requirements.insert("negative-preconditions".into());
        }
        DomainDef { name, requirements, types: vec![], constants: vec![], predicates: preds, actions }
    }
}

// ---------------------------------------------------------------------------
// Exhaustive macro sweep.

/// Ground instances of a macro's two constituents, read off its slots.
pub fn constituents(m: &MacroSchema, args: &[String]) -> (Vec<String>, Vec<String>) {
    let pick = |slots: &[usize]| slots.iter().map(|&s| args[s].clone()).collect();
    (pick(&m.provenance.first_args), pick(&m.provenance.second_args))
}

/// Every applicable macro grounding on every reachable state agrees with the
/// two-step application. Returns the number of checked applications.
pub fn sweep(d: &DomainDef, p: &ProblemDef, macros: &[MacroSchema]) -> usize {
    let aug = augment_domain(d, macros, macros.len());
    let states = reachable(d, p, 100_000).expect("small instance");
    let ground = naive_ground(&aug, p);
    let mut checked = 0;
    for m in macros {
        for inst in ground.iter().filter(|a| a.name == m.name()) {
            let (x1, x2) = constituents(m, &inst.args);
            let a1 = instantiate(d, p, &m.provenance.first, &x1).expect("first constituent is well typed");
            let a2 = instantiate(d, p, &m.provenance.second, &x2).expect("second constituent is well typed");
            for s in &states {
                if !inst.applicable(s) {
                    continue;
                }
                assert!(a1.applicable(s), "{}{:?}: first step blocked in {s:?}", m.name(), inst.args);
                let mid = a1.apply(s);
                assert!(a2.applicable(&mid), "{}{:?}: second step blocked after {s:?}", m.name(), inst.args);
                assert_eq!(inst.apply(s), a2.apply(&mid), "{}{:?} in {s:?}", m.name(), inst.args);
                checked += 1;
            }
        }
    }
    checked
}

pub fn bw_problem(d: &DomainDef, n: usize) -> ProblemDef {
    let blocks: Vec<String> = (1..=n).map(|i| format!("b{i}")).collect();
    let init: String = blocks.iter().map(|b| format!("(ontable {b}) (clear {b}) ")).collect();
    let text = format!(
        "(define (problem sweep) (:domain blocksworld) (:objects {}) (:init {init}(handempty)) (:goal (and)))",
        blocks.join(" ")
    );
    parse_problem(&text, d).unwrap()
}
