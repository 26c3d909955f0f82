//! PDDL artifacts, plans and competition results as ontology triples.

use thiserror::Error;

use super::iri;
use crate::kg::{class, plan_class, plan_prop, prop, rdf_type, Graph, Iri, Term, Triple};
use crate::pddl::{validate_domain, DomainDef, ProblemDef, OBJECT};
use crate::select::{PlannerRecord, SelectError};
use crate::strips::Plan;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MappingError {
    #[error("domain is not well-formed: {0}")]
    IllFormedDomain(String),
    #[error("unknown domain {0}")]
    UnknownDomain(String),
    #[error("unknown problem {0}")]
    UnknownProblem(String),
    #[error("unknown planner {0}")]
    UnknownPlanner(String),
    #[error("plan step {step}: action '{action}' is not defined in domain {domain}")]
    UnknownAction { step: usize, action: String, domain: String },
    #[error(transparent)]
    InvalidRecord(#[from] SelectError),
}

struct Out(Vec<Triple>);

impl Out {
    fn t(&mut self, s: &Iri, p: &str, o: impl Into<Term>) {
        self.0.push(Triple::new(s.clone(), plan_prop(p), o));
    }

    fn ty(&mut self, s: &Iri, c: &str) {
        self.0.push(Triple::new(s.clone(), rdf_type(), plan_class(c)));
    }

    fn name(&mut self, s: &Iri, n: &str) {
        self.t(s, prop::HAS_NAME, Term::string(n));
    }
}

/// Requirements as mapped: a domain that declares none is plain STRIPS.
pub fn effective_requirements(d: &DomainDef) -> Vec<String> {
    if d.requirements.is_empty() {
        vec!["strips".to_string()]
    } else {
        d.requirements.iter().cloned().collect()
    }
}

pub fn map_domain(d: &DomainDef) -> Result<Vec<Triple>, MappingError> {
    if let Some(issue) = validate_domain(d).first() {
        return Err(MappingError::IllFormedDomain(issue.to_string()));
    }
    let mut o = Out(Vec::new());
    let dn = d.name.as_str();
    let dom = iri::domain(dn);
    o.ty(&dom, class::PLANNING_DOMAIN);
    o.name(&dom, dn);

    for r in effective_requirements(d) {
        let ri = iri::requirement(&r);
        o.ty(&ri, class::DOMAIN_REQUIREMENT);
        o.name(&ri, &r);
        o.t(&dom, prop::HAS_REQUIREMENT, &ri);
    }

    let object_type = iri::parameter_type(dn, OBJECT);
    o.ty(&object_type, class::PARAMETER_TYPE);
    o.name(&object_type, OBJECT);
    o.t(&dom, prop::HAS_TYPE, &object_type);
    for t in &d.types {
        let ti = iri::parameter_type(dn, &t.name);
        o.ty(&ti, class::PARAMETER_TYPE);
        o.name(&ti, &t.name);
        o.t(&ti, prop::HAS_PARENT_TYPE, iri::parameter_type(dn, t.parent_or_object()));
        o.t(&dom, prop::HAS_TYPE, &ti);
    }

    for c in &d.constants {
        let ci = iri::constant(dn, &c.name);
        o.ty(&ci, class::DOMAIN_CONSTANT);
        o.name(&ci, &c.name);
        o.t(&ci, prop::HAS_PARAMETER_TYPE, iri::parameter_type(dn, &c.ty));
        o.t(&dom, prop::HAS_CONSTANT, &ci);
    }

    for p in &d.predicates {
        let pi = iri::predicate(dn, &p.name);
        o.ty(&pi, class::DOMAIN_PREDICATE);
        o.name(&pi, &p.name);
        o.t(&dom, prop::HAS_PREDICATE, &pi);
    }

    for a in &d.actions {
        let ai = iri::action(dn, &a.name);
        o.ty(&ai, class::ACTION);
        o.name(&ai, &a.name);
        o.t(&dom, prop::HAS_ACTION, &ai);
        for (i, p) in a.params.iter().enumerate() {
            let pi = iri::parameter(dn, &a.name, &p.name);
            o.ty(&pi, class::PARAMETER);
            o.name(&pi, &format!("?{}", p.name));
            o.t(&pi, prop::HAS_ORDINAL, Term::non_negative(i as u64 + 1));
            o.t(&pi, prop::HAS_PARAMETER_TYPE, iri::parameter_type(dn, &p.ty));
            o.t(&ai, prop::HAS_PARAMETER, &pi);
        }
        let pre = iri::precondition(dn, &a.name);
        o.ty(&pre, class::ACTION_PRECONDITION);
        o.t(&ai, prop::HAS_PRECONDITION, &pre);
        for l in &a.precondition {
            o.t(&pre, prop::HAS_FACT, Term::string(l.to_string()));
        }
        let eff = iri::effect(dn, &a.name);
        o.ty(&eff, class::ACTION_EFFECT);
        o.t(&ai, prop::HAS_EFFECT, &eff);
        for atom in &a.add {
            o.t(&eff, prop::ADDS_PREDICATE, iri::predicate(dn, &atom.predicate));
            o.t(&eff, prop::HAS_FACT, Term::string(atom.to_string()));
        }
        for atom in &a.del {
            o.t(&eff, prop::DELETES_PREDICATE, iri::predicate(dn, &atom.predicate));
            o.t(&eff, prop::HAS_FACT, Term::string(format!("(not {atom})")));
        }
    }
    Ok(o.0)
}

fn is_domain(g: &Graph, d: &Iri) -> bool {
    g.has_type(d, &plan_class(class::PLANNING_DOMAIN))
}

pub fn map_problem(g: &Graph, p: &ProblemDef) -> Result<Vec<Triple>, MappingError> {
    let dn = p.domain_name.as_str();
    let dom = iri::domain(dn);
    if !is_domain(g, &dom) {
        return Err(MappingError::UnknownDomain(dn.to_string()));
    }
    let mut o = Out(Vec::new());
    let pi = iri::problem(dn, &p.name);
    o.ty(&pi, class::PLANNING_PROBLEM);
    o.name(&pi, &p.name);
    o.t(&pi, prop::HAS_DOMAIN, &dom);
    o.t(&dom, prop::HAS_PROBLEM, &pi);

    for obj in &p.objects {
        let oi = iri::object(dn, &p.name, &obj.name);
        o.ty(&oi, class::PROBLEM_OBJECT);
        o.name(&oi, &obj.name);
        o.t(&oi, prop::HAS_PARAMETER_TYPE, iri::parameter_type(dn, &obj.ty));
        o.t(&pi, prop::HAS_OBJECT, &oi);
    }

    let init = iri::initial_state(dn, &p.name);
    o.ty(&init, class::INITIAL_STATE);
    o.t(&pi, prop::HAS_INITIAL_STATE, &init);
    for a in &p.init {
        o.t(&init, prop::HAS_FACT, Term::string(a.to_string()));
    }
    let goal = iri::goal_state(dn, &p.name);
    o.ty(&goal, class::GOAL_STATE);
    o.t(&pi, prop::HAS_GOAL_STATE, &goal);
    for l in &p.goal {
        o.t(&goal, prop::HAS_FACT, Term::string(l.to_string()));
    }
    Ok(o.0)
}

fn name_of(g: &Graph, s: &Iri) -> Option<String> {
    g.objects(s, &plan_prop(prop::HAS_NAME)).first().and_then(|t| t.lexical()).map(str::to_string)
}

/// Maps a plan for an already mapped problem. `planner` must be a mapped
/// Planner node so the plan's generator resolves.
pub fn map_plan(g: &Graph, plan: &Plan, problem: &Iri, planner: &Iri) -> Result<Vec<Triple>, MappingError> {
    let unknown_problem = || MappingError::UnknownProblem(problem.plan_local().unwrap_or(problem.as_str()).to_string());
    if !g.has_type(problem, &plan_class(class::PLANNING_PROBLEM)) {
        return Err(unknown_problem());
    }
    if !g.has_type(planner, &plan_class(class::PLANNER)) {
        return Err(MappingError::UnknownPlanner(planner.plan_local().unwrap_or(planner.as_str()).to_string()));
    }
    let dom =
        g.objects(problem, &plan_prop(prop::HAS_DOMAIN)).first().and_then(|t| t.as_iri()).cloned().ok_or_else(unknown_problem)?;
    let dn = name_of(g, &dom).ok_or_else(unknown_problem)?;
    let pn = name_of(g, problem).ok_or_else(unknown_problem)?;
    let planner_name = name_of(g, planner).unwrap_or_else(|| planner.plan_local().unwrap_or("planner").to_string());

    let mut o = Out(Vec::new());
    let pl = iri::plan(&dn, &pn, &planner_name);
    o.ty(&pl, class::PLAN);
    o.t(&pl, prop::HAS_PLAN_COST, Term::non_negative(plan.cost));
    o.t(&pl, prop::IS_GENERATED_BY, planner);
    o.t(problem, prop::HAS_PLAN, &pl);
    for (i, step) in plan.steps.iter().enumerate() {
        let action = iri::action(&dn, &step.action);
        if !g.has_type(&action, &plan_class(class::ACTION)) {
            return Err(MappingError::UnknownAction { step: i + 1, action: step.action.clone(), domain: dn.clone() });
        }
        let si = iri::step(&dn, &pn, &planner_name, i + 1);
        o.t(&si, prop::HAS_ORDINAL, Term::non_negative(i as u64 + 1));
        o.t(&si, prop::HAS_ACTION_NAME, Term::string(step.to_string()));
        o.t(&si, prop::REFERS_TO_ACTION, action);
        o.t(&pl, prop::HAS_ACTION_STEP, &si);
    }
    Ok(o.0)
}

/// A planner's catalog entry: its family and the requirements it handles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlannerInfo {
    pub name: String,
    pub planner_type: String,
    pub requirements: Vec<String>,
}

impl PlannerInfo {
    /// Known planners get their family; anything else is a classical planner.
    /// Every catalogued planner handles STRIPS with typing.
    pub fn lookup(name: &str) -> PlannerInfo {
        let name = name.to_lowercase();
        let planner_type = match name.as_str() {
            "fd-stone-soup-1" | "fd-stone-soup-2" => "portfolio",
            "lm-cut" | "merge-and-shrink" | "bjolp" | "astar-goalcount" => "heuristic-search",
            "gbfs-goalcount" => "greedy-search",
            "bfs" => "blind-search",
            _ => "classical",
        }
        .to_string();
        PlannerInfo { name, planner_type, requirements: vec!["strips".into(), "typing".into()] }
    }
}

pub fn map_planner(info: &PlannerInfo) -> Vec<Triple> {
    let mut o = Out(Vec::new());
    let pi = iri::planner(&info.name);
    o.ty(&pi, class::PLANNER);
    o.name(&pi, &info.name);
    let ti = iri::planner_type(&info.planner_type);
    o.ty(&ti, class::PLANNER_TYPE);
    o.name(&ti, &info.planner_type);
    o.t(&pi, prop::OF_PLANNER_TYPE, &ti);
    for r in &info.requirements {
        let ri = iri::requirement(r);
        o.ty(&ri, class::DOMAIN_REQUIREMENT);
        o.name(&ri, r);
        o.t(&pi, prop::SOLVES_REQUIREMENT, &ri);
    }
    o.0
}

/// Solved percentage with four decimals, for display; selection compares
/// the exact counts.
pub fn percentage_literal(solved: u64, total: u64) -> Term {
    let scaled = (solved as u128 * 1_000_000 + total as u128 / 2) / total as u128;
    // scaled is the percentage times 10^4
    Term::typed(format!("{}.{:04}", scaled / 10_000, scaled % 10_000), crate::kg::Iri::xsd("decimal"))
}

pub fn map_ipc_results(rows: &[PlannerRecord]) -> Result<Vec<Triple>, MappingError> {
    let mut o = Out(Vec::new());
    for r in rows {
        r.check()?;
        let tier = r.relevance()?;
        o.0.extend(map_planner(&PlannerInfo::lookup(&r.planner)));
        let pi = iri::planner(&r.planner);
        let di = iri::domain(&r.domain);
        o.name(&di, &r.domain.to_lowercase());
        let perf = iri::performance(&r.planner, &r.domain);
        o.t(&pi, prop::HAS_PERFORMANCE, &perf);
        o.t(&perf, prop::FOR_PLANNER, &pi);
        o.t(&perf, prop::HAS_DOMAIN, &di);
        o.t(&perf, prop::HAS_SOLVED_COUNT, Term::non_negative(r.solved));
        o.t(&perf, prop::HAS_PROBLEM_COUNT, Term::non_negative(r.total));
        o.t(&perf, prop::HAS_SOLVED_PERCENTAGE, percentage_literal(r.solved, r.total));
        let rel = iri::relevance(tier.as_str());
        o.name(&rel, tier.as_str());
        o.t(&perf, prop::HAS_RELEVANCE, rel);
    }
    Ok(o.0)
}
