//! The ontology's ten competency questions as named BGP queries.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use super::iri;
use crate::kg::query::{self, Bindings, Query, TriplePattern};
use crate::kg::{class, plan_class, plan_prop, prop, rdf_type, Graph, Iri, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CompetencyQuery {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
}

impl CompetencyQuery {
    pub const ALL: [CompetencyQuery; 10] = [
        CompetencyQuery::C1,
        CompetencyQuery::C2,
        CompetencyQuery::C3,
        CompetencyQuery::C4,
        CompetencyQuery::C5,
        CompetencyQuery::C6,
        CompetencyQuery::C7,
        CompetencyQuery::C8,
        CompetencyQuery::C9,
        CompetencyQuery::C10,
    ];

    pub fn question(self) -> &'static str {
        match self {
            CompetencyQuery::C1 => "What are the different types of planners used in automated planning?",
            CompetencyQuery::C2 => "What is the relevance of planners in a given problem domain?",
            CompetencyQuery::C3 => "What are the available actions for a given domain?",
            CompetencyQuery::C4 => "What problems in a domain satisfy a given condition?",
            CompetencyQuery::C5 => "What are all the requirements a given domain has?",
            CompetencyQuery::C6 => "What is the cost associated with generating a plan for a given problem?",
            CompetencyQuery::C7 => "How many parameters does a specific action have?",
            CompetencyQuery::C8 => "What planning type does a specific planner belong to?",
            CompetencyQuery::C9 => "What requirements does a given planner support?",
            CompetencyQuery::C10 => "What are the different parameter types present in a domain?",
        }
    }

    /// Argument names the query reads; optional ones are marked with `?`.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            CompetencyQuery::C1 => &[],
            CompetencyQuery::C2 => &["domain", "planner?"],
            CompetencyQuery::C3 | CompetencyQuery::C5 | CompetencyQuery::C10 => &["domain"],
            CompetencyQuery::C4 => &["domain", "fact", "state?"],
            CompetencyQuery::C6 => &["domain", "problem"],
            CompetencyQuery::C7 => &["domain", "action"],
            CompetencyQuery::C8 | CompetencyQuery::C9 => &["planner"],
        }
    }
}

impl fmt::Display for CompetencyQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for CompetencyQuery {
    type Err = CompetencyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let n: Option<usize> = s.strip_prefix(['C', 'c']).and_then(|n| n.parse().ok());
        match n {
            Some(n @ 1..=10) => Ok(CompetencyQuery::ALL[n - 1]),
            _ => Err(CompetencyError::UnknownQueryId(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompetencyError {
    #[error("unknown competency query id '{0}' (expected C1..C10)")]
    UnknownQueryId(String),
    #[error("{id} needs argument '{name}'")]
    MissingArgument { id: CompetencyQuery, name: String },
    #[error("{id}: bad value for '{name}': {reason}")]
    BadArgument { id: CompetencyQuery, name: String, reason: String },
}

pub type Args = BTreeMap<String, String>;

fn p(s: impl Into<Term>, pr: &str, o: impl Into<Term>) -> TriplePattern {
    TriplePattern::new(s, plan_prop(pr), o)
}

fn ty(s: impl Into<Term>, c: &str) -> TriplePattern {
    TriplePattern::new(s, rdf_type(), plan_class(c))
}

fn v(name: &str) -> Term {
    Term::var(name)
}

/// Canonical text of a fact argument: lowercased, single-spaced.
fn canonical_fact(s: &str) -> String {
    let lowered = s.trim().to_lowercase().replace('(', " ( ").replace(')', " ) ");
    let toks: Vec<&str> = lowered.split_whitespace().collect();
    let mut out = String::new();
    for (i, t) in toks.iter().enumerate() {
        let prev_open = i > 0 && toks[i - 1] == "(";
        if i > 0 && !prev_open && *t != ")" {
            out.push(' ');
        }
        out.push_str(t);
    }
    out
}

pub fn build_query(id: CompetencyQuery, args: &Args) -> Result<Query, CompetencyError> {
    let need =
        |name: &str| args.get(name).map(String::as_str).ok_or(CompetencyError::MissingArgument { id, name: name.to_string() });
    let domain = || need("domain").map(|d| iri::resolve(d, iri::domain));
    let domain_name = || -> Result<String, CompetencyError> {
        let d = need("domain")?;
        let resolved = iri::resolve(d, iri::domain);
        Ok(resolved.plan_local().and_then(|l| l.strip_prefix("domain-")).map(str::to_string).unwrap_or_else(|| iri::slug(d)))
    };
    let planner = || need("planner").map(|x| iri::resolve(x, iri::planner));

    let q = match id {
        CompetencyQuery::C1 => Query::new(vec![ty(v("type"), class::PLANNER_TYPE)]).select(&["type"]).distinct(),
        CompetencyQuery::C2 => {
            let planner_term = match args.get("planner") {
                Some(x) => Term::Iri(iri::resolve(x, iri::planner)),
                None => v("planner"),
            };
            Query::new(vec![
                p(v("perf"), prop::HAS_DOMAIN, domain()?),
                p(v("perf"), prop::FOR_PLANNER, planner_term),
                p(v("perf"), prop::HAS_RELEVANCE, v("tier")),
                p(v("tier"), prop::HAS_NAME, v("relevance")),
                p(v("perf"), prop::HAS_SOLVED_PERCENTAGE, v("percentage")),
            ])
            .select(&["planner", "relevance", "percentage"])
        }
        CompetencyQuery::C3 => {
            Query::new(vec![p(domain()?, prop::HAS_ACTION, v("action")), ty(v("action"), class::ACTION)]).select(&["action"])
        }
        CompetencyQuery::C4 => {
            let state_prop = match args.get("state").map(String::as_str).unwrap_or("initial") {
                "initial" | "init" => prop::HAS_INITIAL_STATE,
                "goal" => prop::HAS_GOAL_STATE,
                other => {
                    return Err(CompetencyError::BadArgument {
                        id,
                        name: "state".into(),
                        reason: format!("'{other}' is neither initial nor goal"),
                    })
                }
            };
            let mut pats = vec![p(domain()?, prop::HAS_PROBLEM, v("problem")), p(v("problem"), state_prop, v("state"))];
            for fact in need("fact")?.split(';').map(str::trim).filter(|f| !f.is_empty()) {
                pats.push(p(v("state"), prop::HAS_FACT, Term::string(canonical_fact(fact))));
            }
            Query::new(pats).select(&["problem"]).distinct()
        }
        CompetencyQuery::C5 => Query::new(vec![
            p(domain()?, prop::HAS_REQUIREMENT, v("requirement")),
            p(v("requirement"), prop::HAS_NAME, v("name")),
        ]),
        CompetencyQuery::C6 => {
            let raw = need("problem")?;
            let problem = match iri::explicit(raw) {
                Some(i) => i,
                None => iri::problem(&domain_name()?, raw),
            };
            Query::new(vec![
                p(problem, prop::HAS_PLAN, v("plan")),
                p(v("plan"), prop::HAS_PLAN_COST, v("cost")),
                p(v("plan"), prop::IS_GENERATED_BY, v("planner")),
            ])
        }
        CompetencyQuery::C7 => {
            let raw = need("action")?;
            let action = match iri::explicit(raw) {
                Some(i) => i,
                None => iri::action(&domain_name()?, raw),
            };
            Query::new(vec![p(action, prop::HAS_PARAMETER, v("parameter"))]).count_as("count")
        }
        CompetencyQuery::C8 => Query::new(vec![p(planner()?, prop::OF_PLANNER_TYPE, v("type"))]),
        CompetencyQuery::C9 => Query::new(vec![
            p(planner()?, prop::SOLVES_REQUIREMENT, v("requirement")),
            p(v("requirement"), prop::HAS_NAME, v("name")),
        ]),
        CompetencyQuery::C10 => Query::new(vec![
            p(domain()?, prop::HAS_ACTION, v("action")),
            p(v("action"), prop::HAS_PARAMETER, v("parameter")),
            p(v("parameter"), prop::HAS_PARAMETER_TYPE, v("type")),
            ty(v("type"), class::PARAMETER_TYPE),
        ])
        .select(&["type"])
        .distinct(),
    };
    Ok(q)
}

pub fn run_competency(g: &Graph, id: CompetencyQuery, args: &Args) -> Result<Vec<Bindings>, CompetencyError> {
    Ok(query::run(g, &build_query(id, args)?))
}

/// Convenience for callers holding `key=value` strings.
pub fn parse_args<'a>(pairs: impl IntoIterator<Item = &'a str>) -> Result<Args, String> {
    let mut out = Args::new();
    for pair in pairs {
        let (k, v) = pair.split_once('=').ok_or_else(|| format!("expected key=value, got '{pair}'"))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// The value bound to `var` rendered compactly: literal lexical forms, IRIs
/// by their ontology-local name when they have one.
pub fn display_term(t: &Term) -> String {
    match t {
        Term::Iri(i) => i.plan_local().map(str::to_string).unwrap_or_else(|| i.as_str().to_string()),
        Term::Literal { lexical, .. } => lexical.clone(),
        Term::Var(v) => format!("?{v}"),
    }
}

/// IRIs in `rows` under `var`, for tests and adapters.
pub fn iris(rows: &[Bindings], var: &str) -> Vec<Iri> {
    query::iri_column(rows, var).into_iter().cloned().collect()
}
