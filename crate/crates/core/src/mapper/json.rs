//! JSON interchange: one domain, its problems and their plans.
//!
//! The layout is documented in `docs/interchange.schema.json`. Reading is
//! strict: unknown keys, missing keys, ill-formed domains and problems that do
//! not check against the domain are all rejected.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pddl::{self, ActionSchema, Atom, DomainDef, Literal, PredicateSchema, ProblemDef, Term, TypeName, TypedName};
use crate::strips::{Plan, PlanStep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("interchange JSON: {0}")]
pub struct JsonSchemaError(pub String);

/// A plan together with the problem it solves and the planner that made it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoredPlan {
    pub problem: String,
    pub planner: String,
    pub plan: Plan,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JParam {
    name: String,
    #[serde(rename = "type")]
    ty: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JType {
    name: String,
    parent: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JAtom {
    predicate: String,
    args: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JLiteral {
    predicate: String,
    args: Vec<String>,
    negated: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JEffects {
    add: Vec<JAtom>,
    delete: Vec<JAtom>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JAction {
    name: String,
    parameters: Vec<JParam>,
    preconditions: Vec<JLiteral>,
    effects: JEffects,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JPredicate {
    name: String,
    parameters: Vec<JParam>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JDomain {
    name: String,
    requirements: Vec<String>,
    types: Vec<JType>,
    constants: Vec<JParam>,
    predicates: Vec<JPredicate>,
    actions: Vec<JAction>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JProblem {
    name: String,
    domain: String,
    objects: Vec<JParam>,
    init: Vec<JAtom>,
    goal: Vec<JLiteral>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JPlan {
    problem: String,
    planner: String,
    steps: Vec<String>,
    cost: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JRoot {
    domain: JDomain,
    #[serde(default)]
    problems: Vec<JProblem>,
    #[serde(default)]
    plans: Vec<JPlan>,
}

fn var_params(ps: &[TypedName]) -> Vec<JParam> {
    ps.iter().map(|p| JParam { name: format!("?{}", p.name), ty: p.ty.clone() }).collect()
}

fn plain_params(ps: &[TypedName]) -> Vec<JParam> {
    ps.iter().map(|p| JParam { name: p.name.clone(), ty: p.ty.clone() }).collect()
}

fn j_atom(a: &Atom) -> JAtom {
    JAtom { predicate: a.predicate.clone(), args: a.args.iter().map(|t| t.to_string()).collect() }
}

fn j_literal(l: &Literal) -> JLiteral {
    JLiteral {
        predicate: l.atom.predicate.clone(),
        args: l.atom.args.iter().map(|t| t.to_string()).collect(),
        negated: !l.positive,
    }
}

fn plan_text(steps: &[PlanStep]) -> Vec<String> {
    steps.iter().map(|s| s.to_string()).collect()
}

pub fn to_json(d: &DomainDef, problems: &[ProblemDef], plans: &[StoredPlan]) -> serde_json::Value {
    let root = JRoot {
        domain: JDomain {
            name: d.name.clone(),
            requirements: d.requirements.iter().cloned().collect(),
            types: d.types.iter().map(|t| JType { name: t.name.clone(), parent: t.parent.clone() }).collect(),
            constants: plain_params(&d.constants),
            predicates: d
                .predicates
                .iter()
                .map(|p| JPredicate { name: p.name.clone(), parameters: var_params(&p.params) })
                .collect(),
            actions: d
                .actions
                .iter()
                .map(|a| JAction {
                    name: a.name.clone(),
                    parameters: var_params(&a.params),
                    preconditions: a.precondition.iter().map(j_literal).collect(),
                    effects: JEffects { add: a.add.iter().map(j_atom).collect(), delete: a.del.iter().map(j_atom).collect() },
                })
                .collect(),
        },
        problems: problems
            .iter()
            .map(|p| JProblem {
                name: p.name.clone(),
                domain: p.domain_name.clone(),
                objects: plain_params(&p.objects),
                init: p.init.iter().map(j_atom).collect(),
                goal: p.goal.iter().map(j_literal).collect(),
            })
            .collect(),
        plans: plans
            .iter()
            .map(|p| JPlan {
                problem: p.problem.clone(),
                planner: p.planner.clone(),
                steps: plan_text(&p.plan.steps),
                cost: p.plan.cost,
            })
            .collect(),
    };
    serde_json::to_value(root).expect("interchange structs always serialize")
}

fn err(msg: impl Into<String>) -> JsonSchemaError {
    JsonSchemaError(msg.into())
}

fn ident(s: &str, what: &str) -> Result<String, JsonSchemaError> {
    let s = s.trim();
    if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '(' || c == ')') {
        return Err(err(format!("{what} '{s}' is not a PDDL identifier")));
    }
    Ok(s.to_lowercase())
}

fn typed(ps: &[JParam], vars: bool, what: &str) -> Result<Vec<TypedName>, JsonSchemaError> {
    ps.iter()
        .map(|p| {
            let name = if vars {
                p.name.strip_prefix('?').ok_or_else(|| err(format!("{what} parameter '{}' must start with '?'", p.name)))?
            } else {
                p.name.as_str()
            };
            Ok(TypedName::new(ident(name, what)?, ident(&p.ty, "type")?))
        })
        .collect()
}

fn term(s: &str) -> Result<Term, JsonSchemaError> {
    match s.strip_prefix('?') {
        Some(v) => Ok(Term::var(ident(v, "variable")?)),
        None => Ok(Term::constant(ident(s, "argument")?)),
    }
}

fn atom(a: &JAtom) -> Result<Atom, JsonSchemaError> {
    Ok(Atom::new(ident(&a.predicate, "predicate")?, a.args.iter().map(|s| term(s)).collect::<Result<_, _>>()?))
}

fn literal(l: &JLiteral) -> Result<Literal, JsonSchemaError> {
    let a = atom(&JAtom { predicate: l.predicate.clone(), args: l.args.clone() })?;
    Ok(if l.negated { Literal::neg(a) } else { Literal::pos(a) })
}

/// Parses and checks an interchange document.
pub fn from_json(value: &serde_json::Value) -> Result<(DomainDef, Vec<ProblemDef>, Vec<StoredPlan>), JsonSchemaError> {
    let root: JRoot = serde_json::from_value(value.clone()).map_err(|e| err(e.to_string()))?;
    let jd = root.domain;
    let mut actions = Vec::new();
    for a in &jd.actions {
        let mut schema = ActionSchema {
            name: ident(&a.name, "action")?,
            params: typed(&a.parameters, true, "action")?,
            precondition: a.preconditions.iter().map(literal).collect::<Result<_, _>>()?,
            add: a.effects.add.iter().map(atom).collect::<Result<_, _>>()?,
            del: a.effects.delete.iter().map(atom).collect::<Result<_, _>>()?,
        };
        schema.normalize();
        actions.push(schema);
    }
    let domain = DomainDef {
        name: ident(&jd.name, "domain")?,
        requirements: jd
            .requirements
            .iter()
            .map(|r| ident(r.trim_start_matches(':'), "requirement"))
            .collect::<Result<_, _>>()?,
        types: jd
            .types
            .iter()
            .map(|t| {
                let parent = match &t.parent {
                    Some(p) if p != pddl::OBJECT => Some(ident(p, "type")?),
                    _ => None,
                };
                Ok(TypeName { name: ident(&t.name, "type")?, parent })
            })
            .collect::<Result<_, JsonSchemaError>>()?,
        constants: typed(&jd.constants, false, "constant")?,
        predicates: jd
            .predicates
            .iter()
            .map(|p| Ok(PredicateSchema { name: ident(&p.name, "predicate")?, params: typed(&p.parameters, true, "predicate")? }))
            .collect::<Result<_, JsonSchemaError>>()?,
        actions,
    };
    if let Some(issue) = pddl::validate_domain(&domain).first() {
        return Err(err(format!("domain: {issue}")));
    }

    let mut problems = Vec::new();
    for jp in &root.problems {
        let p = ProblemDef {
            name: ident(&jp.name, "problem")?,
            domain_name: ident(&jp.domain, "domain")?,
            objects: typed(&jp.objects, false, "object")?,
            init: jp.init.iter().map(atom).collect::<Result<_, _>>()?,
            goal: jp.goal.iter().map(literal).collect::<Result<_, _>>()?,
        };
        // The PDDL reader carries the full set of problem checks.
        let checked =
            pddl::parse_problem(&pddl::print_problem(&p), &domain).map_err(|e| err(format!("problem {}: {e}", p.name)))?;
        problems.push(checked);
    }

    let mut plans = Vec::new();
    for jp in &root.plans {
        let problem = ident(&jp.problem, "problem")?;
        if !problems.iter().any(|p| p.name == problem) {
            return Err(err(format!("plan refers to unknown problem '{problem}'")));
        }
        let steps: Vec<PlanStep> =
            jp.steps.iter().map(|s| s.parse().map_err(|e| err(format!("plan for {problem}: {e}")))).collect::<Result<_, _>>()?;
        let plan = Plan::new(steps);
        if plan.cost != jp.cost {
            return Err(err(format!("plan for {problem}: cost {} but {} unit-cost steps", jp.cost, plan.cost)));
        }
        plans.push(StoredPlan { problem, planner: ident(&jp.planner, "planner")?, plan });
    }
    Ok((domain, problems, plans))
}
