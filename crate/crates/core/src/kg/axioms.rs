//! Cardinality axioms of the planning ontology, checked per class instance.
//!
//! Numbering: 1-3 domain (actions, predicates, requirements), 4 action
//! effects, 5-6 effect adds/deletes, 7-8 exactly one goal/initial state,
//! 9 objects, 10 plans (post-solve only), 11 exactly one non-negative plan
//! cost, 12 generating planner, 13 planner type and supported requirement.

use std::fmt;

use serde::Serialize;

use super::graph::Graph;
use super::schema::{class, plan_class, plan_prop, prop};
use super::term::{Iri, Term, XSD_NS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ValidationMode {
    /// Problems may not have plans yet; axiom 10 is skipped.
    #[default]
    PreSolve,
    PostSolve,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AxiomViolation {
    pub axiom_id: u8,
    pub subject: Iri,
    pub message: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {}: {} {}", self.axiom_id, self.subject.as_str(), self.message)
    }
}

fn typed_targets(g: &Graph, s: &Iri, p: &str, range: &str) -> usize {
    let range = plan_class(range);
    g.objects(s, &plan_prop(p)).into_iter().filter(|o| o.as_iri().is_some_and(|o| g.has_type(o, &range))).count()
}

fn at_least_one(g: &Graph, out: &mut Vec<AxiomViolation>, id: u8, s: &Iri, p: &str, range: &str) {
    if typed_targets(g, s, p, range) == 0 {
        out.push(AxiomViolation { axiom_id: id, subject: s.clone(), message: format!("has no {p} to a {range}") });
    }
}

fn exactly_one(g: &Graph, out: &mut Vec<AxiomViolation>, id: u8, s: &Iri, p: &str, range: &str) {
    let all = g.objects(s, &plan_prop(p)).len();
    let typed = typed_targets(g, s, p, range);
    if all != 1 || typed != 1 {
        out.push(AxiomViolation {
            axiom_id: id,
            subject: s.clone(),
            message: format!("needs exactly one {p} to a {range}, found {all}"),
        });
    }
}

fn is_non_negative_integer(t: &Term) -> bool {
    let Term::Literal { lexical, datatype } = t else {
        return false;
    };
    let integral = ["nonNegativeInteger", "integer", "positiveInteger", "unsignedLong", "unsignedInt"]
        .iter()
        .any(|d| datatype.as_str().strip_prefix(XSD_NS) == Some(d));
    let digits = !lexical.is_empty() && lexical.bytes().all(|b| b.is_ascii_digit());
    integral && digits && !(datatype.as_str().ends_with("positiveInteger") && lexical.bytes().all(|b| b == b'0'))
}

/// Which side an effect with neither adds nor deletes claims to have, based
/// on its recorded fact literals: purely negative facts point at deletes.
fn claimed_side(g: &Graph, effect: &Iri) -> u8 {
    let facts: Vec<&str> = g.objects(effect, &plan_prop(prop::HAS_FACT)).into_iter().filter_map(Term::lexical).collect();
    if !facts.is_empty() && facts.iter().all(|f| f.starts_with("(not")) {
        6
    } else {
        5
    }
}

pub fn validate_axioms(g: &Graph, mode: ValidationMode) -> Vec<AxiomViolation> {
    let mut out = Vec::new();
    let inst = |c: &str| g.instances_of(&plan_class(c)).into_iter().cloned().collect::<Vec<_>>();

    for d in inst(class::PLANNING_DOMAIN) {
        at_least_one(g, &mut out, 1, &d, prop::HAS_ACTION, class::ACTION);
        at_least_one(g, &mut out, 2, &d, prop::HAS_PREDICATE, class::DOMAIN_PREDICATE);
        at_least_one(g, &mut out, 3, &d, prop::HAS_REQUIREMENT, class::DOMAIN_REQUIREMENT);
    }
    for a in inst(class::ACTION) {
        at_least_one(g, &mut out, 4, &a, prop::HAS_EFFECT, class::ACTION_EFFECT);
    }
    for e in inst(class::ACTION_EFFECT) {
        let adds = g.objects(&e, &plan_prop(prop::ADDS_PREDICATE)).len();
        let dels = g.objects(&e, &plan_prop(prop::DELETES_PREDICATE)).len();
        if adds == 0 && dels == 0 {
            let id = claimed_side(g, &e);
            let side = if id == 5 { prop::ADDS_PREDICATE } else { prop::DELETES_PREDICATE };
            out.push(AxiomViolation { axiom_id: id, subject: e.clone(), message: format!("has no {side}") });
        }
    }
    for p in inst(class::PLANNING_PROBLEM) {
        exactly_one(g, &mut out, 7, &p, prop::HAS_GOAL_STATE, class::GOAL_STATE);
        exactly_one(g, &mut out, 8, &p, prop::HAS_INITIAL_STATE, class::INITIAL_STATE);
        at_least_one(g, &mut out, 9, &p, prop::HAS_OBJECT, class::PROBLEM_OBJECT);
        if mode == ValidationMode::PostSolve {
            at_least_one(g, &mut out, 10, &p, prop::HAS_PLAN, class::PLAN);
        }
    }
    for p in inst(class::PLAN) {
        let costs = g.objects(&p, &plan_prop(prop::HAS_PLAN_COST));
        if costs.len() != 1 || !is_non_negative_integer(costs[0]) {
            let found = costs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
            out.push(AxiomViolation {
                axiom_id: 11,
                subject: p.clone(),
                message: format!("needs exactly one non-negative integer hasPlanCost, found [{found}]"),
            });
        }
        at_least_one(g, &mut out, 12, &p, prop::IS_GENERATED_BY, class::PLANNER);
    }
    for p in inst(class::PLANNER) {
        at_least_one(g, &mut out, 13, &p, prop::OF_PLANNER_TYPE, class::PLANNER_TYPE);
        at_least_one(g, &mut out, 13, &p, prop::SOLVES_REQUIREMENT, class::DOMAIN_REQUIREMENT);
    }
    out.sort();
    out
}
