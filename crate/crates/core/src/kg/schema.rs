//! Planning ontology vocabulary.
//!
//! The ontology has 19 classes and 25 object properties. The roster below
//! is a reconstruction of that schema, topped up with plumbing properties
//! that the mapper needs (names, ordinals, state facts, macro provenance).

use std::sync::OnceLock;

use super::term::{Iri, Triple};

pub mod class {
    pub const PLANNING_DOMAIN: &str = "PlanningDomain";
    pub const DOMAIN_REQUIREMENT: &str = "DomainRequirement";
    pub const PARAMETER_TYPE: &str = "ParameterType";
    pub const DOMAIN_PREDICATE: &str = "DomainPredicate";
    pub const DOMAIN_CONSTANT: &str = "DomainConstant";
    pub const ACTION: &str = "Action";
    pub const ACTION_PRECONDITION: &str = "ActionPrecondition";
    pub const ACTION_EFFECT: &str = "ActionEffect";
    pub const PARAMETER: &str = "Parameter";
    pub const PLANNING_PROBLEM: &str = "PlanningProblem";
    pub const PROBLEM_OBJECT: &str = "ProblemObject";
    pub const STATE: &str = "State";
    pub const INITIAL_STATE: &str = "InitialState";
    pub const GOAL_STATE: &str = "GoalState";
    pub const PLAN: &str = "Plan";
    pub const PLANNER: &str = "Planner";
    pub const PLANNER_TYPE: &str = "PlannerType";
    pub const MACRO_ACTION: &str = "MacroAction";
    pub const PLANNING_TASK: &str = "PlanningTask";

    pub const ALL: [&str; 19] = [
        PLANNING_DOMAIN,
        DOMAIN_REQUIREMENT,
        PARAMETER_TYPE,
        DOMAIN_PREDICATE,
        DOMAIN_CONSTANT,
        ACTION,
        ACTION_PRECONDITION,
        ACTION_EFFECT,
        PARAMETER,
        PLANNING_PROBLEM,
        PROBLEM_OBJECT,
        STATE,
        INITIAL_STATE,
        GOAL_STATE,
        PLAN,
        PLANNER,
        PLANNER_TYPE,
        MACRO_ACTION,
        PLANNING_TASK,
    ];
}

pub mod prop {
    pub const HAS_ACTION: &str = "hasAction";
    pub const HAS_PREDICATE: &str = "hasPredicate";
    pub const HAS_REQUIREMENT: &str = "hasRequirement";
    pub const HAS_EFFECT: &str = "hasEffect";
    pub const HAS_PRECONDITION: &str = "hasPrecondition";
    pub const ADDS_PREDICATE: &str = "addsPredicate";
    pub const DELETES_PREDICATE: &str = "deletesPredicate";
    pub const HAS_PARAMETER: &str = "hasParameter";
    pub const HAS_PARAMETER_TYPE: &str = "hasParameterType";
    pub const HAS_GOAL_STATE: &str = "hasGoalState";
    pub const HAS_INITIAL_STATE: &str = "hasInitialState";
    pub const HAS_OBJECT: &str = "hasObject";
    pub const HAS_PLAN: &str = "hasPlan";
    pub const HAS_PLAN_COST: &str = "hasPlanCost";
    pub const IS_GENERATED_BY: &str = "isGeneratedBy";
    pub const OF_PLANNER_TYPE: &str = "ofPlannerType";
    pub const SOLVES_REQUIREMENT: &str = "solvesRequirement";
    pub const HAS_RELEVANCE: &str = "hasRelevance";
    pub const HAS_DOMAIN: &str = "hasDomain";
    pub const HAS_PROBLEM: &str = "hasProblem";
    pub const HAS_ACTION_STEP: &str = "hasActionStep";
    pub const HAS_MACRO: &str = "hasMacro";
    pub const HAS_SOLVED_PERCENTAGE: &str = "hasSolvedPercentage";
    pub const HAS_ACTION_NAME: &str = "hasActionName";
    pub const HAS_EXPLANATION: &str = "hasExplanation";

    // Plumbing.
    pub const HAS_NAME: &str = "hasName";
    pub const HAS_ORDINAL: &str = "hasOrdinal";
    pub const HAS_FACT: &str = "hasFact";
    pub const HAS_CONSTANT: &str = "hasConstant";
    pub const HAS_TYPE: &str = "hasType";
    pub const HAS_PARENT_TYPE: &str = "hasParentType";
    pub const REFERS_TO_ACTION: &str = "refersToAction";
    pub const HAS_FIRST_ACTION: &str = "hasFirstAction";
    pub const HAS_SECOND_ACTION: &str = "hasSecondAction";
    pub const HAS_FREQUENCY: &str = "hasFrequency";
    pub const FOR_PLANNER: &str = "forPlanner";
    pub const HAS_PERFORMANCE: &str = "hasPerformance";
    pub const HAS_SOLVED_COUNT: &str = "hasSolvedCount";
    pub const HAS_PROBLEM_COUNT: &str = "hasProblemCount";

    pub const OBJECT: [&str; 29] = [
        HAS_ACTION,
        HAS_PREDICATE,
        HAS_REQUIREMENT,
        HAS_EFFECT,
        HAS_PRECONDITION,
        ADDS_PREDICATE,
        DELETES_PREDICATE,
        HAS_PARAMETER,
        HAS_PARAMETER_TYPE,
        HAS_GOAL_STATE,
        HAS_INITIAL_STATE,
        HAS_OBJECT,
        HAS_PLAN,
        IS_GENERATED_BY,
        OF_PLANNER_TYPE,
        SOLVES_REQUIREMENT,
        HAS_RELEVANCE,
        HAS_DOMAIN,
        HAS_PROBLEM,
        HAS_ACTION_STEP,
        HAS_MACRO,
        HAS_CONSTANT,
        HAS_TYPE,
        HAS_PARENT_TYPE,
        REFERS_TO_ACTION,
        HAS_FIRST_ACTION,
        HAS_SECOND_ACTION,
        FOR_PLANNER,
        HAS_PERFORMANCE,
    ];

    pub const DATA: [&str; 10] = [
        HAS_PLAN_COST,
        HAS_EXPLANATION,
        HAS_SOLVED_PERCENTAGE,
        HAS_ACTION_NAME,
        HAS_NAME,
        HAS_ORDINAL,
        HAS_FACT,
        HAS_FREQUENCY,
        HAS_SOLVED_COUNT,
        HAS_PROBLEM_COUNT,
    ];
}

pub fn plan_class(local: &str) -> Iri {
    Iri::plan(local)
}

pub fn plan_prop(local: &str) -> Iri {
    Iri::plan(local)
}

pub fn rdf_type() -> Iri {
    Iri::rdf("type")
}

pub fn rdfs_subclass_of() -> Iri {
    Iri::rdfs("subClassOf")
}

/// The process-wide ontology schema.
#[derive(Debug)]
pub struct OntologySchema {
    pub classes: Vec<Iri>,
    pub object_properties: Vec<Iri>,
    pub data_properties: Vec<Iri>,
    /// (sub, super) pairs.
    pub subclass_of: Vec<(Iri, Iri)>,
}

impl OntologySchema {
    pub fn get() -> &'static OntologySchema {
        static SCHEMA: OnceLock<OntologySchema> = OnceLock::new();
        SCHEMA.get_or_init(|| OntologySchema {
            classes: class::ALL.iter().map(|c| plan_class(c)).collect(),
            object_properties: prop::OBJECT.iter().map(|p| plan_prop(p)).collect(),
            data_properties: prop::DATA.iter().map(|p| plan_prop(p)).collect(),
            subclass_of: vec![
                (plan_class(class::INITIAL_STATE), plan_class(class::STATE)),
                (plan_class(class::GOAL_STATE), plan_class(class::STATE)),
            ],
        })
    }

    pub fn is_class(&self, iri: &Iri) -> bool {
        self.classes.contains(iri)
    }

    pub fn is_property(&self, iri: &Iri) -> bool {
        self.object_properties.contains(iri) || self.data_properties.contains(iri)
    }

    /// Declarations as triples, for self-describing Turtle output.
    pub fn triples(&self) -> Vec<Triple> {
        let mut out = Vec::new();
        for c in &self.classes {
            out.push(Triple::new(c.clone(), rdf_type(), Iri::owl("Class")));
        }
        for p in &self.object_properties {
            out.push(Triple::new(p.clone(), rdf_type(), Iri::owl("ObjectProperty")));
        }
        for p in &self.data_properties {
            out.push(Triple::new(p.clone(), rdf_type(), Iri::owl("DatatypeProperty")));
        }
        for (sub, sup) in &self.subclass_of {
            out.push(Triple::new(sub.clone(), rdfs_subclass_of(), sup.clone()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roster_sizes() {
        let s = OntologySchema::get();
        assert_eq!(s.classes.len(), 19);
        let core_roster = [
            prop::HAS_ACTION,
            prop::HAS_PREDICATE,
            prop::HAS_REQUIREMENT,
            prop::HAS_EFFECT,
            prop::HAS_PRECONDITION,
            prop::ADDS_PREDICATE,
            prop::DELETES_PREDICATE,
            prop::HAS_PARAMETER,
            prop::HAS_PARAMETER_TYPE,
            prop::HAS_GOAL_STATE,
            prop::HAS_INITIAL_STATE,
            prop::HAS_OBJECT,
            prop::HAS_PLAN,
            prop::HAS_PLAN_COST,
            prop::IS_GENERATED_BY,
            prop::OF_PLANNER_TYPE,
            prop::SOLVES_REQUIREMENT,
            prop::HAS_RELEVANCE,
            prop::HAS_DOMAIN,
            prop::HAS_PROBLEM,
            prop::HAS_ACTION_STEP,
            prop::HAS_MACRO,
            prop::HAS_SOLVED_PERCENTAGE,
            prop::HAS_ACTION_NAME,
            prop::HAS_EXPLANATION,
        ];
        assert_eq!(core_roster.len(), 25);
        for p in core_roster {
            assert!(s.is_property(&plan_prop(p)), "{p}");
        }
        assert!(std::ptr::eq(s, OntologySchema::get()));
    }

    #[test]
    fn states_are_subclasses() {
        let s = OntologySchema::get();
        assert!(s.subclass_of.contains(&(plan_class(class::GOAL_STATE), plan_class(class::STATE))));
        assert!(s.subclass_of.contains(&(plan_class(class::INITIAL_STATE), plan_class(class::STATE))));
    }
}
