//! Ontology mapping of domains, problems, plans and competition results,
//! the JSON interchange format and the competency queries.

mod competency;
pub mod iri;
mod json;
mod map;

pub use competency::{build_query, display_term, iris, parse_args, run_competency, Args, CompetencyError, CompetencyQuery};
pub use json::{from_json, to_json, JsonSchemaError, StoredPlan};
pub use map::{
    effective_requirements, map_domain, map_ipc_results, map_plan, map_planner, map_problem, percentage_literal, MappingError,
    PlannerInfo,
};

use crate::kg::Graph;
use crate::pddl::{DomainDef, ProblemDef};

/// Maps a domain, its problems and their plans into `g`. Planners named by
/// the plans are added from the planner catalog.
pub fn build_graph(g: &mut Graph, d: &DomainDef, problems: &[ProblemDef], plans: &[StoredPlan]) -> Result<(), MappingError> {
    g.extend(map_domain(d)?).expect("mapper emits no variables");
    for p in problems {
        let triples = map_problem(g, p)?;
        g.extend(triples).expect("mapper emits no variables");
    }
    for sp in plans {
        g.extend(map_planner(&PlannerInfo::lookup(&sp.planner))).expect("mapper emits no variables");
        let problem = iri::problem(&d.name, &sp.problem);
        let triples = map_plan(g, &sp.plan, &problem, &iri::planner(&sp.planner))?;
        g.extend(triples).expect("mapper emits no variables");
    }
    Ok(())
}
