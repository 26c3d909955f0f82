//! Planning knowledge toolkit.
//!
//! Parses STRIPS PDDL, maps domains, problems, plans and planner results into
//! a planning-ontology knowledge graph, answers the ontology's competency
//! questions, selects planners by historical relevance, and mines macro
//! operators whose effect is measured with a built-in forward-search planner.

pub mod cli;
pub mod kg;
pub mod macros;
pub mod mapper;
pub mod pddl;
pub mod search;
pub mod select;
pub mod strips;
