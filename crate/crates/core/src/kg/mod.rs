//! In-memory triple store for the planning ontology: terms, indexed graph,
//! schema, BGP queries, axiom validation and Turtle I/O.

mod axioms;
mod graph;
pub mod query;
pub mod schema;
mod term;
mod turtle;

pub use axioms::{validate_axioms, AxiomViolation, ValidationMode};
pub use graph::{Graph, GraphError};
pub use query::{Bindings, Query, TriplePattern};
pub use schema::{class, plan_class, plan_prop, prop, rdf_type, OntologySchema};
pub use term::{Iri, Term, Triple, OWL_NS, PLAN_NS, RDFS_NS, RDF_NS, XSD_NS};
pub use turtle::{export_turtle, import_turtle, TurtleError};
