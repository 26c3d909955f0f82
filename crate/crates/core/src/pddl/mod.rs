//! PDDL (STRIPS + typing) abstract syntax, parser, printer and validation.

mod ast;
mod parser;
mod printer;
pub mod sexpr;
mod validate;

pub use ast::*;
pub use parser::{parse_domain, parse_problem, PddlError};
pub use printer::{print_domain, print_problem};
pub use validate::{validate_domain, IssueCode, WellFormednessIssue};
