use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use super::ast::*;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "code", rename_all = "kebab-case")]
pub enum IssueCode {
    DuplicateAction { name: String },
    DuplicatePredicate { name: String },
    DuplicateType { name: String },
    DuplicateConstant { name: String },
    DuplicateParameter { name: String },
    UndeclaredType { name: String },
    TypeCycle { name: String },
    UnboundVariable { var: String },
    UnknownPredicate { name: String },
    UnknownConstant { name: String },
    ArityMismatch { predicate: String, expected: usize, found: usize },
    AddDeleteOverlap { atom: String },
    EqualityInEffect,
}

/// A well-formedness problem and where it was found, e.g. `action unstack`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellFormednessIssue {
    #[serde(flatten)]
    pub code: IssueCode,
    pub location: String,
}

impl fmt::Display for WellFormednessIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match &self.code {
            IssueCode::DuplicateAction { name } => format!("duplicate action `{name}`"),
            IssueCode::DuplicatePredicate { name } => format!("duplicate predicate `{name}`"),
            IssueCode::DuplicateType { name } => format!("duplicate type `{name}`"),
            IssueCode::DuplicateConstant { name } => format!("duplicate constant `{name}`"),
            IssueCode::DuplicateParameter { name } => format!("duplicate parameter `?{name}`"),
            IssueCode::UndeclaredType { name } => format!("undeclared type `{name}`"),
            IssueCode::TypeCycle { name } => format!("type `{name}` is its own ancestor"),
            IssueCode::UnboundVariable { var } => format!("unbound variable `?{var}`"),
            IssueCode::UnknownPredicate { name } => format!("unknown predicate `{name}`"),
            IssueCode::UnknownConstant { name } => format!("unknown constant `{name}`"),
            IssueCode::ArityMismatch { predicate, expected, found } => {
                format!("`{predicate}` takes {expected} argument(s) but {found} were given")
            }
            IssueCode::AddDeleteOverlap { atom } => format!("{atom} is both added and deleted"),
            IssueCode::EqualityInEffect => "equality atom in effect".to_string(),
        };
        write!(f, "{}: {what}", self.location)
    }
}

struct Issues(Vec<WellFormednessIssue>);

impl Issues {
    fn push(&mut self, code: IssueCode, location: impl Into<String>) {
        self.0.push(WellFormednessIssue { code, location: location.into() });
    }
}

fn duplicates<'a>(names: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let mut seen = HashSet::new();
    let mut dups = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            dups.insert(n.to_string());
        }
    }
    dups.into_iter().collect()
}

fn check_atom(d: &DomainDef, a: &Atom, scope: &[TypedName], loc: &str, issues: &mut Issues) {
    if a.is_equality() {
        if a.args.len() != 2 {
            issues.push(IssueCode::ArityMismatch { predicate: "=".into(), expected: 2, found: a.args.len() }, loc);
        }
    } else {
        match d.predicate(&a.predicate) {
            None => issues.push(IssueCode::UnknownPredicate { name: a.predicate.clone() }, loc),
            Some(p) if p.arity() != a.args.len() => issues
                .push(IssueCode::ArityMismatch { predicate: a.predicate.clone(), expected: p.arity(), found: a.args.len() }, loc),
            Some(_) => {}
        }
    }
    for t in &a.args {
        match t {
            Term::Var(v) if !scope.iter().any(|p| &p.name == v) => {
                issues.push(IssueCode::UnboundVariable { var: v.clone() }, loc)
            }
            Term::Const(c) if d.constant_type(c).is_none() => issues.push(IssueCode::UnknownConstant { name: c.clone() }, loc),
            _ => {}
        }
    }
}

/// Returns every violated domain invariant; an empty list means the domain
/// is well formed.
pub fn validate_domain(d: &DomainDef) -> Vec<WellFormednessIssue> {
    let mut issues = Issues(Vec::new());

    for name in duplicates(d.types.iter().map(|t| t.name.as_str())) {
        issues.push(IssueCode::DuplicateType { name }, ":types");
    }
    for t in &d.types {
        if let Some(p) = &t.parent {
            if !d.has_type(p) {
                issues.push(IssueCode::UndeclaredType { name: p.clone() }, format!("type {}", t.name));
            }
        }
        // Follow parents; revisiting the start means a cycle.
        let mut cur = t.parent_or_object().to_string();
        for _ in 0..=d.types.len() {
            if cur == t.name {
                issues.push(IssueCode::TypeCycle { name: t.name.clone() }, format!("type {}", t.name));
                break;
            }
            match d.types.iter().find(|x| x.name == cur) {
                Some(x) => cur = x.parent_or_object().to_string(),
                None => break,
            }
        }
    }

    for name in duplicates(d.constants.iter().map(|c| c.name.as_str())) {
        issues.push(IssueCode::DuplicateConstant { name }, ":constants");
    }
    for c in &d.constants {
        if !d.has_type(&c.ty) {
            issues.push(IssueCode::UndeclaredType { name: c.ty.clone() }, format!("constant {}", c.name));
        }
    }

    for name in duplicates(d.predicates.iter().map(|p| p.name.as_str())) {
        issues.push(IssueCode::DuplicatePredicate { name }, ":predicates");
    }
    for p in &d.predicates {
        let loc = format!("predicate {}", p.name);
        for name in duplicates(p.params.iter().map(|x| x.name.as_str())) {
            issues.push(IssueCode::DuplicateParameter { name }, loc.as_str());
        }
        for x in &p.params {
            if !d.has_type(&x.ty) {
                issues.push(IssueCode::UndeclaredType { name: x.ty.clone() }, loc.as_str());
            }
        }
    }

    for name in duplicates(d.actions.iter().map(|a| a.name.as_str())) {
        issues.push(IssueCode::DuplicateAction { name }, ":action");
    }
    for a in &d.actions {
        let loc = format!("action {}", a.name);
        for name in duplicates(a.params.iter().map(|x| x.name.as_str())) {
            issues.push(IssueCode::DuplicateParameter { name }, loc.as_str());
        }
        for x in &a.params {
            if !d.has_type(&x.ty) {
                issues.push(IssueCode::UndeclaredType { name: x.ty.clone() }, loc.as_str());
            }
        }
        for l in &a.precondition {
            check_atom(d, &l.atom, &a.params, &format!("{loc} precondition"), &mut issues);
        }
        for x in a.add.iter().chain(&a.del) {
            if x.is_equality() {
                issues.push(IssueCode::EqualityInEffect, format!("{loc} effect"));
            } else {
                check_atom(d, x, &a.params, &format!("{loc} effect"), &mut issues);
            }
        }
        for x in &a.add {
            if a.del.contains(x) {
                issues.push(IssueCode::AddDeleteOverlap { atom: x.to_string() }, loc.as_str());
            }
        }
    }
    issues.0
}
