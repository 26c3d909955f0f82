//! Abstract syntax for the STRIPS + typing subset of PDDL.
//!
//! Identifiers are stored in canonical lowercase. Variables are stored
//! without their leading `?`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// The root of every type hierarchy.
pub const OBJECT: &str = "object";

/// Requirement keywords the grounder and search fully support.
pub const SUPPORTED_REQUIREMENTS: &[&str] = &["strips", "typing", "negative-preconditions", "equality"];

/// Requirement keywords that are recognized but only parsed and flagged.
pub const KNOWN_REQUIREMENTS: &[&str] = &[
    "strips",
    "typing",
    "negative-preconditions",
    "equality",
    "disjunctive-preconditions",
    "existential-preconditions",
    "universal-preconditions",
    "quantified-preconditions",
    "conditional-effects",
    "fluents",
    "numeric-fluents",
    "object-fluents",
    "adl",
    "durative-actions",
    "duration-inequalities",
    "continuous-effects",
    "derived-predicates",
    "timed-initial-literals",
    "preferences",
    "constraints",
    "action-costs",
];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeName {
    pub name: String,
    /// `None` means the universal type `object`.
    pub parent: Option<String>,
}

impl TypeName {
    pub fn parent_or_object(&self) -> &str {
        self.parent.as_deref().unwrap_or(OBJECT)
    }
}

/// A name with a declared type: action parameters, predicate parameters,
/// constants and problem objects all use this shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypedName {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: String,
}

impl TypedName {
    pub fn new(name: impl Into<String>, ty: impl Into<String>) -> Self {
        TypedName { name: name.into(), ty: ty.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            Term::Const(_) => None,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Parses `?x` as a variable and anything else as a constant.
    pub fn parse(text: &str) -> Term {
        match text.strip_prefix('?') {
            Some(v) => Term::Var(v.to_ascii_lowercase()),
            None => Term::Const(text.to_ascii_lowercase()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "?{v}"),
            Term::Const(c) => f.write_str(c),
        }
    }
}

impl Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if text.is_empty() || text == "?" {
            return Err(serde::de::Error::custom("empty term"));
        }
        Ok(Term::parse(&text))
    }
}

/// Predicate name applied to terms. The predicate `=` is the built-in
/// equality relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom { predicate: predicate.into(), args }
    }

    pub fn is_equality(&self) -> bool {
        self.predicate == "="
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| !t.is_var())
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(Term::as_var)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.predicate)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { positive: true, atom }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { positive: false, atom }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.atom)
        } else {
            write!(f, "(not {})", self.atom)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateSchema {
    pub name: String,
    pub params: Vec<TypedName>,
}

impl PredicateSchema {
    pub fn arity(&self) -> usize {
        self.params.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSchema {
    pub name: String,
    pub params: Vec<TypedName>,
    pub precondition: Vec<Literal>,
    pub add: Vec<Atom>,
    pub del: Vec<Atom>,
}

impl ActionSchema {
    pub fn param_type(&self, var: &str) -> Option<&str> {
        self.params.iter().find(|p| p.name == var).map(|p| p.ty.as_str())
    }

    /// Drops duplicate literals/atoms and removes from `del` any atom that is
    /// also added, matching the delete-then-add reading of STRIPS effects.
    pub fn normalize(&mut self) {
        dedup_in_order(&mut self.precondition);
        dedup_in_order(&mut self.add);
        dedup_in_order(&mut self.del);
        let add = &self.add;
        self.del.retain(|a| !add.contains(a));
    }

    pub fn positive_preconditions(&self) -> impl Iterator<Item = &Atom> {
        self.precondition.iter().filter(|l| l.positive && !l.atom.is_equality()).map(|l| &l.atom)
    }

    pub fn negative_preconditions(&self) -> impl Iterator<Item = &Atom> {
        self.precondition.iter().filter(|l| !l.positive && !l.atom.is_equality()).map(|l| &l.atom)
    }

    pub fn equality_constraints(&self) -> impl Iterator<Item = &Literal> {
        self.precondition.iter().filter(|l| l.atom.is_equality())
    }
}

pub(crate) fn dedup_in_order<T: PartialEq + Clone>(items: &mut Vec<T>) {
    let mut out: Vec<T> = Vec::with_capacity(items.len());
    for it in items.drain(..) {
        if !out.contains(&it) {
            out.push(it);
        }
    }
    *items = out;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainDef {
    pub name: String,
    pub requirements: BTreeSet<String>,
    pub types: Vec<TypeName>,
    pub constants: Vec<TypedName>,
    pub predicates: Vec<PredicateSchema>,
    pub actions: Vec<ActionSchema>,
}

impl DomainDef {
    pub fn action(&self, name: &str) -> Option<&ActionSchema> {
        self.actions.iter().find(|a| a.name == name)
    }

    pub fn predicate(&self, name: &str) -> Option<&PredicateSchema> {
        self.predicates.iter().find(|p| p.name == name)
    }

    pub fn has_type(&self, name: &str) -> bool {
        name == OBJECT || self.types.iter().any(|t| t.name == name)
    }

    /// Requirement keywords that were parsed but are outside the supported subset.
    pub fn unsupported_requirements(&self) -> Vec<&str> {
        self.requirements.iter().map(String::as_str).filter(|r| !SUPPORTED_REQUIREMENTS.contains(r)).collect()
    }

    fn parent_of(&self, ty: &str) -> Option<&str> {
        if ty == OBJECT {
            return None;
        }
        self.types.iter().find(|t| t.name == ty).map(TypeName::parent_or_object)
    }

    /// Reflexive-transitive subtype test. Bounded walk so that a malformed
    /// cyclic hierarchy terminates.
    pub fn is_subtype(&self, sub: &str, sup: &str) -> bool {
        if sup == OBJECT || sub == sup {
            return true;
        }
        let mut cur = sub;
        for _ in 0..=self.types.len() {
            match self.parent_of(cur) {
                Some(p) if p == sup => return true,
                Some(p) => cur = p,
                None => return false,
            }
        }
        false
    }

    /// The more specific of two comparable types, or `None` if neither is a
    /// subtype of the other.
    pub fn meet(&self, a: &str, b: &str) -> Option<String> {
        if self.is_subtype(a, b) {
            Some(a.to_string())
        } else if self.is_subtype(b, a) {
            Some(b.to_string())
        } else {
            None
        }
    }

    pub fn constant_type(&self, name: &str) -> Option<&str> {
        self.constants.iter().find(|c| c.name == name).map(|c| c.ty.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemDef {
    pub name: String,
    pub domain_name: String,
    pub objects: Vec<TypedName>,
    pub init: Vec<Atom>,
    pub goal: Vec<Literal>,
}

impl ProblemDef {
    pub fn object_type(&self, name: &str) -> Option<&str> {
        self.objects.iter().find(|o| o.name == name).map(|o| o.ty.as_str())
    }
}
