use std::fmt;

use serde::Serialize;

pub const PLAN_NS: &str = "https://purl.org/ai4s/ontology/planning#";
pub const RDF_NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS_NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL_NS: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema#";

/// Absolute IRI.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Iri(String);

impl Iri {
    /// Accepts any string with a scheme (`scheme:rest`) and no whitespace or angle brackets.
    pub fn new(value: impl Into<String>) -> Option<Iri> {
        let value = value.into();
        let scheme_ok = value.split_once(':').is_some_and(|(scheme, _)| {
            !scheme.is_empty() && scheme.chars().all(|c| c.is_ascii_alphanumeric() || "+-.".contains(c))
        });
        let chars_ok =
            !value.chars().any(|c| c.is_whitespace() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '\\' | '^' | '`'));
        (scheme_ok && chars_ok).then_some(Iri(value))
    }

    /// IRI in the planning ontology namespace.
    pub fn plan(local: &str) -> Iri {
        Iri(format!("{PLAN_NS}{local}"))
    }

    pub fn rdf(local: &str) -> Iri {
        Iri(format!("{RDF_NS}{local}"))
    }

    pub fn rdfs(local: &str) -> Iri {
        Iri(format!("{RDFS_NS}{local}"))
    }

    pub fn owl(local: &str) -> Iri {
        Iri(format!("{OWL_NS}{local}"))
    }

    pub fn xsd(local: &str) -> Iri {
        Iri(format!("{XSD_NS}{local}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Local name within the planning namespace, if the IRI lives there.
    pub fn plan_local(&self) -> Option<&str> {
        self.0.strip_prefix(PLAN_NS)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(Iri),
    Literal {
        lexical: String,
        datatype: Iri,
    },
    /// Query variable; never stored in a graph.
    Var(String),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.trim_start_matches('?').to_string())
    }

    pub fn string(s: impl Into<String>) -> Term {
        Term::Literal { lexical: s.into(), datatype: Iri::xsd("string") }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Term {
        Term::Literal { lexical: lexical.into(), datatype }
    }

    pub fn non_negative(n: u64) -> Term {
        Term::typed(n.to_string(), Iri::xsd("nonNegativeInteger"))
    }

    pub fn integer(n: i64) -> Term {
        Term::typed(n.to_string(), Iri::xsd("integer"))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(i) => Some(i),
            _ => None,
        }
    }

    pub fn lexical(&self) -> Option<&str> {
        match self {
            Term::Literal { lexical, .. } => Some(lexical),
            _ => None,
        }
    }

    /// Literal value as an integer, for integer-like datatypes.
    pub fn as_integer(&self) -> Option<i64> {
        self.lexical().and_then(|l| l.parse().ok())
    }
}

impl From<Iri> for Term {
    fn from(i: Iri) -> Self {
        Term::Iri(i)
    }
}

impl From<&Iri> for Term {
    fn from(i: &Iri) -> Self {
        Term::Iri(i.clone())
    }
}

pub(crate) fn escape_literal(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out
}

/// N-Triples style rendering, used for diagnostics and binding output.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(i) => i.fmt(f),
            Term::Literal { lexical, datatype } if datatype.as_str() == format!("{XSD_NS}string") => {
                write!(f, "\"{}\"", escape_literal(lexical))
            }
            Term::Literal { lexical, datatype } => write!(f, "\"{}\"^^{datatype}", escape_literal(lexical)),
            Term::Var(v) => write!(f, "?{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Iri, predicate: Iri, object: impl Into<Term>) -> Self {
        Triple { subject, predicate, object: object.into() }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}
