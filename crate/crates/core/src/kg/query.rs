//! Conjunctive basic-graph-pattern queries with projection, DISTINCT and COUNT.

use std::collections::BTreeMap;

use super::graph::Graph;
use super::term::{Iri, Term, Triple};

pub type Bindings = BTreeMap<String, Term>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePattern {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl TriplePattern {
    pub fn new(subject: impl Into<Term>, predicate: impl Into<Term>, object: impl Into<Term>) -> Self {
        TriplePattern { subject: subject.into(), predicate: predicate.into(), object: object.into() }
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        [&self.subject, &self.predicate, &self.object].into_iter().filter_map(|t| match t {
            Term::Var(v) => Some(v.as_str()),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Query {
    pub patterns: Vec<TriplePattern>,
    /// Variables to keep; `None` keeps all.
    pub select: Option<Vec<String>>,
    pub distinct: bool,
    /// When set, the result is one row binding this name to the solution count.
    pub count: Option<String>,
}

impl Query {
    pub fn new(patterns: Vec<TriplePattern>) -> Self {
        Query { patterns, ..Query::default() }
    }

    pub fn select(mut self, vars: &[&str]) -> Self {
        self.select = Some(vars.iter().map(|v| v.trim_start_matches('?').to_string()).collect());
        self
    }

    pub fn distinct(mut self) -> Self {
        self.distinct = true;
        self
    }

    pub fn count_as(mut self, name: &str) -> Self {
        self.count = Some(name.trim_start_matches('?').to_string());
        self
    }
}

fn resolve<'a>(t: &'a Term, b: &'a Bindings) -> Option<&'a Term> {
    match t {
        Term::Var(v) => b.get(v),
        other => Some(other),
    }
}

fn bound_count(p: &TriplePattern, b: &Bindings) -> usize {
    [&p.subject, &p.predicate, &p.object].iter().filter(|t| resolve(t, b).is_some()).count()
}

fn unify(slot: &Term, value: &Term, b: &mut Bindings) -> bool {
    match slot {
        Term::Var(v) => match b.get(v) {
            Some(existing) => existing == value,
            None => {
                b.insert(v.clone(), value.clone());
                true
            }
        },
        other => other == value,
    }
}

fn extend(g: &Graph, p: &TriplePattern, b: &Bindings, out: &mut Vec<Bindings>) {
    let s = resolve(&p.subject, b);
    let pr = resolve(&p.predicate, b);
    let o = resolve(&p.object, b);
    // Subjects and predicates are always IRIs in stored data.
    let s_iri = match s {
        Some(Term::Iri(i)) => Some(i),
        Some(_) => return,
        None => None,
    };
    let p_iri = match pr {
        Some(Term::Iri(i)) => Some(i),
        Some(_) => return,
        None => None,
    };
    for t in g.matching(s_iri, p_iri, o) {
        let mut nb = b.clone();
        let Triple { subject, predicate, object } = t;
        if unify(&p.subject, &Term::Iri(subject.clone()), &mut nb)
            && unify(&p.predicate, &Term::Iri(predicate.clone()), &mut nb)
            && unify(&p.object, object, &mut nb)
        {
            out.push(nb);
        }
    }
}

/// All solution mappings of the conjunction, sorted.
pub fn evaluate(g: &Graph, patterns: &[TriplePattern]) -> Vec<Bindings> {
    if patterns.is_empty() {
        return Vec::new();
    }
    let mut remaining: Vec<&TriplePattern> = patterns.iter().collect();
    let mut rows = vec![Bindings::new()];
    while !remaining.is_empty() && !rows.is_empty() {
        // Most-bound pattern next; ties keep the caller's order.
        let probe = &rows[0];
        let (idx, _) =
            remaining.iter().enumerate().max_by_key(|(i, p)| (bound_count(p, probe), std::cmp::Reverse(*i))).expect("non-empty");
        let p = remaining.remove(idx);
        let mut next = Vec::new();
        for b in &rows {
            extend(g, p, b, &mut next);
        }
        rows = next;
    }
    rows.sort();
    rows
}

/// Evaluates a query with projection, DISTINCT and COUNT applied.
pub fn run(g: &Graph, q: &Query) -> Vec<Bindings> {
    let mut rows = evaluate(g, &q.patterns);
    if let Some(vars) = &q.select {
        for r in &mut rows {
            r.retain(|k, _| vars.contains(k));
        }
        rows.sort();
    }
    if q.distinct {
        rows.dedup();
    }
    match &q.count {
        Some(name) => vec![Bindings::from([(name.clone(), Term::integer(rows.len() as i64))])],
        None => rows,
    }
}

/// Values bound to `var` across rows, in row order.
pub fn column<'a>(rows: &'a [Bindings], var: &str) -> Vec<&'a Term> {
    rows.iter().filter_map(|r| r.get(var)).collect()
}

/// IRIs bound to `var`, skipping literals.
pub fn iri_column<'a>(rows: &'a [Bindings], var: &str) -> Vec<&'a Iri> {
    column(rows, var).into_iter().filter_map(Term::as_iri).collect()
}
