use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::schema::rdf_type;
use super::term::{Iri, Term, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("variable ?{0} cannot be stored in a graph")]
    VariableInData(String),
}

/// In-memory triple set with subject, predicate and object indexes.
///
/// Mutation takes `&mut self`, so readers never observe a half-updated
/// index; wrap in `RwLock` to share across threads.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    by_subject: HashMap<Iri, BTreeSet<Triple>>,
    by_predicate: HashMap<Iri, BTreeSet<Triple>>,
    by_object: HashMap<Term, BTreeSet<Triple>>,
}

fn index_remove<K: std::hash::Hash + Eq>(index: &mut HashMap<K, BTreeSet<Triple>>, key: &K, t: &Triple) {
    if let Some(set) = index.get_mut(key) {
        set.remove(t);
        if set.is_empty() {
            index.remove(key);
        }
    }
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Inserts a triple; returns whether it was new.
    #[doc(alias = "assert")]
    pub fn insert(&mut self, t: Triple) -> Result<bool, GraphError> {
        if let Term::Var(v) = &t.object {
            return Err(GraphError::VariableInData(v.clone()));
        }
        if self.triples.contains(&t) {
            return Ok(false);
        }
        self.by_subject.entry(t.subject.clone()).or_default().insert(t.clone());
        self.by_predicate.entry(t.predicate.clone()).or_default().insert(t.clone());
        self.by_object.entry(t.object.clone()).or_default().insert(t.clone());
        self.triples.insert(t);
        Ok(true)
    }

    /// Removes a triple; returns whether it was present.
    #[doc(alias = "retract")]
    pub fn remove(&mut self, t: &Triple) -> bool {
        if !self.triples.remove(t) {
            return false;
        }
        index_remove(&mut self.by_subject, &t.subject, t);
        index_remove(&mut self.by_predicate, &t.predicate, t);
        index_remove(&mut self.by_object, &t.object, t);
        true
    }

    pub fn extend<I: IntoIterator<Item = Triple>>(&mut self, triples: I) -> Result<usize, GraphError> {
        let mut added = 0;
        for t in triples {
            added += usize::from(self.insert(t)?);
        }
        Ok(added)
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.contains(t)
    }

    /// All triples in (subject, predicate, object) order.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn with_subject<'a>(&'a self, s: &Iri) -> impl Iterator<Item = &'a Triple> {
        self.by_subject.get(s).into_iter().flatten()
    }

    pub fn with_predicate<'a>(&'a self, p: &Iri) -> impl Iterator<Item = &'a Triple> {
        self.by_predicate.get(p).into_iter().flatten()
    }

    pub fn with_object<'a>(&'a self, o: &Term) -> impl Iterator<Item = &'a Triple> {
        self.by_object.get(o).into_iter().flatten()
    }

    /// Triples matching the bound positions, using the most selective index.
    pub fn matching<'a>(&'a self, s: Option<&Iri>, p: Option<&Iri>, o: Option<&Term>) -> Vec<&'a Triple> {
        let candidates: Box<dyn Iterator<Item = &'a Triple> + 'a> = {
            let sizes = [
                s.map(|s| self.by_subject.get(s).map_or(0, BTreeSet::len)),
                o.map(|o| self.by_object.get(o).map_or(0, BTreeSet::len)),
                p.map(|p| self.by_predicate.get(p).map_or(0, BTreeSet::len)),
            ];
            let best = sizes.iter().enumerate().filter_map(|(i, n)| n.map(|n| (n, i))).min();
            match best {
                None => Box::new(self.triples.iter()),
                Some((_, 0)) => Box::new(self.with_subject(s.unwrap())),
                Some((_, 1)) => Box::new(self.with_object(o.unwrap())),
                Some(_) => Box::new(self.with_predicate(p.unwrap())),
            }
        };
        candidates
            .filter(|t| s.is_none_or(|s| &t.subject == s))
            .filter(|t| p.is_none_or(|p| &t.predicate == p))
            .filter(|t| o.is_none_or(|o| &t.object == o))
            .collect()
    }

    pub fn objects<'a>(&'a self, s: &Iri, p: &Iri) -> Vec<&'a Term> {
        self.matching(Some(s), Some(p), None).into_iter().map(|t| &t.object).collect()
    }

    pub fn subjects<'a>(&'a self, p: &Iri, o: &Term) -> Vec<&'a Iri> {
        self.matching(None, Some(p), Some(o)).into_iter().map(|t| &t.subject).collect()
    }

    pub fn has_type(&self, s: &Iri, class: &Iri) -> bool {
        self.contains(&Triple::new(s.clone(), rdf_type(), class.clone()))
    }

    /// Instances of `class`, sorted.
    pub fn instances_of<'a>(&'a self, class: &Iri) -> Vec<&'a Iri> {
        self.subjects(&rdf_type(), &Term::Iri(class.clone()))
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples
    }
}

impl Eq for Graph {}

impl FromIterator<Triple> for Graph {
    /// Panics if a triple carries a variable.
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        g.extend(iter).expect("variable in graph data");
        g
    }
}
