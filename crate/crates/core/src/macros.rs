//! Macro operators mined from stored plans: adjacent pair mining, the
//! chaining filter, composition, domain augmentation and storage.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kg::query::{self, TriplePattern};
use crate::kg::{class, plan_class, plan_prop, prop, rdf_type, Graph, Iri, Term, Triple};
use crate::mapper::iri;
use crate::pddl::{ActionSchema, Atom, DomainDef, Literal, Term as PTerm, TypedName};
use crate::strips::PlanStep;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MacroError {
    #[error("no stored plans for domain {0}")]
    NoPlansForDomain(String),
    #[error("unknown domain {0}")]
    UnknownDomain(String),
    #[error("action schema '{0}' is not in the domain")]
    UnknownSchema(String),
    #[error("{first} * {second}: arity mismatch with the observed arguments")]
    ArityMismatch { first: String, second: String },
    #[error("{pair}: {reason}")]
    ChainingViolation { pair: String, reason: String },
    #[error("{pair}: unified slot {slot} joins incompatible types {a} and {b}")]
    TypeConflict { pair: String, slot: String, a: String, b: String },
    #[error("stored plan step '{0}' is not a ground action")]
    BadStep(String),
}

/// An adjacent action pair lifted to argument slots.
///
/// Arguments of both steps are numbered by first appearance across
/// `first ++ second`; equal numbers mean the same object was observed in
/// both positions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LiftedPair {
    pub first: String,
    pub second: String,
    pub first_args: Vec<usize>,
    pub second_args: Vec<usize>,
    pub frequency: u64,
}

impl LiftedPair {
    pub fn new(first: &str, second: &str, first_args: Vec<usize>, second_args: Vec<usize>) -> Self {
        LiftedPair { first: first.to_string(), second: second.to_string(), first_args, second_args, frequency: 1 }
    }

    /// Lifts one grounded occurrence.
    pub fn lift<'a>(a: &'a PlanStep, b: &'a PlanStep) -> Self {
        let mut slots: Vec<&str> = Vec::new();
        let mut index = |args: &'a [String]| -> Vec<usize> {
            args.iter()
                .map(|o| match slots.iter().position(|s| *s == o) {
                    Some(i) => i,
                    None => {
                        slots.push(o);
                        slots.len() - 1
                    }
                })
                .collect()
        };
        let first_args = index(&a.args);
        let second_args = index(&b.args);
        LiftedPair::new(&a.action, &b.action, first_args, second_args)
    }

    /// Number of distinct slots.
    pub fn slot_count(&self) -> usize {
        self.first_args.iter().chain(&self.second_args).map(|i| i + 1).max().unwrap_or(0)
    }

    /// Second-action argument position -> first-action argument position,
    /// for every position bound to an object the first action also used.
    pub fn unifier(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for (j, s) in self.second_args.iter().enumerate() {
            if let Some(i) = self.first_args.iter().position(|f| f == s) {
                out.insert(j, i);
            }
        }
        out
    }

    fn key(&self) -> (&str, &str, &[usize], &[usize]) {
        (&self.first, &self.second, &self.first_args, &self.second_args)
    }

    pub fn label(&self) -> String {
        format!("{} * {}", self.first, self.second)
    }
}

impl fmt::Display for LiftedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |args: &[usize]| args.iter().map(|i| format!("#{i}")).collect::<Vec<_>>().join(" ");
        write!(f, "({} {}) * ({} {})", self.first, show(&self.first_args), self.second, show(&self.second_args))
    }
}

/// Corpus-global counts of lifted adjacent pairs, most frequent first, then
/// by action names, then by argument pattern.
pub fn mine_plans<'a>(plans: impl IntoIterator<Item = &'a [PlanStep]>) -> Vec<LiftedPair> {
    let mut counts: BTreeMap<LiftedPair, u64> = BTreeMap::new();
    for plan in plans {
        for w in plan.windows(2) {
            let mut p = LiftedPair::lift(&w[0], &w[1]);
            p.frequency = 0;
            *counts.entry(p).or_default() += 1;
        }
    }
    let mut out: Vec<LiftedPair> = counts
        .into_iter()
        .map(|(mut p, n)| {
            p.frequency = n;
            p
        })
        .collect();
    out.sort_by(|a, b| b.frequency.cmp(&a.frequency).then_with(|| a.key().cmp(&b.key())));
    out
}

/// Plans stored for `domain`, each as its ordered steps.
pub fn stored_plans(g: &Graph, domain: &Iri) -> Result<Vec<Vec<PlanStep>>, MacroError> {
    let pats = [
        TriplePattern::new(domain, plan_prop(prop::HAS_PROBLEM), Term::var("problem")),
        TriplePattern::new(Term::var("problem"), plan_prop(prop::HAS_PLAN), Term::var("plan")),
        TriplePattern::new(Term::var("plan"), plan_prop(prop::HAS_ACTION_STEP), Term::var("step")),
        TriplePattern::new(Term::var("step"), plan_prop(prop::HAS_ORDINAL), Term::var("n")),
        TriplePattern::new(Term::var("step"), plan_prop(prop::HAS_ACTION_NAME), Term::var("name")),
    ];
    let mut by_plan: BTreeMap<Iri, Vec<(i64, PlanStep)>> = BTreeMap::new();
    for b in query::evaluate(g, &pats) {
        let plan = b["plan"].as_iri().cloned().expect("plan is bound to an IRI");
        let n = b["n"].as_integer().unwrap_or(0);
        let text = b["name"].lexical().unwrap_or_default();
        let step: PlanStep = text.parse().map_err(|_| MacroError::BadStep(text.to_string()))?;
        by_plan.entry(plan).or_default().push((n, step));
    }
    // Plans without steps still count as stored plans.
    let plan_pats = [
        TriplePattern::new(domain, plan_prop(prop::HAS_PROBLEM), Term::var("problem")),
        TriplePattern::new(Term::var("problem"), plan_prop(prop::HAS_PLAN), Term::var("plan")),
    ];
    for b in query::evaluate(g, &plan_pats) {
        by_plan.entry(b["plan"].as_iri().cloned().expect("plan is bound to an IRI")).or_default();
    }
    if by_plan.is_empty() {
        return Err(MacroError::NoPlansForDomain(domain.plan_local().unwrap_or(domain.as_str()).to_string()));
    }
    Ok(by_plan
        .into_values()
        .map(|mut steps| {
            steps.sort_by_key(|(n, _)| *n);
            steps.into_iter().map(|(_, s)| s).collect()
        })
        .collect())
}

pub fn mine_pairs(g: &Graph, domain: &Iri) -> Result<Vec<LiftedPair>, MacroError> {
    let plans = stored_plans(g, domain)?;
    Ok(mine_plans(plans.iter().map(Vec::as_slice)))
}

/// Both schemas rewritten over shared macro variables.
struct Unified {
    params: Vec<TypedName>,
    a1: ActionSchema,
    a2: ActionSchema,
}

fn rename(schema: &ActionSchema, slots: &[usize], names: &[String]) -> ActionSchema {
    let map: BTreeMap<&str, &str> = schema.params.iter().zip(slots).map(|(p, s)| (p.name.as_str(), names[*s].as_str())).collect();
    let term = |t: &PTerm| match t {
        PTerm::Var(v) => PTerm::var(map.get(v.as_str()).copied().unwrap_or(v.as_str())),
        c => c.clone(),
    };
    let atom = |a: &Atom| Atom::new(a.predicate.clone(), a.args.iter().map(term).collect());
    ActionSchema {
        name: schema.name.clone(),
        params: Vec::new(),
        precondition: schema.precondition.iter().map(|l| Literal { positive: l.positive, atom: atom(&l.atom) }).collect(),
        add: schema.add.iter().map(atom).collect(),
        del: schema.del.iter().map(atom).collect(),
    }
}

fn unify(d: &DomainDef, p: &LiftedPair) -> Result<Unified, MacroError> {
    let s1 = d.action(&p.first).ok_or_else(|| MacroError::UnknownSchema(p.first.clone()))?;
    let s2 = d.action(&p.second).ok_or_else(|| MacroError::UnknownSchema(p.second.clone()))?;
    if s1.params.len() != p.first_args.len() || s2.params.len() != p.second_args.len() {
        return Err(MacroError::ArityMismatch { first: p.first.clone(), second: p.second.clone() });
    }
    let n = p.slot_count();
    let mut names: Vec<Option<String>> = vec![None; n];
    let mut types: Vec<Option<String>> = vec![None; n];
    let mut taken: BTreeSet<String> = BTreeSet::new();
    let occurrences = s1.params.iter().zip(&p.first_args).chain(s2.params.iter().zip(&p.second_args));
    for (param, &slot) in occurrences {
        if names[slot].is_none() {
            let mut candidate = param.name.clone();
            let mut k = 2;
            while taken.contains(&candidate) {
                candidate = format!("{}{k}", param.name);
                k += 1;
            }
            taken.insert(candidate.clone());
            names[slot] = Some(candidate);
        }
        types[slot] = Some(match &types[slot] {
            None => param.ty.clone(),
            Some(t) => d.meet(t, &param.ty).ok_or_else(|| MacroError::TypeConflict {
                pair: p.label(),
                slot: format!("?{}", names[slot].as_deref().unwrap_or_default()),
                a: t.clone(),
                b: param.ty.clone(),
            })?,
        });
    }
    let names: Vec<String> = names.into_iter().map(|n| n.expect("every slot is used")).collect();
    let params = names.iter().zip(types).map(|(n, t)| TypedName::new(n.clone(), t.expect("every slot is typed"))).collect();
    Ok(Unified { params, a1: rename(s1, &p.first_args, &names), a2: rename(s2, &p.second_args, &names) })
}

fn positives(a: &ActionSchema) -> BTreeSet<&Atom> {
    a.precondition.iter().filter(|l| l.positive && !l.atom.is_equality()).map(|l| &l.atom).collect()
}

fn negatives(a: &ActionSchema) -> BTreeSet<&Atom> {
    a.precondition.iter().filter(|l| !l.positive && !l.atom.is_equality()).map(|l| &l.atom).collect()
}

/// Reason the pair does not chain, if any.
fn chain_violation(u: &Unified) -> Option<String> {
    let add1: BTreeSet<&Atom> = u.a1.add.iter().collect();
    let del1: BTreeSet<&Atom> = u.a1.del.iter().collect();
    let pre1 = positives(&u.a1);
    let pre2 = positives(&u.a2);
    // What holds after the first action: its adds and its untouched preconditions.
    let established: BTreeSet<&Atom> = add1.iter().copied().chain(pre1.difference(&del1).copied()).collect();
    if established.is_disjoint(&pre2) {
        return Some("first action establishes none of the second's preconditions".into());
    }
    let needed: BTreeSet<&Atom> = pre2.difference(&add1).copied().collect();
    if let Some(a) = needed.intersection(&del1).next() {
        return Some(format!("first action deletes {a}, which the second still needs"));
    }
    if let Some(a) = negatives(&u.a2).intersection(&add1).next() {
        return Some(format!("first action adds {a}, which the second requires to be false"));
    }
    None
}

/// Whether the first action of `p` establishes a precondition of the second
/// without destroying any other one, under the pair's unifier.
pub fn chain_filter(d: &DomainDef, p: &LiftedPair) -> Result<bool, MacroError> {
    Ok(chain_violation(&unify(d, p)?).is_none())
}

/// A composed macro operator with the pair it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacroSchema {
    pub action: ActionSchema,
    pub provenance: LiftedPair,
}

impl MacroSchema {
    pub fn name(&self) -> &str {
        &self.action.name
    }
}

fn push_unique<T: PartialEq>(v: &mut Vec<T>, x: T) {
    if !v.contains(&x) {
        v.push(x);
    }
}

/// Composes the pair into one action.
///
/// pre = pre(a1) ∪ (pre(a2) \ add(a1)), with negative preconditions of a2
/// dropped when a1 deletes them; add = add(a2) ∪ (add(a1) \ del(a2));
/// del = (del(a1) ∪ del(a2)) \ add. Distinct macro variables of compatible
/// types, and variables against the constants the macro mentions, get an
/// inequality so that every grounding is injective and lifted set algebra
/// matches the two-step application.
pub fn compose(d: &DomainDef, p: &LiftedPair) -> Result<MacroSchema, MacroError> {
    let u = unify(d, p)?;
    if let Some(reason) = chain_violation(&u) {
        return Err(MacroError::ChainingViolation { pair: p.label(), reason });
    }
    let add1: BTreeSet<&Atom> = u.a1.add.iter().collect();
    let del1: BTreeSet<&Atom> = u.a1.del.iter().collect();

    let mut pre: Vec<Literal> = Vec::new();
    for l in &u.a1.precondition {
        push_unique(&mut pre, l.clone());
    }
    for l in &u.a2.precondition {
        let keep = if l.atom.is_equality() {
            true
        } else if l.positive {
            !add1.contains(&l.atom)
        } else {
            !del1.contains(&l.atom)
        };
        if keep {
            push_unique(&mut pre, l.clone());
        }
    }

    // Equalities over the unified variables.
    let mut checked = Vec::new();
    for l in pre {
        if !l.atom.is_equality() {
            checked.push(l);
            continue;
        }
        let same = l.atom.args[0] == l.atom.args[1];
        match (l.positive, same) {
            (true, true) => {}
            (false, true) => {
                return Err(MacroError::ChainingViolation {
                    pair: p.label(),
                    reason: format!("unification makes {l} unsatisfiable"),
                })
            }
            (true, false) => {
                return Err(MacroError::ChainingViolation {
                    pair: p.label(),
                    reason: format!("{l} would merge distinct macro slots"),
                })
            }
            (false, false) => checked.push(l),
        }
    }
    let mut pre = checked;

    let del2: BTreeSet<&Atom> = u.a2.del.iter().collect();
    let mut add: Vec<Atom> = u.a2.add.clone();
    for a in &u.a1.add {
        if !del2.contains(a) {
            push_unique(&mut add, a.clone());
        }
    }
    let mut del: Vec<Atom> = Vec::new();
    for a in u.a1.del.iter().chain(&u.a2.del) {
        if !add.contains(a) {
            push_unique(&mut del, a.clone());
        }
    }

    // Injectivity guards.
    let mut constants: BTreeSet<String> = BTreeSet::new();
    for a in pre.iter().map(|l| &l.atom).chain(&add).chain(&del) {
        for t in &a.args {
            if let PTerm::Const(c) = t {
                constants.insert(c.clone());
            }
        }
    }
    let neq = |x: PTerm, y: PTerm| Literal::neg(Atom::new("=", vec![x, y]));
    for (i, a) in u.params.iter().enumerate() {
        for b in &u.params[i + 1..] {
            if d.meet(&a.ty, &b.ty).is_some() {
                push_unique(&mut pre, neq(PTerm::var(a.name.clone()), PTerm::var(b.name.clone())));
            }
        }
        for c in &constants {
            let compatible = d.constant_type(c).is_none_or(|ct| d.meet(&a.ty, ct).is_some());
            if compatible {
                push_unique(&mut pre, neq(PTerm::var(a.name.clone()), PTerm::constant(c.clone())));
            }
        }
    }

    let action = ActionSchema { name: format!("{}_{}", p.first, p.second), params: u.params, precondition: pre, add, del };
    Ok(MacroSchema { action, provenance: p.clone() })
}

/// Composes every chaining pair in rank order, giving later variants of an
/// already used name a numeric suffix.
pub fn rank_macros(d: &DomainDef, pairs: &[LiftedPair]) -> Vec<MacroSchema> {
    let mut used: BTreeSet<String> = d.actions.iter().map(|a| a.name.clone()).collect();
    let mut out = Vec::new();
    for p in pairs {
        let Ok(mut m) = compose(d, p) else {
            continue;
        };
        let base = m.action.name.clone();
        let mut k = 2;
        while used.contains(&m.action.name) {
            m.action.name = format!("{base}_{k}");
            k += 1;
        }
        used.insert(m.action.name.clone());
        out.push(m);
    }
    out
}

/// `d` plus the first `k` macros as ordinary actions. Adds `:equality` when
/// a macro relies on it.
pub fn augment_domain(d: &DomainDef, macros: &[MacroSchema], k: usize) -> DomainDef {
    let mut out = d.clone();
    let chosen = &macros[..k.min(macros.len())];
    if chosen.is_empty() {
        return out;
    }
    let mut names: BTreeSet<String> = out.actions.iter().map(|a| a.name.clone()).collect();
    for m in chosen {
        let mut a = m.action.clone();
        let base = a.name.clone();
        let mut n = 2;
        while names.contains(&a.name) {
            a.name = format!("{base}_{n}");
            n += 1;
        }
        names.insert(a.name.clone());
        a.normalize();
        out.actions.push(a);
    }
    let uses_equality = chosen.iter().any(|m| m.action.precondition.iter().any(|l| l.atom.is_equality()));
    if uses_equality && !out.requirements.contains("equality") {
        if out.requirements.is_empty() {
            out.requirements.insert("strips".into());
        }
        out.requirements.insert("equality".into());
    }
    out
}

/// Records macros as MacroAction nodes linked to their constituent actions.
/// Returns the number of new triples.
pub fn store_macros(g: &mut Graph, domain: &Iri, macros: &[MacroSchema]) -> Result<usize, MacroError> {
    let dom_name = g
        .has_type(domain, &plan_class(class::PLANNING_DOMAIN))
        .then(|| g.objects(domain, &plan_prop(prop::HAS_NAME)).first().and_then(|t| t.lexical()).map(str::to_string))
        .flatten()
        .ok_or_else(|| MacroError::UnknownDomain(domain.plan_local().unwrap_or(domain.as_str()).to_string()))?;
    let mut triples = Vec::new();
    for m in macros {
        let first = iri::action(&dom_name, &m.provenance.first);
        let second = iri::action(&dom_name, &m.provenance.second);
        for a in [&first, &second] {
            if !g.has_type(a, &plan_class(class::ACTION)) {
                return Err(MacroError::UnknownSchema(a.plan_local().unwrap_or(a.as_str()).to_string()));
            }
        }
        let mi = iri::macro_action(&dom_name, m.name());
        let t = |p: &str, o: Term| Triple::new(mi.clone(), plan_prop(p), o);
        triples.push(Triple::new(mi.clone(), rdf_type(), plan_class(class::MACRO_ACTION)));
        triples.push(t(prop::HAS_NAME, Term::string(m.name())));
        triples.push(t(prop::HAS_FIRST_ACTION, first.into()));
        triples.push(t(prop::HAS_SECOND_ACTION, second.into()));
        triples.push(t(prop::HAS_FREQUENCY, Term::non_negative(m.provenance.frequency)));
        triples.push(t(prop::HAS_ACTION_NAME, Term::string(m.provenance.to_string())));
        triples.push(Triple::new(domain.clone(), plan_prop(prop::HAS_MACRO), mi.clone()));
    }
    Ok(g.extend(triples).expect("no variables"))
}

/// One ranked pair in a mining report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    #[serde(flatten)]
    pub pair: LiftedPair,
    pub chains: bool,
    #[serde(rename = "macro")]
    pub macro_name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MacroReport {
    pub domain: String,
    pub pairs: Vec<ReportEntry>,
}

impl MacroReport {
    /// Ranks pairs and records which of them chain. Without a domain
    /// definition only frequencies are reported.
    pub fn build(domain: &str, pairs: &[LiftedPair], d: Option<&DomainDef>) -> MacroReport {
        let macros = d.map(|d| rank_macros(d, pairs)).unwrap_or_default();
        let entries = pairs
            .iter()
            .map(|p| {
                let made = macros.iter().find(|m| &m.provenance == p);
                let reason = d.and_then(|d| match compose(d, p) {
                    Ok(_) => None,
                    Err(e) => Some(e.to_string()),
                });
                ReportEntry { pair: p.clone(), chains: made.is_some(), macro_name: made.map(|m| m.name().to_string()), reason }
            })
            .collect();
        MacroReport { domain: domain.to_string(), pairs: entries }
    }

    /// Chaining pairs in rank order, for recomposition against a domain.
    pub fn chaining_pairs(&self) -> Vec<LiftedPair> {
        self.pairs.iter().filter(|e| e.chains).map(|e| e.pair.clone()).collect()
    }

    /// Name-level view with frequencies summed over argument patterns, most
    /// frequent first.
    pub fn name_pairs(&self) -> Vec<(String, String, u64)> {
        name_level(self.pairs.iter().map(|e| &e.pair))
    }
}

pub fn name_level<'a>(pairs: impl IntoIterator<Item = &'a LiftedPair>) -> Vec<(String, String, u64)> {
    let mut m: BTreeMap<(String, String), u64> = BTreeMap::new();
    for p in pairs {
        *m.entry((p.first.clone(), p.second.clone())).or_default() += p.frequency;
    }
    let mut v: Vec<(String, String, u64)> = m.into_iter().map(|((a, b), n)| (a, b, n)).collect();
    v.sort_by(|x, y| y.2.cmp(&x.2).then_with(|| (&x.0, &x.1).cmp(&(&y.0, &y.1))));
    v
}

impl fmt::Display for MacroReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.domain)?;
        for e in &self.pairs {
            let mark = match (&e.macro_name, &e.reason) {
                (Some(m), _) => format!("macro {m}"),
                (None, Some(_)) => "does not chain".to_string(),
                (None, None) => String::new(),
            };
            writeln!(f, "  {} \u{2014} {}  {}  {}", e.pair.label(), e.pair.frequency, e.pair, mark)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pddl::parse_domain;

    fn step(s: &str) -> PlanStep {
        s.parse().unwrap()
    }

    #[test]
    fn lifting_merges_shared_objects() {
        let p = LiftedPair::lift(&step("(unstack b2 b1)"), &step("(put-down b2)"));
        assert_eq!(p.first_args, vec![0, 1]);
        assert_eq!(p.second_args, vec![0]);
        assert_eq!(p.unifier(), BTreeMap::from([(0, 0)]));
    }

    #[test]
    fn single_two_step_plan() {
        let plan = vec![step("(pick-up a)"), step("(stack a b)")];
        let pairs = mine_plans([plan.as_slice()]);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].frequency, 1);
    }

    #[test]
    fn clashing_parameter_names_are_renamed() {
        let d = parse_domain(
            "(define (domain d) (:predicates (p ?x) (q ?x))
               (:action a :parameters (?x) :precondition (p ?x) :effect (q ?x))
               (:action b :parameters (?x) :precondition (q ?x) :effect (not (q ?x))))",
        )
        .unwrap();
        let m = compose(&d, &LiftedPair::new("a", "b", vec![0], vec![1])).unwrap_err();
        assert!(matches!(m, MacroError::ChainingViolation { .. }));
        let m = compose(&d, &LiftedPair::new("a", "b", vec![0], vec![0])).unwrap();
        assert_eq!(m.action.params.len(), 1);
        assert!(m.action.add.is_empty());
    }

    fn blocks() -> DomainDef {
        parse_domain(include_str!("../fixtures/blocksworld/domain.pddl")).unwrap()
    }

    fn atoms(v: &[Atom]) -> BTreeSet<String> {
        v.iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn pick_up_then_stack() {
        let d = blocks();
        let p = LiftedPair::new("pick-up", "stack", vec![0], vec![0, 1]);
        assert!(chain_filter(&d, &p).unwrap());
        let m = compose(&d, &p).unwrap();
        assert_eq!(m.name(), "pick-up_stack");
        let pre: BTreeSet<String> =
            m.action.precondition.iter().filter(|l| !l.atom.is_equality()).map(|l| l.atom.to_string()).collect();
        let want = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        assert_eq!(pre, want(&["(clear ?x)", "(ontable ?x)", "(handempty)", "(clear ?y)"]));
        assert_eq!(atoms(&m.action.add), want(&["(on ?x ?y)", "(clear ?x)", "(handempty)"]));
        assert_eq!(atoms(&m.action.del), want(&["(ontable ?x)", "(holding ?x)", "(clear ?y)"]));
        assert_eq!(m.action.equality_constraints().count(), 1);
    }

    #[test]
    fn non_chaining_pairs() {
        let d = blocks();
        for p in [
            LiftedPair::new("stack", "stack", vec![0, 1], vec![2, 3]),
            LiftedPair::new("pick-up", "pick-up", vec![0], vec![1]),
            LiftedPair::new("put-down", "put-down", vec![0], vec![1]),
            LiftedPair::new("unstack", "pick-up", vec![0, 1], vec![1]),
        ] {
            assert!(!chain_filter(&d, &p).unwrap(), "{p}");
            assert!(matches!(compose(&d, &p), Err(MacroError::ChainingViolation { .. })));
        }
        let missing = LiftedPair::new("fly", "stack", vec![0], vec![0, 1]);
        assert_eq!(chain_filter(&d, &missing), Err(MacroError::UnknownSchema("fly".into())));
    }

    #[test]
    fn augment_zero_is_identity() {
        let d = blocks();
        let ms = rank_macros(&d, &[LiftedPair::new("pick-up", "stack", vec![0], vec![0, 1])]);
        assert_eq!(augment_domain(&d, &ms, 0), d);
        let a = augment_domain(&d, &ms, 5);
        assert_eq!(a.actions.len(), 5);
        assert!(a.requirements.contains("equality"));
        assert!(crate::pddl::validate_domain(&a).is_empty());
    }

    #[test]
    fn type_conflict() {
        let d = parse_domain(
            "(define (domain t) (:requirements :strips :typing) (:types a b)
               (:predicates (p ?x - a) (q ?x - b))
               (:action f :parameters (?x - a) :precondition (p ?x) :effect (q ?x))
               (:action g :parameters (?y - b) :precondition (q ?y) :effect (not (q ?y))))",
        )
        .unwrap();
        let e = compose(&d, &LiftedPair::new("f", "g", vec![0], vec![0])).unwrap_err();
        assert!(matches!(e, MacroError::TypeConflict { .. }), "{e}");
    }
}
