//! Grounding, state transitions and plan validation.
//!
//! Ground atoms are interned into an [`AtomTable`] so states are compact
//! bitsets and atom equality is an integer compare.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pddl::{self, ActionSchema, Atom, DomainDef, ProblemDef, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StripsError {
    #[error("problem `{problem}` does not match domain `{domain}`: {reason}")]
    DomainProblemMismatch { domain: String, problem: String, reason: String },
    #[error("{action} is not applicable: {literal} does not hold")]
    NotApplicable { action: String, literal: String },
    #[error("line {line}: {message}")]
    PlanSyntax { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroundAtom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl GroundAtom {
    pub fn new(predicate: impl Into<String>, args: &[&str]) -> Self {
        GroundAtom { predicate: predicate.into(), args: args.iter().map(|s| s.to_string()).collect() }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.predicate)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        f.write_str(")")
    }
}

/// Parses the canonical `(pred a b)` text form.
impl FromStr for GroundAtom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("`{s}` is not a parenthesized atom"))?;
        let mut parts = inner.split_whitespace().map(str::to_ascii_lowercase);
        let predicate = parts.next().ok_or_else(|| format!("`{s}` has no predicate"))?;
        let args: Vec<String> = parts.collect();
        if args.iter().any(|a| a.starts_with('?') || a.contains('(') || a.contains(')')) {
            return Err(format!("`{s}` is not ground"));
        }
        Ok(GroundAtom { predicate, args })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomId(pub u32);

#[derive(Clone, Debug, Default)]
pub struct AtomTable {
    atoms: Vec<GroundAtom>,
    index: HashMap<GroundAtom, AtomId>,
}

impl AtomTable {
    pub fn intern(&mut self, atom: GroundAtom) -> AtomId {
        if let Some(&id) = self.index.get(&atom) {
            return id;
        }
        let id = AtomId(self.atoms.len() as u32);
        self.atoms.push(atom.clone());
        self.index.insert(atom, id);
        id
    }

    pub fn get(&self, atom: &GroundAtom) -> Option<AtomId> {
        self.index.get(atom).copied()
    }

    pub fn atom(&self, id: AtomId) -> &GroundAtom {
        &self.atoms[id.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// A set of ground atoms over a fixed [`AtomTable`], stored as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    words: Box<[u64]>,
}

impl State {
    pub fn empty(capacity: usize) -> Self {
        State { words: vec![0; capacity.div_ceil(64)].into_boxed_slice() }
    }

    pub fn from_ids(capacity: usize, ids: impl IntoIterator<Item = AtomId>) -> Self {
        let mut s = State::empty(capacity);
        for id in ids {
            s.insert(id);
        }
        s
    }

    #[inline]
    pub fn contains(&self, id: AtomId) -> bool {
        let i = id.0 as usize;
        self.words.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    #[inline]
    pub fn insert(&mut self, id: AtomId) {
        let i = id.0 as usize;
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, id: AtomId) {
        let i = id.0 as usize;
        if let Some(w) = self.words.get_mut(i / 64) {
            *w &= !(1 << (i % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| (0..64).filter(move |b| w & (1 << b) != 0).map(move |b| AtomId((wi * 64 + b) as u32)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundAction {
    pub schema: String,
    /// Objects bound to the schema parameters, in parameter order.
    pub args: Vec<String>,
    pub pre_pos: Vec<AtomId>,
    pub pre_neg: Vec<AtomId>,
    pub add: Vec<AtomId>,
    pub del: Vec<AtomId>,
    pub cost: u64,
}

impl GroundAction {
    pub fn step(&self) -> PlanStep {
        PlanStep { action: self.schema.clone(), args: self.args.clone() }
    }
}

impl fmt::Display for GroundAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.step().fmt(f)
    }
}

/// `pre⁺ ⊆ s` and `pre⁻ ∩ s = ∅` (closed world).
#[inline]
pub fn applicable(s: &State, a: &GroundAction) -> bool {
    a.pre_pos.iter().all(|&p| s.contains(p)) && !a.pre_neg.iter().any(|&p| s.contains(p))
}

/// `(s \ del) ∪ add`, without checking applicability.
#[inline]
pub fn successor(s: &State, a: &GroundAction) -> State {
    let mut next = s.clone();
    for &d in &a.del {
        next.remove(d);
    }
    for &x in &a.add {
        next.insert(x);
    }
    next
}

/// A grounded planning task: atoms, every ground action, initial state and goal.
#[derive(Clone, Debug)]
pub struct Grounding {
    pub atoms: AtomTable,
    pub actions: Vec<GroundAction>,
    pub init: State,
    pub goal_pos: Vec<AtomId>,
    pub goal_neg: Vec<AtomId>,
    lookup: HashMap<PlanStep, usize>,
}

fn mismatch(d: &DomainDef, p: &ProblemDef, reason: impl Into<String>) -> StripsError {
    StripsError::DomainProblemMismatch { domain: d.name.clone(), problem: p.name.clone(), reason: reason.into() }
}

fn instantiate(atom: &Atom, binding: &HashMap<&str, &str>) -> Option<GroundAtom> {
    let args = atom
        .args
        .iter()
        .map(|t| match t {
            Term::Var(v) => binding.get(v.as_str()).map(|o| o.to_string()),
            Term::Const(c) => Some(c.clone()),
        })
        .collect::<Option<Vec<_>>>()?;
    Some(GroundAtom { predicate: atom.predicate.clone(), args })
}

fn sorted_unique(mut ids: Vec<AtomId>) -> Vec<AtomId> {
    ids.sort_unstable();
    ids.dedup();
    ids
}

impl Grounding {
    /// Every type-consistent instantiation of every schema over the problem
    /// objects and domain constants, in schema order then lexicographic
    /// binding order. Equality literals are resolved here; nothing else is
    /// pruned.
    pub fn new(d: &DomainDef, p: &ProblemDef) -> Result<Self, StripsError> {
        if p.domain_name != d.name {
            return Err(mismatch(d, p, format!("problem declares domain `{}`", p.domain_name)));
        }
        let mut universe: Vec<(&str, &str)> = Vec::new();
        for o in d.constants.iter().chain(&p.objects) {
            if !d.has_type(&o.ty) {
                return Err(mismatch(d, p, format!("object `{}` has undeclared type `{}`", o.name, o.ty)));
            }
            if !universe.iter().any(|(n, _)| *n == o.name) {
                universe.push((&o.name, &o.ty));
            }
        }
        universe.sort();

        let mut atoms = AtomTable::default();
        let mut init_ids = Vec::new();
        for a in &p.init {
            let g = instantiate(a, &HashMap::new()).ok_or_else(|| mismatch(d, p, format!("{a} is not ground")))?;
            init_ids.push(atoms.intern(g));
        }
        let mut goal_pos = Vec::new();
        let mut goal_neg = Vec::new();
        for l in &p.goal {
            let g = instantiate(&l.atom, &HashMap::new()).ok_or_else(|| mismatch(d, p, format!("{} is not ground", l.atom)))?;
            let id = atoms.intern(g);
            if l.positive {
                goal_pos.push(id)
            } else {
                goal_neg.push(id)
            }
        }

        let mut actions = Vec::new();
        for schema in &d.actions {
            ground_schema(d, schema, &universe, &mut atoms, &mut actions);
        }
        let init = State::from_ids(atoms.len(), init_ids);
        let lookup = actions.iter().enumerate().map(|(i, a)| (a.step(), i)).collect();
        Ok(Grounding { atoms, actions, init, goal_pos: sorted_unique(goal_pos), goal_neg: sorted_unique(goal_neg), lookup })
    }

    pub fn is_goal(&self, s: &State) -> bool {
        self.goal_pos.iter().all(|&g| s.contains(g)) && !self.goal_neg.iter().any(|&g| s.contains(g))
    }

    /// Number of goal literals not satisfied in `s`.
    pub fn unsatisfied_goals(&self, s: &State) -> usize {
        self.goal_pos.iter().filter(|&&g| !s.contains(g)).count() + self.goal_neg.iter().filter(|&&g| s.contains(g)).count()
    }

    pub fn find(&self, step: &PlanStep) -> Option<&GroundAction> {
        self.lookup.get(step).map(|&i| &self.actions[i])
    }

    /// First precondition literal of `a` violated in `s`, as text.
    pub fn violated_precondition(&self, s: &State, a: &GroundAction) -> Option<String> {
        if let Some(&p) = a.pre_pos.iter().find(|&&p| !s.contains(p)) {
            return Some(self.atoms.atom(p).to_string());
        }
        a.pre_neg.iter().find(|&&p| s.contains(p)).map(|&p| format!("(not {})", self.atoms.atom(p)))
    }

    pub fn apply(&self, s: &State, a: &GroundAction) -> Result<State, StripsError> {
        match self.violated_precondition(s, a) {
            Some(literal) => Err(StripsError::NotApplicable { action: a.to_string(), literal }),
            None => Ok(successor(s, a)),
        }
    }

    pub fn state_atoms(&self, s: &State) -> Vec<GroundAtom> {
        let mut v: Vec<GroundAtom> = s.iter().map(|id| self.atoms.atom(id).clone()).collect();
        v.sort();
        v
    }

    /// Builds a state over this table from atoms; atoms unknown to the table
    /// cannot matter to any action or goal and are dropped.
    pub fn state_from_atoms<'a>(&self, atoms: impl IntoIterator<Item = &'a GroundAtom>) -> State {
        State::from_ids(self.atoms.len(), atoms.into_iter().filter_map(|a| self.atoms.get(a)))
    }
}

fn ground_schema(
    d: &DomainDef,
    schema: &ActionSchema,
    universe: &[(&str, &str)],
    atoms: &mut AtomTable,
    out: &mut Vec<GroundAction>,
) {
    let candidates: Vec<Vec<&str>> = schema
        .params
        .iter()
        .map(|prm| universe.iter().filter(|(_, ty)| d.is_subtype(ty, &prm.ty)).map(|(n, _)| *n).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0usize; candidates.len()];
    loop {
        let binding: HashMap<&str, &str> =
            schema.params.iter().zip(&idx).zip(&candidates).map(|((p, &i), c)| (p.name.as_str(), c[i])).collect();
        if let Some(action) = ground_binding(schema, &binding, atoms) {
            out.push(action);
        }
        // Odometer increment, last parameter fastest.
        let mut k = idx.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < candidates[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn ground_binding(schema: &ActionSchema, binding: &HashMap<&str, &str>, atoms: &mut AtomTable) -> Option<GroundAction> {
    let mut pre_pos = Vec::new();
    let mut pre_neg = Vec::new();
    for lit in &schema.precondition {
        let g = instantiate(&lit.atom, binding)?;
        if lit.atom.is_equality() {
            if (g.args[0] == g.args[1]) != lit.positive {
                return None;
            }
            continue;
        }
        let id = atoms.intern(g);
        if lit.positive {
            pre_pos.push(id)
        } else {
            pre_neg.push(id)
        }
    }
    let add = sorted_unique(schema.add.iter().map(|a| instantiate(a, binding).map(|g| atoms.intern(g))).collect::<Option<_>>()?);
    let mut del =
        sorted_unique(schema.del.iter().map(|a| instantiate(a, binding).map(|g| atoms.intern(g))).collect::<Option<_>>()?);
    del.retain(|x| !add.contains(x));
    let args = schema.params.iter().map(|p| binding[p.name.as_str()].to_string()).collect();
    Some(GroundAction {
        schema: schema.name.clone(),
        args,
        pre_pos: sorted_unique(pre_pos),
        pre_neg: sorted_unique(pre_neg),
        add,
        del,
        cost: 1,
    })
}

/// Convenience wrapper returning only the ground actions.
pub fn ground(d: &DomainDef, p: &ProblemDef) -> Result<Vec<GroundAction>, StripsError> {
    Grounding::new(d, p).map(|g| g.actions)
}

/// One plan step, `(name obj1 obj2 ...)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlanStep {
    pub action: String,
    pub args: Vec<String>,
}

impl fmt::Display for PlanStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.action)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for PlanStep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let atom: GroundAtom = s.parse()?;
        Ok(PlanStep { action: atom.predicate, args: atom.args })
    }
}

/// A sequential plan. Every step costs 1, so `cost` is the step count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plan {
    pub steps: Vec<PlanStep>,
    pub cost: u64,
}

impl Plan {
    pub fn new(steps: Vec<PlanStep>) -> Self {
        let cost = steps.len() as u64;
        Plan { steps, cost }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Reads the IPC solution-file format: one `(action args...)` per line,
    /// blank lines and `;` comments ignored.
    pub fn parse(text: &str) -> Result<Plan, StripsError> {
        let mut steps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split(';').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let step = line.parse().map_err(|message| StripsError::PlanSyntax { line: i + 1, message })?;
            steps.push(step);
        }
        Ok(Plan::new(steps))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out.push_str(&format!("; cost = {} (unit cost)\n", self.cost));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PlanFailure {
    Mismatch {
        reason: String,
    },
    /// `step` is 1-based.
    UnknownAction {
        step: usize,
        action: String,
    },
    InvalidStep {
        step: usize,
        detail: String,
    },
    NotApplicable {
        step: usize,
        literal: String,
    },
    GoalNotSatisfied {
        literal: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub cost: u64,
    pub failure: Option<PlanFailure>,
}

impl ValidationReport {
    fn fail(failure: PlanFailure) -> Self {
        ValidationReport { valid: false, cost: 0, failure: Some(failure) }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "valid plan, cost {}", self.cost),
            Some(PlanFailure::Mismatch { reason }) => write!(f, "invalid: {reason}"),
            Some(PlanFailure::UnknownAction { step, action }) => write!(f, "invalid at step {step}: unknown action `{action}`"),
            Some(PlanFailure::InvalidStep { step, detail }) => write!(f, "invalid at step {step}: {detail}"),
            Some(PlanFailure::NotApplicable { step, literal }) => {
                write!(f, "invalid at step {step}: precondition {literal} does not hold")
            }
            Some(PlanFailure::GoalNotSatisfied { literal }) => write!(f, "invalid: goal {literal} not satisfied"),
        }
    }
}

/// Simulates the plan from the initial state and checks the goal.
pub fn validate_plan(d: &DomainDef, p: &ProblemDef, plan: &Plan) -> ValidationReport {
    let task = match Grounding::new(d, p) {
        Ok(t) => t,
        Err(e) => return ValidationReport::fail(PlanFailure::Mismatch { reason: e.to_string() }),
    };
    validate_plan_grounded(d, &task, plan)
}

pub fn validate_plan_grounded(d: &DomainDef, task: &Grounding, plan: &Plan) -> ValidationReport {
    let mut state = task.init.clone();
    let mut cost = 0;
    for (i, step) in plan.steps.iter().enumerate() {
        let n = i + 1;
        let Some(schema) = d.action(&step.action) else {
            return ValidationReport::fail(PlanFailure::UnknownAction { step: n, action: step.action.clone() });
        };
        let Some(action) = task.find(step) else {
            let detail = if schema.params.len() != step.args.len() {
                format!("`{}` takes {} argument(s), got {}", schema.name, schema.params.len(), step.args.len())
            } else {
                format!("{step} violates a parameter type or equality constraint")
            };
            return ValidationReport::fail(PlanFailure::InvalidStep { step: n, detail });
        };
        if let Some(literal) = task.violated_precondition(&state, action) {
            return ValidationReport::fail(PlanFailure::NotApplicable { step: n, literal });
        }
        state = successor(&state, action);
        cost += action.cost;
    }
    if let Some(&g) = task.goal_pos.iter().find(|&&g| !state.contains(g)) {
        return ValidationReport::fail(PlanFailure::GoalNotSatisfied { literal: task.atoms.atom(g).to_string() });
    }
    if let Some(&g) = task.goal_neg.iter().find(|&&g| state.contains(g)) {
        return ValidationReport::fail(PlanFailure::GoalNotSatisfied { literal: format!("(not {})", task.atoms.atom(g)) });
    }
    ValidationReport { valid: true, cost, failure: None }
}

/// Ground atom for a PDDL atom that must already be ground.
pub fn ground_atom(a: &pddl::Atom) -> Option<GroundAtom> {
    instantiate(a, &HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pddl::{parse_domain, parse_problem};

    fn tiny() -> (DomainDef, ProblemDef) {
        let d = parse_domain(
            "(define (domain d) (:requirements :strips :equality :negative-preconditions)
               (:predicates (p ?x) (q ?x ?y) (r))
               (:action noop :parameters () :precondition (and) :effect (and))
               (:action link :parameters (?x ?y) :precondition (and (p ?x) (not (= ?x ?y)) (not (r))) :effect (and (q ?x ?y) (r))))",
        )
        .unwrap();
        let p =
            parse_problem("(define (problem t) (:domain d) (:objects a b c) (:init (p a)) (:goal (and (q a c))))", &d).unwrap();
        (d, p)
    }

    #[test]
    fn equality_is_pruned_statically() {
        let (d, p) = tiny();
        let g = Grounding::new(&d, &p).unwrap();
        // noop + 3*3 bindings minus the 3 diagonal ones.
        assert_eq!(g.actions.len(), 1 + 6);
        assert_eq!(g.actions[0].schema, "noop");
        assert_eq!(g.actions[1].args, vec!["a", "b"]);
    }

    #[test]
    fn zero_parameter_action_grounds_once() {
        let d = parse_domain("(define (domain d) (:predicates (p)) (:action a :effect (p)))").unwrap();
        let p = parse_problem("(define (problem t) (:domain d) (:objects x y) (:init) (:goal (p)))", &d).unwrap();
        assert_eq!(ground(&d, &p).unwrap().len(), 1);
    }

    #[test]
    fn negative_precondition_blocks() {
        let (d, p) = tiny();
        let g = Grounding::new(&d, &p).unwrap();
        let ab = g.find(&"(link a b)".parse().unwrap()).unwrap().clone();
        let s1 = g.apply(&g.init, &ab).unwrap();
        let ac = g.find(&"(link a c)".parse().unwrap()).unwrap();
        let err = g.apply(&s1, ac).unwrap_err();
        assert_eq!(err, StripsError::NotApplicable { action: "(link a c)".into(), literal: "(not (r))".into() });
    }

    #[test]
    fn identity_effect_keeps_state() {
        let (d, p) = tiny();
        let g = Grounding::new(&d, &p).unwrap();
        assert_eq!(g.apply(&g.init, &g.actions[0]).unwrap(), g.init);
    }

    #[test]
    fn empty_state_rejects_actions_with_preconditions() {
        let (d, p) = tiny();
        let g = Grounding::new(&d, &p).unwrap();
        let empty = State::empty(g.atoms.len());
        assert!(g.actions.iter().filter(|a| !a.pre_pos.is_empty()).all(|a| !applicable(&empty, a)));
    }

    #[test]
    fn mismatched_problem() {
        let (d, _) = tiny();
        let other = parse_domain("(define (domain e) (:predicates (p ?x)))").unwrap();
        let p = parse_problem("(define (problem t) (:domain e) (:objects a) (:init) (:goal (and)))", &other).unwrap();
        assert!(matches!(Grounding::new(&d, &p), Err(StripsError::DomainProblemMismatch { .. })));
    }

    #[test]
    fn plan_text_round_trip_and_comments() {
        let plan = Plan::parse("; header\n(UNSTACK b2 b1)\n\n(stack b2 b3) ; inline\n").unwrap();
        assert_eq!(plan.cost, 2);
        assert_eq!(plan.steps[0], PlanStep { action: "unstack".into(), args: vec!["b2".into(), "b1".into()] });
        assert_eq!(Plan::parse(&plan.to_text()).unwrap(), plan);
        assert!(matches!(Plan::parse("(a\n"), Err(StripsError::PlanSyntax { line: 1, .. })));
    }

    #[test]
    fn bitset_state_basics() {
        let mut s = State::empty(130);
        s.insert(AtomId(0));
        s.insert(AtomId(129));
        s.insert(AtomId(129));
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![AtomId(0), AtomId(129)]);
        s.remove(AtomId(0));
        assert!(!s.contains(AtomId(0)));
    }
}
