use std::collections::BTreeSet;

use thiserror::Error;

use super::ast::*;
use super::sexpr::{self, Pos, Sexp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PddlError {
    #[error("syntax error at {pos}: expected {expected}, found {found}")]
    Syntax { pos: Pos, expected: String, found: String },
    #[error("unsupported construct `{construct}` at {pos}")]
    Unsupported { construct: String, pos: Pos },
    #[error("{pos}: `{predicate}` takes {expected} argument(s) but {found} were given")]
    ArityMismatch { predicate: String, expected: usize, found: usize, pos: Pos },
    #[error("{pos}: unknown predicate `{name}`")]
    UnknownPredicate { name: String, pos: Pos },
    #[error("{pos}: unknown type `{name}`")]
    UnknownType { name: String, pos: Pos },
    #[error("{pos}: unknown object `{name}`")]
    UnknownObject { name: String, pos: Pos },
    #[error("{pos}: duplicate {what} `{name}`")]
    Duplicate { what: &'static str, name: String, pos: Pos },
    #[error("problem is for domain `{found}` but domain `{expected}` was supplied")]
    DomainMismatch { expected: String, found: String },
}

impl PddlError {
    /// Source position of the diagnostic, when it has one.
    pub fn pos(&self) -> Option<Pos> {
        match self {
            PddlError::Syntax { pos, .. }
            | PddlError::Unsupported { pos, .. }
            | PddlError::ArityMismatch { pos, .. }
            | PddlError::UnknownPredicate { pos, .. }
            | PddlError::UnknownType { pos, .. }
            | PddlError::UnknownObject { pos, .. }
            | PddlError::Duplicate { pos, .. } => Some(*pos),
            PddlError::DomainMismatch { .. } => None,
        }
    }
}

impl From<sexpr::ReadError> for PddlError {
    fn from(e: sexpr::ReadError) -> Self {
        PddlError::Syntax { pos: e.pos, expected: e.expected, found: e.found }
    }
}

type Result<T> = std::result::Result<T, PddlError>;

fn syntax(at: &Sexp, expected: impl Into<String>) -> PddlError {
    PddlError::Syntax { pos: at.pos(), expected: expected.into(), found: at.describe() }
}

fn unsupported(at: &Sexp, construct: impl Into<String>) -> PddlError {
    PddlError::Unsupported { construct: construct.into(), pos: at.pos() }
}

fn list<'a>(e: &'a Sexp, expected: &str) -> Result<&'a [Sexp]> {
    e.as_list().ok_or_else(|| syntax(e, expected))
}

fn symbol(e: &Sexp, expected: &str) -> Result<String> {
    match e.as_atom() {
        Some(s) if !s.starts_with('?') && !s.starts_with(':') => Ok(s.to_ascii_lowercase()),
        _ => Err(syntax(e, expected)),
    }
}

/// Checks `items[0]` is the keyword `kw` (case-insensitive).
fn expect_keyword(items: &[Sexp], at: &Sexp, kw: &str) -> Result<()> {
    match items.first().and_then(Sexp::as_atom) {
        Some(s) if s.eq_ignore_ascii_case(kw) => Ok(()),
        Some(_) => Err(syntax(&items[0], format!("`{kw}`"))),
        None => Err(syntax(at, format!("`({kw} ...)`"))),
    }
}

/// `(define (<kind> NAME) sections...)` → (name, sections).
fn header<'a>(root: &'a Sexp, kind: &str) -> Result<(String, &'a [Sexp])> {
    let items = list(root, "`(define ...)`")?;
    expect_keyword(items, root, "define")?;
    let head = items.get(1).ok_or_else(|| syntax(root, format!("`({kind} NAME)`")))?;
    let head_items = list(head, &format!("`({kind} NAME)`"))?;
    expect_keyword(head_items, head, kind)?;
    if head_items.len() != 2 {
        return Err(syntax(head, format!("`({kind} NAME)`")));
    }
    let name = symbol(&head_items[1], &format!("{kind} name"))?;
    Ok((name, &items[2..]))
}

/// Parses a PDDL typed list such as `a b - t1 c - t2 d`. Untyped trailing
/// names default to `object`.
fn typed_list(items: &[Sexp], variables: bool) -> Result<Vec<(TypedName, Pos)>> {
    let what = if variables { "variable" } else { "name" };
    let mut out = Vec::new();
    let mut pending: Vec<(String, Pos)> = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let it = &items[i];
        match it.as_atom() {
            Some("-") => {
                let ty_expr = items.get(i + 1).ok_or_else(|| syntax(it, "type name after `-`"))?;
                if ty_expr.head().as_deref() == Some("either") {
                    return Err(unsupported(ty_expr, "either"));
                }
                let ty = symbol(ty_expr, "type name")?;
                if pending.is_empty() {
                    return Err(syntax(it, format!("{what} before `-`")));
                }
                out.extend(pending.drain(..).map(|(n, p)| (TypedName::new(n, ty.clone()), p)));
                i += 2;
            }
            Some(s) => {
                let name = if variables {
                    match s.strip_prefix('?') {
                        Some(v) if !v.is_empty() => v.to_ascii_lowercase(),
                        _ => return Err(syntax(it, "variable `?name`")),
                    }
                } else {
                    symbol(it, what)?
                };
                pending.push((name, it.pos()));
                i += 1;
            }
            None => return Err(syntax(it, what)),
        }
    }
    out.extend(pending.into_iter().map(|(n, p)| (TypedName::new(n, OBJECT), p)));
    Ok(out)
}

fn term(e: &Sexp) -> Result<Term> {
    match e.as_atom() {
        Some(s) if s.starts_with('?') && s.len() > 1 => Ok(Term::parse(s)),
        Some(s) if !s.starts_with('?') && !s.starts_with(':') && s != "-" => Ok(Term::parse(s)),
        Some(_) => Err(syntax(e, "term")),
        None => Err(unsupported(e, "function term")),
    }
}

fn atom(e: &Sexp) -> Result<Atom> {
    let items = list(e, "atomic formula")?;
    let head = items.first().ok_or_else(|| syntax(e, "predicate name"))?;
    let predicate = match head.as_atom() {
        Some("=") => "=".to_string(),
        _ => symbol(head, "predicate name")?,
    };
    let args = items[1..].iter().map(term).collect::<Result<Vec<_>>>()?;
    if predicate == "=" && args.len() != 2 {
        return Err(PddlError::ArityMismatch { predicate, expected: 2, found: args.len(), pos: e.pos() });
    }
    Ok(Atom { predicate, args })
}

const QUANTIFIERS: &[&str] = &["forall", "exists", "imply"];
const COMPARISONS: &[&str] = &["<", ">", "<=", ">="];
const NUMERIC_EFFECTS: &[&str] = &["increase", "decrease", "assign", "scale-up", "scale-down"];

/// Goal description, flattened into a conjunction of literals.
fn goal_description(e: &Sexp, out: &mut Vec<(Literal, Pos)>) -> Result<()> {
    let items = list(e, "goal description")?;
    let Some(head) = e.head() else {
        if items.is_empty() {
            return Ok(());
        }
        return Err(syntax(e, "goal description"));
    };
    match head.as_str() {
        "and" => items[1..].iter().try_for_each(|g| goal_description(g, out)),
        "or" if items.len() == 2 => goal_description(&items[1], out),
        "or" => Err(unsupported(e, "or")),
        "not" => {
            if items.len() != 2 {
                return Err(syntax(e, "`(not <atom>)`"));
            }
            let inner = &items[1];
            match inner.head().as_deref() {
                Some(h) if ["and", "or", "not"].contains(&h) || QUANTIFIERS.contains(&h) => {
                    Err(unsupported(inner, format!("not over {h}")))
                }
                Some(h) if COMPARISONS.contains(&h) => Err(unsupported(inner, "numeric comparison")),
                _ => {
                    out.push((Literal::neg(atom(inner)?), inner.pos()));
                    Ok(())
                }
            }
        }
        h if QUANTIFIERS.contains(&h) => Err(unsupported(e, h)),
        h if COMPARISONS.contains(&h) => Err(unsupported(e, "numeric comparison")),
        "=" if items[1..].iter().any(|a| a.as_list().is_some()) => Err(unsupported(e, "numeric comparison")),
        _ => {
            out.push((Literal::pos(atom(e)?), e.pos()));
            Ok(())
        }
    }
}

fn effect(e: &Sexp, add: &mut Vec<(Atom, Pos)>, del: &mut Vec<(Atom, Pos)>) -> Result<()> {
    let items = list(e, "effect")?;
    let Some(head) = e.head() else {
        if items.is_empty() {
            return Ok(());
        }
        return Err(syntax(e, "effect"));
    };
    match head.as_str() {
        "and" => items[1..].iter().try_for_each(|x| effect(x, add, del)),
        "not" => {
            if items.len() != 2 {
                return Err(syntax(e, "`(not <atom>)`"));
            }
            let inner = &items[1];
            let a = atom(inner)?;
            if a.is_equality() {
                return Err(unsupported(inner, "equality in effect"));
            }
            del.push((a, inner.pos()));
            Ok(())
        }
        "when" => Err(unsupported(e, "conditional effect (when)")),
        "forall" => Err(unsupported(e, "universal effect (forall)")),
        h if NUMERIC_EFFECTS.contains(&h) => Err(unsupported(e, format!("numeric fluent effect ({h})"))),
        "=" => Err(unsupported(e, "equality in effect")),
        _ => {
            add.push((atom(e)?, e.pos()));
            Ok(())
        }
    }
}

fn requirements(items: &[Sexp]) -> Result<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    for r in items {
        match r.as_atom().and_then(|s| s.strip_prefix(':')) {
            Some(k) if !k.is_empty() => {
                out.insert(k.to_ascii_lowercase());
            }
            _ => return Err(syntax(r, "requirement keyword `:name`")),
        }
    }
    Ok(out)
}

fn action(section: &Sexp, items: &[Sexp]) -> Result<ActionSchema> {
    let name = symbol(items.get(1).ok_or_else(|| syntax(section, "action name"))?, "action name")?;
    let mut params = Vec::new();
    let mut pre = Vec::new();
    let mut add = Vec::new();
    let mut del = Vec::new();
    let mut rest = &items[2..];
    while let Some(kw) = rest.first() {
        let key = kw.as_atom().map(str::to_ascii_lowercase);
        let value = rest.get(1).ok_or_else(|| syntax(kw, "value after keyword"))?;
        match key.as_deref() {
            Some(":parameters") => {
                params = typed_list(list(value, "parameter list")?, true)?.into_iter().map(|(t, _)| t).collect();
            }
            Some(":precondition") => goal_description(value, &mut pre)?,
            Some(":effect") => effect(value, &mut add, &mut del)?,
            Some(":duration") => return Err(unsupported(kw, "durative action")),
            _ => return Err(syntax(kw, "`:parameters`, `:precondition` or `:effect`")),
        }
        rest = &rest[2..];
    }
    let mut a = ActionSchema {
        name,
        params,
        precondition: pre.into_iter().map(|(l, _)| l).collect(),
        add: add.into_iter().map(|(a, _)| a).collect(),
        del: del.into_iter().map(|(a, _)| a).collect(),
    };
    a.normalize();
    Ok(a)
}

/// Parses a domain definition.
///
/// Structural problems (unknown predicates, unbound variables, undeclared
/// types) are left to [`super::validate_domain`]; this only rejects text
/// that is not PDDL or uses constructs outside the STRIPS subset.
pub fn parse_domain(text: &str) -> Result<DomainDef> {
    let root = sexpr::read_one(text)?;
    let (name, sections) = header(&root, "domain")?;
    let mut d = DomainDef {
        name,
        requirements: BTreeSet::new(),
        types: Vec::new(),
        constants: Vec::new(),
        predicates: Vec::new(),
        actions: Vec::new(),
    };
    for section in sections {
        let items = list(section, "domain section")?;
        let key = items.first().and_then(Sexp::as_atom).map(str::to_ascii_lowercase);
        match key.as_deref() {
            Some(":requirements") => d.requirements.extend(requirements(&items[1..])?),
            Some(":types") => {
                for (t, _) in typed_list(&items[1..], false)? {
                    let parent = if t.ty == OBJECT { None } else { Some(t.ty) };
                    d.types.push(TypeName { name: t.name, parent });
                }
            }
            Some(":constants") => d.constants.extend(typed_list(&items[1..], false)?.into_iter().map(|(t, _)| t)),
            Some(":predicates") => {
                for p in &items[1..] {
                    let pitems = list(p, "predicate declaration")?;
                    let head = pitems.first().ok_or_else(|| syntax(p, "predicate name"))?;
                    let pname = symbol(head, "predicate name")?;
                    let params = typed_list(&pitems[1..], true)?.into_iter().map(|(t, _)| t).collect();
                    d.predicates.push(PredicateSchema { name: pname, params });
                }
            }
            Some(":action") => d.actions.push(action(section, items)?),
            Some(k @ (":functions" | ":durative-action" | ":derived" | ":constraints")) => {
                return Err(unsupported(section, k.trim_start_matches(':')));
            }
            _ => return Err(syntax(section, "`:requirements`, `:types`, `:constants`, `:predicates` or `:action`")),
        }
    }
    Ok(d)
}

struct ProblemScope<'a> {
    domain: &'a DomainDef,
    objects: &'a [TypedName],
}

impl ProblemScope<'_> {
    fn check_ground(&self, a: &Atom, pos: Pos) -> Result<()> {
        let schema =
            self.domain.predicate(&a.predicate).ok_or_else(|| PddlError::UnknownPredicate { name: a.predicate.clone(), pos })?;
        if schema.arity() != a.args.len() {
            return Err(PddlError::ArityMismatch {
                predicate: a.predicate.clone(),
                expected: schema.arity(),
                found: a.args.len(),
                pos,
            });
        }
        for t in &a.args {
            match t {
                Term::Var(v) => {
                    return Err(PddlError::Syntax { pos, expected: "ground atom".into(), found: format!("variable `?{v}`") })
                }
                Term::Const(c) => {
                    let known = self.objects.iter().any(|o| &o.name == c) || self.domain.constant_type(c).is_some();
                    if !known {
                        return Err(PddlError::UnknownObject { name: c.clone(), pos });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Parses a problem against an already parsed domain, checking objects,
/// predicates and arities.
pub fn parse_problem(text: &str, domain: &DomainDef) -> Result<ProblemDef> {
    let root = sexpr::read_one(text)?;
    let (name, sections) = header(&root, "problem")?;
    let mut domain_name = None;
    let mut objects: Vec<TypedName> = Vec::new();
    let mut init: Vec<(Atom, Pos)> = Vec::new();
    let mut goal: Vec<(Literal, Pos)> = Vec::new();
    for section in sections {
        let items = list(section, "problem section")?;
        let key = items.first().and_then(Sexp::as_atom).map(str::to_ascii_lowercase);
        match key.as_deref() {
            Some(":domain") => {
                if items.len() != 2 {
                    return Err(syntax(section, "`(:domain NAME)`"));
                }
                domain_name = Some(symbol(&items[1], "domain name")?);
            }
            Some(":requirements") => {
                requirements(&items[1..])?;
            }
            Some(":objects") => {
                for (o, pos) in typed_list(&items[1..], false)? {
                    if !domain.has_type(&o.ty) {
                        return Err(PddlError::UnknownType { name: o.ty, pos });
                    }
                    if objects.iter().any(|x| x.name == o.name) {
                        return Err(PddlError::Duplicate { what: "object", name: o.name, pos });
                    }
                    objects.push(o);
                }
            }
            Some(":init") => {
                for fact in &items[1..] {
                    match fact.head().as_deref() {
                        Some("not") => return Err(unsupported(fact, "negative initial literal")),
                        Some("=") => return Err(unsupported(fact, "numeric fluent initialization")),
                        Some("at")
                            if fact.as_list().is_some_and(|l| {
                                l.get(1).is_some_and(|x| x.as_atom().is_some_and(|n| n.parse::<f64>().is_ok()))
                            }) =>
                        {
                            return Err(unsupported(fact, "timed initial literal"))
                        }
                        _ => init.push((atom(fact)?, fact.pos())),
                    }
                }
            }
            Some(":goal") => {
                if items.len() != 2 {
                    return Err(syntax(section, "`(:goal <goal description>)`"));
                }
                goal_description(&items[1], &mut goal)?;
            }
            Some(k @ (":metric" | ":constraints")) => return Err(unsupported(section, k.trim_start_matches(':'))),
            _ => return Err(syntax(section, "`:domain`, `:objects`, `:init` or `:goal`")),
        }
    }
    let domain_name = domain_name.ok_or_else(|| syntax(&root, "`(:domain NAME)` section"))?;
    if domain_name != domain.name {
        return Err(PddlError::DomainMismatch { expected: domain.name.clone(), found: domain_name });
    }
    let scope = ProblemScope { domain, objects: &objects };
    for (a, pos) in &init {
        scope.check_ground(a, *pos)?;
    }
    for (l, pos) in &goal {
        if l.atom.is_equality() {
            return Err(PddlError::Unsupported { construct: "equality in goal".into(), pos: *pos });
        }
        scope.check_ground(&l.atom, *pos)?;
    }
    let mut init: Vec<Atom> = init.into_iter().map(|(a, _)| a).collect();
    let mut goal: Vec<Literal> = goal.into_iter().map(|(l, _)| l).collect();
    dedup_in_order(&mut init);
    dedup_in_order(&mut goal);
    Ok(ProblemDef { name, domain_name, objects, init, goal })
}
