//! Deterministic IRI minting. Names are lowercased and scoped by domain so
//! two domains can both define `move`.

use crate::kg::Iri;

/// Lowercases and replaces anything outside `[a-z0-9_-]` with `_`.
pub fn slug(name: &str) -> String {
    name.trim_start_matches('?')
        .to_lowercase()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

fn mint(parts: &[&str]) -> Iri {
    let slugs: Vec<String> = parts.iter().map(|p| slug(p)).collect();
    Iri::plan(&slugs.join("-"))
}

pub fn domain(d: &str) -> Iri {
    mint(&["domain", d])
}

pub fn requirement(kw: &str) -> Iri {
    mint(&["requirement", kw])
}

pub fn parameter_type(d: &str, t: &str) -> Iri {
    mint(&["type", d, t])
}

pub fn predicate(d: &str, p: &str) -> Iri {
    mint(&["predicate", d, p])
}

pub fn constant(d: &str, c: &str) -> Iri {
    mint(&["constant", d, c])
}

pub fn action(d: &str, a: &str) -> Iri {
    mint(&["action", d, a])
}

pub fn parameter(d: &str, a: &str, var: &str) -> Iri {
    mint(&["parameter", d, a, var])
}

pub fn precondition(d: &str, a: &str) -> Iri {
    mint(&["precondition", d, a])
}

pub fn effect(d: &str, a: &str) -> Iri {
    mint(&["effect", d, a])
}

pub fn problem(d: &str, p: &str) -> Iri {
    mint(&["problem", d, p])
}

pub fn initial_state(d: &str, p: &str) -> Iri {
    mint(&["initial", d, p])
}

pub fn goal_state(d: &str, p: &str) -> Iri {
    mint(&["goal", d, p])
}

pub fn object(d: &str, p: &str, o: &str) -> Iri {
    mint(&["object", d, p, o])
}

pub fn plan(d: &str, p: &str, planner: &str) -> Iri {
    mint(&["plan", d, p, planner])
}

pub fn step(d: &str, p: &str, planner: &str, i: usize) -> Iri {
    mint(&["step", d, p, planner, &i.to_string()])
}

pub fn planner(name: &str) -> Iri {
    mint(&["planner", name])
}

pub fn planner_type(name: &str) -> Iri {
    mint(&["plannertype", name])
}

pub fn performance(planner: &str, d: &str) -> Iri {
    mint(&["performance", planner, d])
}

pub fn relevance(tier: &str) -> Iri {
    mint(&["relevance", tier])
}

pub fn macro_action(d: &str, name: &str) -> Iri {
    mint(&["macro", d, name])
}

/// A value written as an IRI: `<...>`, `scheme://...`, `urn:...` or a
/// `plan:` prefixed name. Bare names return `None`.
pub fn explicit(value: &str) -> Option<Iri> {
    let v = value.trim();
    if let Some(local) = v.strip_prefix("plan:") {
        return Some(Iri::plan(local));
    }
    let unbracketed = v.strip_prefix('<').and_then(|s| s.strip_suffix('>')).unwrap_or(v);
    if unbracketed.contains("://") || unbracketed.starts_with("urn:") {
        return Iri::new(unbracketed);
    }
    None
}

/// An explicit IRI, or a bare name minted with `mint_bare`.
pub fn resolve(value: &str, mint_bare: impl Fn(&str) -> Iri) -> Iri {
    explicit(value).unwrap_or_else(|| mint_bare(value.trim()))
}
