//! Canonical PDDL printer. Output is deterministic for a given AST and
//! re-parses to an equal value.

use std::fmt::Write;

use super::ast::*;

/// Renders a typed list. When every entry is `object` the names are printed
/// bare; otherwise each run of equal types gets an explicit `- type` so that
/// no name silently inherits the type of a later group.
fn typed_list(out: &mut String, items: &[TypedName], var: bool) {
    let prefix = if var { "?" } else { "" };
    let all_object = items.iter().all(|t| t.ty == OBJECT);
    let mut first = true;
    let mut i = 0;
    while i < items.len() {
        let ty = &items[i].ty;
        let mut j = i;
        while j < items.len() && &items[j].ty == ty {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{prefix}{}", items[j].name);
            j += 1;
        }
        if !all_object {
            let _ = write!(out, " - {ty}");
        }
        i = j;
    }
}

fn conjunction<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if parts.is_empty() {
        "(and)".to_string()
    } else {
        format!("(and {})", parts.join(" "))
    }
}

pub fn print_domain(d: &DomainDef) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "(define (domain {})", d.name);
    if !d.requirements.is_empty() {
        let reqs: Vec<String> = d.requirements.iter().map(|r| format!(":{r}")).collect();
        let _ = writeln!(out, "  (:requirements {})", reqs.join(" "));
    }
    if !d.types.is_empty() {
        out.push_str("  (:types ");
        let as_typed: Vec<TypedName> = d.types.iter().map(|t| TypedName::new(t.name.clone(), t.parent_or_object())).collect();
        // Types are always printed with explicit parents.
        let mut i = 0;
        let mut first = true;
        while i < as_typed.len() {
            let mut j = i;
            while j < as_typed.len() && as_typed[j].ty == as_typed[i].ty {
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&as_typed[j].name);
                j += 1;
            }
            let _ = write!(out, " - {}", as_typed[i].ty);
            i = j;
        }
        out.push_str(")\n");
    }
    if !d.constants.is_empty() {
        out.push_str("  (:constants ");
        typed_list(&mut out, &d.constants, false);
        out.push_str(")\n");
    }
    if !d.predicates.is_empty() {
        out.push_str("  (:predicates");
        for p in &d.predicates {
            out.push_str("\n    (");
            out.push_str(&p.name);
            if !p.params.is_empty() {
                out.push(' ');
                typed_list(&mut out, &p.params, true);
            }
            out.push(')');
        }
        out.push_str(")\n");
    }
    for a in &d.actions {
        let _ = writeln!(out, "  (:action {}", a.name);
        out.push_str("    :parameters (");
        typed_list(&mut out, &a.params, true);
        out.push_str(")\n");
        let _ = writeln!(out, "    :precondition {}", conjunction(&a.precondition));
        let effects = a.add.iter().map(|x| x.to_string()).chain(a.del.iter().map(|x| format!("(not {x})")));
        let _ = writeln!(out, "    :effect {})", conjunction(effects));
    }
    out.push_str(")\n");
    out
}

pub fn print_problem(p: &ProblemDef) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "(define (problem {})", p.name);
    let _ = writeln!(out, "  (:domain {})", p.domain_name);
    out.push_str("  (:objects");
    if !p.objects.is_empty() {
        out.push(' ');
        typed_list(&mut out, &p.objects, false);
    }
    out.push_str(")\n  (:init");
    for a in &p.init {
        let _ = write!(out, "\n    {a}");
    }
    out.push_str(")\n");
    let _ = writeln!(out, "  (:goal {}))", conjunction(&p.goal));
    out
}

#[cfg(test)]
mod tests {
    use super::super::parser::*;
    use super::*;

    #[test]
    fn requirements_are_sorted() {
        let d = parse_domain("(define (domain d) (:requirements :typing :strips))").unwrap();
        assert!(print_domain(&d).contains("(:requirements :strips :typing)"));
    }

    #[test]
    fn mixed_object_and_typed_params_survive() {
        let d = parse_domain(
            "(define (domain d) (:requirements :typing) (:types t)
               (:predicates (p ?a ?b - t ?c))
               (:action x :parameters (?a ?b - t) :precondition (p ?a ?b ?a) :effect (and)))",
        )
        .unwrap();
        let again = parse_domain(&print_domain(&d)).unwrap();
        assert_eq!(d, again);
        assert_eq!(again.actions[0].params[0].ty, "t");
        assert_eq!(again.predicates[0].params[2].ty, OBJECT);
    }

    #[test]
    fn types_with_object_parent_round_trip() {
        let d = parse_domain("(define (domain d) (:types a - object b c - a))").unwrap();
        let text = print_domain(&d);
        assert!(text.contains("(:types a - object b c - a)"), "{text}");
        assert_eq!(parse_domain(&text).unwrap(), d);
    }

    #[test]
    fn printing_is_byte_deterministic() {
        let d = parse_domain(
            "(define (domain d) (:predicates (p ?x)) (:action a :parameters (?x) :precondition (not (p ?x)) :effect (p ?x)))",
        )
        .unwrap();
        assert_eq!(print_domain(&d), print_domain(&d.clone()));
    }
}
