mod common;

use common::{arb_domain, domain, problems, read, DOMAINS};
use plankb::pddl::*;
use proptest::prelude::*;

#[test]
fn unstack_precondition_mentions_on() {
    let d = domain("blocksworld");
    let unstack = d.action("unstack").unwrap();
    let on = Atom::new("on", vec![Term::var("x"), Term::var("y")]);
    assert!(unstack.precondition.contains(&Literal::pos(on)));
}

#[test]
fn minimal_domain_deletes_its_only_predicate() {
    let d = parse_domain("(define (domain d) (:predicates (p)) (:action a :parameters () :precondition (p) :effect (not (p))))")
        .unwrap();
    assert_eq!(d.predicates.len(), 1);
    assert_eq!(d.predicates[0].arity(), 0);
    assert_eq!(d.actions[0].del, vec![Atom::new("p", vec![])]);
    assert!(d.actions[0].add.is_empty());
}

#[test]
fn gripper_actions() {
    let names: Vec<String> = domain("gripper").actions.iter().map(|a| a.name.clone()).collect();
    assert_eq!(names, ["move", "pick", "drop"]);
}

#[test]
fn three_block_problem_objects() {
    let (_, p) = &problems("blocksworld")[0];
    let names: Vec<&str> = p.objects.iter().map(|o| o.name.as_str()).collect();
    assert_eq!(names, ["b1", "b2", "b3"]);
}

#[test]
fn empty_goal_is_vacuous() {
    let d = domain("blocksworld");
    let p =
        parse_problem("(define (problem e) (:domain blocksworld) (:objects a) (:init (ontable a)) (:goal (and)))", &d).unwrap();
    assert!(p.goal.is_empty());
}

#[test]
fn driverlog_init_matches_hand_count() {
    let (_, p) = &problems("driverlog")[0];
    // 2 drivers + 2 trucks + 2 packages placed, 2 empty trucks, 8 paths, 6 links.
    assert_eq!(p.init.len(), 2 + 2 + 2 + 2 + 8 + 6);
}

#[test]
fn problem_errors() {
    let d = domain("blocksworld");
    let arity = parse_problem("(define (problem e) (:domain blocksworld) (:objects a) (:init (on a)) (:goal (and)))", &d);
    assert!(matches!(arity, Err(PddlError::ArityMismatch { .. })));
    let pred = parse_problem("(define (problem e) (:domain blocksworld) (:objects a) (:init (flying a)) (:goal (and)))", &d);
    assert!(matches!(pred, Err(PddlError::UnknownPredicate { .. })));
    let g = domain("gripper");
    let ty = parse_problem("(define (problem e) (:domain gripper-typed) (:objects a - spoon) (:init) (:goal (and)))", &g);
    assert!(matches!(ty, Err(PddlError::UnknownType { .. })));
}

#[test]
fn syntax_error_carries_line_and_column() {
    let e = parse_domain("(define (domain d)\n  (:predicates (p)\n").unwrap_err();
    let pos = e.pos().expect("syntax errors are positioned");
    assert!(pos.line >= 2, "{e}");
}

#[test]
fn round_trip_every_bundled_file() {
    for name in DOMAINS {
        let d = domain(name);
        assert!(validate_domain(&d).is_empty(), "{name}: {:?}", validate_domain(&d));
        assert_eq!(parse_domain(&print_domain(&d)).unwrap(), d, "{name}");
        for (stem, p) in problems(name) {
            assert_eq!(parse_problem(&print_problem(&p), &d).unwrap(), p, "{name}/{stem}");
        }
    }
}

#[test]
fn printed_requirements_are_sorted() {
    let d = parse_domain("(define (domain d) (:requirements :typing :strips) (:predicates (p)) (:action a :parameters () :precondition (p) :effect (not (p))))").unwrap();
    assert!(print_domain(&d).contains("(:requirements :strips :typing)"));
}

#[test]
fn validation_issues() {
    let unbound = parse_domain(
        "(define (domain d) (:predicates (p ?x)) (:action a :parameters (?x) :precondition (p ?z) :effect (not (p ?x))))",
    );
    let issues = match unbound {
        Ok(d) => validate_domain(&d),
        Err(e) => panic!("parser should leave unbound variables to validation: {e}"),
    };
    assert!(issues.iter().any(|i| i.code == IssueCode::UnboundVariable { var: "z".into() }), "{issues:?}");

    let mut dup = domain("blocksworld");
    dup.actions.push(dup.actions[0].clone());
    assert!(validate_domain(&dup).iter().any(|i| matches!(i.code, IssueCode::DuplicateAction { .. })));
}

#[test]
fn bundled_text_is_mixed_case_tolerant() {
    let text = read("blocksworld/domain.pddl").to_uppercase().replace(":REQUIREMENTS :STRIPS", ":requirements :strips");
    assert_eq!(parse_domain(&text).unwrap(), domain("blocksworld"));
}

proptest! {
    #[test]
    fn generated_domains_round_trip(d in arb_domain()) {
        let printed = print_domain(&d);
        let back = parse_domain(&printed).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(print_domain(&back), printed);
    }

    #[test]
    fn literal_arity_matches_predicate(d in arb_domain()) {
        for a in &d.actions {
            for l in &a.precondition {
                prop_assert_eq!(l.atom.args.len(), d.predicate(&l.atom.predicate).unwrap().arity());
            }
        }
    }
}
