mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use plankb::kg::query::run;
use plankb::kg::{class, plan_class, plan_prop, prop as kp, rdf_type, Graph, Query, Term, TriplePattern};
use plankb::macros::*;
use plankb::mapper::iri;
use plankb::pddl::{parse_domain, print_domain, validate_domain};
use plankb::strips::{validate_plan, PlanStep};
use proptest::prelude::*;

/// Action pairs listed for each domain in the published results table.
const PUBLISHED: [(&str, &[(&str, &str)]); 3] = [
    (
        "blocksworld",
        &[
            ("unstack", "put-down"),
            ("pick-up", "stack"),
            ("put-down", "unstack"),
            ("stack", "pick-up"),
            ("unstack", "stack"),
            ("put-down", "pick-up"),
            ("stack", "unstack"),
        ],
    ),
    (
        "driverlog",
        &[
            ("drive-truck", "unload-truck"),
            ("drive-truck", "load-truck"),
            ("board-truck", "drive-truck"),
            ("walk", "board-truck"),
        ],
    ),
    ("gripper", &[("pick", "move"), ("move", "drop")]),
];

fn mined(name: &str) -> Vec<LiftedPair> {
    let d = domain(name);
    mine_pairs(&mapped_graph(name, true), &iri::domain(&d.name)).unwrap()
}

fn pattern_key(p: &LiftedPair) -> String {
    let show = |args: &[usize]| args.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
    format!("{}({}) {}({})", p.first, show(&p.first_args), p.second, show(&p.second_args))
}

fn strs(v: &[&str]) -> BTreeSet<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn texts<T: ToString>(v: impl IntoIterator<Item = T>) -> BTreeSet<String> {
    v.into_iter().map(|x| x.to_string()).collect()
}

#[test]
fn corpus_counts_match_sliding_window() {
    for name in DOMAINS {
        let raw: Vec<String> = plan_texts(name).into_iter().map(|(_, t)| t).collect();
        let (names, patterns) = sliding_window(&raw);
        let pairs = mined(name);
        let ours: BTreeMap<String, u64> = pairs.iter().map(|p| (pattern_key(p), p.frequency)).collect();
        assert_eq!(ours, patterns, "{name}");
        let ours_names: BTreeMap<(String, String), u64> = name_level(&pairs).into_iter().map(|(a, b, n)| ((a, b), n)).collect();
        assert_eq!(ours_names, names, "{name}");
        for w in pairs.windows(2) {
            assert!(w[0].frequency >= w[1].frequency, "{name}: not ranked");
        }
    }
}

#[test]
fn single_two_step_plan_gives_one_pair() {
    let steps: Vec<PlanStep> = vec!["(pick-up a)".parse().unwrap(), "(stack a b)".parse().unwrap()];
    let pairs = mine_plans([steps.as_slice()]);
    assert_eq!(pairs.len(), 1);
    assert_eq!(pairs[0].frequency, 1);
    assert_eq!(pairs[0].label(), "pick-up * stack");
}

#[test]
fn no_plans_is_an_error() {
    let g = mapped_graph("blocksworld", false);
    assert!(matches!(mine_pairs(&g, &iri::domain("blocksworld")), Err(MacroError::NoPlansForDomain(_))));
}

#[test]
fn published_pairs_are_mined_and_chain() {
    for (name, expected) in PUBLISHED {
        let d = domain(name);
        let pairs = mined(name);
        for (a, b) in expected {
            let variants: Vec<&LiftedPair> = pairs.iter().filter(|p| p.first == *a && p.second == *b).collect();
            assert!(!variants.is_empty(), "{name}: {a} * {b} not mined");
            let chaining = variants.iter().filter(|p| chain_filter(&d, p).unwrap()).count();
            assert!(chaining > 0, "{name}: no variant of {a} * {b} chains");
        }
    }
    let top: Vec<(String, String)> = name_level(&mined("blocksworld")).into_iter().take(4).map(|(a, b, _)| (a, b)).collect();
    assert!(top.contains(&("unstack".into(), "put-down".into())), "{top:?}");
    assert!(top.contains(&("pick-up".into(), "stack".into())), "{top:?}");
}

#[test]
fn non_chaining_pairs_are_rejected() {
    let d = domain("blocksworld");
    let cases = [
        LiftedPair::new("stack", "stack", vec![0, 1], vec![2, 3]),
        LiftedPair::new("pick-up", "pick-up", vec![0], vec![1]),
        LiftedPair::new("put-down", "put-down", vec![0], vec![1]),
        LiftedPair::new("unstack", "pick-up", vec![0, 1], vec![1]),
    ];
    for p in &cases {
        assert!(!chain_filter(&d, p).unwrap(), "{p}");
        assert!(matches!(compose(&d, p), Err(MacroError::ChainingViolation { .. })), "{p}");
    }
    assert!(matches!(chain_filter(&d, &LiftedPair::new("fly", "stack", vec![0], vec![0, 1])), Err(MacroError::UnknownSchema(_))));
}

#[test]
fn pick_up_then_stack_composition() {
    let d = domain("blocksworld");
    let p = LiftedPair::new("pick-up", "stack", vec![0], vec![0, 1]);
    assert!(chain_filter(&d, &p).unwrap());
    let m = compose(&d, &p).unwrap();
    assert_eq!(m.name(), "pick-up_stack");
    let a = &m.action;
    let pre: BTreeSet<String> = a.precondition.iter().filter(|l| !l.atom.is_equality()).map(|l| l.to_string()).collect();
    assert_eq!(pre, strs(&["(clear ?x)", "(ontable ?x)", "(handempty)", "(clear ?y)"]));
    assert_eq!(texts(&a.add), strs(&["(on ?x ?y)", "(clear ?x)", "(handempty)"]));
    assert_eq!(texts(&a.del), strs(&["(ontable ?x)", "(holding ?x)", "(clear ?y)"]));
}

#[test]
fn empty_effect_first_action_yields_second() {
    let d = parse_domain(
        "(define (domain t) (:requirements :strips) (:predicates (p ?x) (q ?x) (r ?x))
           (:action look :parameters (?x) :precondition (and (p ?x) (r ?x)) :effect (and))
           (:action go :parameters (?x) :precondition (p ?x) :effect (and (q ?x) (not (p ?x)))))",
    )
    .unwrap();
    let go = d.action("go").unwrap().clone();
    let m = compose(&d, &LiftedPair::new("look", "go", vec![0], vec![0])).unwrap();
    assert_eq!(texts(&m.action.add), texts(&go.add));
    assert_eq!(texts(&m.action.del), texts(&go.del));
    let pre: BTreeSet<String> = texts(&m.action.precondition);
    assert_eq!(pre, strs(&["(p ?x)", "(r ?x)"]));
}

#[test]
fn macros_equal_two_step_application_on_blocks() {
    let d = domain("blocksworld");
    let macros = rank_macros(&d, &mined("blocksworld"));
    assert!(macros.len() >= 7);
    for n in [3, 4] {
        let checked = sweep(&d, &bw_problem(&d, n), &macros);
        assert!(checked > 0, "{n} blocks");
    }
}

#[test]
fn unstack_put_down_on_four_blocks() {
    let d = domain("blocksworld");
    let m = compose(&d, &LiftedPair::new("unstack", "put-down", vec![0, 1], vec![0])).unwrap();
    let p = bw_problem(&d, 4);
    // Applicable exactly where a clear block sits on another and the hand is empty.
    let expected: usize = reachable(&d, &p, 10_000)
        .unwrap()
        .iter()
        .filter(|s| s.contains("(handempty)"))
        .map(|s| s.iter().filter(|a| a.starts_with("(on ")).filter(|a| s.contains(&format!("(clear {})", &a[4..6]))).count())
        .sum();
    assert!(expected > 0);
    assert_eq!(sweep(&d, &p, &[m]), expected);
}

#[test]
fn macros_equal_two_step_application_on_gripper() {
    let d = domain("gripper");
    let macros = rank_macros(&d, &mined("gripper"));
    assert!(!macros.is_empty());
    let (_, p) = problems("gripper").into_iter().next().unwrap();
    assert!(sweep(&d, &p, &macros) > 0);
}

#[test]
fn augment_top_two() {
    let d = domain("blocksworld");
    let macros = rank_macros(&d, &mined("blocksworld"));
    let aug = augment_domain(&d, &macros, 2);
    assert_eq!(aug.actions.len(), 6);
    assert!(validate_domain(&aug).is_empty(), "{:?}", validate_domain(&aug));
    assert_eq!(parse_domain(&print_domain(&aug)).unwrap(), aug);
    assert_eq!(augment_domain(&d, &macros, 0), d);
    let ps = problems("blocksworld");
    for (stem, plan) in plans("blocksworld") {
        let p = &ps.iter().find(|(s, _)| *s == stem).unwrap().1;
        assert!(validate_plan(&aug, p, &plan).valid, "{stem}");
    }
}

#[test]
fn augmentation_preserves_solvability() {
    for name in DOMAINS {
        let d = domain(name);
        let aug = augment_domain(&d, &rank_macros(&d, &mined(name)), 2);
        let mut compared = 0;
        for (stem, p) in problems(name) {
            let Ok(base) = optimal_cost(&d, &p, 20_000) else { continue };
            let with = optimal_cost(&aug, &p, 20_000).expect("macros add no states");
            assert_eq!(base.is_some(), with.is_some(), "{name}/{stem}");
            assert!(with <= base, "{name}/{stem}");
            compared += 1;
        }
        assert!(compared > 0, "{name}");
    }
}

#[test]
fn storing_macros() {
    let d = domain("blocksworld");
    let macros = rank_macros(&d, &mined("blocksworld"));
    let dom = iri::domain("blocksworld");
    let mut g = mapped_graph("blocksworld", true);
    let added = store_macros(&mut g, &dom, &macros[..2]).unwrap();
    assert!(added > 0);
    let q = Query::new(vec![TriplePattern::new(Term::var("m"), rdf_type(), plan_class(class::MACRO_ACTION))]);
    assert_eq!(run(&g, &q).len(), 2);
    for m in g.instances_of(&plan_class(class::MACRO_ACTION)) {
        for link in [kp::HAS_FIRST_ACTION, kp::HAS_SECOND_ACTION] {
            let targets = g.objects(m, &plan_prop(link));
            assert_eq!(targets.len(), 1);
            assert!(g.has_type(targets[0].as_iri().unwrap(), &plan_class(class::ACTION)));
        }
        assert!(g.contains(&plankb::kg::Triple::new(dom.clone(), plan_prop(kp::HAS_MACRO), m.clone())));
    }
    let before: Vec<_> = g.iter().cloned().collect();
    assert_eq!(store_macros(&mut g, &dom, &macros[..2]).unwrap(), 0);
    assert_eq!(g.iter().cloned().collect::<Vec<_>>(), before);
    assert!(matches!(store_macros(&mut Graph::new(), &dom, &macros[..1]), Err(MacroError::UnknownDomain(_))));
}

#[test]
fn report_round_trips_through_json() {
    let d = domain("gripper");
    let pairs = mined("gripper");
    let report = MacroReport::build("gripper-typed", &pairs, Some(&d));
    let back: MacroReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(back, report);
    let chaining = report.chaining_pairs();
    assert_eq!(chaining.len(), rank_macros(&d, &pairs).len());
    assert!(report.to_string().contains("pick * move"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mining_ignores_plan_order(perm in Just((0..10usize).collect::<Vec<_>>()).prop_shuffle()) {
        let all: Vec<Vec<PlanStep>> = plans("blocksworld").into_iter().map(|(_, p)| p.steps).collect();
        let shuffled: Vec<&[PlanStep]> = perm.iter().map(|&i| all[i].as_slice()).collect();
        let base = mine_plans(all.iter().map(Vec::as_slice));
        prop_assert_eq!(mine_plans(shuffled), base);
    }
}
