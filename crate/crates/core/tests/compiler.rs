mod common;

use accbt::compiler::export_dot;
use accbt::{compile, BehaviorTree, CompileError, ImplKind};

#[test]
fn survival_tree_matches_golden_json() {
    let c = common::survival();
    assert_eq!(c.tree.to_json().trim(), common::GOLDEN_TREE.trim());
}

#[test]
fn survival_tree_matches_hand_built_shape() {
    let c = common::survival();
    assert!(c.tree.root().isomorphic(&common::expected_survival_tree()));
    let golden = BehaviorTree::from_json(common::GOLDEN_TREE).unwrap();
    assert!(golden.root().isomorphic(&common::expected_survival_tree()));
}

#[test]
fn learned_actions_keep_their_kind() {
    let c = common::survival();
    assert_eq!(c.tree.action_kind("Chase cow"), Some(ImplKind::Learned));
    assert_eq!(c.tree.action_kind("Defeat hostile"), Some(ImplKind::Learned));
    assert_eq!(c.tree.action_kind("Eat"), Some(ImplKind::Scripted));
}

#[test]
fn unachievable_preconditions_are_reported() {
    let c = common::survival();
    let mut u = c.unachievable.clone();
    u.sort();
    assert_eq!(u, ["Has crafting table", "Has materials", "Is close to apple"]);
}

#[test]
fn tree_json_round_trips() {
    let c = common::survival();
    let back = BehaviorTree::from_json(&c.tree.to_json()).unwrap();
    assert_eq!(back.to_json(), c.tree.to_json());
}

#[test]
fn dot_export_is_deterministic_and_highlights() {
    let c = common::survival();
    let a = export_dot(&c.tree, &c.acc, Some("Chase cow"));
    let b = export_dot(&compile(common::SURVIVAL_SPEC).unwrap().tree, &c.acc, Some("Chase cow"));
    assert_eq!(a, b);
    assert!(a.starts_with("digraph"));
    assert_eq!(a.matches("fillcolor=palegreen").count(), 3);
    assert_eq!(a.matches("peripheries=2, color=red").count(), 1);
    let plain = export_dot(&c.tree, &c.acc, None);
    assert!(!plain.contains("palegreen"));
    assert_eq!(plain.matches("->").count(), c.tree.root().node_count() - 1);
}

#[test]
fn chain_goes_through_preconditions() {
    let spec = r#"
        goal "Done"
        action "Finish" { pre: ["Ready"]; post: "Done"; impl: scripted }
        action "Prepare" { pre: []; post: "Ready"; impl: learned }
    "#;
    let c = compile(spec).unwrap();
    assert_eq!(c.acc.get("Prepare").unwrap(), &[] as &[String]);
    assert_eq!(c.acc.get("Finish").unwrap(), &[] as &[String]);
    assert_eq!(c.tree.action_names(), ["Prepare", "Finish"]);
}

#[test]
fn later_goals_depend_on_earlier_ones() {
    let spec = r#"
        goal "A"
        goal "B"
        action "Get A" { pre: []; post: "A"; impl: scripted }
        action "Get B" { pre: []; post: "B"; impl: scripted }
    "#;
    let c = compile(spec).unwrap();
    assert_eq!(c.acc.get("Get B").unwrap(), ["A"]);
    assert!(c.acc.get("Get A").unwrap().is_empty());
}

#[test]
fn errors_are_reported() {
    assert!(matches!(compile("# nothing\n"), Err(CompileError::EmptyGoalList)));
    let dup = "goal \"A\"\naction \"X\" { pre: []; post: \"A\"; impl: scripted }\naction \"X\" { pre: []; post: \"A\"; impl: scripted }\n";
    assert!(matches!(compile(dup), Err(CompileError::DuplicateAction { line: 3, .. })));
    let cyc = "goal \"P\"\naction \"A\" { pre: [\"Q\"]; post: \"P\"; impl: scripted }\naction \"B\" { pre: [\"P\"]; post: \"Q\"; impl: scripted }\n";
    assert!(matches!(compile(cyc), Err(CompileError::CyclicDependency(_))));
    assert!(matches!(compile("goal \"A\"\nactoin"), Err(CompileError::Syntax { line: 2, .. })));
}
