use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{find_action, ActionSpec, CompileError};
use crate::bt::{BehaviorTree, Node, NodeKind};
use crate::names::{normalize, same};

/// Active constraint conditions per action, in root-to-leaf order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AccTable(BTreeMap<String, Vec<String>>);

impl AccTable {
    pub fn get(&self, action: &str) -> Option<&[String]> {
        self.0.iter().find(|(k, _)| same(k, action)).map(|(_, v)| v.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Vec<String>)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, action: impl Into<String>, acc: Vec<String>) {
        self.0.insert(action.into(), acc);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("acc serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Derives ACC(A) for every action leaf of a backward-chained tree.
///
/// Walking from the root to A, every Sequence ancestor contributes the
/// success requirement of each child left of the path: a PPA subtree
/// requires its guard, a bare condition requires itself. Fallback ancestors
/// contribute nothing. A's own Sequence holds its preconditions and is
/// skipped. An action placed at several sites keeps only the conditions
/// required at all of them.
pub fn derive_acc(tree: &BehaviorTree, actions: &[ActionSpec]) -> Result<AccTable, CompileError> {
    check_shape(tree.root())?;
    let mut found: Vec<(String, Vec<String>)> = Vec::new();
    collect(tree.root(), &mut Vec::new(), &mut found);

    let mut table = AccTable::default();
    for (name, acc) in found {
        let excluded: Vec<String> = find_action(actions, &name)
            .map(|a| a.preconditions.iter().chain(std::iter::once(&a.postcondition)).map(|c| normalize(c)).collect())
            .unwrap_or_default();
        let mut acc: Vec<String> = acc.into_iter().filter(|c| !excluded.contains(&normalize(c))).collect();
        let key = table.0.keys().find(|k| same(k, &name)).cloned();
        match key {
            Some(k) => {
                let prev = &table.0[&k];
                acc.retain(|c| prev.iter().any(|p| same(p, c)));
                table.0.insert(k, acc);
            }
            None => {
                table.0.insert(name, acc);
            }
        }
    }
    Ok(table)
}

fn requirement(n: &Node) -> Option<&str> {
    match &n.kind {
        NodeKind::Condition { name } => Some(name),
        NodeKind::Fallback { children } => children.first().and_then(Node::leaf_name),
        _ => None,
    }
}

fn push_unique(acc: &mut Vec<String>, c: &str) {
    if !acc.iter().any(|a| same(a, c)) {
        acc.push(c.to_string());
    }
}

fn collect(node: &Node, inherited: &mut Vec<String>, out: &mut Vec<(String, Vec<String>)>) {
    match &node.kind {
        NodeKind::Sequence { children } => {
            let base = inherited.len();
            for child in children {
                match &child.kind {
                    NodeKind::Action { name, .. } => {
                        // The immediate Sequence's conditions are A's preconditions.
                        let mut acc = Vec::new();
                        for c in &inherited[..base] {
                            push_unique(&mut acc, c);
                        }
                        out.push((name.clone(), acc));
                    }
                    _ => collect(child, inherited, out),
                }
                if let Some(r) = requirement(child) {
                    inherited.push(r.to_string());
                }
            }
            inherited.truncate(base);
        }
        NodeKind::Fallback { children } => {
            for child in children {
                collect(child, inherited, out);
            }
        }
        NodeKind::Action { name, .. } => out.push((name.clone(), inherited.clone())),
        NodeKind::Condition { .. } => {}
    }
}

/// Root is a Sequence; every Fallback is `Fallback(guard, Seq(.., A), ..)`;
/// actions appear only as the last child of such a Sequence.
fn check_shape(root: &Node) -> Result<(), CompileError> {
    if !root.is_sequence() {
        return Err(CompileError::NotBackchained(format!("root node {} is not a Sequence", root.id)));
    }
    fn go(n: &Node, parent_fallback: bool) -> Result<(), CompileError> {
        let bad = |msg: String| Err(CompileError::NotBackchained(msg));
        match &n.kind {
            NodeKind::Fallback { children } => {
                if !children.first().is_some_and(Node::is_condition) {
                    return bad(format!("fallback {} does not start with a guard condition", n.id));
                }
                if children.len() < 2 {
                    return bad(format!("fallback {} has no achieving subtree", n.id));
                }
                for c in &children[1..] {
                    let ends_in_action = c.is_sequence()
                        && matches!(c.children().last(), Some(Node { kind: NodeKind::Action { .. }, .. }));
                    if !ends_in_action {
                        return bad(format!("fallback {} child {} is not Seq(pre.., action)", n.id, c.id));
                    }
                }
            }
            NodeKind::Sequence { children } => {
                for (i, c) in children.iter().enumerate() {
                    let is_action = matches!(c.kind, NodeKind::Action { .. });
                    if is_action && !(parent_fallback && i + 1 == children.len()) {
                        return bad(format!("action {} is not the last child of a PPA sequence", c.id));
                    }
                    if c.is_sequence() {
                        return bad(format!("sequence {} nested directly in sequence {}", c.id, n.id));
                    }
                }
            }
            _ => {}
        }
        for c in n.children() {
            go(c, n.is_fallback())?;
        }
        Ok(())
    }
    go(root, false)
}
