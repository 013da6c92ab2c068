use super::{ActionSpec, CompileError};
use crate::bt::{BehaviorTree, Node, NodeKind};
use crate::names::normalize;

#[derive(Debug, Clone)]
pub struct Backchained {
    pub tree: BehaviorTree,
    /// Number of condition leaves replaced by PPA subtrees.
    pub replacements: usize,
    pub unachievable: Vec<String>,
}

/// Builds the backward-chained tree for `goals`.
///
/// Starts from a Sequence of goal conditions and repeatedly replaces the
/// first (preorder) condition leaf with a Sequence parent that some action
/// achieves by `Fallback(C, Seq(pre(A1).., A1), Seq(pre(A2).., A2), ..)`,
/// with achieving actions in declaration order. Guards sit under a Fallback
/// and are never expanded again.
pub fn backchain(goals: &[String], actions: &[ActionSpec]) -> Result<Backchained, CompileError> {
    if goals.is_empty() {
        return Err(CompileError::EmptyGoalList);
    }
    let mut root = Node::sequence(goals.iter().map(Node::condition).collect())?;
    let mut replacements = 0;
    let mut guards = Vec::new();
    while expand_first(&mut root, true, actions, &mut guards)? {
        replacements += 1;
    }
    let unachievable = plain_checks(&root);
    Ok(Backchained { tree: BehaviorTree::new(root)?, replacements, unachievable })
}

fn achievers<'a>(cond: &str, actions: &'a [ActionSpec]) -> Vec<&'a ActionSpec> {
    let key = normalize(cond);
    actions.iter().filter(|a| normalize(&a.postcondition) == key).collect()
}

fn ppa(cond: &str, achievers: &[&ActionSpec]) -> Result<Node, CompileError> {
    let mut children = vec![Node::condition(cond)];
    for a in achievers {
        let mut seq: Vec<Node> = a.preconditions.iter().map(Node::condition).collect();
        seq.push(Node::action(&a.name, a.impl_kind));
        children.push(Node::sequence(seq)?);
    }
    Ok(Node::fallback(children)?)
}

/// Replaces the first expandable leaf; `guards` holds the normalized guard
/// conditions of enclosing Fallbacks.
fn expand_first(
    node: &mut Node,
    parent_is_sequence: bool,
    actions: &[ActionSpec],
    guards: &mut Vec<String>,
) -> Result<bool, CompileError> {
    match &mut node.kind {
        NodeKind::Condition { name } => {
            if !parent_is_sequence {
                return Ok(false);
            }
            let found = achievers(name, actions);
            if found.is_empty() {
                return Ok(false);
            }
            let key = normalize(name);
            if let Some(start) = guards.iter().position(|g| *g == key) {
                let mut path = guards[start..].to_vec();
                path.push(key);
                return Err(CompileError::CyclicDependency(path));
            }
            let replacement = ppa(name, &found)?;
            *node = replacement;
            Ok(true)
        }
        NodeKind::Action { .. } => Ok(false),
        NodeKind::Sequence { children } => {
            for c in children {
                if expand_first(c, true, actions, guards)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        NodeKind::Fallback { children } => {
            let guard = match children.first() {
                Some(Node { kind: NodeKind::Condition { name }, .. }) => Some(normalize(name)),
                _ => None,
            };
            let pushed = guard.map(|g| guards.push(g)).is_some();
            let mut result = Ok(false);
            for c in children.iter_mut() {
                match expand_first(c, false, actions, guards) {
                    Ok(false) => continue,
                    other => {
                        result = other;
                        break;
                    }
                }
            }
            if pushed {
                guards.pop();
            }
            result
        }
    }
}

fn plain_checks(root: &Node) -> Vec<String> {
    fn go(n: &Node, parent_is_sequence: bool, out: &mut Vec<String>) {
        if let NodeKind::Condition { name } = &n.kind {
            if parent_is_sequence && !out.iter().any(|o| normalize(o) == normalize(name)) {
                out.push(name.clone());
            }
        }
        for c in n.children() {
            go(c, n.is_sequence(), out);
        }
    }
    let mut out = Vec::new();
    go(root, false, &mut out);
    out
}
