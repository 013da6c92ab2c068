use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::BtError;

/// Tick status of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Running,
    Success,
    Failure,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Running => "Running",
            Status::Success => "Success",
            Status::Failure => "Failure",
        }
    }
}

/// How an action leaf's controller is provided.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ImplKind {
    #[default]
    Scripted,
    Learned,
}

impl ImplKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ImplKind::Scripted => "scripted",
            ImplKind::Learned => "learned",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum NodeKind {
    Sequence {
        children: Vec<Node>,
    },
    Fallback {
        children: Vec<Node>,
    },
    Condition {
        name: String,
    },
    Action {
        name: String,
        #[serde(rename = "impl", default)]
        impl_kind: ImplKind,
    },
}

/// A behavior tree node. Ids are assigned in preorder by [`BehaviorTree::new`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: u32,
    #[serde(flatten)]
    pub kind: NodeKind,
}

impl Node {
    pub fn sequence(children: Vec<Node>) -> Result<Node, BtError> {
        if children.is_empty() {
            return Err(BtError::EmptyComposite { id: None });
        }
        Ok(Node { id: 0, kind: NodeKind::Sequence { children } })
    }

    pub fn fallback(children: Vec<Node>) -> Result<Node, BtError> {
        if children.is_empty() {
            return Err(BtError::EmptyComposite { id: None });
        }
        Ok(Node { id: 0, kind: NodeKind::Fallback { children } })
    }

    pub fn condition(name: impl Into<String>) -> Node {
        Node { id: 0, kind: NodeKind::Condition { name: name.into() } }
    }

    pub fn action(name: impl Into<String>, impl_kind: ImplKind) -> Node {
        Node { id: 0, kind: NodeKind::Action { name: name.into(), impl_kind } }
    }

    pub fn children(&self) -> &[Node] {
        match &self.kind {
            NodeKind::Sequence { children } | NodeKind::Fallback { children } => children,
            _ => &[],
        }
    }

    pub fn children_mut(&mut self) -> Option<&mut Vec<Node>> {
        match &mut self.kind {
            NodeKind::Sequence { children } | NodeKind::Fallback { children } => Some(children),
            _ => None,
        }
    }

    /// Leaf name for conditions and actions.
    pub fn leaf_name(&self) -> Option<&str> {
        match &self.kind {
            NodeKind::Condition { name } | NodeKind::Action { name, .. } => Some(name),
            _ => None,
        }
    }

    pub fn is_condition(&self) -> bool {
        matches!(self.kind, NodeKind::Condition { .. })
    }

    pub fn is_sequence(&self) -> bool {
        matches!(self.kind, NodeKind::Sequence { .. })
    }

    pub fn is_fallback(&self) -> bool {
        matches!(self.kind, NodeKind::Fallback { .. })
    }

    /// Preorder traversal.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Node)) {
        f(self);
        for c in self.children() {
            c.walk(f);
        }
    }

    /// Nodes in this subtree, itself included.
    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(Node::node_count).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(Node::depth).max().unwrap_or(0)
    }

    fn renumber(&mut self, next: &mut u32) {
        self.id = *next;
        *next += 1;
        if let Some(children) = self.children_mut() {
            for c in children {
                c.renumber(next);
            }
        }
    }

    /// Same tree shape and leaf names, ignoring ids.
    pub fn isomorphic(&self, other: &Node) -> bool {
        let kinds_match = match (&self.kind, &other.kind) {
            (NodeKind::Sequence { .. }, NodeKind::Sequence { .. })
            | (NodeKind::Fallback { .. }, NodeKind::Fallback { .. }) => true,
            (NodeKind::Condition { name: a }, NodeKind::Condition { name: b }) => crate::names::same(a, b),
            (NodeKind::Action { name: a, impl_kind: ka }, NodeKind::Action { name: b, impl_kind: kb }) => {
                crate::names::same(a, b) && ka == kb
            }
            _ => false,
        };
        kinds_match
            && self.children().len() == other.children().len()
            && self.children().iter().zip(other.children()).all(|(a, b)| a.isomorphic(b))
    }
}

/// A validated tree: non-empty composites and unique node ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Node", into = "Node")]
pub struct BehaviorTree {
    root: Node,
}

impl BehaviorTree {
    /// Validates `root` and assigns preorder ids starting at 0.
    pub fn new(mut root: Node) -> Result<Self, BtError> {
        let mut next = 0;
        root.renumber(&mut next);
        Self::validated(root)
    }

    fn validated(root: Node) -> Result<Self, BtError> {
        let mut seen = HashSet::new();
        let mut err = None;
        root.walk(&mut |n| {
            if err.is_some() {
                return;
            }
            if !seen.insert(n.id) {
                err = Some(BtError::DuplicateNodeId(n.id));
            } else if (n.is_sequence() || n.is_fallback()) && n.children().is_empty() {
                err = Some(BtError::EmptyComposite { id: Some(n.id) });
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(BehaviorTree { root }),
        }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn into_root(self) -> Node {
        self.root
    }

    pub fn from_json(text: &str) -> Result<Self, BtError> {
        let root: Node = serde_json::from_str(text)?;
        Self::validated(root)
    }

    /// Canonical pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serialization is infallible")
    }

    /// Distinct condition names in preorder of first appearance.
    pub fn condition_names(&self) -> Vec<String> {
        self.leaf_names(true)
    }

    /// Distinct action names in preorder of first appearance.
    pub fn action_names(&self) -> Vec<String> {
        self.leaf_names(false)
    }

    fn leaf_names(&self, conditions: bool) -> Vec<String> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        self.root.walk(&mut |n| {
            let name = match &n.kind {
                NodeKind::Condition { name } if conditions => name,
                NodeKind::Action { name, .. } if !conditions => name,
                _ => return,
            };
            if seen.insert(crate::names::normalize(name)) {
                out.push(name.clone());
            }
        });
        out
    }

    pub fn action_kind(&self, name: &str) -> Option<ImplKind> {
        let mut found = None;
        self.root.walk(&mut |n| {
            if let NodeKind::Action { name: a, impl_kind } = &n.kind {
                if found.is_none() && crate::names::same(a, name) {
                    found = Some(*impl_kind);
                }
            }
        });
        found
    }
}

impl TryFrom<Node> for BehaviorTree {
    type Error = BtError;

    fn try_from(root: Node) -> Result<Self, Self::Error> {
        BehaviorTree::validated(root)
    }
}

impl From<BehaviorTree> for Node {
    fn from(t: BehaviorTree) -> Node {
        t.root
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> BehaviorTree {
        BehaviorTree::new(
            Node::fallback(vec![
                Node::condition("Has food"),
                Node::sequence(vec![
                    Node::condition("Is close to apple"),
                    Node::action("Pick Apple", ImplKind::Scripted),
                ])
                .unwrap(),
            ])
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn empty_composites_are_rejected() {
        assert!(matches!(Node::sequence(vec![]), Err(BtError::EmptyComposite { .. })));
        assert!(matches!(Node::fallback(vec![]), Err(BtError::EmptyComposite { .. })));
        let json = r#"{"id":0,"kind":"sequence","children":[]}"#;
        assert!(BehaviorTree::from_json(json).is_err());
    }

    #[test]
    fn ids_are_preorder() {
        let t = sample();
        let mut ids = Vec::new();
        t.root().walk(&mut |n| ids.push(n.id));
        assert_eq!(ids, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let json = r#"{"id":0,"kind":"sequence","children":[
            {"id":1,"kind":"condition","name":"a"},
            {"id":1,"kind":"condition","name":"b"}]}"#;
        let r = BehaviorTree::from_json(json);
        assert!(matches!(r, Err(BtError::DuplicateNodeId(1))), "{r:?}");
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let t = sample();
        let text = t.to_json();
        let back = BehaviorTree::from_json(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_json(), text);
        assert!(text.contains(r#""impl": "scripted""#));
    }

    #[test]
    fn names_in_first_appearance_order() {
        let t = sample();
        assert_eq!(t.condition_names(), vec!["Has food", "Is close to apple"]);
        assert_eq!(t.action_names(), vec!["Pick Apple"]);
        assert_eq!(t.action_kind("pick apple"), Some(ImplKind::Scripted));
    }
}
