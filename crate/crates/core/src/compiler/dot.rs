use std::fmt::Write;

use super::AccTable;
use crate::bt::{BehaviorTree, Node, NodeKind};
use crate::names::same;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering. With `highlight`, the action gets a double yellow
/// box, the guard it achieves a double red oval and its ACC conditions are
/// filled green.
pub fn export_dot(tree: &BehaviorTree, acc: &AccTable, highlight: Option<&str>) -> String {
    let acc_set: &[String] = highlight.and_then(|h| acc.get(h)).unwrap_or(&[]);

    let mut out = String::from("digraph bt {\n  rankdir=TB;\n  node [fontname=\"Helvetica\"];\n");
    tree.root().walk(&mut |n| {
        let attrs = match &n.kind {
            NodeKind::Sequence { .. } => "label=\"→\", shape=box".to_string(),
            NodeKind::Fallback { .. } => "label=\"?\", shape=box".to_string(),
            NodeKind::Condition { name } => {
                let mut a = format!("label=\"{}\", shape=ellipse", escape(name));
                if is_guard_of_highlight(tree.root(), n.id, highlight) {
                    a.push_str(", peripheries=2, color=red");
                } else if acc_set.iter().any(|c| same(c, name)) {
                    a.push_str(", style=filled, fillcolor=palegreen");
                }
                a
            }
            NodeKind::Action { name, impl_kind } => {
                let mut a = format!("label=\"{}\", shape=box, style=rounded", escape(name));
                if highlight.is_some_and(|h| same(h, name)) {
                    a = format!(
                        "label=\"{}\", shape=box, style=\"rounded,filled\", fillcolor=yellow, peripheries=2",
                        escape(name)
                    );
                }
                if *impl_kind == crate::bt::ImplKind::Learned {
                    a.push_str(", penwidth=2");
                }
                a
            }
        };
        let _ = writeln!(out, "  n{} [{}];", n.id, attrs);
    });
    tree.root().walk(&mut |n| {
        for c in n.children() {
            let _ = writeln!(out, "  n{} -> n{};", n.id, c.id);
        }
    });
    out.push_str("}\n");
    out
}

/// Whether condition `id` guards a PPA whose action is `highlight`.
fn is_guard_of_highlight(root: &Node, id: u32, highlight: Option<&str>) -> bool {
    let Some(h) = highlight else { return false };
    let mut hit = false;
    root.walk(&mut |n| {
        if n.is_fallback() && n.children().first().is_some_and(|g| g.id == id) {
            hit |= n.children()[1..]
                .iter()
                .any(|s| s.children().last().and_then(Node::leaf_name).is_some_and(|a| same(a, h)));
        }
    });
    hit
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_condition_is_one_node() {
        let t = BehaviorTree::new(Node::condition("Has \"food\"")).unwrap();
        let dot = export_dot(&t, &AccTable::default(), None);
        assert_eq!(dot.matches(" [label=").count(), 1);
        assert!(!dot.contains("->"));
        assert!(dot.contains(r#"label="Has \"food\"""#));
    }
}
