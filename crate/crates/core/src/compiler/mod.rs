//! Compiles action specs into backward-chained trees and derives each
//! action's active constraint conditions (ACCs).

mod acc;
mod backchain;
mod dot;
mod dsl;

pub use acc::{derive_acc, AccTable};
pub use backchain::{backchain, Backchained};
pub use dot::export_dot;
pub use dsl::{find_action, parse_spec, ActionSpec, SpecFile};

use thiserror::Error;

use crate::bt::{BehaviorTree, BtError};

#[derive(Debug, Error)]
pub enum CompileError {
    #[error("line {line}: expected {expected}, found {found}")]
    Syntax { line: usize, expected: String, found: String },
    #[error("line {line}: duplicate action \"{name}\"")]
    DuplicateAction { name: String, line: usize },
    #[error("no goals declared")]
    EmptyGoalList,
    #[error("cyclic dependency: {}", .0.join(" -> "))]
    CyclicDependency(Vec<String>),
    #[error("tree is not backward chained: {0}")]
    NotBackchained(String),
    #[error(transparent)]
    Tree(#[from] BtError),
}

/// Everything derived from one spec file.
#[derive(Debug, Clone)]
pub struct Compiled {
    pub spec: SpecFile,
    pub tree: BehaviorTree,
    pub acc: AccTable,
    /// Conditions left as plain checks because no action achieves them.
    pub unachievable: Vec<String>,
}

pub fn compile(text: &str) -> Result<Compiled, CompileError> {
    let spec = parse_spec(text)?;
    let chained = backchain(&spec.goals, &spec.actions)?;
    let acc = derive_acc(&chained.tree, &spec.actions)?;
    Ok(Compiled { spec, tree: chained.tree, acc, unachievable: chained.unachievable })
}
