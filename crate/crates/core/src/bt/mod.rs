//! Behavior tree representation and the tick engine.
//!
//! Ticks are memoryless: a node's status and selected controller are a pure
//! function of the tree and the current state. Sequence advances past a child
//! only on Success, Fallback only on Failure; n-ary composites fold to the
//! right-nested binary form.

mod mission;
mod node;
mod tick;

pub use mission::{step_mission, Controller, Environment, MissionEnd, MissionTrace, StepRecord};
pub use node::{BehaviorTree, ImplKind, Node, NodeKind, Status};
pub use tick::{regions, tick, Bindings, Regions, TickResult};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BtError {
    #[error("unresolved leaf id `{0}`")]
    UnresolvedId(String),
    #[error("composite node{} has no children", .id.map(|i| format!(" {i}")).unwrap_or_default())]
    EmptyComposite { id: Option<u32> },
    #[error("duplicate node id {0}")]
    DuplicateNodeId(u32),
    #[error("environment fault: {0}")]
    EnvironmentFault(String),
    #[error("controller error for `{action}`: {message}")]
    Controller { action: String, message: String },
    #[error("invalid tree json: {0}")]
    Json(#[from] serde_json::Error),
}
