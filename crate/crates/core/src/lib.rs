//! Behavior trees with backward-chained structure and ACC-aware learning of
//! individual action leaves.
//!
//! The crate is organized as:
//! - [`bt`]: nodes, ticking and mission stepping;
//! - [`compiler`]: the action DSL, backward chaining, ACC derivation and DOT export;
//! - [`gridworld`]: the seeded simulation the trees run in;
//! - [`rl`]: rewards, Q-tables and training;
//! - [`eval`]: evaluation metrics, reports and comparisons.

pub mod binding;
pub mod bt;
pub mod compiler;
pub mod eval;
pub mod gridworld;
pub mod names;
pub mod policy;
pub mod rl;

pub use binding::{ConditionSource, GridConditions, SpecBindings, Valuation, ValuationSpace};
pub use bt::{tick, BehaviorTree, BtError, ImplKind, Node, NodeKind, Status, TickResult};
pub use compiler::{compile, derive_acc, AccTable, ActionSpec, CompileError, Compiled, SpecFile};
pub use gridworld::{GridConfig, GridEnv, PrimitiveAction, WorldState};
pub use policy::PolicySet;
pub use rl::{extract_policy, GreedyPolicy, QTable, RewardConfig, RlError};
