//! Seeded evaluation of a tree with fixed policies, and reporting.

mod compare;
mod harness;
mod metrics;
mod render;
mod stats;

pub use compare::{compare, BaselineCheck, ComparisonSummary, SMALL_COMPLETION_SPREAD};
pub use harness::{
    aggregate, evaluate, mission_seed, run_mission, ConditionBreakdown, EvalConfig, EvalOutput, EvalReport, EvalSetup,
    REPORT_SCHEMA_VERSION,
};
pub use metrics::{mission_metrics, MissionMetrics, Tracking};
pub use render::{render_csv, render_markdown};
pub use stats::{RunningStats, Summary};

use thiserror::Error;

use crate::bt::BtError;
use crate::gridworld::GridError;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("invalid evaluation config: {0}")]
    InvalidConfig(String),
    #[error("reports cover different scenarios ({0} and {1})")]
    MismatchedScenarios(u8, u8),
    #[error("unsupported report schema version {0:?}")]
    SchemaVersion(Option<u64>),
    #[error("malformed report: {0}")]
    Format(String),
    #[error(transparent)]
    Tree(#[from] BtError),
    #[error(transparent)]
    Grid(#[from] GridError),
}
