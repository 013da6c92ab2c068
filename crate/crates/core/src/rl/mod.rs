//! Tabular Q-learning of learned action leaves with an ACC-aware reward.

mod features;
mod qtable;
mod reward;
mod train;

pub use features::{FeatureCodec, Features, CODEC_VERSION};
pub use qtable::{extract_policy, GreedyPolicy, Hyperparameters, QTable, QTABLE_FORMAT, QTABLE_VERSION};
pub use reward::{RewardCase, RewardConfig, RewardModel, RewardOutcome, PRESETS};
pub use train::{
    default_training_scenarios, train, write_episode_csv, EpisodeEnd, EpisodeLog, ScenarioCycle, ScenarioSampler,
    TrainOptions, TrainOutput, TrainSetup,
};

use thiserror::Error;

use crate::bt::BtError;
use crate::gridworld::GridError;

#[derive(Debug, Error)]
pub enum RlError {
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("action `{0}` is not marked learned")]
    NonLearnedAction(String),
    #[error("no ACC entry for action `{0}`")]
    NoAccTable(String),
    #[error("no feature codec for action `{0}`")]
    NoCodec(String),
    #[error("unknown preset `{0}` (expected standard, neg_reward, end_episode or nr_ee)")]
    UnknownPreset(String),
    #[error("invalid reward config: {0}")]
    InvalidReward(String),
    #[error("invalid hyperparameters: {0}")]
    InvalidHyperparameters(String),
    #[error("malformed q-table: {0}")]
    Format(String),
    #[error("incompatible q-table: {0}")]
    Incompatible(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Tree(#[from] BtError),
    #[error(transparent)]
    Grid(#[from] GridError),
}
