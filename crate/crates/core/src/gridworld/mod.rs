//! A small seeded gridworld with fire, a hostile, a cow and hunger.

mod conditions;
mod config;
mod dynamics;
mod scenario;
mod scripted;
mod state;

pub use conditions::{condition, CONDITIONS};
pub use config::{GridConfig, Rules, ScenarioLayout};
pub use dynamics::{step, PrimitiveAction};
pub use scenario::{make_scenario, spawn};
pub use scripted::{scripted_policy, SCRIPTED_ACTIONS};
pub use state::{Agent, Apple, Cow, Hostile, Inventory, Pos, Rect, WorldState};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bt::Environment;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("unknown condition `{0}`")]
    UnknownCondition(String),
    #[error("no scripted policy for action `{0}`")]
    UnknownAction(String),
    #[error("invalid scenario id {0}")]
    InvalidScenario(u8),
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
}

/// Short content hash of a state.
pub fn digest(s: &WorldState) -> String {
    let h = Sha256::digest(s.to_json().as_bytes());
    hex::encode(&h[..8])
}

/// A state plus its own random stream.
#[derive(Debug, Clone)]
pub struct GridEnv {
    state: WorldState,
    rng: ChaCha8Rng,
}

impl GridEnv {
    pub fn new(state: WorldState, seed: u64) -> Self {
        GridEnv { state, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn with_rng(state: WorldState, rng: ChaCha8Rng) -> Self {
        GridEnv { state, rng }
    }

    pub fn rng_mut(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn set_state(&mut self, state: WorldState) {
        self.state = state;
    }

    pub fn into_parts(self) -> (WorldState, ChaCha8Rng) {
        (self.state, self.rng)
    }
}

impl Environment for GridEnv {
    type State = WorldState;
    type Action = PrimitiveAction;

    fn state(&self) -> &WorldState {
        &self.state
    }

    fn apply(&mut self, action: PrimitiveAction) -> Result<(), String> {
        if !self.state.agent.alive {
            return Err(format!("{action:?} applied after the agent died"));
        }
        self.state = step(&self.state, action, &mut self.rng);
        Ok(())
    }

    fn is_terminal(&self) -> bool {
        !self.state.agent.alive
    }

    fn time(&self) -> u64 {
        self.state.t
    }

    fn digest(&self) -> String {
        digest(&self.state)
    }
}
