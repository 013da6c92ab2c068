use std::collections::BTreeMap;

use crate::bt::{BtError, Controller};
use crate::gridworld::{scripted_policy, PrimitiveAction, WorldState};
use crate::names::normalize;
use crate::rl::GreedyPolicy;

/// Controllers for the action leaves: greedy learned policies where given,
/// scripted ones everywhere else.
#[derive(Debug, Clone, Default)]
pub struct PolicySet {
    learned: BTreeMap<String, GreedyPolicy>,
}

impl PolicySet {
    pub fn scripted() -> Self {
        PolicySet::default()
    }

    pub fn with_learned(mut self, action: &str, policy: GreedyPolicy) -> Self {
        self.learned.insert(normalize(action), policy);
        self
    }

    pub fn insert(&mut self, action: &str, policy: GreedyPolicy) {
        self.learned.insert(normalize(action), policy);
    }

    pub fn is_learned(&self, action: &str) -> bool {
        self.learned.contains_key(&normalize(action))
    }
}

impl Controller<WorldState> for PolicySet {
    type Action = PrimitiveAction;

    fn control(&self, action: &str, state: &WorldState) -> Result<PrimitiveAction, BtError> {
        match self.learned.get(&normalize(action)) {
            Some(p) => Ok(p.act(state)),
            None => scripted_policy(action, state)
                .map_err(|e| BtError::Controller { action: action.to_string(), message: e.to_string() }),
        }
    }
}
