use serde::{Deserialize, Serialize};

use super::RlError;
use crate::compiler::{find_action, AccTable, ActionSpec};
use crate::gridworld::{condition, WorldState};

/// Reward magnitudes and episode rule for one training run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RewardConfig {
    pub preset: String,
    /// Reward when the postcondition holds after the step.
    pub m_p: f64,
    /// Reward for an ordinary step.
    pub m_t: f64,
    /// Reward when an ACC condition is false after the step; 0 disables it.
    pub m_acc: f64,
    pub end_episode_on_acc: bool,
}

pub const PRESETS: [&str; 4] = ["standard", "neg_reward", "end_episode", "nr_ee"];

impl RewardConfig {
    pub fn preset(name: &str) -> Result<Self, RlError> {
        let (m_acc, end) = match name {
            "standard" => (0.0, false),
            "neg_reward" => (-10.0, false),
            "end_episode" => (0.0, true),
            "nr_ee" => (-1000.0, true),
            _ => return Err(RlError::UnknownPreset(name.to_string())),
        };
        Ok(RewardConfig { preset: name.to_string(), m_p: 1000.0, m_t: -0.1, m_acc, end_episode_on_acc: end })
    }

    pub fn validate(&self) -> Result<(), RlError> {
        let finite = self.m_p.is_finite() && self.m_t.is_finite() && self.m_acc.is_finite();
        let ordered = self.m_p > 0.0 && self.m_t <= 0.0 && (self.m_acc == 0.0 || self.m_acc <= self.m_t);
        if finite && ordered {
            Ok(())
        } else {
            Err(RlError::InvalidReward(format!(
                "need m_p > 0 >= m_t >= m_acc (or m_acc = 0), got m_p={} m_t={} m_acc={}",
                self.m_p, self.m_t, self.m_acc
            )))
        }
    }
}

/// Which reward case fired for a transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewardCase {
    Postcondition,
    AccViolation,
    Step,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewardOutcome {
    pub value: f64,
    pub case: RewardCase,
    /// Some ACC condition is false after the step, whatever case fired.
    pub acc_violated: bool,
}

/// The reward rule for one learned action.
#[derive(Debug, Clone)]
pub struct RewardModel {
    postcondition: String,
    acc: Vec<String>,
    config: RewardConfig,
}

impl RewardModel {
    pub fn new(action: &str, actions: &[ActionSpec], acc: &AccTable, config: RewardConfig) -> Result<Self, RlError> {
        let spec = find_action(actions, action).ok_or_else(|| RlError::UnknownAction(action.to_string()))?;
        let acc = acc.get(action).ok_or_else(|| RlError::NoAccTable(action.to_string()))?;
        Ok(Self::from_parts(spec.postcondition.clone(), acc.to_vec(), config))
    }

    pub fn from_parts(postcondition: String, acc: Vec<String>, config: RewardConfig) -> Self {
        RewardModel { postcondition, acc, config }
    }

    pub fn config(&self) -> &RewardConfig {
        &self.config
    }

    pub fn acc(&self) -> &[String] {
        &self.acc
    }

    pub fn evaluate(&self, next: &WorldState) -> Result<RewardOutcome, RlError> {
        let post = condition(&self.postcondition, next)?;
        let mut violated = false;
        for c in &self.acc {
            if !condition(c, next)? {
                violated = true;
                break;
            }
        }
        Ok(self.classify(post, violated))
    }

    /// The case rule on precomputed truth values.
    pub fn classify(&self, postcondition: bool, acc_violated: bool) -> RewardOutcome {
        let (value, case) = if postcondition {
            (self.config.m_p, RewardCase::Postcondition)
        } else if acc_violated && self.config.m_acc != 0.0 {
            (self.config.m_acc, RewardCase::AccViolation)
        } else {
            (self.config.m_t, RewardCase::Step)
        };
        RewardOutcome { value, case, acc_violated }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(preset: &str) -> RewardModel {
        RewardModel::from_parts("p".into(), vec!["c".into()], RewardConfig::preset(preset).unwrap())
    }

    #[test]
    fn presets_are_valid() {
        for p in PRESETS {
            RewardConfig::preset(p).unwrap().validate().unwrap();
        }
        assert!(RewardConfig::preset("greedy").is_err());
    }

    #[test]
    fn invalid_orderings_rejected() {
        let mut c = RewardConfig::preset("neg_reward").unwrap();
        c.m_acc = -0.05;
        assert!(c.validate().is_err());
        c.m_acc = -10.0;
        c.m_p = 0.0;
        assert!(c.validate().is_err());
        c.m_p = 1000.0;
        c.m_t = 0.5;
        assert!(c.validate().is_err());
    }

    #[test]
    fn postcondition_wins() {
        for p in PRESETS {
            let o = model(p).classify(true, true);
            assert_eq!(o.value, 1000.0);
            assert_eq!(o.case, RewardCase::Postcondition);
        }
    }

    #[test]
    fn violation_values() {
        assert_eq!(model("neg_reward").classify(false, true).value, -10.0);
        assert_eq!(model("nr_ee").classify(false, true).value, -1000.0);
        assert_eq!(model("standard").classify(false, true).value, -0.1);
        assert_eq!(model("end_episode").classify(false, true).value, -0.1);
        assert!(model("end_episode").classify(false, true).acc_violated);
        assert_eq!(model("nr_ee").classify(false, false).value, -0.1);
    }
}
