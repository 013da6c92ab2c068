use std::io::Write;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::features::FeatureCodec;
use super::qtable::{Hyperparameters, QTable};
use super::reward::{RewardConfig, RewardModel};
use super::RlError;
use crate::binding::SpecBindings;
use crate::bt::{tick, BehaviorTree, ImplKind, Status};
use crate::compiler::{AccTable, ActionSpec};
use crate::gridworld::{make_scenario, scripted_policy, step, GridConfig, WorldState};
use crate::names::same;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EpisodeEnd {
    Postcondition,
    AccViolation,
    Death,
    StepLimit,
}

impl EpisodeEnd {
    pub fn as_str(self) -> &'static str {
        match self {
            EpisodeEnd::Postcondition => "Postcondition",
            EpisodeEnd::AccViolation => "AccViolation",
            EpisodeEnd::Death => "Death",
            EpisodeEnd::StepLimit => "StepLimit",
        }
    }
}

/// One training episode of the trained action.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeLog {
    pub episode: u64,
    pub mission: u64,
    /// World time when the episode began and after its last step.
    pub t_start: u64,
    pub t_end: u64,
    pub reward: f64,
    pub reason: EpisodeEnd,
    /// Steps whose resulting state violated an ACC condition.
    pub acc_steps: u32,
    /// Steps taken by other actions in the same mission since the previous episode.
    pub other_steps_before: u64,
    pub step_rewards: Vec<f64>,
}

impl EpisodeLog {
    pub fn len(&self) -> usize {
        self.step_rewards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.step_rewards.is_empty()
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    episode: u64,
    mission: u64,
    t_start: u64,
    t_end: u64,
    steps: usize,
    reward: f64,
    reason: &'a str,
    acc_steps: u32,
    other_steps_before: u64,
}

/// Writes the training log as CSV, one row per episode.
pub fn write_episode_csv<W: Write>(logs: &[EpisodeLog], w: W) -> Result<(), RlError> {
    let mut out = csv::Writer::from_writer(w);
    for e in logs {
        out.serialize(CsvRow {
            episode: e.episode,
            mission: e.mission,
            t_start: e.t_start,
            t_end: e.t_end,
            steps: e.len(),
            reward: e.reward,
            reason: e.reason.as_str(),
            acc_steps: e.acc_steps,
            other_steps_before: e.other_steps_before,
        })
        .map_err(|e| RlError::Io(e.to_string()))?;
    }
    out.flush().map_err(|e| RlError::Io(e.to_string()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainOptions {
    /// Steps taken by the trained action.
    pub total_steps: u64,
    pub seed: u64,
    pub hyper: Hyperparameters,
    /// Missions longer than this are reset.
    pub mission_step_cap: u64,
    /// Guard against a trained action the tree never selects.
    pub max_env_steps: u64,
}

impl TrainOptions {
    pub fn new(total_steps: u64, seed: u64) -> Self {
        TrainOptions {
            total_steps,
            seed,
            hyper: Hyperparameters::default(),
            mission_step_cap: 2000,
            max_env_steps: total_steps.saturating_mul(50).saturating_add(100_000),
        }
    }
}

/// Compiled tree and its tables.
#[derive(Debug, Clone, Copy)]
pub struct TrainSetup<'a> {
    pub tree: &'a BehaviorTree,
    pub actions: &'a [ActionSpec],
    pub acc: &'a AccTable,
}

/// Starting states for successive missions.
pub trait ScenarioSampler {
    fn sample(&mut self, mission: u64, rng: &mut ChaCha8Rng) -> Result<WorldState, RlError>;
}

/// Scenarios a learned action trains in unless told otherwise: the hostile
/// fight is practised where it starts, the cow chase where the agent is hungry.
pub fn default_training_scenarios(action: &str) -> Vec<u8> {
    match FeatureCodec::for_action(action) {
        Some(FeatureCodec::DefeatHostile) => vec![1],
        Some(FeatureCodec::ChaseCow) => vec![2],
        None => vec![1, 2],
    }
}

/// Cycles through scenario ids with freshly drawn spawn seeds.
#[derive(Debug, Clone)]
pub struct ScenarioCycle {
    pub config: GridConfig,
    pub ids: Vec<u8>,
}

impl ScenarioCycle {
    pub fn new(config: GridConfig, ids: Vec<u8>) -> Self {
        assert!(!ids.is_empty(), "scenario cycle needs at least one id");
        ScenarioCycle { config, ids }
    }
}

impl ScenarioSampler for ScenarioCycle {
    fn sample(&mut self, mission: u64, rng: &mut ChaCha8Rng) -> Result<WorldState, RlError> {
        let id = self.ids[(mission % self.ids.len() as u64) as usize];
        Ok(make_scenario(&self.config, id, rng.gen())?)
    }
}

impl<F: FnMut(u64, &mut ChaCha8Rng) -> WorldState> ScenarioSampler for F {
    fn sample(&mut self, mission: u64, rng: &mut ChaCha8Rng) -> Result<WorldState, RlError> {
        Ok(self(mission, rng))
    }
}

#[derive(Debug, Clone)]
pub struct TrainOutput {
    pub qtable: QTable,
    pub episodes: Vec<EpisodeLog>,
    pub trained_steps: u64,
    pub env_steps: u64,
    pub missions: u64,
}

struct Open {
    log: EpisodeLog,
}

/// Trains `action_id` inside full missions of the tree.
///
/// Once the tree selects the trained action it keeps control until its
/// episode ends, even if an ACC is violated on the way; only the End
/// Episode rule hands control back early. The world is only reset when the
/// agent dies, the root stops running or the mission cap is hit; between
/// episodes the rest of the tree runs with scripted controllers.
pub fn train(
    setup: TrainSetup<'_>,
    action_id: &str,
    config: &RewardConfig,
    opts: &TrainOptions,
    sampler: &mut dyn ScenarioSampler,
) -> Result<TrainOutput, RlError> {
    match setup.tree.action_kind(action_id) {
        None => return Err(RlError::UnknownAction(action_id.to_string())),
        Some(ImplKind::Scripted) => return Err(RlError::NonLearnedAction(action_id.to_string())),
        Some(ImplKind::Learned) => {}
    }
    config.validate()?;
    opts.hyper.validate()?;
    let model = RewardModel::new(action_id, setup.actions, setup.acc, config.clone())?;
    let codec = FeatureCodec::for_action(action_id).ok_or_else(|| RlError::NoCodec(action_id.to_string()))?;
    let mut q = QTable::new(action_id, codec, opts.hyper);
    let mut out = TrainOutput { qtable: q.clone(), episodes: Vec::new(), trained_steps: 0, env_steps: 0, missions: 0 };
    if opts.total_steps == 0 {
        return Ok(out);
    }

    let bindings = SpecBindings::grid(setup.actions);
    let actions = codec.actions();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut mission = 0u64;
    let mut state = sampler.sample(mission, &mut rng)?;
    let mut mission_steps = 0u64;
    let mut other_steps = 0u64;
    let mut open: Option<Open> = None;

    while out.trained_steps < opts.total_steps && out.env_steps < opts.max_env_steps {
        let Some(ep) = open.as_mut() else {
            let reset = !state.agent.alive || mission_steps >= opts.mission_step_cap || {
                let r = tick(setup.tree.root(), &state, &bindings)?;
                if r.status != Status::Running {
                    true
                } else {
                    let name = r.executing_action.expect("running tick names an action");
                    if same(&name, action_id) {
                        open = Some(Open {
                            log: EpisodeLog {
                                episode: out.episodes.len() as u64,
                                mission,
                                t_start: state.t,
                                t_end: state.t,
                                reward: 0.0,
                                reason: EpisodeEnd::StepLimit,
                                acc_steps: 0,
                                other_steps_before: other_steps,
                                step_rewards: Vec::new(),
                            },
                        });
                    } else {
                        let a = scripted_policy(&name, &state)?;
                        state = step(&state, a, &mut rng);
                        mission_steps += 1;
                        out.env_steps += 1;
                        other_steps += 1;
                    }
                    false
                }
            };
            if reset {
                mission += 1;
                state = sampler.sample(mission, &mut rng)?;
                mission_steps = 0;
                other_steps = 0;
            }
            continue;
        };

        let s = codec.encode(&state);
        let eps = opts.hyper.epsilon(out.trained_steps, opts.total_steps);
        let a = if rng.gen::<f64>() < eps { rng.gen_range(0..actions.len()) } else { q.greedy(&s) };
        let next = step(&state, actions[a], &mut rng);
        let outcome = model.evaluate(&next)?;
        ep.log.step_rewards.push(outcome.value);
        ep.log.reward += outcome.value;
        ep.log.acc_steps += outcome.acc_violated as u32;
        ep.log.t_end = next.t;
        mission_steps += 1;
        out.env_steps += 1;
        out.trained_steps += 1;

        let end = if outcome.case == super::RewardCase::Postcondition {
            Some(EpisodeEnd::Postcondition)
        } else if !next.agent.alive {
            Some(EpisodeEnd::Death)
        } else if config.end_episode_on_acc && outcome.acc_violated {
            Some(EpisodeEnd::AccViolation)
        } else if ep.log.len() as u64 >= opts.hyper.episode_step_limit as u64 || mission_steps >= opts.mission_step_cap
        {
            Some(EpisodeEnd::StepLimit)
        } else {
            None
        };
        let terminal = matches!(end, Some(EpisodeEnd::Postcondition | EpisodeEnd::Death | EpisodeEnd::AccViolation));
        q.q_update(s, a, outcome.value, codec.encode(&next), terminal);
        state = next;
        if let Some(reason) = end {
            let mut done = open.take().expect("open episode").log;
            done.reason = reason;
            out.episodes.push(done);
            other_steps = 0;
        }
    }
    if let Some(o) = open {
        out.episodes.push(o.log);
    }
    out.missions = mission + 1;
    out.qtable = q;
    Ok(out)
}
