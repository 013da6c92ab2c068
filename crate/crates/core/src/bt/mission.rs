use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::{tick, Bindings, BtError, Node, Status};

/// A discrete-time system driven by the root's selected controller.
pub trait Environment {
    type State;
    type Action: Copy;

    fn state(&self) -> &Self::State;
    /// Advances one step. An error signals a policy or binding bug.
    fn apply(&mut self, action: Self::Action) -> Result<(), String>;
    /// True once the agent can no longer act (e.g. it died).
    fn is_terminal(&self) -> bool;
    fn time(&self) -> u64;
    fn digest(&self) -> String;
}

/// Maps the executing action leaf to a primitive action.
pub trait Controller<S: ?Sized> {
    type Action;

    fn control(&self, action: &str, state: &S) -> Result<Self::Action, BtError>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MissionEnd {
    AlreadySucceeded,
    RootSuccess,
    RootFailure,
    AgentDied,
    StepLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord<A> {
    pub step: usize,
    pub t: u64,
    pub digest: String,
    pub executing_action: String,
    pub status: Status,
    pub action: A,
    /// Truth of the watched conditions in the state the tick saw.
    pub conditions: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionTrace<A> {
    pub condition_names: Vec<String>,
    pub steps: Vec<StepRecord<A>>,
    pub final_conditions: Vec<bool>,
    pub final_t: u64,
    pub reason: MissionEnd,
}

impl<A> MissionTrace<A> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Condition truth after step `i` was applied.
    pub fn conditions_after(&self, i: usize) -> &[bool] {
        match self.steps.get(i + 1) {
            Some(next) => &next.conditions,
            None => &self.final_conditions,
        }
    }

    pub fn condition_index(&self, name: &str) -> Option<usize> {
        self.condition_names.iter().position(|c| crate::names::same(c, name))
    }
}

impl<A: Serialize> MissionTrace<A> {
    /// One JSON object per step.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> io::Result<()> {
        #[derive(Serialize)]
        struct Line<'a, A> {
            step: usize,
            t: u64,
            digest: &'a str,
            executing_action: &'a str,
            status: Status,
            action: &'a A,
            conditions: BTreeMap<&'a str, bool>,
        }
        for rec in &self.steps {
            let line = Line {
                step: rec.step,
                t: rec.t,
                digest: &rec.digest,
                executing_action: &rec.executing_action,
                status: rec.status,
                action: &rec.action,
                conditions: self
                    .condition_names
                    .iter()
                    .map(String::as_str)
                    .zip(rec.conditions.iter().copied())
                    .collect(),
            };
            serde_json::to_writer(&mut w, &line)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Ticks the root and applies the selected controller until the root
/// leaves its running region, the agent dies, or `max_steps` is reached.
pub fn step_mission<E, B, C>(
    root: &Node,
    env: &mut E,
    bindings: &B,
    controller: &C,
    watch: &[String],
    max_steps: usize,
) -> Result<MissionTrace<E::Action>, BtError>
where
    E: Environment,
    B: Bindings<E::State> + ?Sized,
    C: Controller<E::State, Action = E::Action> + ?Sized,
{
    let truth =
        |env: &E| -> Result<Vec<bool>, BtError> { watch.iter().map(|c| bindings.condition(c, env.state())).collect() };
    let mut steps = Vec::new();
    let reason = loop {
        if env.is_terminal() {
            break MissionEnd::AgentDied;
        }
        let r = tick(root, env.state(), bindings)?;
        match r.status {
            Status::Success if steps.is_empty() => break MissionEnd::AlreadySucceeded,
            Status::Success => break MissionEnd::RootSuccess,
            Status::Failure => break MissionEnd::RootFailure,
            Status::Running => {}
        }
        if steps.len() >= max_steps {
            break MissionEnd::StepLimit;
        }
        let name = r.executing_action.expect("running tick selects an action");
        let action = controller.control(&name, env.state())?;
        let record = StepRecord {
            step: steps.len(),
            t: env.time(),
            digest: env.digest(),
            executing_action: name,
            status: r.status,
            action,
            conditions: truth(env)?,
        };
        env.apply(action).map_err(BtError::EnvironmentFault)?;
        steps.push(record);
    };
    Ok(MissionTrace {
        condition_names: watch.to_vec(),
        final_conditions: truth(env)?,
        final_t: env.time(),
        steps,
        reason,
    })
}
