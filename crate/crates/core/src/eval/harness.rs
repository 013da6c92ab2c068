use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::{mission_metrics, MissionMetrics, Tracking};
use super::stats::{RunningStats, Summary};
use super::EvalError;
use crate::binding::SpecBindings;
use crate::bt::{step_mission, BehaviorTree, MissionEnd, MissionTrace};
use crate::compiler::{AccTable, ActionSpec};
use crate::gridworld::{make_scenario, GridConfig, GridEnv, PrimitiveAction};
use crate::policy::PolicySet;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub scenario: u8,
    pub episodes: u32,
    pub step_cap: u32,
    /// Label of the training preset, for reporting only.
    pub preset: String,
    pub tracking: Tracking,
    /// Where each learned policy came from, for reporting only.
    pub policies: BTreeMap<String, String>,
    pub seed: u64,
    /// Worker threads; results do not depend on it.
    pub jobs: usize,
}

/// The compiled tree, its tables and the world rules.
#[derive(Debug, Clone, Copy)]
pub struct EvalSetup<'a> {
    pub tree: &'a BehaviorTree,
    pub actions: &'a [ActionSpec],
    pub acc: &'a AccTable,
    pub grid: &'a GridConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionBreakdown {
    pub condition: String,
    pub pct_episodes: f64,
    pub steps: Summary,
}

/// Aggregate metrics for one (scenario, preset) pair.
///
/// Violation figures are over all missions; completion figures are over
/// missions whose root succeeded. Timeouts, deaths and root failures are
/// counted separately and excluded from the completion summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub schema_version: u32,
    pub scenario: u8,
    pub preset: String,
    pub episodes: u32,
    pub seed: u64,
    pub step_cap: u32,
    pub mission_seed_rule: String,
    pub tracked_actions: Vec<String>,
    pub tracked_conditions: Vec<String>,
    pub policies: BTreeMap<String, String>,
    pub pct_episodes_with_acc_violation: f64,
    pub acc_violation_steps: Summary,
    pub completion_steps: Summary,
    pub completed: u32,
    pub timeouts: u32,
    pub deaths: u32,
    pub failures: u32,
    pub per_condition: Vec<ConditionBreakdown>,
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, EvalError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| EvalError::Format(e.to_string()))?;
        let version = value.get("schema_version").and_then(|v| v.as_u64());
        if version != Some(REPORT_SCHEMA_VERSION as u64) {
            return Err(EvalError::SchemaVersion(version));
        }
        serde_json::from_value(value).map_err(|e| EvalError::Format(e.to_string()))
    }
}

const SEED_RULE: &str = "splitmix64(seed ^ splitmix64(index))";

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of mission `index`; independent of how missions are scheduled.
pub fn mission_seed(seed: u64, index: u32) -> u64 {
    splitmix64(seed ^ splitmix64(index as u64))
}

/// Runs one mission with greedy policies.
pub fn run_mission(
    setup: EvalSetup<'_>,
    policies: &PolicySet,
    config: &EvalConfig,
    index: u32,
) -> Result<MissionTrace<PrimitiveAction>, EvalError> {
    let seed = mission_seed(config.seed, index);
    let state = make_scenario(setup.grid, config.scenario, seed)?;
    let mut env = GridEnv::new(state, splitmix64(seed));
    let bindings = SpecBindings::grid(setup.actions);
    Ok(step_mission(
        setup.tree.root(),
        &mut env,
        &bindings,
        policies,
        &config.tracking.conditions,
        config.step_cap as usize,
    )?)
}

pub struct EvalOutput {
    pub report: EvalReport,
    pub metrics: Vec<MissionMetrics>,
    /// Present when traces were requested.
    pub traces: Option<Vec<MissionTrace<PrimitiveAction>>>,
}

pub fn evaluate(
    setup: EvalSetup<'_>,
    policies: &PolicySet,
    config: &EvalConfig,
    keep_traces: bool,
) -> Result<EvalOutput, EvalError> {
    if config.episodes == 0 {
        return Err(EvalError::InvalidConfig("episodes must be at least 1".into()));
    }
    if setup.grid.layout(config.scenario).is_none() {
        return Err(EvalError::Grid(crate::gridworld::GridError::InvalidScenario(config.scenario)));
    }
    for a in setup.tree.action_names() {
        let learned = setup.tree.action_kind(&a) == Some(crate::bt::ImplKind::Learned);
        if learned && !config.policies.keys().any(|k| crate::names::same(k, &a)) {
            return Err(EvalError::InvalidConfig(format!("no policy given for learned action `{a}`")));
        }
    }
    let run = |i: u32| -> Result<(MissionMetrics, Option<MissionTrace<PrimitiveAction>>), EvalError> {
        let trace = run_mission(setup, policies, config, i)?;
        let m = mission_metrics(&trace, setup.acc, &config.tracking);
        Ok((m, keep_traces.then_some(trace)))
    };
    let results: Vec<_> = if config.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| EvalError::InvalidConfig(e.to_string()))?;
        pool.install(|| (0..config.episodes).into_par_iter().map(run).collect::<Result<Vec<_>, _>>())?
    } else {
        (0..config.episodes).map(run).collect::<Result<Vec<_>, _>>()?
    };
    let (metrics, traces): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let report = aggregate(config, &metrics);
    let traces = keep_traces.then(|| traces.into_iter().flatten().collect());
    Ok(EvalOutput { report, metrics, traces })
}

/// Folds per-mission metrics, in mission order, into a report.
pub fn aggregate(config: &EvalConfig, metrics: &[MissionMetrics]) -> EvalReport {
    let n = metrics.len().max(1) as f64;
    let pct = |k: usize| 100.0 * k as f64 / n;
    let violation_steps: RunningStats = metrics.iter().map(|m| m.violation_steps as f64).collect();
    let completion: RunningStats = metrics.iter().filter(|m| m.completed()).map(|m| m.steps as f64).collect();
    let count = |end: MissionEnd| metrics.iter().filter(|m| m.end == end).count() as u32;
    let per_condition = config
        .tracking
        .conditions
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let steps: RunningStats = metrics.iter().map(|m| m.condition_steps[k] as f64).collect();
            ConditionBreakdown {
                condition: c.clone(),
                pct_episodes: pct(metrics.iter().filter(|m| m.condition_steps[k] > 0).count()),
                steps: steps.summary(),
            }
        })
        .collect();
    EvalReport {
        schema_version: REPORT_SCHEMA_VERSION,
        scenario: config.scenario,
        preset: config.preset.clone(),
        episodes: config.episodes,
        seed: config.seed,
        step_cap: config.step_cap,
        mission_seed_rule: SEED_RULE.to_string(),
        tracked_actions: config.tracking.actions.clone(),
        tracked_conditions: config.tracking.conditions.clone(),
        policies: config.policies.clone(),
        pct_episodes_with_acc_violation: pct(metrics.iter().filter(|m| m.violation_steps > 0).count()),
        acc_violation_steps: violation_steps.summary(),
        completion_steps: completion.summary(),
        completed: metrics.iter().filter(|m| m.completed()).count() as u32,
        timeouts: count(MissionEnd::StepLimit),
        deaths: count(MissionEnd::AgentDied),
        failures: count(MissionEnd::RootFailure),
        per_condition,
    }
}
