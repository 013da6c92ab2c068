use serde::{Deserialize, Serialize};

use crate::bt::{MissionEnd, MissionTrace};
use crate::compiler::AccTable;
use crate::names::same;

/// What is watched for ACC violations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tracking {
    pub actions: Vec<String>,
    pub conditions: Vec<String>,
}

impl Tracking {
    /// All learned actions and every condition in their ACCs.
    pub fn learned(learned: &[String], acc: &AccTable) -> Self {
        let mut conditions: Vec<String> = Vec::new();
        for a in learned {
            for c in acc.get(a).unwrap_or(&[]) {
                if !conditions.iter().any(|k| same(k, c)) {
                    conditions.push(c.clone());
                }
            }
        }
        Tracking { actions: learned.to_vec(), conditions }
    }
}

/// Per-mission metric inputs, derived only from the trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionMetrics {
    pub end: MissionEnd,
    pub steps: usize,
    /// Steps after which a tracked ACC condition of the executing action was false.
    pub violation_steps: u32,
    /// The same count per tracked condition.
    pub condition_steps: Vec<u32>,
}

impl MissionMetrics {
    pub fn completed(&self) -> bool {
        matches!(self.end, MissionEnd::RootSuccess | MissionEnd::AlreadySucceeded)
    }
}

/// Counts violations: a step counts when it was taken by a tracked action and
/// left one of that action's tracked ACC conditions false. Conditions outside
/// the executing action's ACC never count.
pub fn mission_metrics<A>(trace: &MissionTrace<A>, acc: &AccTable, tracking: &Tracking) -> MissionMetrics {
    let cols: Vec<Option<usize>> = tracking.conditions.iter().map(|c| trace.condition_index(c)).collect();
    let mut condition_steps = vec![0u32; tracking.conditions.len()];
    let mut violation_steps = 0;
    for (i, rec) in trace.steps.iter().enumerate() {
        if !tracking.actions.iter().any(|a| same(a, &rec.executing_action)) {
            continue;
        }
        let Some(acc) = acc.get(&rec.executing_action) else { continue };
        let after = trace.conditions_after(i);
        let mut any = false;
        for (k, c) in tracking.conditions.iter().enumerate() {
            if !acc.iter().any(|x| same(x, c)) {
                continue;
            }
            if let Some(col) = cols[k] {
                if !after[col] {
                    condition_steps[k] += 1;
                    any = true;
                }
            }
        }
        violation_steps += any as u32;
    }
    MissionMetrics { end: trace.reason, steps: trace.len(), violation_steps, condition_steps }
}
