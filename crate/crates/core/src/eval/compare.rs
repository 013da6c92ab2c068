use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::harness::EvalReport;
use super::EvalError;

/// Relative spread of completion means under which differences are "small".
pub const SMALL_COMPLETION_SPREAD: f64 = 0.10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineCheck {
    pub preset: String,
    /// The baseline has strictly more violation episodes than this preset.
    pub more_violations: bool,
    /// The baseline's completion mean is strictly larger than this preset's.
    pub slower_completion: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonSummary {
    pub scenario: u8,
    /// Presets from fewest to most violation episodes; tied presets share a group.
    pub by_violations: Vec<Vec<String>>,
    /// Presets from fastest to slowest completion; presets without completions come last.
    pub by_completion: Vec<Vec<String>>,
    pub baseline: Option<String>,
    pub baseline_checks: Vec<BaselineCheck>,
    pub notes: Vec<String>,
}

/// Ranks presets over the same scenario and checks the baseline against the rest.
pub fn compare(reports: &[EvalReport], baseline: &str) -> Result<ComparisonSummary, EvalError> {
    if reports.len() < 2 {
        return Err(EvalError::InvalidConfig("comparison needs at least two reports".into()));
    }
    let scenario = reports[0].scenario;
    if let Some(r) = reports.iter().find(|r| r.scenario != scenario) {
        return Err(EvalError::MismatchedScenarios(scenario, r.scenario));
    }
    let violations: Vec<f64> = reports.iter().map(|r| r.pct_episodes_with_acc_violation).collect();
    let completion: Vec<f64> = reports.iter().map(|r| r.completion_steps.mean.unwrap_or(f64::INFINITY)).collect();
    let by_violations = rank(reports, &violations);
    let by_completion = rank(reports, &completion);

    let mut notes = Vec::new();
    for (what, groups) in [("violations", &by_violations), ("completion", &by_completion)] {
        for g in groups.iter().filter(|g| g.len() > 1) {
            notes.push(format!("tie on {what}: {}", g.join(" = ")));
        }
    }
    let finite: Vec<f64> = completion.iter().copied().filter(|v| v.is_finite()).collect();
    if finite.len() >= 2 {
        let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if lo > 0.0 && (hi - lo) / lo < SMALL_COMPLETION_SPREAD {
            notes.push(format!("completion differences small ({:.1}% spread)", 100.0 * (hi - lo) / lo));
        }
    }

    let base = reports.iter().position(|r| r.preset == baseline);
    let baseline_checks = match base {
        Some(b) => reports
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != b)
            .map(|(i, r)| BaselineCheck {
                preset: r.preset.clone(),
                more_violations: violations[b] > violations[i],
                slower_completion: completion[b] > completion[i],
            })
            .collect(),
        None => Vec::new(),
    };
    Ok(ComparisonSummary {
        scenario,
        by_violations,
        by_completion,
        baseline: base.map(|b| reports[b].preset.clone()),
        baseline_checks,
        notes,
    })
}

fn rank(reports: &[EvalReport], key: &[f64]) -> Vec<Vec<String>> {
    let mut idx: Vec<usize> = (0..reports.len()).collect();
    idx.sort_by(|&a, &b| key[a].partial_cmp(&key[b]).unwrap_or(Ordering::Equal).then(a.cmp(&b)));
    let mut groups: Vec<Vec<String>> = Vec::new();
    let mut last: Option<f64> = None;
    for i in idx {
        match (last, groups.last_mut()) {
            (Some(v), Some(g)) if v == key[i] => g.push(reports[i].preset.clone()),
            _ => groups.push(vec![reports[i].preset.clone()]),
        }
        last = Some(key[i]);
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::aggregate;
    use crate::eval::{EvalConfig, Tracking};
    use std::collections::BTreeMap;

    pub(crate) fn report(preset: &str, scenario: u8, pct: f64, completion: f64) -> EvalReport {
        let config = EvalConfig {
            scenario,
            episodes: 1,
            step_cap: 2000,
            preset: preset.into(),
            tracking: Tracking { actions: vec![], conditions: vec![] },
            policies: BTreeMap::new(),
            seed: 0,
            jobs: 1,
        };
        let mut r = aggregate(&config, &[]);
        r.pct_episodes_with_acc_violation = pct;
        r.completion_steps.mean = Some(completion);
        r
    }

    #[test]
    fn violation_ranking() {
        let rs = [
            report("standard", 2, 100.0, 952.0),
            report("neg_reward", 2, 18.6, 700.0),
            report("end_episode", 2, 1.1, 300.0),
            report("nr_ee", 2, 0.0, 176.0),
        ];
        let s = compare(&rs, "standard").unwrap();
        let order: Vec<&str> = s.by_violations.iter().map(|g| g[0].as_str()).collect();
        assert_eq!(order, ["nr_ee", "end_episode", "neg_reward", "standard"]);
        assert!(s.baseline_checks.iter().all(|c| c.more_violations && c.slower_completion));
        assert!(!s.notes.iter().any(|n| n.contains("small")));
    }

    #[test]
    fn ties_are_explicit() {
        let rs = [report("a", 1, 5.0, 100.0), report("b", 1, 5.0, 100.0)];
        let s = compare(&rs, "a").unwrap();
        assert_eq!(s.by_violations, vec![vec!["a".to_string(), "b".to_string()]]);
        assert!(s.notes.iter().any(|n| n == "tie on violations: a = b"));
        assert!(!s.baseline_checks[0].more_violations);
    }

    #[test]
    fn small_completion_spread_is_noted() {
        let rs = [
            report("standard", 1, 20.8, 437.0),
            report("neg_reward", 1, 5.6, 422.0),
            report("end_episode", 1, 3.4, 446.0),
            report("nr_ee", 1, 2.9, 460.0),
        ];
        let s = compare(&rs, "standard").unwrap();
        assert!(s.notes.iter().any(|n| n.starts_with("completion differences small")));
        assert!(s.baseline_checks.iter().all(|c| c.more_violations));
    }

    #[test]
    fn scenarios_must_match() {
        let rs = [report("a", 1, 0.0, 1.0), report("b", 2, 0.0, 1.0)];
        assert!(matches!(compare(&rs, "a"), Err(EvalError::MismatchedScenarios(1, 2))));
        assert!(compare(&rs[..1], "a").is_err());
    }
}
