use accbt::bt::{MissionEnd, MissionTrace};
use accbt::eval::{evaluate, mission_seed, run_mission, EvalConfig, EvalError, EvalSetup, RunningStats, Tracking};
use accbt::gridworld::{GridConfig, PrimitiveAction};
use accbt::rl::{train, ScenarioCycle, TrainOptions, TrainSetup};
use accbt::{extract_policy, AccTable, Compiled, PolicySet, RewardConfig};

mod common;

const LEARNED: [&str; 2] = ["Defeat hostile", "Chase cow"];

fn config(c: &Compiled, scenario: u8, episodes: u32, seed: u64, jobs: usize) -> EvalConfig {
    let learned: Vec<String> = LEARNED.iter().map(|s| s.to_string()).collect();
    EvalConfig {
        scenario,
        episodes,
        step_cap: 2000,
        preset: "test".into(),
        tracking: Tracking::learned(&learned, &c.acc),
        policies: learned.iter().map(|a| (a.clone(), "test".into())).collect(),
        seed,
        jobs,
    }
}

/// A quickly trained policy set, so evaluation is not all scripted.
fn policies(c: &Compiled) -> PolicySet {
    let setup = TrainSetup { tree: &c.tree, actions: &c.spec.actions, acc: &c.acc };
    let mut set = PolicySet::scripted();
    for (action, scenario) in [("Defeat hostile", 1), ("Chase cow", 2)] {
        let mut sampler = ScenarioCycle::new(GridConfig::default(), vec![scenario]);
        let out = train(
            setup,
            action,
            &RewardConfig::preset("standard").unwrap(),
            &TrainOptions::new(20_000, 8),
            &mut sampler,
        )
        .unwrap();
        set.insert(action, extract_policy(&out.qtable));
    }
    set
}

/// Independent reading of the violation rule on a stored trace.
fn violation_steps(trace: &MissionTrace<PrimitiveAction>, acc: &AccTable) -> u32 {
    let mut n = 0;
    for (i, rec) in trace.steps.iter().enumerate() {
        if !LEARNED.contains(&rec.executing_action.as_str()) {
            continue;
        }
        let after = if i + 1 < trace.steps.len() { &trace.steps[i + 1].conditions } else { &trace.final_conditions };
        let violated = acc.get(&rec.executing_action).unwrap().iter().any(|c| {
            let col = trace.condition_names.iter().position(|n| n == c).unwrap();
            !after[col]
        });
        n += violated as u32;
    }
    n
}

fn two_pass(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[test]
fn report_matches_recomputation_from_traces() {
    let c = common::survival();
    let grid = GridConfig::default();
    let setup = EvalSetup { tree: &c.tree, actions: &c.spec.actions, acc: &c.acc, grid: &grid };
    let set = policies(&c);
    for scenario in [1, 2] {
        let out = evaluate(setup, &set, &config(&c, scenario, 150, 21, 1), true).unwrap();
        let traces = out.traces.unwrap();
        let steps: Vec<f64> = traces.iter().map(|t| violation_steps(t, &c.acc) as f64).collect();
        let with = steps.iter().filter(|&&s| s > 0.0).count();
        let pct = 100.0 * with as f64 / traces.len() as f64;
        assert!((out.report.pct_episodes_with_acc_violation - pct).abs() < 1e-12);
        let (mean, sd) = two_pass(&steps);
        assert!((out.report.acc_violation_steps.mean.unwrap() - mean).abs() < 1e-9);
        assert!((out.report.acc_violation_steps.sd.unwrap() - sd).abs() < 1e-9);

        let done: Vec<f64> = traces
            .iter()
            .filter(|t| matches!(t.reason, MissionEnd::RootSuccess | MissionEnd::AlreadySucceeded))
            .map(|t| t.len() as f64)
            .collect();
        assert_eq!(out.report.completed as usize, done.len());
        assert_eq!(out.report.completion_steps.n as usize, done.len());
        if done.len() > 1 {
            let (mean, sd) = two_pass(&done);
            assert!((out.report.completion_steps.mean.unwrap() - mean).abs() < 1e-9);
            assert!((out.report.completion_steps.sd.unwrap() - sd).abs() < 1e-9);
        }
        let ends = out.report.completed + out.report.timeouts + out.report.deaths + out.report.failures;
        assert_eq!(ends, 150);
    }
}

#[test]
fn reruns_and_thread_counts_agree() {
    let c = common::survival();
    let grid = GridConfig::default();
    let setup = EvalSetup { tree: &c.tree, actions: &c.spec.actions, acc: &c.acc, grid: &grid };
    let set = policies(&c);
    let a = evaluate(setup, &set, &config(&c, 2, 120, 3, 1), false).unwrap();
    let b = evaluate(setup, &set, &config(&c, 2, 120, 3, 1), false).unwrap();
    let p = evaluate(setup, &set, &config(&c, 2, 120, 3, 4), false).unwrap();
    assert_eq!(a.report.to_json(), b.report.to_json());
    assert_eq!(a.report.to_json(), p.report.to_json());
    assert_eq!(a.metrics, p.metrics);
    let other = evaluate(setup, &set, &config(&c, 2, 120, 4, 1), false).unwrap();
    assert_ne!(a.metrics, other.metrics);
}

#[test]
fn missions_are_addressable_by_index() {
    let c = common::survival();
    let grid = GridConfig::default();
    let setup = EvalSetup { tree: &c.tree, actions: &c.spec.actions, acc: &c.acc, grid: &grid };
    let set = PolicySet::scripted();
    let cfg = config(&c, 2, 10, 77, 1);
    let all = evaluate(setup, &set, &cfg, true).unwrap().traces.unwrap();
    for i in [9, 0, 4] {
        assert_eq!(run_mission(setup, &set, &cfg, i).unwrap(), all[i as usize]);
    }
    let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| mission_seed(77, i)).collect();
    assert_eq!(seeds.len(), 1000);
}

#[test]
fn a_clean_scripted_mission_reaches_every_goal() {
    let c = common::survival();
    let grid = GridConfig::default();
    let setup = EvalSetup { tree: &c.tree, actions: &c.spec.actions, acc: &c.acc, grid: &grid };
    let set = PolicySet::scripted();
    let mut cfg = config(&c, 2, 50, 5, 1);
    cfg.tracking.conditions =
        vec!["Safe from fire".into(), "Safe from hostiles".into(), "Not hungry".into(), "Has sword".into()];
    let out = evaluate(setup, &set, &cfg, true).unwrap();
    let (i, trace) = out
        .traces
        .as_ref()
        .unwrap()
        .iter()
        .enumerate()
        .find(|(i, t)| t.reason == MissionEnd::RootSuccess && out.metrics[*i].violation_steps == 0)
        .expect("some mission finishes cleanly");
    assert!(trace.final_conditions[..3].iter().all(|&b| b), "mission {i}: {:?}", trace.final_conditions);
    assert!(!trace.steps[0].conditions[2], "starts hungry");
    assert_eq!(out.report.per_condition[2].pct_episodes, 0.0, "Not hungry is outside every ACC");
}

#[test]
fn bad_configs_are_rejected() {
    let c = common::survival();
    let grid = GridConfig::default();
    let setup = EvalSetup { tree: &c.tree, actions: &c.spec.actions, acc: &c.acc, grid: &grid };
    let set = PolicySet::scripted();
    let zero = config(&c, 2, 0, 1, 1);
    assert!(matches!(evaluate(setup, &set, &zero, false), Err(EvalError::InvalidConfig(_))));
    let unknown = config(&c, 9, 5, 1, 1);
    assert!(matches!(evaluate(setup, &set, &unknown, false), Err(EvalError::Grid(_))));
    let mut missing = config(&c, 2, 5, 1, 1);
    missing.policies.remove("Chase cow");
    assert!(matches!(evaluate(setup, &set, &missing, false), Err(EvalError::InvalidConfig(_))));
}

#[test]
fn welford_matches_two_pass_on_wide_ranges() {
    let xs: Vec<f64> = (0..10_000).map(|i| 1e6 + ((i * 7919) % 1000) as f64 * 0.001).collect();
    let s: RunningStats = xs.iter().copied().collect();
    let (mean, sd) = two_pass(&xs);
    assert!((s.mean().unwrap() - mean).abs() < 1e-6);
    assert!((s.sd().unwrap() - sd).abs() / sd < 1e-6);
}
