use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use accbt::eval::{evaluate, EvalConfig, EvalSetup, Tracking};
use accbt::{extract_policy, Compiled, ImplKind, PolicySet, QTable, RlError};
use clap::Args;

use super::{load_grid, load_tree, out_dir, slug, QTABLE_FILE, REPORT_FILE, TRACES_FILE};
use crate::error::CliError;
use crate::manifest::{OutDir, RunManifest};

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Directory written by `compile`.
    #[arg(long)]
    pub tree: PathBuf,
    #[arg(long)]
    pub scenario: u8,
    #[arg(long, default_value_t = 1000)]
    pub episodes: u32,
    /// A train output directory, a Q-table file, or `ACTION=scripted`.
    /// Repeat once per learned action.
    #[arg(long = "policy")]
    pub policies: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Steps after which a mission counts as a timeout.
    #[arg(long, default_value_t = 2000)]
    pub step_cap: u32,
    /// Worker threads; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Row label in reports [default: the policies' preset].
    #[arg(long)]
    pub label: Option<String>,
    /// Also write per-step traces as JSON lines.
    #[arg(long)]
    pub traces: bool,
    /// Gridworld config JSON [default: built-in].
    #[arg(long)]
    pub grid: Option<PathBuf>,
    /// Output directory [default: $ACCBT_OUT/eval-s<scenario>-<label>].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

struct Loaded {
    set: PolicySet,
    /// Learned action to the preset or placeholder it came from.
    sources: BTreeMap<String, String>,
}

fn learned_actions(c: &Compiled) -> Vec<String> {
    c.tree.action_names().into_iter().filter(|a| c.tree.action_kind(a) == Some(ImplKind::Learned)).collect()
}

fn canonical(c: &Compiled, action: &str) -> Result<String, CliError> {
    let name = c.tree.action_names().into_iter().find(|a| accbt::names::same(a, action));
    match name {
        Some(a) if c.tree.action_kind(&a) == Some(ImplKind::Learned) => Ok(a),
        Some(a) => Err(CliError::Compatibility(format!("`{a}` is scripted in this tree"))),
        None => Err(CliError::Compatibility(format!("no action `{action}` in this tree"))),
    }
}

fn load_policies(c: &Compiled, specs: &[String], out: &mut OutDir) -> Result<Loaded, CliError> {
    let mut loaded = Loaded { set: PolicySet::scripted(), sources: BTreeMap::new() };
    for spec in specs {
        let (action, source) = match spec.split_once('=') {
            Some((action, "scripted")) => (canonical(c, action)?, "scripted".to_string()),
            _ => {
                let path = Path::new(spec);
                let (file, dir) = if path.is_dir() {
                    (path.join(QTABLE_FILE), path.to_path_buf())
                } else {
                    (path.to_path_buf(), path.parent().map(Path::to_path_buf).unwrap_or_default())
                };
                let text = out.input_text(&file)?;
                let table = QTable::from_json(&text).map_err(|e| match e {
                    RlError::Incompatible(m) | RlError::Format(m) => {
                        CliError::Compatibility(format!("{}: {m}", file.display()))
                    }
                    other => other.into(),
                })?;
                let action = canonical(c, table.action_id())?;
                loaded.set.insert(&action, extract_policy(&table));
                let preset = RunManifest::read(&dir).ok().and_then(|m| m.preset).unwrap_or_else(|| "custom".into());
                out.manifest.seeds.extend(RunManifest::read(&dir).map(|m| m.seeds).unwrap_or_default());
                (action, preset)
            }
        };
        if loaded.sources.insert(action.clone(), source).is_some() {
            return Err(CliError::Usage(format!("two policies given for `{action}`")));
        }
    }
    Ok(loaded)
}

fn default_label(sources: &BTreeMap<String, String>) -> String {
    let mut labels: Vec<&String> = sources.values().collect();
    labels.sort();
    labels.dedup();
    match labels.as_slice() {
        [] => "scripted".into(),
        [one] => (*one).clone(),
        _ => "mixed".into(),
    }
}

pub fn run(args: EvalArgs) -> Result<(), CliError> {
    if args.episodes == 0 {
        return Err(CliError::Usage("--episodes must be at least 1".into()));
    }
    if args.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let mut out = OutDir::new("eval", PathBuf::new());
    let compiled = load_tree(&args.tree, &mut out)?;
    let grid = load_grid(args.grid.as_deref(), &mut out)?;
    if grid.layout(args.scenario).is_none() {
        return Err(CliError::Config(format!("unknown scenario id {}", args.scenario)));
    }
    let loaded = load_policies(&compiled, &args.policies, &mut out)?;
    let learned = learned_actions(&compiled);
    if let Some(missing) = learned.iter().find(|a| !loaded.sources.contains_key(*a)) {
        return Err(CliError::Usage(format!("no --policy given for learned action `{missing}`")));
    }
    let label = args.label.clone().unwrap_or_else(|| default_label(&loaded.sources));

    let config = EvalConfig {
        scenario: args.scenario,
        episodes: args.episodes,
        step_cap: args.step_cap,
        preset: label.clone(),
        tracking: Tracking::learned(&learned, &compiled.acc),
        policies: loaded.sources,
        seed: args.seed,
        jobs: args.jobs,
    };
    let setup = EvalSetup { tree: &compiled.tree, actions: &compiled.spec.actions, acc: &compiled.acc, grid: &grid };
    let result = evaluate(setup, &loaded.set, &config, args.traces)?;

    let dir = out_dir(args.out.clone(), &format!("eval-s{}-{}", args.scenario, slug(&label)));
    out.set_dir(dir);
    out.write(REPORT_FILE, result.report.to_json().as_bytes())?;
    if let Some(traces) = &result.traces {
        let mut buf = Vec::new();
        for t in traces {
            t.write_jsonl(&mut buf).map_err(|source| CliError::Write { path: TRACES_FILE.into(), source })?;
        }
        out.write(TRACES_FILE, &buf)?;
    }
    out.manifest.preset = Some(label);
    out.manifest.seeds.push(args.seed);
    out.manifest.settings = serde_json::to_value(&config).expect("config serializes");
    let dir = out.finish()?;

    let r = &result.report;
    let mean = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.2}"));
    say!(
        "scenario {} [{}]: {:.2}% episodes with ACC violation, violation steps {}, completion {} steps ({} completed, {} timeouts, {} deaths, {} failures)",
        r.scenario,
        r.preset,
        r.pct_episodes_with_acc_violation,
        mean(r.acc_violation_steps.mean),
        mean(r.completion_steps.mean),
        r.completed,
        r.timeouts,
        r.deaths,
        r.failures
    );
    say!("wrote {}", dir.display());
    Ok(())
}
