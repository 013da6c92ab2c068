use std::path::PathBuf;

use accbt::rl::{default_training_scenarios, train, write_episode_csv, ScenarioCycle, TrainOptions, TrainSetup};
use accbt::RewardConfig;
use clap::Args;

use super::{load_grid, load_tree, out_dir, slug, EPISODES_FILE, QTABLE_FILE};
use crate::error::CliError;
use crate::manifest::OutDir;

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Directory written by `compile`.
    #[arg(long)]
    pub tree: PathBuf,
    /// Learned action to train.
    #[arg(long)]
    pub action: String,
    /// standard, neg_reward, end_episode or nr_ee.
    #[arg(long, default_value = "standard")]
    pub preset: String,
    /// Steps taken by the trained action.
    #[arg(long, default_value_t = 200_000)]
    pub steps: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Override the preset's postcondition reward.
    #[arg(long)]
    pub m_p: Option<f64>,
    /// Override the preset's per-step reward.
    #[arg(long, allow_hyphen_values = true)]
    pub m_t: Option<f64>,
    /// Override the preset's ACC violation reward (0 disables it).
    #[arg(long, allow_hyphen_values = true)]
    pub m_acc: Option<f64>,
    /// Override whether an ACC violation ends the episode.
    #[arg(long)]
    pub end_episode: Option<bool>,
    /// Training scenario ids, cycled per mission [default: per action].
    #[arg(long = "scenario", value_delimiter = ',')]
    pub scenarios: Vec<u8>,
    /// Gridworld config JSON [default: built-in].
    #[arg(long)]
    pub grid: Option<PathBuf>,
    /// Output directory [default: $ACCBT_OUT/train-<action>-<preset>-<seed>].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn reward_config(args: &TrainArgs) -> Result<RewardConfig, CliError> {
    let mut config = RewardConfig::preset(&args.preset)?;
    let overridden = args.m_p.is_some() || args.m_t.is_some() || args.m_acc.is_some() || args.end_episode.is_some();
    config.m_p = args.m_p.unwrap_or(config.m_p);
    config.m_t = args.m_t.unwrap_or(config.m_t);
    config.m_acc = args.m_acc.unwrap_or(config.m_acc);
    config.end_episode_on_acc = args.end_episode.unwrap_or(config.end_episode_on_acc);
    if overridden {
        config.preset = format!("{}*", config.preset);
    }
    config.validate()?;
    Ok(config)
}

pub fn run(args: TrainArgs) -> Result<(), CliError> {
    let config = reward_config(&args)?;
    let name = format!("train-{}-{}-{}", slug(&args.action), slug(&config.preset.replace('*', "-custom")), args.seed);
    let mut out = OutDir::new("train", out_dir(args.out.clone(), &name));
    let compiled = load_tree(&args.tree, &mut out)?;
    let grid = load_grid(args.grid.as_deref(), &mut out)?;
    let scenarios =
        if args.scenarios.is_empty() { default_training_scenarios(&args.action) } else { args.scenarios.clone() };
    if let Some(&bad) = scenarios.iter().find(|&&id| grid.layout(id).is_none()) {
        return Err(CliError::Config(format!("unknown scenario id {bad}")));
    }

    let opts = TrainOptions::new(args.steps, args.seed);
    let setup = TrainSetup { tree: &compiled.tree, actions: &compiled.spec.actions, acc: &compiled.acc };
    let mut sampler = ScenarioCycle::new(grid, scenarios.clone());
    let result = train(setup, &args.action, &config, &opts, &mut sampler)?;

    let mut csv = Vec::new();
    write_episode_csv(&result.episodes, &mut csv)?;
    out.write(QTABLE_FILE, result.qtable.to_json().as_bytes())?;
    out.write(EPISODES_FILE, &csv)?;
    out.manifest.preset = Some(config.preset.clone());
    out.manifest.seeds = vec![args.seed];
    out.manifest.settings = serde_json::json!({
        "action": args.action,
        "reward": config,
        "options": opts,
        "scenarios": scenarios,
    });
    let dir = out.finish()?;
    say!(
        "{}: {} episodes, {} trained / {} total steps over {} missions, {} states",
        args.action,
        result.episodes.len(),
        result.trained_steps,
        result.env_steps,
        result.missions,
        result.qtable.len()
    );
    say!("wrote {}", dir.display());
    Ok(())
}
