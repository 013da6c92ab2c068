pub mod compile;
pub mod eval;
pub mod report;
pub mod train;

use std::path::{Path, PathBuf};

use accbt::{compile, Compiled, GridConfig};

use crate::error::CliError;
use crate::manifest::OutDir;

pub const SPEC_FILE: &str = "spec.bt";
pub const TREE_FILE: &str = "tree.json";
pub const ACC_FILE: &str = "acc.json";
pub const DOT_FILE: &str = "tree.dot";
pub const QTABLE_FILE: &str = "qtable.json";
pub const EPISODES_FILE: &str = "episodes.csv";
pub const REPORT_FILE: &str = "report.json";
pub const TRACES_FILE: &str = "traces.jsonl";

pub const OUT_ENV: &str = "ACCBT_OUT";

/// Output directory: the explicit one, or `name` under `$ACCBT_OUT` (default `runs`).
pub fn out_dir(explicit: Option<PathBuf>, name: &str) -> PathBuf {
    explicit.unwrap_or_else(|| {
        let root = std::env::var_os(OUT_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("runs"));
        root.join(name)
    })
}

pub fn slug(s: &str) -> String {
    s.to_lowercase().split_whitespace().collect::<Vec<_>>().join("-")
}

/// Recompiles the spec saved in a compile output directory and checks it
/// still produces the saved tree.
pub fn load_tree(dir: &Path, out: &mut OutDir) -> Result<Compiled, CliError> {
    let spec_path = dir.join(SPEC_FILE);
    let text = out.input_text(&spec_path)?;
    let compiled = compile(&text).map_err(|e| CliError::from_compile(spec_path.clone(), e))?;
    let tree_path = dir.join(TREE_FILE);
    let saved = out.input_text(&tree_path)?;
    if saved != compiled.tree.to_json() {
        return Err(CliError::Compatibility(format!(
            "{} does not match the tree compiled from {}",
            tree_path.display(),
            spec_path.display()
        )));
    }
    out.manifest.spec = Some(spec_path.display().to_string());
    Ok(compiled)
}

pub fn load_grid(path: Option<&Path>, out: &mut OutDir) -> Result<GridConfig, CliError> {
    let Some(path) = path else {
        return Ok(GridConfig::default());
    };
    let text = out.input_text(path)?;
    out.manifest.grid_config = Some(path.display().to_string());
    GridConfig::from_json(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}
