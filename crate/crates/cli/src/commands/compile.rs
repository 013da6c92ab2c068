use std::path::PathBuf;

use accbt::compile;
use accbt::compiler::export_dot;
use clap::Args;

use super::{out_dir, ACC_FILE, DOT_FILE, SPEC_FILE, TREE_FILE};
use crate::error::CliError;
use crate::manifest::{read_text, OutDir};

#[derive(Debug, Args)]
pub struct CompileArgs {
    /// Action spec file.
    pub spec: PathBuf,
    /// Output directory [default: $ACCBT_OUT/compile].
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Skip writing tree.dot.
    #[arg(long)]
    pub no_dot: bool,
    /// Action whose guard and ACC are highlighted in tree.dot.
    #[arg(long)]
    pub highlight: Option<String>,
}

pub fn run(args: CompileArgs) -> Result<(), CliError> {
    // Read before creating anything so a bad path leaves no output behind.
    let text = read_text(&args.spec)?;
    let compiled = compile(&text).map_err(|e| CliError::from_compile(args.spec.clone(), e))?;
    if let Some(h) = &args.highlight {
        if compiled.tree.action_kind(h).is_none() {
            return Err(CliError::Usage(format!("no action named `{h}` to highlight")));
        }
    }

    let mut out = OutDir::new("compile", out_dir(args.out, "compile"));
    out.input(&args.spec)?;
    out.manifest.spec = Some(args.spec.display().to_string());
    out.manifest.settings = serde_json::json!({ "dot": !args.no_dot, "highlight": args.highlight });
    out.write(SPEC_FILE, text.as_bytes())?;
    out.write(TREE_FILE, compiled.tree.to_json().as_bytes())?;
    out.write(ACC_FILE, compiled.acc.to_json().as_bytes())?;
    if !args.no_dot {
        out.write(DOT_FILE, export_dot(&compiled.tree, &compiled.acc, args.highlight.as_deref()).as_bytes())?;
    }
    let dir = out.finish()?;

    for c in &compiled.unachievable {
        eprintln!("warning: no action achieves \"{c}\"; it stays a plain check");
    }
    say!("ACC table:");
    for (action, acc) in compiled.acc.iter() {
        let kind = compiled.tree.action_kind(action).map_or("?", |k| k.as_str());
        say!("  {action} ({kind}): [{}]", acc.iter().map(|c| format!("\"{c}\"")).collect::<Vec<_>>().join(", "));
    }
    say!("wrote {}", dir.display());
    Ok(())
}
