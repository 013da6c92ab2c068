use std::path::PathBuf;

use accbt::eval::{compare, render_csv, render_markdown, EvalReport};
use clap::{Args, ValueEnum};

use super::REPORT_FILE;
use crate::error::CliError;
use crate::manifest::{read_text, OutDir};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Csv,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Eval output directories or report JSON files.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    /// Preset to rank the others against, per scenario (Markdown only).
    #[arg(long)]
    pub baseline: Option<String>,
    /// Write the table and a manifest here instead of printing it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn comparison(reports: &[EvalReport], baseline: &str) -> Result<String, CliError> {
    let mut scenarios: Vec<u8> = reports.iter().map(|r| r.scenario).collect();
    scenarios.sort();
    scenarios.dedup();
    let mut text = String::new();
    for s in scenarios {
        let group: Vec<EvalReport> = reports.iter().filter(|r| r.scenario == s).cloned().collect();
        if group.len() < 2 {
            continue;
        }
        let summary = compare(&group, baseline)?;
        let join = |groups: &[Vec<String>]| groups.iter().map(|g| g.join(" = ")).collect::<Vec<_>>().join(" < ");
        text.push_str(&format!("### Scenario {s} comparison\n\n"));
        text.push_str(&format!("- fewest to most violation episodes: {}\n", join(&summary.by_violations)));
        text.push_str(&format!("- fastest to slowest completion: {}\n", join(&summary.by_completion)));
        for c in &summary.baseline_checks {
            text.push_str(&format!(
                "- {baseline} vs {}: more violations {}, slower completion {}\n",
                c.preset, c.more_violations, c.slower_completion
            ));
        }
        for n in &summary.notes {
            text.push_str(&format!("- note: {n}\n"));
        }
        text.push('\n');
    }
    Ok(text)
}

pub fn run(args: ReportArgs) -> Result<(), CliError> {
    let mut out = args.out.clone().map(|dir| OutDir::new("report", dir));
    let mut reports = Vec::new();
    for input in &args.inputs {
        let path = if input.is_dir() { input.join(REPORT_FILE) } else { input.clone() };
        let text = match out.as_mut() {
            Some(o) => o.input_text(&path)?,
            None => read_text(&path)?,
        };
        let report = EvalReport::from_json(&text).map_err(|e| match e {
            accbt::eval::EvalError::SchemaVersion(_) => CliError::Compatibility(format!("{}: {e}", path.display())),
            other => CliError::Usage(format!("{}: {other}", path.display())),
        })?;
        reports.push(report);
    }
    let (name, mut text) = match args.format {
        Format::Md => ("report.md", render_markdown(&reports)),
        Format::Csv => ("report.csv", render_csv(&reports).map_err(|e| CliError::Usage(e.to_string()))?),
    };
    if let (Some(baseline), Format::Md) = (&args.baseline, args.format) {
        text.push_str(&comparison(&reports, baseline)?);
    }
    match out {
        Some(mut o) => {
            o.manifest.settings = serde_json::json!({ "format": name, "baseline": args.baseline });
            o.write(name, text.as_bytes())?;
            let dir = o.finish()?;
            say!("wrote {}", dir.join(name).display());
        }
        None => crate::emit(&text),
    }
    Ok(())
}
