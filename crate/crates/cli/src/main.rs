//! `accbt`: compile action specs into behavior trees, train their learned
//! leaves, evaluate them and tabulate the results.

/// `println!` that ignores a closed pipe.
macro_rules! say {
    ($($arg:tt)*) => {
        $crate::emit(&format!("{}\n", format_args!($($arg)*)))
    };
}

mod commands;
mod error;
mod manifest;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::compile::CompileArgs;
use commands::eval::EvalArgs;
use commands::report::ReportArgs;
use commands::train::TrainArgs;

#[derive(Debug, Parser)]
#[command(name = "accbt", version, about = "Backward-chained behavior trees with ACC-aware learned actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Backward chain a spec into tree.json, acc.json and tree.dot.
    Compile(CompileArgs),
    /// Train one learned action with a reward preset.
    Train(TrainArgs),
    /// Evaluate the tree with fixed policies on one scenario.
    Eval(EvalArgs),
    /// Tabulate eval reports as Markdown or CSV.
    Report(ReportArgs),
}

/// Prints to stdout, ignoring a closed pipe.
pub fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Compile(a) => commands::compile::run(a),
        Command::Train(a) => commands::train::run(a),
        Command::Eval(a) => commands::eval::run(a),
        Command::Report(a) => commands::report::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
