//! `atomlab` command-line tool.
//!
//! Exit codes: 0 when every check holds, 1 for usage, parse and hypothesis
//! errors, 2 when a check fails (a counterexample or violation was found).

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Rendered command result.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    /// Whether every check in the report holds.
    pub holds: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn execute(cli: &Cli) -> anyhow::Result<bool> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global()?;
    }
    let report = commands::run(cli)?;
    let mut body = if cli.json {
        serde_json::to_string_pretty(&report.json)?
    } else {
        report.text
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(report.holds)
}
