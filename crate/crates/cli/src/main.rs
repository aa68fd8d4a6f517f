// Errors carry rendered witnesses and only occur once per run.
#![allow(clippy::result_large_err)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fvdom_core::commands::{run_command, Report};
use fvdom_core::workspace::Workspace;
use fvdom_core::{Budget, Error};

/// Exact computations on finite frame-valued orders and topologies.
///
/// Commands: frame-check, analyze, scott, sobrify, points, complete,
/// ri-complete, iso, quasi, verify-paper. Without -f the bundled fixtures
/// (C2, C3, L4, L5, X6, SX6, SL4, j6) are loaded.
#[derive(Parser, Debug)]
#[command(name = "fvdom", version)]
struct Args {
    command: String,
    /// Object names, as the command requires.
    names: Vec<String>,
    /// Input JSON documents; several are merged.
    #[arg(short = 'f', long = "file")]
    files: Vec<PathBuf>,
    /// Maximum number of candidate L-subsets per enumeration.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    enum_budget: Option<u64>,
    /// Maximum number of nodes per isomorphism or point search.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    search_budget: Option<u64>,
    /// Sets both budgets; the specific flags take precedence.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Write a DOT diagram of the command's main object.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Also write the report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn load(files: &[PathBuf]) -> Result<Workspace, Error> {
    if files.is_empty() {
        return Ok(Workspace::bundled());
    }
    let mut ws = Workspace::default();
    for path in files {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        ws.add_source(&path.display().to_string(), &text)?;
    }
    Ok(ws)
}

fn write(path: &PathBuf, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn run(args: &Args) -> Result<Report, Error> {
    let mut ws = load(&args.files)?;
    let default = Budget::default();
    ws.budget = Budget {
        enumeration: args.enum_budget.or(args.budget).unwrap_or(default.enumeration),
        search: args.search_budget.or(args.budget).unwrap_or(default.search),
    };
    let report = run_command(&ws, &args.command, &args.names)?;
    if let Some(path) = &args.report {
        write(path, &report.text)?;
    }
    if let Some(path) = &args.dot {
        let dot = report
            .dot
            .as_deref()
            .ok_or_else(|| Error::Usage(format!("`{}` produces no diagram", args.command)))?;
        write(path, dot)?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(report) => {
            print!("{}", report.text);
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
