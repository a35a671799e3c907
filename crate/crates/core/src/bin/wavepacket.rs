use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use wavepacket::scenario::{parse_config_with, run_scenario, RunError};

/// Reproduce free wave-packet evolution scenarios as CSV/SVG files.
#[derive(Parser, Debug)]
#[command(name = "wavepacket", version)]
struct Cli {
    /// `key = value` configuration document.
    #[arg(long)]
    config: Option<PathBuf>,
    /// fig1 | fig2 | fig3 | fig4 | spread-law | bounds | custom
    #[arg(long)]
    scenario: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Treat grid-sizing and wraparound warnings as errors (exit 3).
    #[arg(long)]
    strict: bool,
}

fn run(cli: &Cli) -> Result<(), RunError> {
    let text = match &cli.config {
        Some(path) => std::fs::read_to_string(path).map_err(|source| RunError::Io {
            path: path.clone(),
            source,
        })?,
        None => String::new(),
    };
    let mut overrides = Vec::new();
    if let Some(s) = &cli.scenario {
        overrides.push(("scenario", s.clone()));
    }
    if let Some(o) = &cli.out {
        overrides.push(("output.dir", o.display().to_string()));
    }
    if cli.strict {
        overrides.push(("strict", "true".to_string()));
    }
    let cfg = parse_config_with(&text, &overrides)?;
    let report = run_scenario(&cfg)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    for f in &report.files {
        println!("{}", f.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
