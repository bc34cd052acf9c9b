use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use wildram::report::{self, render};
use wildram::{selftest, CliError, JobConfig};

#[derive(Parser)]
#[command(name = "wildram", version, about = "Cohomology, Artin-Schreier covers and deformations of wild automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a JSON job description.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compare the report against a golden file, ignoring timing.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Run randomized suites in parallel.
        #[arg(long)]
        parallel: bool,
    },
    /// Run the full acceptance grid.
    Selftest {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
        /// Sweep grid points in parallel.
        #[arg(long)]
        parallel: bool,
    },
}

const OK: u8 = 0;
const TASK_FAILED: u8 = 1;
const CONFIG_ERROR: u8 = 2;

fn write_out(v: &Value, out: Option<&Path>) -> Result<(), CliError> {
    let text = render(v);
    match out {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { context: p.display().to_string(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(config: &Path, out: Option<&Path>, golden: Option<&Path>, parallel: bool) -> Result<u8, CliError> {
    let text = std::fs::read_to_string(config).map_err(|source| CliError::Io { context: config.display().to_string(), source })?;
    let cfg = JobConfig::parse(&text)?;
    let rep = report::run(&cfg, parallel)?;
    write_out(&rep, out)?;
    let mut status = if report::passed(&rep) { OK } else { TASK_FAILED };
    if let Some(g) = golden {
        let diff = report::compare_golden(&rep, g)?;
        if !diff.is_empty() {
            let entries: Vec<Value> = diff.iter().map(|d| d.to_json()).collect();
            eprint!("{}", render(&json!({ "golden": g.display().to_string(), "diff": entries })));
            status = TASK_FAILED;
        }
    }
    Ok(status)
}

fn selftest_cmd(out: Option<&Path>, seed: u64, parallel: bool) -> Result<u8, CliError> {
    let (rep, crits) = selftest::report(seed, parallel)?;
    for c in &crits {
        eprintln!("{}", c.line());
    }
    write_out(&rep, out)?;
    Ok(if report::passed(&rep) { OK } else { TASK_FAILED })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { config, out, golden, parallel } => run(config, out.as_deref(), golden.as_deref(), *parallel),
        Command::Selftest { out, seed, parallel } => selftest_cmd(out.as_deref(), *seed, *parallel),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { CONFIG_ERROR } else { TASK_FAILED })
        }
    }
}
