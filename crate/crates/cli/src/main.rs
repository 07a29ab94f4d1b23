mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use args::{Cli, Command, SuiteArgs, WeilArgs};
use commands::Run;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] burgess_core::Error),
    #[error("i/o: {0}")]
    Io(String),
}

fn main() -> ExitCode {
    let raw: Vec<_> = std::env::args_os().collect();
    let argv = match args::with_config_defaults(raw) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("burgess: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("burgess: {e}");
            ExitCode::from(2)
        }
    }
}

fn config_echo(cli: &Cli) -> Value {
    let mut v = serde_json::to_value(&cli.command).unwrap_or(Value::Null);
    if let (Value::Object(map), Ok(Value::Object(g))) = (&mut v, serde_json::to_value(&cli.global)) {
        map.extend(g);
    }
    v
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let g = &cli.global;
    let workers = match g.workers {
        Some(0) => return Err(CliError::Usage("--workers must be at least 1".into())),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| CliError::Io(e.to_string()))?;
    let run = Run { pool, seed: g.seed, timings: g.timings };

    let (name, rows) = match &cli.command {
        Command::Bound(a) => ("bound", commands::bound(&run, a)?),
        Command::VerifyWeil(a) => ("verify-weil", commands::verify_weil(&run, a)?),
        Command::VerifyLemmas(a) => ("verify-lemmas", commands::verify_lemmas(&run, a)?),
        Command::Table1 => ("table1", commands::table1(&run)?),
        Command::Certify => ("certify", commands::certify_all(&run)?),
        Command::Charsum(a) => ("charsum", commands::charsum(&run, a)?),
        Command::Explore(a) => ("explore", commands::explore(&run, a)?),
        Command::Suite(a) => ("suite", suite(&run, a)?),
    };
    let bytes = output::render(g.format, &rows, g.seed, name, &config_echo(cli))?;
    output::write(&bytes, g.output.as_deref())?;
    let summary = output::summarize(&rows);
    Ok(if summary.fail > 0 { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn suite(run: &Run, a: &SuiteArgs) -> Result<Vec<output::Row>, CliError> {
    let lemma_defaults = args::LemmaArgs {
        sq_q_max: 200,
        sq_q_max_r3: 100,
        sq_b: vec![2.0, 3.0, 4.0, 5.0, 6.0],
        complete_trials: 500,
        complete_q_max: 150,
        n_max: 10_000,
        va_trials: 200,
    };
    let weil =
        WeilArgs { q_min: 1, q_max: a.q_max, r: vec![2, 3], b: vec![2.0, 2.5, 3.0, 5.0, 10.0], per_character: false, floor_form: false };
    let mut rows = commands::table1(run)?;
    rows.extend(commands::certify_all(run)?);
    rows.extend(commands::verify_lemmas(run, &lemma_defaults)?);
    rows.extend(commands::verify_weil(run, &weil)?);
    Ok(rows)
}
