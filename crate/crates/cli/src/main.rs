mod commands;
mod manifest;
mod reproduce;

use clap::{Parser, Subcommand};
use manifest::RunManifest;
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] dicycles::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Library(_) => "invalid_input",
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "usage",
        }
    }
}

/// A finished command: the report body and whether its checks passed.
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

impl Outcome {
    pub fn ok(report: Value) -> Self {
        Outcome { report, passed: true }
    }
}

#[derive(Debug, Parser)]
#[command(name = "dicycles", version, about = "Directed-cycle extremal numbers: constructions, counters and checks")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "DICYCLES_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a construction and write it with a JSON sidecar.
    Gen(commands::GenArgs),
    /// Count directed cycles, closed walks and paths.
    Count(commands::CountArgs),
    /// Check forbidden patterns, closed walks and the neighbor condition.
    Check(commands::CheckArgs),
    /// Remove arcs and vertices that lie on no k-cycle.
    Clear(commands::ClearArgs),
    /// Decide representability as a non-negative combination.
    Frobenius(commands::FrobeniusArgs),
    /// Predicted extremal value for (k, l, n).
    Predict(commands::PredictArgs),
    /// Optimize blob weights or the threshold constant of a pattern.
    Optimize(commands::OptimizeArgs),
    /// Spectrum and spectral bounds of a graph.
    Spectral(commands::SpectralArgs),
    /// Exhaustive or local search for extremal graphs.
    Search(commands::SearchArgs),
    /// Run one acceptance recipe and report the measured values.
    Reproduce(reproduce::ReproduceArgs),
}

fn error_json(kind: &str, message: &str) -> String {
    json!({"error": {"kind": kind, "message": message}}).to_string()
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", error_json("usage", e.to_string().trim()));
            return ExitCode::from(2);
        }
    };
    let threads = cli.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        eprintln!("{}", error_json("usage", "--threads must be positive"));
        return ExitCode::from(2);
    }
    // only fails if a pool already exists, which cannot happen this early
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();

    let mut manifest = RunManifest::new(argv, threads);
    let result = match cli.command {
        Command::Gen(a) => commands::gen(a, &mut manifest),
        Command::Count(a) => commands::count(a, &mut manifest),
        Command::Check(a) => commands::check(a, &mut manifest),
        Command::Clear(a) => commands::clear(a, &mut manifest),
        Command::Frobenius(a) => commands::frobenius(a),
        Command::Predict(a) => commands::predict(a),
        Command::Optimize(a) => commands::optimize(a, &mut manifest),
        Command::Spectral(a) => commands::spectral(a, &mut manifest),
        Command::Search(a) => commands::search(a, &mut manifest),
        Command::Reproduce(a) => reproduce::run(a, &mut manifest),
    };
    match result {
        Ok(mut out) => {
            if let Value::Object(map) = &mut out.report {
                map.insert("manifest".into(), manifest.to_json());
            }
            let text = serde_json::to_string_pretty(&out.report).expect("reports serialize");
            // a closed pipe is the reader's choice, not a failure of the run
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", error_json(e.kind(), &e.to_string()));
            ExitCode::from(2)
        }
    }
}
