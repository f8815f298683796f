//! Command-line front end: generators, enumeration, solvers,
//! constructions, verification, and consolidated reports, with
//! reproducible artifacts.
//!
//! Every artifact embeds the tool version, the run configuration, and
//! sha256 hashes of the inputs. In deterministic mode (the default)
//! identical configurations produce byte-identical JSON apart from the
//! `timing` section and the solver `millis` field.

pub mod acceptance;
mod commands;
mod family;

use clap::{ArgAction, Parser, Subcommand};
use serde::Serialize;
use std::path::PathBuf;

pub use commands::CommandError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_BOUNDS_ONLY: i32 = 2;

/// Default node budget; the CLUMSY_BUDGET_NODES environment variable
/// overrides it, and --budget-nodes overrides both.
pub const DEFAULT_BUDGET_NODES: u64 = 20_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "clumsy",
    version,
    about = "Minimum maximal edge-disjoint subgraph packings: exact solvers, constructions, certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Search budget in explored nodes.
    #[arg(long, global = true)]
    pub budget_nodes: Option<u64>,

    /// Wall-time budget in seconds (ignored in deterministic mode).
    #[arg(long, global = true)]
    pub budget_seconds: Option<f64>,

    /// Deterministic mode: single-threaded solving, node budgets only.
    #[arg(long, global = true, default_value_t = true, action = ArgAction::Set)]
    pub deterministic: bool,

    /// Seed for randomized instance generation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Output format for the primary artifact.
    #[arg(long, global = true, default_value = "json")]
    pub format: Format,

    /// Worker threads for copy enumeration (>1 needs --deterministic false).
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    /// Write the primary artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph from one of the built-in families.
    Gen(commands::GenArgs),
    /// Enumerate all copies of a pattern in a host.
    Copies(commands::CopiesArgs),
    /// Solve one of the quantities cl, pp, cov, ex exactly.
    Solve(commands::SolveArgs),
    /// Build a certified maximal packing from a construction family.
    Construct(commands::ConstructArgs),
    /// Check a packing file for validity and maximality.
    Verify(commands::VerifyArgs),
    /// Consolidated bound/solver report for one instance.
    Report(commands::ReportArgs),
    /// Run scripted batteries (acceptance).
    Suite(commands::SuiteArgs),
}

/// Echo of the effective run configuration, embedded in artifacts.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub budget_nodes: u64,
    pub budget_millis: Option<u64>,
    pub deterministic: bool,
    pub seed: u64,
    pub format: Format,
    pub threads: usize,
}

impl Cli {
    pub fn run_config(&self, command: &str) -> RunConfig {
        let env_budget = std::env::var("CLUMSY_BUDGET_NODES")
            .ok()
            .and_then(|s| s.parse().ok());
        let budget_millis = if self.deterministic {
            None
        } else {
            self.budget_seconds.map(|s| (s * 1000.0) as u64)
        };
        RunConfig {
            command: command.to_string(),
            budget_nodes: self
                .budget_nodes
                .or(env_budget)
                .unwrap_or(DEFAULT_BUDGET_NODES),
            budget_millis,
            deterministic: self.deterministic,
            seed: self.seed,
            format: self.format,
            threads: if self.deterministic { 1 } else { self.threads },
        }
    }
}

impl RunConfig {
    pub fn budget(&self) -> clumsy_core::Budget {
        clumsy_core::Budget {
            max_nodes: self.budget_nodes,
            max_millis: self.budget_millis,
        }
    }
}

/// Artifact envelope shared by all subcommands.
#[derive(Serialize)]
pub struct Artifact<T: Serialize> {
    pub version: &'static str,
    pub config: RunConfig,
    pub inputs: std::collections::BTreeMap<String, String>,
    #[serde(flatten)]
    pub body: T,
    pub timing: Timing,
}

#[derive(Serialize)]
pub struct Timing {
    pub total_millis: u128,
}

pub fn sha256_hex(data: &str) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(data.as_bytes());
    let out = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for b in out {
        hex.push_str(&format!("{b:02x}"));
    }
    hex
}

/// Entry point used by both the binary and the tests.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version requests are not errors.
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
