//! Batch verification harness: every check is a subcommand that emits a JSON
//! [`Report`] and exits 0 (all pass), 1 (a check failed) or 2 (bad input).

pub mod commands;
pub mod graph;
pub mod reps;

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use outfn_core::report::Report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "outfn", version, about = "Exact verification toolkit for representations of Out(F_n)")]
pub struct Cli {
    /// Rank of the free group.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Partition for the Schur square: `1,1` or `2`.
    #[arg(long, global = true)]
    pub mu: Option<String>,
    /// Also write the report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Worker threads for independent checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Built-in input (a representation for `decompose`, a graph for `graph`).
    #[arg(long, global = true, value_name = "NAME")]
    pub builtin: Option<String>,
    /// Suppress the report on stdout.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every relation of Gersten's presentation in Out(F_n).
    Gersten,
    /// Simultaneous eigenspace decomposition of the ε-involutions of a representation.
    Decompose {
        /// Representation JSON file (alternative to --builtin).
        file: Option<PathBuf>,
    },
    /// Check the closed formulas for ψ′ and the deck involution.
    #[command(name = "section4")]
    Formulas,
    /// Build the induced representation θ, check relators and find a non-factoring certificate.
    Induce {
        /// Write the representation (dense matrices) to this file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Graph homology and finite group actions.
    Graph {
        #[arg(value_enum)]
        action: GraphAction,
        /// Acting group (with --builtin), e.g. `S5`, `A7`, `W_4`, `G6`.
        #[arg(long, default_value = "trivial")]
        group: String,
        /// Graph JSON file (alternative to --builtin).
        #[arg(long, value_name = "PATH")]
        graph: Option<PathBuf>,
        /// Action JSON file for a graph given by --graph.
        #[arg(long = "action", value_name = "PATH")]
        action_file: Option<PathBuf>,
        /// Involution for double-tree: vertex-swap, xi, flip-all or identity.
        #[arg(long, default_value = "vertex-swap")]
        xi: String,
        /// Comma-separated edge indices to collapse.
        #[arg(long, value_delimiter = ',')]
        subset: Vec<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphAction {
    Admissible,
    Homology,
    RoseLemma,
    CageLemma,
    DoubleTree,
    Collapse,
}

/// Invalid configuration or unreadable input; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<outfn_core::Error> for UsageError {
    fn from(e: outfn_core::Error) -> UsageError {
        UsageError(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, UsageError>;

pub fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn pool(jobs: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| usage(format!("cannot start worker pool: {e}")))
}

/// Run a parsed command and produce its report.
pub fn execute(cli: &Cli) -> CliResult<Report> {
    let workers = pool(cli.jobs)?;
    workers.install(|| match &cli.command {
        Command::Gersten => commands::gersten(cli),
        Command::Decompose { file } => commands::decompose(cli, file.as_deref()),
        Command::Formulas => commands::formulas(cli),
        Command::Induce { out } => commands::induce(cli, out.as_deref()),
        Command::Graph { action, group, graph, action_file, xi, subset } => graph::run(
            cli,
            *action,
            &graph::Source { group, graph: graph.as_deref(), action: action_file.as_deref() },
            xi,
            subset,
        ),
    })
}

pub fn exit_code(report: &Report) -> i32 {
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Execute, print and persist; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let report = match execute(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = match serde_json::to_string_pretty(&report) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot serialise report: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    if !cli.quiet {
        println!("{text}");
    }
    eprintln!(
        "{}: {} pass, {} fail, {} skip",
        report.command, report.summary.pass, report.summary.fail, report.summary.skip
    );
    exit_code(&report)
}
