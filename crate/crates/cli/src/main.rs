//! `noncomm`: finite linear groups, non-commuting graphs and their invariants.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Parser, Serialize)]
#[command(name = "noncomm", version, about = "Non-commuting graphs of finite linear groups")]
pub struct Cli {
    /// Output format; `dimacs` applies to `graph export` only.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Dimacs,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Describe GF(q).
    Field(FieldArgs),
    #[command(subcommand)]
    Group(GroupCommand),
    #[command(subcommand)]
    Graph(GraphCommand),
    /// AC test and Schmidt case of a group.
    Classify {
        #[command(flatten)]
        #[serde(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        #[serde(flatten)]
        budget: Budget,
    },
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Compare a group's graph with every catalog group of the same order.
    Rivals {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        target: String,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct FieldArgs {
    /// Field order, a prime power.
    #[arg(long, conflicts_with_all = ["p", "n"], required_unless_present = "p")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[arg(long, requires = "n")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[arg(long, requires = "p")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupCommand {
    /// Build a group and report its basic structure.
    Build {
        #[command(flatten)]
        #[serde(flatten)]
        group: GroupArgs,
        /// List every element.
        #[arg(long)]
        elements: bool,
    },
    /// Partition of G/Z(G) by centralizers of an AC-group.
    Partition {
        #[command(flatten)]
        #[serde(flatten)]
        group: GroupArgs,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphCommand {
    /// Write the non-commuting graph as DIMACS or a JSON edge list.
    Export {
        #[command(flatten)]
        #[serde(flatten)]
        group: GroupArgs,
    },
    /// Exact clique number with a witness.
    Clique {
        #[command(flatten)]
        #[serde(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        #[serde(flatten)]
        budget: Budget,
    },
    /// Fingerprints and, within the bound, exact isomorphism of two graphs.
    Compare {
        a: String,
        b: String,
        /// Largest graph handed to the exact isomorphism search.
        #[arg(long, default_value_t = noncomm_core::ncgraph::GRAPH_ISO_LIMIT, value_parser = positive)]
        iso_bound: usize,
    },
    /// Centralizer multisets W, W' and distinct centralizer counts.
    Profile {
        #[command(flatten)]
        #[serde(flatten)]
        group: GroupArgs,
    },
    Fingerprint {
        #[command(flatten)]
        #[serde(flatten)]
        group: GroupArgs,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyCommand {
    /// Characterization pipeline for SL(2,q).
    Sl {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        #[serde(flatten)]
        budget: Budget,
    },
    /// Characterization pipeline for GL(2,q).
    Gl {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        #[serde(flatten)]
        budget: Budget,
    },
}

/// Exactly one way of naming a group.
#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct GroupArgs {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gl2: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sl2: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pgl2: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psl2: Option<u64>,
    /// Descriptor such as `S4`, `direct(C2,A4)` or `semidirect(C5,C4,x^2)`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
}

impl GroupArgs {
    pub fn spec(&self) -> String {
        let linear = [("GL", self.gl2), ("SL", self.sl2), ("PGL", self.pgl2), ("PSL", self.psl2)];
        match linear.iter().find_map(|(name, q)| q.map(|q| format!("{name}(2,{q})"))) {
            Some(spec) => spec,
            None => self.group.clone().unwrap_or_default(),
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct Budget {
    /// Clique search time budget in seconds.
    #[arg(long = "budget", default_value_t = 300, value_parser = positive_secs)]
    pub budget: u64,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

fn positive_secs(s: &str) -> Result<u64, String> {
    positive(s).map(|n| n as u64)
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or parameters outside what the tool supports; exit 2.
    #[error("{0}")]
    Usage(String),
    /// A computation that could not complete; exit 1.
    #[error(transparent)]
    Run(#[from] anyhow::Error),
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("NONCOMM_THREADS") else {
        return Ok(());
    };
    let n = positive(raw.trim()).map_err(|e| CliError::Usage(format!("NONCOMM_THREADS: {e}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Run(e.into()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = configure_threads().and_then(|()| commands::run(&cli));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Run(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
