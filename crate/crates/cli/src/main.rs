//! Command-line front end for the orbit-geometry engine.
//!
//! Exit codes: 0 success, 1 property/theorem violation, 2 configuration
//! error. All outputs are deterministic for a fixed invocation.

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod report;

use config::CommonArgs;

/// A command failure carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: unknown entry, malformed value, unusable point. Exit 2.
    Config(String),
    /// The entry violates a property it should satisfy. Exit 1.
    Violation(String),
}

impl Failure {
    pub fn config(msg: String) -> Self {
        Failure::Config(msg)
    }
    pub fn violation(msg: String) -> Self {
        Failure::Violation(msg)
    }
}

#[derive(Parser)]
#[command(
    name = "hermann",
    version,
    about = "Orbit geometry of involution pairs on compact matrix Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze the orbit through one point: spectra and property verdicts.
    Analyze {
        #[command(flatten)]
        common: CommonArgs,
        /// Orbit point: named (origin|pi8|pi4) or angles like "pi/8" or "pi/8,pi/4".
        #[arg(long)]
        w: Option<String>,
        /// Direction in the flat, same syntax as --w. Default: all ones.
        #[arg(long)]
        xi: Option<String>,
    },
    /// Check the implications between orbit properties over a sample grid.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of sample points on the flat.
        #[arg(long)]
        grid: Option<usize>,
        /// Test hook: corrupt internal data to exercise the failure path.
        #[arg(long, hide = true, value_name = "FAULT")]
        inject_fault: Option<String>,
    },
    /// Convergence study of truncated operator blocks at one point.
    Truncate {
        #[command(flatten)]
        common: CommonArgs,
        /// Orbit point, same syntax as for analyze.
        #[arg(long)]
        w: Option<String>,
        /// Direction in the flat. Default: all ones.
        #[arg(long)]
        xi: Option<String>,
        /// Truncation orders, comma separated. Default: 50,100,200,400.
        #[arg(long = "N", value_name = "LIST")]
        n: Option<String>,
    },
    /// List the built-in entries, or export one entry's records.
    Catalog {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Cmd::Analyze { common, w, xi } => {
            commands::cmd_analyze(common, w.as_deref(), xi.as_deref())
        }
        Cmd::Verify { common, grid, inject_fault } => {
            commands::cmd_verify(common, *grid, inject_fault.as_deref())
        }
        Cmd::Truncate { common, w, xi, n } => {
            commands::cmd_truncate(common, w.as_deref(), xi.as_deref(), n.as_deref())
        }
        Cmd::Catalog { common } => commands::cmd_catalog(common),
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            1
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    };
    std::process::exit(code);
}
