//! Command-line front end for `oresmooth`: parse expressions, compute in an
//! Ore extension and its calculus, and run the verification checks.
//!
//! Exit codes: 0 on success or a passing check, 1 when a check finds a
//! counterexample, 2 on usage, parse or config errors.

pub mod commands;
pub mod config;
pub mod error;
pub mod parse;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use oresmooth::Algebra;

use commands::{CheckName, NuMap, Output};
use config::AlgebraArgs;
use error::CliError;
use parse::Context;

#[derive(Debug, Parser)]
#[command(name = "oresmooth", version, about = "Exact computation in Ore extensions and their differential calculi")]
pub struct Cli {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// Print machine-readable JSON
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normal form of an expression
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Exterior derivative of an element
    D {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Wedge product of two one-forms
    Wedge {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Apply a twisting automorphism
    ApplyNu {
        #[arg(value_enum)]
        map: NuMap,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Divergence of phi_x*(a) + phi_y*(b)
    Divergence {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Run a verification and exit 1 on any counterexample
    Check {
        #[arg(value_enum)]
        name: CheckName,
    },
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    let resolved = cli.algebra.merged()?.resolve()?;
    let ctx = Context::new(Algebra::new(resolved.spec.clone()));
    match &cli.command {
        Command::Normalize { expr } => commands::normalize(&ctx, expr),
        Command::D { expr } => commands::differential(&ctx, expr),
        Command::Wedge { u, v } => commands::wedge(&ctx, u, v),
        Command::ApplyNu { map, expr } => commands::apply_nu(&ctx, *map, expr),
        Command::Divergence { a, b } => commands::divergence(&ctx, a, b.as_deref()),
        Command::Check { name } => commands::check(&ctx, &resolved, *name),
    }
}

/// Runs one invocation, writing to `out` and `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli) {
        Ok(output) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&output.json).expect("json values serialize")
            } else {
                output.text
            };
            let _ = writeln!(out, "{body}");
            if output.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            if cli.json {
                let body = serde_json::json!({"error": e.to_string()});
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&body).unwrap());
            }
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
