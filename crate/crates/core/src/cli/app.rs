//! Command-line front end.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::poly::MonomialOrder;

use super::examples::builtin_example;
use super::scenario::{run_scenario, Outcome, Scenario};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_BUDGET_EXCEEDED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Grevlex,
    Lex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "plainchart",
    version,
    about = "Exact charts of blowups and local hypersurface models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    /// Monomial order for parsing and normal forms.
    #[arg(long, global = true, value_enum)]
    pub order: Option<OrderArg>,
    /// Seed for sampled projections.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Maximum number of pair reductions per Gröbner basis.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Plain atlas of a blowup along a hypersurface in a coordinate subvariety.
    Blowup { scenario: Option<PathBuf> },
    /// Standard charts of the blowup of an ideal.
    Rees { scenario: Option<PathBuf> },
    /// Local hypersurface model by linear projection.
    Project { scenario: Option<PathBuf> },
    /// Check a rational map and, optionally, its inverse.
    VerifyMap { scenario: Option<PathBuf> },
    /// Ideal membership.
    Member { scenario: Option<PathBuf> },
    /// Run a built-in example.
    Example { name: String },
}

impl CliCommand {
    fn expected(&self) -> Option<&'static str> {
        match self {
            CliCommand::Blowup { .. } => Some("blowup"),
            CliCommand::Rees { .. } => Some("rees"),
            CliCommand::Project { .. } => Some("project"),
            CliCommand::VerifyMap { .. } => Some("verify-map"),
            CliCommand::Member { .. } => Some("member"),
            CliCommand::Example { .. } => None,
        }
    }
}

/// Exit status for a finished run.
pub fn exit_code(result: &Result<Outcome>) -> i32 {
    match result {
        Ok(o) if o.passed => EXIT_PASS,
        Ok(o) if o.budget_exceeded => EXIT_BUDGET_EXCEEDED,
        Ok(_) => EXIT_VERIFICATION_FAILED,
        Err(Error::BudgetExceeded { .. }) => EXIT_BUDGET_EXCEEDED,
        Err(_) => EXIT_INPUT_ERROR,
    }
}

fn load(cli: &Cli, stdin: &mut dyn Read) -> Result<Scenario> {
    let mut scenario = match &cli.command {
        CliCommand::Example { name } => builtin_example(name)?,
        CliCommand::Blowup { scenario }
        | CliCommand::Rees { scenario }
        | CliCommand::Project { scenario }
        | CliCommand::VerifyMap { scenario }
        | CliCommand::Member { scenario } => {
            let text = match scenario {
                Some(path) => std::fs::read_to_string(path)?,
                None => {
                    let mut s = String::new();
                    stdin.read_to_string(&mut s)?;
                    s
                }
            };
            Scenario::from_json(&text)?
        }
    };
    if let Some(expected) = cli.command.expected() {
        if scenario.command.name() != expected {
            return Err(Error::Malformed(format!(
                "scenario command is `{}`, expected `{expected}`",
                scenario.command.name()
            )));
        }
    }
    if let Some(order) = cli.order {
        scenario.options.order = match order {
            OrderArg::Grevlex => MonomialOrder::Grevlex,
            OrderArg::Lex => MonomialOrder::Lex,
        };
    }
    if let Some(seed) = cli.seed {
        scenario.options.seed = seed;
    }
    if let Some(budget) = cli.budget {
        scenario.options.budget = budget;
    }
    Ok(scenario)
}

fn render(cli: &Cli, outcome: &Outcome) -> Result<String> {
    Ok(match cli.format {
        Format::Json => outcome.to_json()? + "\n",
        Format::Text => outcome.to_text(),
    })
}

/// Parses `args` (including the program name), runs, and returns the exit status.
pub fn run_cli<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT_ERROR
            } else {
                EXIT_PASS
            };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };
    let result = load(&cli, stdin).and_then(|s| run_scenario(&s));
    let code = exit_code(&result);
    match result {
        Ok(outcome) => {
            let written = render(&cli, &outcome).and_then(|text| match &cli.output {
                Some(path) => Ok(std::fs::write(path, text)?),
                None => Ok(stdout.write_all(text.as_bytes())?),
            });
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_INPUT_ERROR;
            }
            match code {
                EXIT_BUDGET_EXCEEDED => {
                    let _ = writeln!(stderr, "Gröbner budget exceeded; verification inconclusive");
                }
                EXIT_VERIFICATION_FAILED => {
                    let _ = writeln!(stderr, "verification failed");
                }
                _ => {}
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
        }
    }
    code
}
