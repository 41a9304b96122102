use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cyclicover::commands::{self, ClassifyArgs, DmArgs, HodgeArgs, TablesArgs};
use cyclicover::{CliError, Outcome};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Invariants, ball-type classification and weight data of cyclic covers of
/// products of projective spaces.
#[derive(Debug, Parser)]
#[command(name = "cyclicover", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Euler characteristics, Betti and Hodge numbers of one cover.
    Hodge(HodgeArgs),
    /// List ball-type partition classes on (P^1)^n.
    Classify(ClassifyArgs),
    /// Weight data of the elliptic fibrations of a type.
    Dm(DmArgs),
    /// Regenerate the published tables and diff against the shipped copies.
    Tables(TablesArgs),
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Hodge(a) => commands::hodge(a),
        Command::Classify(a) => commands::classify(a),
        Command::Dm(a) => commands::dm(a),
        Command::Tables(a) => commands::tables(a),
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), CliError> {
    let text = match cli.format {
        Format::Text => outcome.report.render_text(),
        Format::Json => outcome.report.render_json(),
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|outcome| {
        emit(&cli, &outcome)?;
        Ok(outcome.status.exit_code())
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
