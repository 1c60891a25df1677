use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mumford_trop::valued_field::{parse_rat, set_default_precision};
use mumford_trop::Rat;
use mumford_trop_cli::error::EXIT_PARSE;
use mumford_trop_cli::{cmd_classify, cmd_tropicalize, cmd_verify, CliError, CommandOutput, PRECISION_ENV};

/// Tropical geometry of genus-2 Mumford curves from Schottky data.
#[derive(Parser)]
#[command(name = "mumford-trop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Skeleton type, cycle lengths and period matrix.
    Classify {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Marked points, slope fields, tropical curve and faithfulness verdict.
    Tropicalize {
        file: PathBuf,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
        dim: u8,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Oracle checks: fundamental domain, periods, products, isometry,
    /// decompositions, harmonicity and balancing.
    Verify {
        file: PathBuf,
        /// Maximal word length for the truncated products.
        #[arg(long)]
        words: Option<usize>,
        /// Grid step as a rational, e.g. 1/16.
        #[arg(long, value_parser = parse_step)]
        grid: Option<Rat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_step(s: &str) -> Result<Rat, String> {
    let r = parse_rat(s).map_err(|e| e.to_string())?;
    if r <= Rat::from_integer(0.into()) {
        return Err("grid step must be positive".into());
    }
    Ok(r)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(output: &CommandOutput, out: Option<&Path>) -> Result<(), CliError> {
    let text = output.report.to_toml();
    match out {
        Some(p) => {
            write(p, &text)?;
            println!("{}", output.summary);
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    if let Ok(p) = std::env::var(PRECISION_ENV) {
        let units: i64 = p.trim().parse().map_err(|_| CliError::Parse {
            line: 1,
            column: 1,
            message: format!("{PRECISION_ENV} must be a positive integer, got '{p}'"),
        })?;
        set_default_precision(units).map_err(|e| CliError::Parse {
            line: 1,
            column: 1,
            message: format!("{PRECISION_ENV}: {e}"),
        })?;
    }
    let (file, output, out) = match &cli.command {
        Command::Classify { file, out } => (file, cmd_classify(&read(file)?), out),
        Command::Tropicalize { file, dim, out, .. } => {
            (file, cmd_tropicalize(&read(file)?, *dim as usize), out)
        }
        Command::Verify { file, words, grid, out } => {
            (file, cmd_verify(&read(file)?, *words, grid.clone()), out)
        }
    };
    let output = output.map_err(|e| match e {
        CliError::Parse { line, column, message } => CliError::Parse {
            line,
            column,
            message: format!("{}:{line}:{column}: {message}", file.display()),
        },
        other => other,
    })?;
    emit(&output, out.as_deref())?;
    if let Command::Tropicalize { svg: Some(path), .. } = &cli.command {
        if let Some(svg) = &output.svg {
            write(path, svg)?;
        }
    }
    if output.exit_code != 0 {
        eprintln!("{}", output.summary);
    }
    Ok(output.exit_code)
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            match &e {
                CliError::Parse { message, .. } => eprintln!("parse error: {message}"),
                other => eprintln!("error: {other}"),
            }
            e.exit_code()
        }
    };
    debug_assert!(code <= EXIT_PARSE);
    ExitCode::from(code as u8)
}
