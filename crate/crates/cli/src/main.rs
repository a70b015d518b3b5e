use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Result};
use bhj_cli::{commands, exit, intro, parse_exclusion, Emit, Outcome, EXCLUDE_VAR};
use clap::{Parser, Subcommand, ValueEnum};

/// Exit codes: 0 success or Terminal, 1 bad input, 2 not terminal or no
/// factorization, 3 unsupported configuration, 4 golden-example mismatch.
#[derive(Parser)]
#[command(name = "bhj", version, about = "Exact engine for prime-index Brauer log pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant of a comma-separated HJ string.
    Det {
        #[arg(default_value = "")]
        weights: String,
    },
    /// HJ string of the cyclic quotient M/K.
    Cf { fraction: String },
    /// Terminality verdict for a local_config document.
    Classify { file: String },
    /// Twisted blowup of a terminal local_config document.
    Blowup {
        file: String,
        #[arg(long, value_enum, default_value_t = EmitArg::All)]
        emit: EmitArg,
    },
    /// Factorization of a chain_surface document into single contractions.
    Factorize { file: String },
    /// Primitive vectors of a cone with functional value at most a bound.
    Enumerate {
        /// Rays as "a,b;c,d".
        #[arg(long, allow_hyphen_values = true)]
        cone: String,
        /// Functional values on the rays as "p/q;r/s".
        #[arg(long)]
        values: String,
        #[arg(long)]
        bound: String,
        /// Ramification values on (1,0) and (0,1) as "x/p;y/p".
        #[arg(long)]
        zbar: Option<String>,
    },
    /// Run a golden example and compare it with stored expectations.
    Example {
        name: String,
        /// Expectation file replacing the built-in one.
        #[arg(long)]
        expect: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    All,
    Doc,
    Dot,
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Det { weights } => commands::det(&weights),
        Command::Cf { fraction } => commands::cf(&fraction),
        Command::Classify { file } => commands::classify_file(&file),
        Command::Blowup { file, emit } => {
            let emit = match emit {
                EmitArg::All => Emit::All,
                EmitArg::Doc => Emit::Document,
                EmitArg::Dot => Emit::Dot,
            };
            commands::blowup_file(&file, emit)
        }
        Command::Factorize { file } => commands::factorize_file(&file),
        Command::Enumerate { cone, values, bound, zbar } => commands::enumerate(&cone, &values, &bound, zbar.as_deref()),
        Command::Example { name, expect } => {
            if name != "intro" {
                bail!("unknown example {name:?}; available: intro");
            }
            let expected = match expect {
                Some(path) => std::fs::read_to_string(&path)?,
                None => intro::EXPECTED.to_string(),
            };
            intro::run(&expected)
        }
    }
}

fn main() -> ExitCode {
    // Usage errors share exit code 1 with other bad input.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::INPUT } else { exit::OK });
        }
    };
    let outcome = std::env::var(EXCLUDE_VAR)
        .ok()
        .map(|v| parse_exclusion(&v))
        .transpose()
        .and_then(|primes| {
            if let Some(primes) = primes {
                bhj_core::lattice::set_exclusion_set(primes)?;
            }
            dispatch(cli.command)
        });
    match outcome {
        Ok(o) => {
            print!("{}", o.stdout);
            eprint!("{}", o.stderr);
            let _ = std::io::stdout().flush();
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::INPUT)
        }
    }
}
