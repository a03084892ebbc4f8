use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use pdem_cli::{execute, init_workers_from_env, Command, Format, Invocation};

/// Spectra and verification diagnostics for pseudo-hermitian Hamiltonians
/// with position-dependent mass.
#[derive(Debug, Parser)]
#[command(name = "pdem", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Omit the generation timestamp so identical configs give identical output.
    #[arg(long)]
    no_timestamp: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Err(e) = init_workers_from_env() {
        eprintln!("pdem: {e}");
        return ExitCode::from(2);
    }
    let inv = Invocation {
        command: args.command,
        config: args.config,
        out: args.out,
        format: args.format,
        timestamp: !args.no_timestamp,
    };
    match execute(&inv) {
        Ok((doc, text)) => {
            if inv.out.is_none() && doc.config.output.path.is_none() {
                print!("{text}");
            }
            for g in doc.gates.iter().filter(|g| !g.pass) {
                eprintln!("pdem: gate {} failed: {:e} > {:e}", g.name, g.value, g.tolerance);
            }
            if doc.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("pdem: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
