//! `critfact`: factor bivariate polynomials from the command line.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use critfact::cli::{error_json, exit_code, run, Command, RunConfig};
use critfact::error::Error;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    /// Rational factorization.
    Factor,
    /// Number of rational irreducible factors.
    Count,
    /// Rational irreducibility test.
    Irreducible,
    /// Absolute factorization.
    Absfactor,
    /// Number of absolutely irreducible factors.
    Abscount,
    /// Newton polygon report along the fiber over zero.
    Polytope,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Factor => Command::Factor,
            Cmd::Count => Command::Count,
            Cmd::Irreducible => Command::Irreducible,
            Cmd::Absfactor => Command::AbsFactor,
            Cmd::Abscount => Command::AbsCount,
            Cmd::Polytope => Command::Polytope,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "critfact", version, about = "Bivariate polynomial factorization along critical fibers")]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Polynomial in x and y, or `-` to read it from standard input.
    poly: String,
    /// Coefficient field: `q`, `p=7`, `p=2,k=3` or `p=2,k=3,m=t^3+t+1`.
    #[arg(long, default_value = "q")]
    field: String,
    /// Seed for the randomized univariate factorization.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include intermediate dimensions and bases in the output.
    #[arg(long)]
    trace: bool,
    /// Minimal truncation order of the higher truncation equations.
    #[arg(long)]
    precision: Option<usize>,
    /// Pretty-print the JSON output.
    #[arg(long)]
    pretty: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = if args.poly == "-" {
        let mut s = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut s) {
            let err = Error::InvalidInput(format!("cannot read standard input: {e}"));
            println!("{}", error_json(&err));
            return ExitCode::from(exit_code(&err) as u8);
        }
        s.trim().to_string()
    } else {
        args.poly.clone()
    };
    let cfg = RunConfig {
        field: args.field.clone(),
        seed: args.seed,
        trace: args.trace,
        precision: args.precision,
    };
    match run(args.command.into(), &text, &cfg) {
        Ok(v) => {
            let s = if args.pretty {
                serde_json::to_string_pretty(&v)
            } else {
                serde_json::to_string(&v)
            };
            println!("{}", s.expect("JSON values always serialize"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", error_json(&e));
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
