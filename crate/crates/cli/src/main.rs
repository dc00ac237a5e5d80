use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qdisc_cli::{commands, fixtures, spec, CliError, Output};

#[derive(Parser)]
#[command(name = "qdisc", version, about = "Discriminants of skew polynomial rings and quantum generalized Weyl algebras")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reflexive-hull discriminant with chart evidence.
    Disc { spec: PathBuf },
    /// Modified discriminant ideal.
    Md {
        spec: PathBuf,
        /// Enumerate every maximal minor of the trace matrix.
        #[arg(long)]
        exhaustive: bool,
        /// Minor size for matrix orders (default 4).
        #[arg(long)]
        v: Option<usize>,
    },
    /// p-power v-discriminant of a matrix order over a commutative ring.
    Ppower {
        spec: PathBuf,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        v: Option<usize>,
    },
    /// Discriminant of a tensor product from its factors.
    TensorDisc {
        spec: PathBuf,
        /// Second factor; without it SPEC must be a tensor spec.
        other: Option<PathBuf>,
    },
    /// Check that a map respects the defining relations.
    AutCheck {
        spec: PathBuf,
        #[arg(long)]
        morphism: PathBuf,
    },
    /// Decide whether two degree-one GWAs are isomorphic.
    IsoCheck { spec1: PathBuf, spec2: PathBuf },
    /// Check the Leibniz rule for a derivation on the relations.
    DerivationCheck {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Recompute the built-in fixture suite.
    VerifyPaper,
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("QDISC_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| CliError::input(format!("QDISC_THREADS must be a positive integer, got {:?}", v)))?;
        if n == 0 {
            return Err(CliError::input("QDISC_THREADS must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::input(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Disc { spec } => commands::disc(&spec::load(spec)?),
        Command::Md { spec, exhaustive, v } => commands::md(&spec::load(spec)?, *exhaustive, *v),
        Command::Ppower { spec, p, v } => commands::ppower(&spec::load(spec)?, *p, *v),
        Command::TensorDisc { spec, other } => {
            let first = spec::load(spec)?;
            match (first, other) {
                (a, Some(o)) => commands::tensor_disc(&a, &spec::load(o)?),
                (spec::Algebra::Tensor(a, b), None) => commands::tensor_disc(&a, &b),
                (a, None) => Err(CliError::input(format!("{} is a {} spec; give a tensor spec or two specs", a.name(), a.kind()))),
            }
        }
        Command::AutCheck { spec, morphism } => commands::aut_check(&spec::load(spec)?, morphism),
        Command::IsoCheck { spec1, spec2 } => commands::iso_check(&spec::load(spec1)?, &spec::load(spec2)?),
        Command::DerivationCheck { spec } => commands::derivation_check(spec),
        Command::VerifyPaper => Ok(fixtures::verify()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.status as u8)
        }
        Err(e) => {
            if cli.json {
                let err = serde_json::json!({ "schema": commands::SCHEMA, "error": e.to_string(), "exit_code": e.exit_code() });
                println!("{}", serde_json::to_string_pretty(&err).expect("error report serializes"));
            }
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
