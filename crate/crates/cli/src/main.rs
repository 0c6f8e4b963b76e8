use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod render;

use commands::Output;

#[derive(Parser)]
#[command(name = "lierigid", version)]
#[command(about = "Exact Lie algebra computations: derivations, characteristic nilpotency and rigidity of embeddings")]
struct Cli {
    /// Report style
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra and report nilpotency, solvability and complete solvability
    Check {
        /// Algebra file, or `catalog:<key>`
        algebra: String,
    },
    /// Derivation algebra, inner and outer derivation dimensions
    Derivations { algebra: String },
    /// Decide characteristic nilpotency three independent ways
    CharNilpotent { algebra: String },
    /// Build Der(L) ⋉ L and write it as an algebra file
    Semidirect {
        algebra: String,
        /// Output path; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Infinitesimal rigidity report for an embedding file
    Rigidity { embedding: PathBuf },
    /// Write a catalog algebra, e.g. `catalog ladder 4` or `catalog "sum(heisenberg,abelian(1))"`
    Catalog {
        key: String,
        /// Integer parameters of the family
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a codimension-one abelian ideal is the only abelian subalgebra of its dimension
    AbelianUnique {
        algebra: String,
        /// `last-n` for the last dim-1 basis vectors, or comma-separated zero-based indices
        #[arg(long, default_value = "last-n")]
        ideal: String,
    },
}

fn run(cli: &Cli) -> lierigid::Result<Output> {
    match &cli.command {
        Command::Check { algebra } => commands::check(algebra),
        Command::Derivations { algebra } => commands::derivations(algebra),
        Command::CharNilpotent { algebra } => commands::char_nilpotent(algebra),
        Command::Semidirect { algebra, out } => commands::semidirect(algebra, out.as_deref()),
        Command::Rigidity { embedding } => commands::rigidity(embedding),
        Command::Catalog { key, params, out } => commands::catalog(key, params, out.as_deref()),
        Command::AbelianUnique { algebra, ideal } => commands::abelian_unique(algebra, ideal),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            match cli.format {
                Format::Text => print!("{}", output.text),
                Format::Machine => {
                    let mut s = serde_json::to_string_pretty(&output.machine).expect("reports serialize");
                    s.push('\n');
                    print!("{s}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let lierigid::Error::Jacobi(violations) = &e {
                for v in violations {
                    eprintln!("  triple {:?}: residual {}", v.triple, lierigid::exactla::format_vec(&v.residual));
                }
            }
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
