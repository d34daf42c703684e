use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod input;
mod report;

#[derive(Parser, Debug)]
#[command(
    name = "phk",
    version,
    about = "Exact computations on profinite spaces given as towers of finite simplicial sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Corpus entry (`name` or `name:param`) or a JSON file.
    #[arg(long, global = true)]
    pub space: Option<String>,

    /// Tower or tower-map file, or a corpus tower entry.
    #[arg(long, global = true)]
    pub tower: Option<String>,

    /// Group by catalogue name, e.g. C2, S3, D4, Q8.
    #[arg(long, global = true)]
    pub group: Option<String>,

    /// Moduli m[,m...] for coefficients Z/m.
    #[arg(long = "mod", global = true, value_delimiter = ',')]
    pub moduli: Vec<u64>,

    /// A single degree to report.
    #[arg(long, global = true)]
    pub degree: Option<usize>,

    /// Degrees below this cap are computed.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub degree_cap: Option<u64>,

    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..))]
    pub coeff_cap: u64,

    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub quotient_cap: u64,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Recorded in the report; no command draws random numbers.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Hⁿ(X; Z/m).
    Cohomology,
    /// Hₙ(X; Z/m); modulus 0 gives the profinite tower.
    Homology,
    /// Connected components.
    Pi0,
    /// Finite quotients of the fundamental group.
    Pi1,
    /// Nonabelian H¹(X; G) by two algorithms.
    H1,
    /// Connected coverings up to the quotient cap.
    Coverings,
    /// Principal G-bundles up to isomorphism.
    Bundles,
    /// Cohomology of the Borel construction of a bundle.
    Borel,
    /// The Cartan–Leray spectral sequence of a bundle.
    CartanLeray,
    /// π₁ᵃᵇ ⊗ Z/m against H₁(X; Z/m).
    Hurewicz,
    /// π₂ through the Hurewicz map on regular covers.
    Pi2,
    /// Bounded weak-equivalence check of a map or tower map.
    CheckWe,
    /// List corpus entries and groups, or export an entry.
    Corpus,
    /// Parse and validate a file.
    Validate,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &outcome.text)
                    .map_err(|e| format!("{}: {e}", path.display())),
                None => std::io::stdout()
                    .write_all(outcome.text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.mismatch {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
