use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dirac_cli::{
    catalog_entry, emit, parse_algebra_file, run_suite, CheckSet, ParsedAlgebra, DEFAULT_SEED,
};
use dirac_core::catalog::NAMES;
use dirac_core::dirac::DiracContext;

#[derive(Parser)]
#[command(
    name = "cubic-dirac",
    version,
    about = "Exact checks of the cubic Dirac operator identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity checks on an algebra
    Verify {
        #[command(flatten)]
        source: Source,
        /// Checks to run; may be repeated
        #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
        checks: Vec<CheckSet>,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportKind,
        /// Seed for the randomized derivation checks
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Inspect the built-in algebras
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Print the constant c of D^2
    ComputeC {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entry names
    List,
    /// Print an entry in the algebra file format
    Show { name: String },
}

#[derive(Args)]
struct Source {
    /// Algebra file (JSON)
    #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
    input: Option<PathBuf>,
    /// Built-in catalog entry instead of a file
    #[arg(long)]
    catalog: Option<String>,
    /// Use the subalgebra given with the algebra (otherwise h = 0)
    #[arg(long)]
    subalgebra_from_file: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportKind {
    Text,
    Machine,
}

impl Source {
    fn load(&self) -> Result<ParsedAlgebra> {
        let mut parsed = match (&self.input, &self.catalog) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                parse_algebra_file(&text).with_context(|| format!("in {}", path.display()))?
            }
            (None, Some(name)) => catalog_entry(name)?,
            (None, None) => bail!("either --input or --catalog is required"),
        };
        if !self.subalgebra_from_file {
            parsed.subalgebra = None;
        }
        Ok(parsed)
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify {
            source,
            checks,
            report,
            seed,
        } => {
            let parsed = source.load()?;
            let result = run_suite(&parsed.algebra, parsed.subalgebra.as_ref(), &checks, seed)?;
            match report {
                ReportKind::Text => print!("{}", result.to_text()),
                ReportKind::Machine => print!("{}", result.to_machine()),
            }
            Ok(result.passed)
        }
        Command::Catalog { action } => {
            match action {
                CatalogAction::List => NAMES.iter().for_each(|n| println!("{n}")),
                CatalogAction::Show { name } => {
                    let parsed = catalog_entry(&name)?;
                    print!("{}", emit(&parsed.algebra, parsed.subalgebra.as_ref()));
                }
            }
            Ok(true)
        }
        Command::ComputeC { source } => {
            let parsed = source.load()?;
            let g = std::sync::Arc::new(parsed.algebra);
            let h = parsed.subalgebra.unwrap_or_default();
            let report = DiracContext::new(&g, &h)?.kostant_check();
            if !report.residual_is_scalar {
                bail!("D^2 - Omega_g + Delta(Omega_h) is not scalar");
            }
            println!("{}", report.c);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
