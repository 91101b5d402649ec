//! File ingestion, the built-in catalog, and check orchestration for the
//! `cubic-dirac` command.

pub mod error;
pub mod format;
pub mod report;
pub mod suite;

use dirac_core::catalog;

pub use error::CliError;
pub use format::{emit, parse_algebra_file, AlgebraFile, ParsedAlgebra};
pub use report::{CheckRecord, CheckReport, Status};
pub use suite::{run_suite, CheckSet, DEFAULT_SEED};

/// A catalog entry as it would be read from its file.
pub fn catalog_entry(name: &str) -> Result<ParsedAlgebra, CliError> {
    let entry = catalog::entry(name).ok_or_else(|| CliError::UnknownEntry(name.to_string()))??;
    Ok(ParsedAlgebra {
        algebra: entry.algebra.renamed(entry.name),
        subalgebra: entry.subalgebra,
    })
}
