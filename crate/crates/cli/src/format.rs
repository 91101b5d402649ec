//! The algebra file: a JSON document with exact rational strings.
//!
//! ```json
//! {
//!   "name": "sl2-killing",
//!   "dimension": 3,
//!   "basis": ["e", "h", "f"],
//!   "brackets": [{ "i": 0, "j": 1, "terms": [[0, "-2"]] }],
//!   "form": [["0", "0", "4"], ["0", "8", "0"], ["4", "0", "0"]]
//! }
//! ```
//!
//! Indices are 0-based. Brackets not listed are zero. An optional
//! `"subalgebra"` field lists spanning vectors of `h`.

use dirac_core::arith::{parse_rational, Rational, RationalMatrix};
use dirac_core::lie::{LieBrackets, QuadraticLieAlgebra, SubalgebraSpec};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dimension: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketRecord>,
    pub form: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subalgebra: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedAlgebra {
    pub algebra: QuadraticLieAlgebra,
    pub subalgebra: Option<SubalgebraSpec>,
}

fn coefficient(s: &str, at: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|_| CliError::Format(format!("{at}: invalid rational {s:?}")))
}

fn vector(strings: &[String], n: usize, at: &str) -> Result<Vec<Rational>, CliError> {
    if strings.len() != n {
        return Err(CliError::Format(format!(
            "{at}: expected {n} entries, found {}",
            strings.len()
        )));
    }
    strings.iter().map(|s| coefficient(s, at)).collect()
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Builds and validates the algebra and, when present, the subalgebra.
    pub fn to_algebra(&self) -> Result<ParsedAlgebra, CliError> {
        let n = self.dimension;
        if self.basis.len() != n {
            return Err(CliError::Format(format!(
                "basis has {} labels for dimension {n}",
                self.basis.len()
            )));
        }
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for rec in &self.brackets {
            let at = format!("bracket ({}, {})", rec.i, rec.j);
            let mut coords = vec![Rational::zero(); n];
            for (k, c) in &rec.terms {
                if *k >= n {
                    return Err(CliError::Format(format!("{at}: index {k} out of range")));
                }
                coords[*k] += coefficient(c, &at)?;
            }
            brackets.push(((rec.i, rec.j), coords));
        }
        let table = LieBrackets::new(self.basis.clone(), brackets)?;
        if self.form.len() != n {
            return Err(CliError::Format(format!(
                "form has {} rows for dimension {n}",
                self.form.len()
            )));
        }
        let rows = self
            .form
            .iter()
            .enumerate()
            .map(|(r, row)| vector(row, n, &format!("form row {r}")))
            .collect::<Result<Vec<_>, _>>()?;
        let algebra =
            QuadraticLieAlgebra::new(self.name.clone(), table, RationalMatrix::from_rows(rows)?)?;
        let subalgebra = match &self.subalgebra {
            None => None,
            Some(vs) => {
                let vectors = vs
                    .iter()
                    .enumerate()
                    .map(|(r, v)| vector(v, n, &format!("subalgebra vector {r}")))
                    .collect::<Result<Vec<_>, _>>()?;
                let spec = SubalgebraSpec::new(vectors);
                spec.validate(&algebra)?;
                Some(spec)
            }
        };
        Ok(ParsedAlgebra {
            algebra,
            subalgebra,
        })
    }

    pub fn from_algebra(
        algebra: &QuadraticLieAlgebra,
        subalgebra: Option<&SubalgebraSpec>,
    ) -> Self {
        let strings = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        let brackets = algebra
            .brackets()
            .stored()
            .map(|((i, j), coords)| BracketRecord {
                i,
                j,
                terms: coords
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.to_string()))
                    .collect(),
            })
            .collect();
        let form = algebra.form();
        AlgebraFile {
            name: algebra.name().to_string(),
            dimension: algebra.dim(),
            basis: algebra.labels().to_vec(),
            brackets,
            form: (0..form.rows()).map(|r| strings(form.row(r))).collect(),
            subalgebra: subalgebra.map(|h| h.vectors.iter().map(|v| strings(v)).collect()),
        }
    }
}

/// Parses and validates an algebra document.
pub fn parse_algebra_file(text: &str) -> Result<ParsedAlgebra, CliError> {
    AlgebraFile::from_json(text)?.to_algebra()
}

/// Serializes an algebra (and subalgebra) to the file format.
pub fn emit(algebra: &QuadraticLieAlgebra, subalgebra: Option<&SubalgebraSpec>) -> String {
    AlgebraFile::from_algebra(algebra, subalgebra).to_json()
}
