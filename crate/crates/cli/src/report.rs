//! Check records and their text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub witnesses: Vec<String>,
    pub values: BTreeMap<String, String>,
    pub elapsed_ms: u64,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub algebra: String,
    pub dimension: usize,
    pub subalgebra_dimension: usize,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

impl CheckReport {
    pub fn new(
        algebra: String,
        dimension: usize,
        subalgebra_dimension: usize,
        checks: Vec<CheckRecord>,
    ) -> Self {
        let passed = checks.iter().all(CheckRecord::passed);
        CheckReport {
            algebra,
            dimension,
            subalgebra_dimension,
            checks,
            passed,
        }
    }

    /// The report with every timing set to zero.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.elapsed_ms = 0;
        }
        r
    }

    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} (dim {}, h dim {})",
            self.algebra, self.dimension, self.subalgebra_dimension
        );
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "  {status} {} [{} ms]", c.id, c.elapsed_ms);
            for (k, v) in &c.values {
                let _ = writeln!(out, "      {k} = {v}");
            }
            for w in &c.witnesses {
                let _ = writeln!(out, "      witness: {w}");
            }
        }
        let _ = writeln!(
            out,
            "{}",
            if self.passed {
                "all checks passed"
            } else {
                "some checks FAILED"
            }
        );
        out
    }
}
