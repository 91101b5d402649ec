//! Runs the selected checks on one algebra, concurrently, in a fixed order.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::thread;
use std::time::Instant;

use clap::ValueEnum;
use dirac_core::dirac::{proof_chain_check, DiracContext};
use dirac_core::lie::{QuadraticLieAlgebra, SubalgebraSpec};

use crate::error::CliError;
use crate::report::{CheckRecord, CheckReport, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum CheckSet {
    All,
    Kostant,
    Cohomology,
    Decomposition,
    Invariance,
}

impl CheckSet {
    const ORDER: [CheckSet; 4] = [
        CheckSet::Kostant,
        CheckSet::Cohomology,
        CheckSet::Decomposition,
        CheckSet::Invariance,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CheckSet::All => "all",
            CheckSet::Kostant => "kostant",
            CheckSet::Cohomology => "cohomology",
            CheckSet::Decomposition => "decomposition",
            CheckSet::Invariance => "invariance",
        }
    }

    /// The individual checks selected by `sets`, deduplicated, in report order.
    pub fn expand(sets: &[CheckSet]) -> Vec<CheckSet> {
        Self::ORDER
            .into_iter()
            .filter(|c| sets.iter().any(|s| *s == CheckSet::All || s == c))
            .collect()
    }
}

/// Seed for the random samples of the cohomology check.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Default)]
struct Outcome {
    witnesses: Vec<String>,
    values: BTreeMap<String, String>,
}

impl Outcome {
    fn value(&mut self, key: &str, v: impl ToString) {
        self.values.insert(key.to_string(), v.to_string());
    }

    fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.witnesses.push(witness());
        }
    }
}

fn kostant(ctx: &DiracContext) -> Outcome {
    let r = ctx.kostant_check();
    let mut o = Outcome::default();
    o.value("c", &r.c);
    o.value("v_squared", &r.v_squared);
    o.value("residual_is_scalar", r.residual_is_scalar);
    o.value("v_squared_is_scalar", r.v_squared_is_scalar);
    o.value("v_squared_is_central", r.v_squared_is_central);
    o.require(r.residual_is_scalar, || {
        "D^2 - Omega_g + Delta(Omega_h) is not scalar".into()
    });
    if r.compared_with_v_squared {
        o.require(r.v_squared_is_central, || "v^2 is not central".into());
        o.require(r.v_squared_is_scalar, || "v^2 is not scalar".into());
        o.require(r.v_squared == r.c, || {
            format!("scalar part of v^2 is {}, c is {}", r.v_squared, r.c)
        });
    }
    o
}

fn cohomology(g: &QuadraticLieAlgebra, seed: u64) -> Result<Outcome, CliError> {
    let mut o = Outcome::default();
    for item in proof_chain_check(g, seed)? {
        o.value(&item.name, if item.passed() { "pass" } else { "fail" });
        if let Some(w) = item.witness {
            o.witnesses.push(format!("{}: {w}", item.name));
        }
    }
    Ok(o)
}

fn decomposition(ctx: &DiracContext) -> Result<Outcome, CliError> {
    let r = ctx.decomposition_check()?;
    let mut o = Outcome::default();
    o.value("c_g", &r.c_g);
    o.value("c_h", &r.c_h);
    o.value("c_g/h", &r.c_rel);
    o.require(r.identity_holds, || {
        "D_g differs from D_g/h + Delta(D_h)".into()
    });
    o.require(r.anticommute, || {
        "the two summands do not anticommute".into()
    });
    o.require(r.squared_holds, || "squared identity fails".into());
    o.require(r.additive, || {
        format!("c_g/h = {} but c_g - c_h = {}", r.c_rel, &r.c_g - &r.c_h)
    });
    if o.witnesses.is_empty() && !r.passed {
        o.witnesses.push("a component Kostant check failed".into());
    }
    Ok(o)
}

fn invariance(ctx: &DiracContext) -> Result<Outcome, CliError> {
    let mut o = Outcome::default();
    if let Some(j) = ctx.h_invariance_check() {
        o.witnesses.push(format!("[Delta(Y{}), D] != 0", j + 1));
    }
    let c = ctx.kostant_check().c;
    let c_alt = ctx.alternate()?.kostant_check().c;
    o.value("c", &c);
    o.value("c_alternate_basis", &c_alt);
    o.require(c == c_alt, || {
        "c depends on the orthogonal basis of h-perp".into()
    });
    Ok(o)
}

fn run_one(check: CheckSet, g: &QuadraticLieAlgebra, ctx: &DiracContext, seed: u64) -> CheckRecord {
    let start = Instant::now();
    let outcome = match check {
        CheckSet::Kostant => Ok(kostant(ctx)),
        CheckSet::Cohomology => cohomology(g, seed),
        CheckSet::Decomposition => decomposition(ctx),
        CheckSet::Invariance => invariance(ctx),
        CheckSet::All => unreachable!("expanded before running"),
    };
    let outcome = outcome.unwrap_or_else(|e| Outcome {
        witnesses: vec![format!("error: {e}")],
        values: BTreeMap::new(),
    });
    CheckRecord {
        id: check.id().to_string(),
        status: if outcome.witnesses.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        witnesses: outcome.witnesses,
        values: outcome.values,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs every check in `checks` on `g` relative to `h` (zero when `None`).
pub fn run_suite(
    g: &QuadraticLieAlgebra,
    h: Option<&SubalgebraSpec>,
    checks: &[CheckSet],
    seed: u64,
) -> Result<CheckReport, CliError> {
    let algebra = Arc::new(g.clone());
    let h = h.cloned().unwrap_or_default();
    let ctx = DiracContext::new(&algebra, &h)?;
    let selected = CheckSet::expand(checks);
    let records = thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&c| {
                let ctx = &ctx;
                s.spawn(move || run_one(c, g, ctx, seed))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    });
    Ok(CheckReport::new(
        g.name().to_string(),
        g.dim(),
        ctx.split().h_dim(),
        records,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_order() {
        assert_eq!(CheckSet::expand(&[CheckSet::All]), CheckSet::ORDER.to_vec());
        assert_eq!(
            CheckSet::expand(&[CheckSet::Invariance, CheckSet::Kostant, CheckSet::Kostant]),
            vec![CheckSet::Kostant, CheckSet::Invariance]
        );
    }
}
