//! Acceptance run: one line per criterion, exact comparisons throughout.

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use dirac_cli::{catalog_entry, emit, parse_algebra_file, AlgebraFile, CheckReport, CliError};
use dirac_core::arith::{rat, Rational};
use dirac_core::catalog::{self, NAMES};
use dirac_core::dirac::{proof_chain_check, DiracContext};
use dirac_core::lie::killing_form;
use dirac_core::Error;

struct Criterion {
    label: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(label: &'static str) -> Self {
        Criterion {
            label,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn report(&self) -> bool {
        let ok = self.failures.is_empty();
        let detail = if ok {
            self.notes.join("; ")
        } else {
            self.failures.join("; ")
        };
        println!(
            "{} {}: {}",
            if ok { "PASS" } else { "FAIL" },
            self.label,
            detail
        );
        ok
    }
}

fn context(name: &str) -> DiracContext {
    let parsed = catalog_entry(name).expect("catalog entry builds");
    let h = parsed.subalgebra.unwrap_or_default();
    DiracContext::new(&Arc::new(parsed.algebra), &h).expect("context builds")
}

fn full_context(name: &str) -> DiracContext {
    let parsed = catalog_entry(name).expect("catalog entry builds");
    DiracContext::full(&Arc::new(parsed.algebra)).expect("context builds")
}

fn kostant_quadratic() -> Criterion {
    let mut c = Criterion::new("Kostant theorem, quadratic case");
    let small = [
        "abelian1",
        "abelian2",
        "abelian3",
        "sl2-killing",
        "sl2-killing-neg",
        "sl2-killing-half",
    ];
    let start = Instant::now();
    for name in small.iter().copied().chain(["sl3-killing"]) {
        let t = Instant::now();
        let r = full_context(name).kostant_check();
        c.expect(r.residual_is_scalar, || {
            format!("{name}: residual not scalar")
        });
        c.expect(r.v_squared_is_scalar && r.v_squared_is_central, || {
            format!("{name}: v^2 not a central scalar")
        });
        c.expect(r.c == r.v_squared, || {
            format!("{name}: c = {} but v^2 = {}", r.c, r.v_squared)
        });
        if name.starts_with("abelian") {
            c.expect(r.c == rat(0), || format!("{name}: c = {}", r.c));
        }
        c.note(format!("{name} c={}", r.c));
        if name == "sl3-killing" {
            let elapsed = t.elapsed();
            c.expect(elapsed < Duration::from_secs(300), || {
                format!("sl3 took {elapsed:?}")
            });
            c.note(format!("sl3 {:?}", elapsed));
        } else if name == small[small.len() - 1] {
            let elapsed = start.elapsed();
            c.expect(elapsed < Duration::from_secs(10), || {
                format!("dims <= 3 took {elapsed:?}")
            });
            c.note(format!("dims<=3 {:?}", elapsed));
        }
    }
    c
}

fn relative_theorem() -> Criterion {
    let mut c = Criterion::new("Relative theorem, sl2+sl2 / diagonal sl2");
    let ctx = context("sl2xsl2-diagonal");
    let r = ctx.kostant_check();
    c.expect(r.residual_is_scalar, || {
        "D^2 - Omega_g + Delta(Omega_h) is not scalar".into()
    });
    match ctx.decomposition_check() {
        Ok(d) => {
            c.expect(d.c_rel == &d.c_g - &d.c_h, || {
                format!("{} != {} - {}", d.c_rel, d.c_g, d.c_h)
            });
            c.expect(d.c_rel == r.c, || {
                "decomposition and Kostant disagree on c_g/h".into()
            });
            c.note(format!("c_g={} c_h={} c_g/h={}", d.c_g, d.c_h, d.c_rel));
        }
        Err(e) => c.expect(false, || e.to_string()),
    }
    c
}

fn proof_chain() -> Criterion {
    let mut c = Criterion::new("Proof-chain identities");
    for name in NAMES {
        let g = catalog_entry(name).unwrap().algebra;
        match proof_chain_check(&g, 1) {
            Ok(items) => {
                for item in items.iter().filter(|i| !i.passed()) {
                    c.expect(false, || {
                        format!(
                            "{name}: {} at {}",
                            item.name,
                            item.witness.clone().unwrap_or_default()
                        )
                    });
                }
                c.note(format!("{name} {} identities", items.len()));
            }
            Err(e) => c.expect(false, || format!("{name}: {e}")),
        }
    }
    c
}

fn lemma_suite() -> Criterion {
    let mut c = Criterion::new("Lemma suite (h-invariance, decomposition)");
    for name in NAMES {
        let ctx = context(name);
        c.expect(ctx.h_invariance_check().is_none(), || {
            format!("{name}: [Delta(y), D] != 0")
        });
        match ctx.decomposition_check() {
            Ok(d) => {
                c.expect(d.identity_holds, || format!("{name}: decomposition (i)"));
                c.expect(d.anticommute, || format!("{name}: anticommutation (ii)"));
                c.expect(d.squared_holds, || format!("{name}: squared consequence"));
            }
            Err(e) => c.expect(false, || format!("{name}: {e}")),
        }
    }
    c.note(format!("{} entries", NAMES.len()));
    c
}

fn expect_rejection(
    c: &mut Criterion,
    label: &str,
    result: Result<dirac_cli::ParsedAlgebra, CliError>,
    condition: &str,
) {
    match result {
        Err(CliError::Algebra(Error::InvalidAlgebra {
            condition: got,
            witness,
        })) if got.starts_with(condition) => {
            c.note(format!("{label} rejected: {got} at {witness}"));
        }
        other => c.expect(false, || format!("{label}: unexpected {other:?}")),
    }
}

fn robustness() -> Criterion {
    let mut c = Criterion::new("Robustness (basis invariance, middle term, ingestion)");
    for name in NAMES {
        let ctx = context(name);
        let alt = ctx.alternate().unwrap();
        let (a, b): (Rational, Rational) = (ctx.kostant_check().c, alt.kostant_check().c);
        c.expect(ctx.split().p_basis != alt.split().p_basis, || {
            format!("{name}: alternate basis is not distinct")
        });
        c.expect(a == b, || format!("{name}: c = {a} vs {b}"));
        let full = full_context(name);
        c.expect(full.middle_term_check().unwrap_or(false), || {
            format!("{name}: middle-term identity")
        });
    }
    let l = catalog::heisenberg_brackets();
    let k = killing_form(&l);
    let heis = AlgebraFile {
        name: "heisenberg".into(),
        dimension: 3,
        basis: l.labels().to_vec(),
        brackets: vec![dirac_cli::format::BracketRecord {
            i: 0,
            j: 1,
            terms: vec![(2, "1".into())],
        }],
        form: (0..3)
            .map(|r| k.row(r).iter().map(ToString::to_string).collect())
            .collect(),
        subalgebra: None,
    };
    expect_rejection(
        &mut c,
        "heisenberg",
        parse_algebra_file(&heis.to_json()),
        "non-degeneracy",
    );
    let sl2 = catalog::sl2(&rat(1)).unwrap();
    let mut bad = AlgebraFile::from_algebra(&sl2, None);
    bad.form = (0..3)
        .map(|r| {
            (0..3)
                .map(|s| if r == s { "1".into() } else { "0".into() })
                .collect()
        })
        .collect();
    expect_rejection(
        &mut c,
        "identity form on sl2",
        parse_algebra_file(&bad.to_json()),
        "ad-invariance",
    );
    c
}

fn machine_report(name: &str) -> Result<(i32, CheckReport), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cubic-dirac"))
        .args([
            "verify",
            "--catalog",
            name,
            "--subalgebra-from-file",
            "--report",
            "machine",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    let report: CheckReport = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), report))
}

fn cli() -> Criterion {
    let mut c = Criterion::new("CLI verify and round trip");
    for name in NAMES {
        match (machine_report(name), machine_report(name)) {
            (Ok((code, first)), Ok((_, second))) => {
                c.expect(code == 0, || format!("{name}: exit {code}"));
                c.expect(first.passed, || format!("{name}: report not passing"));
                c.expect(first.without_timings() == second.without_timings(), || {
                    format!("{name}: reports differ between runs")
                });
            }
            (Err(e), _) | (_, Err(e)) => c.expect(false, || format!("{name}: {e}")),
        }
        let parsed = catalog_entry(name).unwrap();
        let text = emit(&parsed.algebra, parsed.subalgebra.as_ref());
        let back = parse_algebra_file(&text).unwrap();
        let same: bool = back == parsed && emit(&back.algebra, back.subalgebra.as_ref()) == text;
        c.expect(same, || format!("{name}: round trip differs"));
    }
    c.note(format!("{} entries verified twice", NAMES.len()));
    c
}

fn main() -> ExitCode {
    let criteria = [
        kostant_quadratic(),
        relative_theorem(),
        proof_chain(),
        lemma_suite(),
        robustness(),
        cli(),
    ];
    let passed = criteria
        .iter()
        .map(Criterion::report)
        .filter(|ok| *ok)
        .count();
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
