//! Built-in quadratic Lie algebras.

use num_traits::Zero;

use crate::arith::{frac, rat, solve_linear, Rational, RationalMatrix};
use crate::error::{Error, Result};
use crate::lie::{killing_form, LieBrackets, QuadraticLieAlgebra, SubalgebraSpec};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub algebra: QuadraticLieAlgebra,
    pub subalgebra: Option<SubalgebraSpec>,
}

pub const NAMES: &[&str] = &[
    "abelian1",
    "abelian2",
    "abelian3",
    "sl2-killing",
    "sl2-killing-neg",
    "sl2-killing-half",
    "sl2xsl2-diagonal",
    "sl3-killing",
];

pub fn entry(name: &str) -> Option<Result<CatalogEntry>> {
    let plain = |name: &'static str, algebra: Result<QuadraticLieAlgebra>| {
        algebra.map(|algebra| CatalogEntry {
            name,
            algebra,
            subalgebra: None,
        })
    };
    let found = match name {
        "abelian1" => plain("abelian1", abelian(1)),
        "abelian2" => plain("abelian2", abelian(2)),
        "abelian3" => plain("abelian3", abelian(3)),
        "sl2-killing" => plain("sl2-killing", sl2(&rat(1))),
        "sl2-killing-neg" => plain("sl2-killing-neg", sl2(&rat(-1))),
        "sl2-killing-half" => plain("sl2-killing-half", sl2(&frac(1, 2))),
        "sl2xsl2-diagonal" => sl2_sl2_diagonal(),
        "sl3-killing" => plain("sl3-killing", sl3()),
        _ => return None,
    };
    Some(found)
}

pub fn all() -> Result<Vec<CatalogEntry>> {
    NAMES.iter().map(|n| entry(n).expect("listed")).collect()
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Abelian algebra of dimension `n` with the identity form.
pub fn abelian(n: usize) -> Result<QuadraticLieAlgebra> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    QuadraticLieAlgebra::new(
        format!("abelian{n}"),
        LieBrackets::new(names, [])?,
        RationalMatrix::identity(n),
    )
}

pub fn heisenberg_brackets() -> LieBrackets {
    LieBrackets::new(
        labels(&["x", "y", "z"]),
        [((0, 1), vec![rat(0), rat(0), rat(1)])],
    )
    .expect("valid table")
}

/// Bracket table of the span of the given square matrices under the
/// commutator, expressed in that basis.
pub fn matrix_lie_algebra(names: &[&str], mats: &[Vec<Vec<i64>>]) -> Result<LieBrackets> {
    let size = mats[0].len();
    let flat = |m: &Vec<Vec<Rational>>| -> Vec<Rational> { m.iter().flatten().cloned().collect() };
    let mats: Vec<Vec<Vec<Rational>>> = mats
        .iter()
        .map(|m| {
            m.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect()
        })
        .collect();
    let cols =
        RationalMatrix::from_columns(size * size, &mats.iter().map(flat).collect::<Vec<_>>())?;
    let commutator = |a: &Vec<Vec<Rational>>, b: &Vec<Vec<Rational>>| {
        let mut c = vec![vec![Rational::zero(); size]; size];
        for i in 0..size {
            for j in 0..size {
                for k in 0..size {
                    c[i][j] += &a[i][k] * &b[k][j] - &b[i][k] * &a[k][j];
                }
            }
        }
        c
    };
    let mut brackets = Vec::new();
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            let c = flat(&commutator(&mats[i], &mats[j]));
            let coords = solve_linear(&cols, &c)?.into_solution().ok_or_else(|| {
                Error::NotSubalgebra("matrices not closed under commutator".into())
            })?;
            if coords.iter().any(|x| !x.is_zero()) {
                brackets.push(((i, j), coords));
            }
        }
    }
    LieBrackets::new(labels(names), brackets)
}

fn sl2_brackets() -> LieBrackets {
    matrix_lie_algebra(
        &["e", "h", "f"],
        &[
            vec![vec![0, 1], vec![0, 0]],
            vec![vec![1, 0], vec![0, -1]],
            vec![vec![0, 0], vec![1, 0]],
        ],
    )
    .expect("sl2 closes")
}

/// sl2 in the basis (e, h, f) with `t` times the Killing form.
pub fn sl2(t: &Rational) -> Result<QuadraticLieAlgebra> {
    let l = sl2_brackets();
    let k = killing_form(&l).scale(t);
    let name = if *t == rat(1) {
        "sl2".to_string()
    } else {
        format!("sl2 ({t}·Killing)")
    };
    QuadraticLieAlgebra::new(name, l, k)
}

/// sl2 ⊕ sl2 with its Killing form and the diagonal copy of sl2.
pub fn sl2_sl2_diagonal() -> Result<CatalogEntry> {
    let one = sl2_brackets();
    let shift = |c: &[Rational], off: usize| {
        let mut v = vec![Rational::zero(); 6];
        for (i, x) in c.iter().enumerate() {
            v[i + off] = x.clone();
        }
        v
    };
    let mut brackets = Vec::new();
    for off in [0, 3] {
        for ((i, j), c) in one.stored() {
            brackets.push(((i + off, j + off), shift(c, off)));
        }
    }
    let l = LieBrackets::new(labels(&["e1", "h1", "f1", "e2", "h2", "f2"]), brackets)?;
    let k = killing_form(&l);
    let algebra = QuadraticLieAlgebra::new("sl2xsl2", l, k)?;
    let diag = (0..3)
        .map(|i| {
            let mut v = vec![Rational::zero(); 6];
            v[i] = rat(1);
            v[i + 3] = rat(1);
            v
        })
        .collect();
    Ok(CatalogEntry {
        name: "sl2xsl2-diagonal",
        algebra,
        subalgebra: Some(SubalgebraSpec::new(diag)),
    })
}

fn elementary(i: usize, j: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; 3]; 3];
    m[i][j] = 1;
    m
}

/// sl3 with its Killing form; basis E12, E13, E23, H1, H2, E21, E31, E32.
pub fn sl3() -> Result<QuadraticLieAlgebra> {
    let h1 = vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 0]];
    let h2 = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, -1]];
    let l = matrix_lie_algebra(
        &["E12", "E13", "E23", "H1", "H2", "E21", "E31", "E32"],
        &[
            elementary(0, 1),
            elementary(0, 2),
            elementary(1, 2),
            h1,
            h2,
            elementary(1, 0),
            elementary(2, 0),
            elementary(2, 1),
        ],
    )?;
    let k = killing_form(&l);
    QuadraticLieAlgebra::new("sl3", l, k)
}

/// The Cartan subalgebra (H1, H2) of [`sl3`].
pub fn sl3_cartan() -> SubalgebraSpec {
    let mut h1 = vec![rat(0); 8];
    h1[3] = rat(1);
    let mut h2 = vec![rat(0); 8];
    h2[4] = rat(1);
    SubalgebraSpec::new(vec![h1, h2])
}
