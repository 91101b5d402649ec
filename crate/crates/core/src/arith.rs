//! Exact rational scalars, dense rational matrices and the small amount of
//! linear algebra the rest of the crate needs: elimination, null spaces,
//! linear solving and congruence diagonalization of symmetric forms.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with `q > 0`. Whitespace is not accepted.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_string());
    let is_int = |t: &str| {
        let digits = t.strip_prefix('-').unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    if !is_int(num) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) if !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) => {
            d.parse().map_err(|_| bad())?
        }
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, x.len(), "mul_vec: length mismatch");
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// `xᵀ · self · y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        dot(x, &self.mul_vec(y))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip();
            for k in c..m.cols {
                m[(r, k)] = &m[(r, k)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for k in c..m.cols {
                    let delta = &f * &m[(r, k)];
                    m[(i, k)] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "determinant of non-square matrix".into(),
            ));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &pivot;
                for k in c..n {
                    let delta = &f * &m[(c, k)];
                    m[(i, k)] -= delta;
                }
            }
        }
        Ok(det)
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = -r[(row, f)].clone();
                }
                x
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.entries.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// column `dst` += f · column `src`
    fn add_col(&mut self, dst: usize, src: usize, f: &Rational) {
        for i in 0..self.rows {
            let delta = f * &self[(i, src)];
            self[(i, dst)] += delta;
        }
    }

    /// row `dst` += f · row `src`
    fn add_row(&mut self, dst: usize, src: usize, f: &Rational) {
        for k in 0..self.cols {
            let delta = f * &self[(src, k)];
            self[(dst, k)] += delta;
        }
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product: dimension mismatch");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;

    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix sum: dimension mismatch"
        );
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Outcome of [`solve_linear`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    /// The solution set is an affine space of positive dimension; this is one
    /// member of it (free variables set to zero).
    NonUnique(Vec<Rational>),
    Inconsistent,
}

impl LinearSolution {
    pub fn solution(&self) -> Option<&[Rational]> {
        match self {
            LinearSolution::Unique(x) | LinearSolution::NonUnique(x) => Some(x),
            LinearSolution::Inconsistent => None,
        }
    }

    pub fn into_solution(self) -> Option<Vec<Rational>> {
        match self {
            LinearSolution::Unique(x) | LinearSolution::NonUnique(x) => Some(x),
            LinearSolution::Inconsistent => None,
        }
    }
}

/// Solves `a · x = b` exactly.
pub fn solve_linear(a: &RationalMatrix, b: &[Rational]) -> Result<LinearSolution> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    let n = a.cols();
    let mut aug = RationalMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, n)].clone();
    }
    Ok(if pivots.len() == n {
        LinearSolution::Unique(x)
    } else {
        LinearSolution::NonUnique(x)
    })
}

/// Congruence diagonalization of a symmetric non-degenerate form.
///
/// Returns `(P, d)` with `Pᵀ·B·P = diag(d)` and every `d_i ≠ 0`. Columns of
/// `P` are scaled to primitive integer vectors with a positive leading entry.
pub fn diagonalize_form(b: &RationalMatrix) -> Result<(RationalMatrix, Vec<Rational>)> {
    if !b.is_symmetric() {
        return Err(Error::FormDegenerate("matrix is not symmetric".into()));
    }
    let n = b.rows();
    let mut m = b.clone();
    let mut p = RationalMatrix::identity(n);
    for k in 0..n {
        if m[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m[(j, j)].is_zero()) {
                m.swap_rows(j, k);
                m.swap_cols(j, k);
                p.swap_cols(j, k);
            } else if let Some(j) = (k + 1..n).find(|&j| !m[(k, j)].is_zero()) {
                // all later diagonal entries vanish, so the new pivot is 2·m[k][j]
                let one = Rational::one();
                m.add_col(k, j, &one);
                m.add_row(k, j, &one);
                p.add_col(k, j, &one);
            } else {
                return Err(Error::FormDegenerate(format!(
                    "basis direction {k} is orthogonal to everything"
                )));
            }
        }
        let pivot = m[(k, k)].clone();
        for j in k + 1..n {
            if m[(k, j)].is_zero() {
                continue;
            }
            let f = -(&m[(k, j)] / &pivot);
            m.add_col(j, k, &f);
            m.add_row(j, k, &f);
            p.add_col(j, k, &f);
        }
    }
    let mut d: Vec<Rational> = (0..n).map(|i| m[(i, i)].clone()).collect();
    for (j, dj) in d.iter_mut().enumerate() {
        let s = primitive_scale(&p.column(j));
        for i in 0..n {
            p[(i, j)] = &p[(i, j)] * &s;
        }
        *dj = &*dj * &s * &s;
    }
    debug_assert!((&(&p.transpose() * b) * &p) == RationalMatrix::diagonal(&d));
    Ok((p, d))
}

/// Factor turning `v` into a primitive integer vector whose first nonzero
/// entry is positive.
fn primitive_scale(v: &[Rational]) -> Rational {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let num = v
        .iter()
        .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
    if num.is_zero() {
        return Rational::one();
    }
    let s = Rational::new(den, num);
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) if lead.is_negative() => -s,
        _ => s,
    }
}
