//! Quadratic Lie algebras given by structure constants, their invariant
//! forms, subalgebras, and the orthogonal splitting `g = h ⊕ h⊥`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{diagonalize_form, dot, solve_linear, unit_vector, Rational, RationalMatrix};
use crate::error::{Error, Result};

/// A bracket table on a finite basis. Only `[X_i, X_j]` with `i < j` is
/// supplied; the rest follows by antisymmetry.
#[derive(Clone, PartialEq, Eq)]
pub struct LieBrackets {
    labels: Vec<String>,
    // table[i * n + j] = coordinates of [X_i, X_j]
    table: Vec<Vec<Rational>>,
}

impl fmt::Debug for LieBrackets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieBrackets")
            .field("labels", &self.labels)
            .field("nonzero", &self.stored().count())
            .finish()
    }
}

impl LieBrackets {
    pub fn new<I>(labels: Vec<String>, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Vec<Rational>)>,
    {
        let n = labels.len();
        let mut table = vec![vec![Rational::zero(); n]; n * n];
        let mut seen = BTreeMap::new();
        for ((i, j), coords) in brackets {
            if i >= j || j >= n {
                return Err(Error::Contract(format!(
                    "bracket index pair ({i}, {j}) must satisfy i < j < {n}"
                )));
            }
            if coords.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "bracket ({i}, {j}) has {} coordinates, expected {n}",
                    coords.len()
                )));
            }
            if seen.insert((i, j), ()).is_some() {
                return Err(Error::Contract(format!("bracket ({i}, {j}) given twice")));
            }
            table[j * n + i] = coords.iter().map(|c| -c).collect();
            table[i * n + j] = coords;
        }
        Ok(LieBrackets { labels, table })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Coordinates of `[X_i, X_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i * self.dim() + j]
    }

    /// Nonzero stored brackets `[X_i, X_j]`, `i < j`, in lexicographic order.
    pub fn stored(&self) -> impl Iterator<Item = ((usize, usize), &[Rational])> + '_ {
        let n = self.dim();
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| ((i, j), self.basis_bracket(i, j)))
            .filter(|(_, c)| c.iter().any(|x| !x.is_zero()))
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        assert!(x.len() == n && y.len() == n, "bracket: length mismatch");
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if i == j {
                    continue;
                }
                let coef = xi * yj;
                for (o, c) in out.iter_mut().zip(self.basis_bracket(i, j)) {
                    if !c.is_zero() {
                        *o += &coef * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad x` in the stored basis.
    pub fn ad_matrix(&self, x: &[Rational]) -> RationalMatrix {
        let n = self.dim();
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|j| self.bracket(x, &unit_vector(n, j)))
            .collect();
        RationalMatrix::from_columns(n, &cols).expect("square")
    }

    pub fn is_abelian(&self) -> bool {
        self.stored().next().is_none()
    }
}

/// Outcome of an exhaustive check over basis triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleCheck {
    Pass,
    Fail([usize; 3]),
}

impl TripleCheck {
    pub fn is_pass(&self) -> bool {
        matches!(self, TripleCheck::Pass)
    }
}

/// `[[x,y],z] + [[y,z],x] + [[z,x],y] = 0` on all basis triples.
pub fn check_jacobi(l: &LieBrackets) -> TripleCheck {
    let n = l.dim();
    let e = |i| unit_vector(n, i);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (x, y, z) = (e(i), e(j), e(k));
                let a = l.bracket(&l.bracket(&x, &y), &z);
                let b = l.bracket(&l.bracket(&y, &z), &x);
                let c = l.bracket(&l.bracket(&z, &x), &y);
                if a.iter()
                    .zip(&b)
                    .zip(&c)
                    .any(|((a, b), c)| !(a + b + c).is_zero())
                {
                    return TripleCheck::Fail([i, j, k]);
                }
            }
        }
    }
    TripleCheck::Pass
}

/// `B([x,y],z) + B(y,[x,z]) = 0` on all basis triples.
pub fn check_ad_invariance(l: &LieBrackets, form: &RationalMatrix) -> TripleCheck {
    let n = l.dim();
    assert!(form.rows() == n && form.cols() == n, "form has wrong size");
    for x in 0..n {
        for y in 0..n {
            let xy = l.basis_bracket(x, y);
            for z in 0..n {
                let xz = l.basis_bracket(x, z);
                let lhs = dot(xy, form.column(z).as_slice()) + dot(form.row(y), xz);
                if !lhs.is_zero() {
                    return TripleCheck::Fail([x, y, z]);
                }
            }
        }
    }
    TripleCheck::Pass
}

/// `K(x, y) = tr(ad x ∘ ad y)`.
pub fn killing_form(l: &LieBrackets) -> RationalMatrix {
    let n = l.dim();
    let ads: Vec<RationalMatrix> = (0..n).map(|i| l.ad_matrix(&unit_vector(n, i))).collect();
    let mut k = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let prod = &ads[i] * &ads[j];
            let tr: Rational = (0..n).map(|t| prod[(t, t)].clone()).sum();
            k[(i, j)] = tr.clone();
            k[(j, i)] = tr;
        }
    }
    k
}

fn fmt_triple(labels: &[String], t: [usize; 3]) -> String {
    format!("({}, {}, {})", labels[t[0]], labels[t[1]], labels[t[2]])
}

fn fmt_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// A Lie algebra together with a symmetric, non-degenerate, ad-invariant form.
/// Construction validates all of this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticLieAlgebra {
    name: String,
    brackets: LieBrackets,
    form: RationalMatrix,
}

impl QuadraticLieAlgebra {
    pub fn new(
        name: impl Into<String>,
        brackets: LieBrackets,
        form: RationalMatrix,
    ) -> Result<Self> {
        let n = brackets.dim();
        if form.rows() != n || form.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "form is {}x{}, algebra has dimension {n}",
                form.rows(),
                form.cols()
            )));
        }
        let labels = brackets.labels();
        if let Some((i, j)) = (0..n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .find(|&(i, j)| form[(i, j)] != form[(j, i)])
        {
            return Err(Error::InvalidAlgebra {
                condition: "symmetry of B".into(),
                witness: format!("({}, {})", labels[i], labels[j]),
            });
        }
        if let TripleCheck::Fail(t) = check_jacobi(&brackets) {
            return Err(Error::InvalidAlgebra {
                condition: "Jacobi identity".into(),
                witness: fmt_triple(labels, t),
            });
        }
        if form.determinant()?.is_zero() {
            let kernel = form.nullspace();
            return Err(Error::InvalidAlgebra {
                condition: "non-degeneracy of B".into(),
                witness: format!("kernel vector {}", fmt_vector(&kernel[0])),
            });
        }
        if let TripleCheck::Fail(t) = check_ad_invariance(&brackets, &form) {
            return Err(Error::InvalidAlgebra {
                condition: "ad-invariance B([x,y],z) + B(y,[x,z]) = 0".into(),
                witness: fmt_triple(labels, t),
            });
        }
        Ok(QuadraticLieAlgebra {
            name: name.into(),
            brackets,
            form,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.brackets.dim()
    }

    pub fn labels(&self) -> &[String] {
        self.brackets.labels()
    }

    pub fn brackets(&self) -> &LieBrackets {
        &self.brackets
    }

    pub fn form(&self) -> &RationalMatrix {
        &self.form
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.brackets.bracket(x, y)
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        self.brackets.basis_bracket(i, j)
    }

    /// `B(x, y)`
    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.form.bilinear(x, y)
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        QuadraticLieAlgebra {
            name: name.into(),
            ..self.clone()
        }
    }

    /// Same brackets with the form replaced by `t·B`.
    pub fn rescaled(&self, name: impl Into<String>, t: &Rational) -> Result<Self> {
        Self::new(name, self.brackets.clone(), self.form.scale(t))
    }

    /// The algebra spanned by `basis` (which must be closed under the bracket),
    /// written in the coordinates of that basis, with the restricted form.
    pub fn restricted_to(
        &self,
        name: impl Into<String>,
        labels: Vec<String>,
        basis: &[Vec<Rational>],
    ) -> Result<Self> {
        let k = basis.len();
        if labels.len() != k {
            return Err(Error::DimensionMismatch(
                "one label per basis vector".into(),
            ));
        }
        let cols = RationalMatrix::from_columns(self.dim(), basis)?;
        if cols.rank() != k {
            return Err(Error::Contract(
                "basis vectors are linearly dependent".into(),
            ));
        }
        let mut brackets = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let z = self.bracket(&basis[i], &basis[j]);
                let coords = solve_linear(&cols, &z)?.into_solution().ok_or_else(|| {
                    Error::NotSubalgebra(format!("[{}, {}] leaves the span", labels[i], labels[j]))
                })?;
                brackets.push(((i, j), coords));
            }
        }
        let gram = &(&cols.transpose() * &self.form) * &cols;
        Self::new(name, LieBrackets::new(labels, brackets)?, gram)
    }
}

/// Spanning vectors of a subalgebra, in the ambient basis.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubalgebraSpec {
    pub vectors: Vec<Vec<Rational>>,
}

impl SubalgebraSpec {
    pub fn new(vectors: Vec<Vec<Rational>>) -> Self {
        SubalgebraSpec { vectors }
    }

    pub fn zero() -> Self {
        SubalgebraSpec::default()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Independence, closure under the bracket, and non-degeneracy of `B|h`.
    pub fn validate(&self, g: &QuadraticLieAlgebra) -> Result<()> {
        let n = g.dim();
        if self.vectors.is_empty() {
            return Ok(());
        }
        let h = RationalMatrix::from_columns(n, &self.vectors)?;
        if h.rank() != self.vectors.len() {
            return Err(Error::NotSubalgebra(
                "spanning vectors are linearly dependent".into(),
            ));
        }
        for (i, x) in self.vectors.iter().enumerate() {
            for (j, y) in self.vectors.iter().enumerate().skip(i + 1) {
                let z = g.bracket(x, y);
                if solve_linear(&h, &z)?.solution().is_none() {
                    return Err(Error::NotSubalgebra(format!(
                        "bracket of spanning vectors {i} and {j} is {} which leaves the span",
                        fmt_vector(&z)
                    )));
                }
            }
        }
        let gram = &(&h.transpose() * g.form()) * &h;
        if gram.determinant()?.is_zero() {
            return Err(Error::FormDegenerate(format!(
                "B restricted to h is degenerate (Gram matrix {gram:?})"
            )));
        }
        Ok(())
    }
}

/// Orthogonal bases of `h` and `h⊥`, each with its diagonal Gram entries.
/// Vectors are stored in ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalSplit {
    pub h_basis: Vec<Vec<Rational>>,
    pub h_gram: Vec<Rational>,
    pub p_basis: Vec<Vec<Rational>>,
    pub p_gram: Vec<Rational>,
}

/// Splits `g = h ⊕ h⊥` and orthogonalizes both factors.
pub fn orthogonal_split(g: &QuadraticLieAlgebra, h: &SubalgebraSpec) -> Result<OrthogonalSplit> {
    h.validate(g)?;
    let n = g.dim();
    let (h_basis, h_gram) = orthogonalize(g, &h.vectors)?;
    let perp = if h.vectors.is_empty() {
        (0..n).map(|i| unit_vector(n, i)).collect()
    } else {
        let pairing = &RationalMatrix::from_columns(n, &h.vectors)?.transpose() * g.form();
        pairing.nullspace()
    };
    let (p_basis, p_gram) = orthogonalize(g, &perp)?;
    OrthogonalSplit::from_bases(g, h_basis, p_basis).inspect(|s| {
        debug_assert_eq!(s.h_gram, h_gram);
        debug_assert_eq!(s.p_gram, p_gram);
    })
}

/// Orthogonal basis of the span of `vectors` (which must carry a
/// non-degenerate restriction of B).
fn orthogonalize(
    g: &QuadraticLieAlgebra,
    vectors: &[Vec<Rational>],
) -> Result<(Vec<Vec<Rational>>, Vec<Rational>)> {
    if vectors.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let m = RationalMatrix::from_columns(g.dim(), vectors)?;
    let gram = &(&m.transpose() * g.form()) * &m;
    let (p, d) = diagonalize_form(&gram)?;
    Ok(((&m * &p).columns(), d))
}

impl OrthogonalSplit {
    /// Validates user supplied bases: pairwise orthogonal, nonzero Gram
    /// entries, together spanning `g`, `h` closed and `[h, h⊥] ⊆ h⊥`.
    pub fn from_bases(
        g: &QuadraticLieAlgebra,
        h_basis: Vec<Vec<Rational>>,
        p_basis: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let n = g.dim();
        if h_basis.len() + p_basis.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} + {} basis vectors for a {n}-dimensional algebra",
                h_basis.len(),
                p_basis.len()
            )));
        }
        let all: Vec<&Vec<Rational>> = h_basis.iter().chain(&p_basis).collect();
        if all.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(
                "basis vector of wrong length".into(),
            ));
        }
        for (i, x) in all.iter().enumerate() {
            for y in &all[i + 1..] {
                if !g.pair(x, y).is_zero() {
                    return Err(Error::Contract("basis is not B-orthogonal".into()));
                }
            }
        }
        let gram = |b: &[Vec<Rational>]| -> Result<Vec<Rational>> {
            b.iter()
                .map(|x| {
                    let d = g.pair(x, x);
                    if d.is_zero() {
                        Err(Error::FormDegenerate("isotropic basis vector".into()))
                    } else {
                        Ok(d)
                    }
                })
                .collect()
        };
        let split = OrthogonalSplit {
            h_gram: gram(&h_basis)?,
            p_gram: gram(&p_basis)?,
            h_basis,
            p_basis,
        };
        // nonzero Gram entries on an orthogonal family imply independence
        for (i, x) in split.h_basis.iter().enumerate() {
            for y in &split.h_basis[i + 1..] {
                if !split
                    .p_coordinates(g, &g.bracket(x, y))
                    .iter()
                    .all(Zero::is_zero)
                {
                    return Err(Error::NotSubalgebra("[h, h] has a component in h⊥".into()));
                }
            }
            for y in &split.p_basis {
                if !split
                    .h_coordinates(g, &g.bracket(x, y))
                    .iter()
                    .all(Zero::is_zero)
                {
                    return Err(Error::Contract("[h, h⊥] has a component in h".into()));
                }
            }
        }
        Ok(split)
    }

    /// The split with `h = 0` and the given orthogonal basis of `g`.
    pub fn trivial(g: &QuadraticLieAlgebra, basis: Vec<Vec<Rational>>) -> Result<Self> {
        Self::from_bases(g, Vec::new(), basis)
    }

    pub fn h_dim(&self) -> usize {
        self.h_basis.len()
    }

    pub fn p_dim(&self) -> usize {
        self.p_basis.len()
    }

    /// Orthogonal basis of all of `g`: the `h⊥` basis followed by the `h` basis.
    pub fn full_basis(&self) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let basis = self.p_basis.iter().chain(&self.h_basis).cloned().collect();
        let gram = self.p_gram.iter().chain(&self.h_gram).cloned().collect();
        (basis, gram)
    }

    /// Coefficients of the orthogonal projection onto `h`, in the `h` basis.
    pub fn h_coordinates(&self, g: &QuadraticLieAlgebra, x: &[Rational]) -> Vec<Rational> {
        project(g, &self.h_basis, &self.h_gram, x)
    }

    /// Coefficients of the orthogonal projection onto `h⊥`, in the `h⊥` basis.
    pub fn p_coordinates(&self, g: &QuadraticLieAlgebra, x: &[Rational]) -> Vec<Rational> {
        project(g, &self.p_basis, &self.p_gram, x)
    }

    /// Coordinates of `y` in the `h` basis, or an error if `y ∉ h`.
    pub fn require_in_h(&self, g: &QuadraticLieAlgebra, y: &[Rational]) -> Result<Vec<Rational>> {
        if y.len() != g.dim() {
            return Err(Error::DimensionMismatch("vector of wrong length".into()));
        }
        if self.p_coordinates(g, y).iter().any(|c| !c.is_zero()) {
            return Err(Error::Contract(format!("{} is not in h", fmt_vector(y))));
        }
        Ok(self.h_coordinates(g, y))
    }

    /// Matrix of `ad y` restricted to `h⊥`, in the `h⊥` basis.
    pub fn nu_matrix(&self, g: &QuadraticLieAlgebra, y: &[Rational]) -> Result<RationalMatrix> {
        self.require_in_h(g, y)?;
        let m = self.p_dim();
        let mut nu = RationalMatrix::zeros(m, m);
        for (j, pj) in self.p_basis.iter().enumerate() {
            let img = g.bracket(y, pj);
            for (i, c) in self.p_coordinates(g, &img).into_iter().enumerate() {
                nu[(i, j)] = c;
            }
        }
        Ok(nu)
    }

    /// Another pair of orthogonal bases for the same `h` and `h⊥`, obtained
    /// by mixing each basis with a unipotent matrix, re-diagonalizing, and
    /// doubling the first vector.
    pub fn alternate(&self, g: &QuadraticLieAlgebra) -> Result<Self> {
        let remix = |basis: &[Vec<Rational>]| -> Result<Vec<Vec<Rational>>> {
            let k = basis.len();
            if k == 0 {
                return Ok(Vec::new());
            }
            let mixed: Vec<Vec<Rational>> = (0..k)
                .map(|j| {
                    let mut v = basis[j].clone();
                    for b in &basis[j + 1..] {
                        for (a, c) in v.iter_mut().zip(b) {
                            *a += c;
                        }
                    }
                    v
                })
                .collect();
            let (mut out, _) = orthogonalize(g, &mixed)?;
            let two = Rational::one() + Rational::one();
            for x in out[0].iter_mut() {
                *x *= &two;
            }
            Ok(out)
        };
        Self::from_bases(g, remix(&self.h_basis)?, remix(&self.p_basis)?)
    }
}

fn project(
    g: &QuadraticLieAlgebra,
    basis: &[Vec<Rational>],
    gram: &[Rational],
    x: &[Rational],
) -> Vec<Rational> {
    basis
        .iter()
        .zip(gram)
        .map(|(b, d)| g.pair(b, x) / d)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};
    use crate::catalog;

    fn e3(i: usize) -> Vec<Rational> {
        unit_vector(3, i)
    }

    #[test]
    fn sl2_brackets() {
        let g = catalog::sl2(&rat(1)).unwrap();
        let (e, h, f) = (e3(0), e3(1), e3(2));
        assert!(g.bracket(&e, &e).iter().all(Zero::is_zero));
        assert_eq!(g.bracket(&h, &e), vec![rat(2), rat(0), rat(0)]);
        assert_eq!(g.bracket(&e, &f), vec![rat(0), rat(1), rat(0)]);
    }

    #[test]
    fn jacobi_checks() {
        let ab = LieBrackets::new(vec!["a".into(), "b".into()], []).unwrap();
        assert!(check_jacobi(&ab).is_pass());
        let g = catalog::sl2(&rat(1)).unwrap();
        assert!(check_jacobi(g.brackets()).is_pass());

        let labels = g.labels().to_vec();
        let corrupted = LieBrackets::new(
            labels,
            [
                ((0, 1), vec![rat(-2), rat(0), rat(0)]),
                ((0, 2), vec![rat(1), rat(0), rat(0)]),
                ((1, 2), vec![rat(0), rat(0), rat(-2)]),
            ],
        )
        .unwrap();
        assert_eq!(check_jacobi(&corrupted), TripleCheck::Fail([0, 1, 2]));
        // the Jacobiator on (e, h, f) is 2e
        let l = &corrupted;
        let (e, h, f) = (e3(0), e3(1), e3(2));
        let a = l.bracket(&l.bracket(&e, &h), &f);
        let b = l.bracket(&l.bracket(&h, &f), &e);
        let c = l.bracket(&l.bracket(&f, &e), &h);
        let jac: Vec<Rational> = (0..3).map(|i| &a[i] + &b[i] + &c[i]).collect();
        assert_eq!(jac, vec![rat(2), rat(0), rat(0)]);
    }

    #[test]
    fn ad_invariance_checks() {
        let ab = LieBrackets::new(vec!["a".into(), "b".into()], []).unwrap();
        let sym = RationalMatrix::from_i64(&[&[1, 2], &[2, -5]]);
        assert!(check_ad_invariance(&ab, &sym).is_pass());

        let g = catalog::sl2(&rat(1)).unwrap();
        assert!(check_ad_invariance(g.brackets(), g.form()).is_pass());
        let res = check_ad_invariance(g.brackets(), &RationalMatrix::identity(3));
        let TripleCheck::Fail([x, y, z]) = res else {
            panic!("identity form should fail")
        };
        let lhs = g.brackets().bracket(&e3(x), &e3(y))[z].clone()
            + g.brackets().bracket(&e3(x), &e3(z))[y].clone();
        assert!(!lhs.is_zero());
        // B([e,e],h) + B(e,[e,h]) = B(e, -2e) = -2 under the identity form
        assert_eq!([x, y, z], [0, 0, 1]);
        assert_eq!(lhs, rat(-2));
    }

    /// Brute-force trace of ad∘ad with explicit 3×3 adjoint matrices.
    #[test]
    fn killing_form_of_sl2_by_brute_force() {
        // columns: ad_x applied to e, h, f
        let ad_e = [[0, -2, 0], [0, 0, 1], [0, 0, 0]];
        let ad_h = [[2, 0, 0], [0, 0, 0], [0, 0, -2]];
        let ad_f = [[0, 0, 0], [-1, 0, 0], [0, 2, 0]];
        let ads = [ad_e, ad_h, ad_f];
        let mut expected = [[0i64; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                let mut tr = 0;
                for i in 0..3 {
                    for k in 0..3 {
                        tr += ads[a][i][k] * ads[b][k][i];
                    }
                }
                expected[a][b] = tr;
            }
        }
        assert_eq!(expected, [[0, 0, 4], [0, 8, 0], [4, 0, 0]]);
        let k = killing_form(catalog::sl2(&rat(1)).unwrap().brackets());
        let rows: Vec<&[i64]> = expected.iter().map(|r| r.as_slice()).collect();
        assert_eq!(k, RationalMatrix::from_i64(&rows));
    }

    #[test]
    fn killing_form_degenerate_cases() {
        let ab = LieBrackets::new(vec!["a".into(), "b".into()], []).unwrap();
        assert!(killing_form(&ab).is_zero());
        let heis = catalog::heisenberg_brackets();
        assert!(killing_form(&heis).determinant().unwrap().is_zero());
        let err = QuadraticLieAlgebra::new("heis", heis.clone(), killing_form(&heis)).unwrap_err();
        assert!(
            matches!(err, Error::InvalidAlgebra { ref condition, .. } if condition.contains("non-degeneracy"))
        );
    }

    #[test]
    fn rejects_non_invariant_form_with_witness() {
        let g = catalog::sl2(&rat(1)).unwrap();
        let err =
            QuadraticLieAlgebra::new("bad", g.brackets().clone(), RationalMatrix::identity(3))
                .unwrap_err();
        match err {
            Error::InvalidAlgebra { condition, witness } => {
                assert!(condition.contains("ad-invariance"));
                assert!(witness.starts_with('('));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn split_with_zero_subalgebra() {
        let g = catalog::sl2(&rat(1)).unwrap();
        let s = orthogonal_split(&g, &SubalgebraSpec::zero()).unwrap();
        assert_eq!(s.h_dim(), 0);
        assert_eq!(s.p_dim(), 3);
        // (h, e+f, e-f) with Gram (8, 8, -8)
        assert_eq!(s.p_basis[0], e3(1));
        assert_eq!(s.p_basis[1], vec![rat(1), rat(0), rat(1)]);
        assert_eq!(s.p_basis[2], vec![rat(1), rat(0), rat(-1)]);
        assert_eq!(s.p_gram, vec![rat(8), rat(8), rat(-8)]);
    }

    #[test]
    fn split_diagonal_sl2() {
        let entry = catalog::sl2_sl2_diagonal().unwrap();
        let (g, h) = (&entry.algebra, entry.subalgebra.as_ref().unwrap());
        let s = orthogonal_split(g, h).unwrap();
        assert_eq!((s.h_dim(), s.p_dim()), (3, 3));
        for x in &s.h_basis {
            for y in &s.p_basis {
                assert!(g.pair(x, y).is_zero());
                // [h, h⊥] has no h component
                assert!(s
                    .h_coordinates(g, &g.bracket(x, y))
                    .iter()
                    .all(Zero::is_zero));
            }
        }
        // h⊥ is the antidiagonal copy: first and second halves are negatives
        for p in &s.p_basis {
            for i in 0..3 {
                assert_eq!(p[i], -p[i + 3].clone());
            }
        }
    }

    #[test]
    fn split_rejects_isotropic_line_and_non_subalgebra() {
        let g = catalog::sl2(&rat(1)).unwrap();
        let line = SubalgebraSpec::new(vec![e3(0)]);
        assert!(matches!(
            orthogonal_split(&g, &line),
            Err(Error::FormDegenerate(_))
        ));
        let plane = SubalgebraSpec::new(vec![e3(0), e3(2)]);
        assert!(matches!(
            orthogonal_split(&g, &plane),
            Err(Error::NotSubalgebra(_))
        ));
    }

    #[test]
    fn nu_matrices_are_skew_for_the_gram() {
        let entry = catalog::sl2_sl2_diagonal().unwrap();
        let g = &entry.algebra;
        let s = orthogonal_split(g, entry.subalgebra.as_ref().unwrap()).unwrap();
        let gram = RationalMatrix::diagonal(&s.p_gram);
        for y in &s.h_basis {
            let nu = s.nu_matrix(g, y).unwrap();
            // brute force: ν(y) p_j = [y, p_j] re-expanded
            for (j, pj) in s.p_basis.iter().enumerate() {
                let mut rebuilt = vec![Rational::zero(); g.dim()];
                for (i, pi) in s.p_basis.iter().enumerate() {
                    for (r, c) in rebuilt.iter_mut().zip(pi) {
                        *r += &nu[(i, j)] * c;
                    }
                }
                assert_eq!(rebuilt, g.bracket(y, pj));
            }
            let gn = &gram * &nu;
            assert!((&gn.transpose() + &gn).is_zero());
        }
        let zero = vec![Rational::zero(); 6];
        assert!(s.nu_matrix(g, &zero).unwrap().is_zero());
        assert!(s.nu_matrix(g, &s.p_basis[0]).is_err());
    }

    #[test]
    fn alternate_bases_differ() {
        let g = catalog::sl2(&frac(1, 2)).unwrap();
        let s = orthogonal_split(&g, &SubalgebraSpec::zero()).unwrap();
        let t = s.alternate(&g).unwrap();
        assert_ne!(s.p_basis, t.p_basis);
        assert_eq!(t.p_dim(), 3);
    }

    #[test]
    fn restriction_to_diagonal_copy() {
        let entry = catalog::sl2_sl2_diagonal().unwrap();
        let g = &entry.algebra;
        let h = entry.subalgebra.unwrap();
        let labels = vec!["E".into(), "H".into(), "F".into()];
        let r = g.restricted_to("diag", labels, &h.vectors).unwrap();
        let sl2 = catalog::sl2(&rat(2)).unwrap();
        assert_eq!(r.brackets().stored().count(), 3);
        assert_eq!(r.form(), sl2.form());
        for ((i, j), c) in sl2.brackets().stored() {
            assert_eq!(r.basis_bracket(i, j), c);
        }
    }
}
