//! The universal enveloping algebra `U(g)` in Poincaré–Birkhoff–Witt normal
//! form: linear combinations of ordered monomials `X_i1 X_i2 ⋯` with
//! `i1 ≤ i2 ≤ …` in the basis order of the algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::lie::QuadraticLieAlgebra;

/// Ordered PBW monomial; the empty monomial is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Monomial(vec![i as u16])
    }

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Contract(format!(
                "{indices:?} is not a PBW monomial"
            )));
        }
        Ok(Monomial(indices.iter().map(|&i| i as u16).collect()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("X{i}")).collect();
        write!(f, "{}", parts.join("·"))
    }
}

fn accumulate<K: Ord>(terms: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Normal form of `coef · X_w1 X_w2 ⋯` for an arbitrary word, added into `out`.
///
/// Repeatedly rewrites the leftmost descent `X_j X_i` (`j > i`) as
/// `X_i X_j + [X_j, X_i]`.
fn normalize_word(
    g: &QuadraticLieAlgebra,
    word: Vec<u16>,
    coef: Rational,
    out: &mut BTreeMap<Monomial, Rational>,
) {
    let mut stack = vec![(word, coef)];
    while let Some((w, c)) = stack.pop() {
        let Some(pos) = w.windows(2).position(|p| p[0] > p[1]) else {
            accumulate(out, Monomial(w), c);
            continue;
        };
        let (j, i) = (w[pos] as usize, w[pos + 1] as usize);
        let mut swapped = w.clone();
        swapped.swap(pos, pos + 1);
        for (m, bc) in g.basis_bracket(j, i).iter().enumerate() {
            if bc.is_zero() {
                continue;
            }
            let mut shorter = Vec::with_capacity(w.len() - 1);
            shorter.extend_from_slice(&w[..pos]);
            shorter.push(m as u16);
            shorter.extend_from_slice(&w[pos + 2..]);
            stack.push((shorter, &c * bc));
        }
        stack.push((swapped, c));
    }
}

/// Normal form of the product of two PBW monomials.
pub fn monomial_product(
    g: &QuadraticLieAlgebra,
    a: &Monomial,
    b: &Monomial,
) -> BTreeMap<Monomial, Rational> {
    let mut out = BTreeMap::new();
    let mut word = a.0.clone();
    word.extend_from_slice(&b.0);
    normalize_word(g, word, Rational::one(), &mut out);
    out
}

/// Element of `U(g)` in PBW normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct PbwElement {
    algebra: Arc<QuadraticLieAlgebra>,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{c}*{m:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn same_algebra(a: &Arc<QuadraticLieAlgebra>, b: &Arc<QuadraticLieAlgebra>) {
    assert!(
        Arc::ptr_eq(a, b) || a == b,
        "enveloping algebra elements over different Lie algebras"
    );
}

impl PbwElement {
    pub fn zero(g: &Arc<QuadraticLieAlgebra>) -> Self {
        PbwElement {
            algebra: Arc::clone(g),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(g: &Arc<QuadraticLieAlgebra>, c: Rational) -> Self {
        let mut e = Self::zero(g);
        accumulate(&mut e.terms, Monomial::one(), c);
        e
    }

    pub fn one(g: &Arc<QuadraticLieAlgebra>) -> Self {
        Self::scalar(g, Rational::one())
    }

    pub fn generator(g: &Arc<QuadraticLieAlgebra>, i: usize) -> Self {
        assert!(i < g.dim(), "generator index out of range");
        let mut e = Self::zero(g);
        accumulate(&mut e.terms, Monomial::generator(i), Rational::one());
        e
    }

    /// The degree-1 element with the given coordinates.
    pub fn from_vector(g: &Arc<QuadraticLieAlgebra>, x: &[Rational]) -> Self {
        assert_eq!(x.len(), g.dim(), "from_vector: length mismatch");
        let mut e = Self::zero(g);
        for (i, c) in x.iter().enumerate() {
            accumulate(&mut e.terms, Monomial::generator(i), c.clone());
        }
        e
    }

    pub fn from_terms(
        g: &Arc<QuadraticLieAlgebra>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut e = Self::zero(g);
        for (m, c) in terms {
            assert!(
                m.indices().all(|i| i < g.dim()),
                "monomial index out of range"
            );
            assert!(m.0.windows(2).all(|w| w[0] <= w[1]), "monomial not ordered");
            accumulate(&mut e.terms, m, c);
        }
        e
    }

    pub fn algebra(&self) -> &Arc<QuadraticLieAlgebra> {
        &self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest monomial degree; zero for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(&self.algebra);
        }
        PbwElement {
            algebra: Arc::clone(&self.algebra),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn pbw_mul(&self, rhs: &Self) -> Self {
        same_algebra(&self.algebra, &rhs.algebra);
        let mut out = Self::zero(&self.algebra);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut word = a.0.clone();
                word.extend_from_slice(&b.0);
                normalize_word(&self.algebra, word, x * y, &mut out.terms);
            }
        }
        out
    }
}

impl Add for &PbwElement {
    type Output = PbwElement;

    fn add(self, rhs: &PbwElement) -> PbwElement {
        same_algebra(&self.algebra, &rhs.algebra);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            accumulate(&mut out.terms, m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PbwElement {
    type Output = PbwElement;

    fn sub(self, rhs: &PbwElement) -> PbwElement {
        self + &(-rhs)
    }
}

impl Neg for &PbwElement {
    type Output = PbwElement;

    fn neg(self) -> PbwElement {
        self.scale(&-Rational::one())
    }
}

impl Mul for &PbwElement {
    type Output = PbwElement;

    fn mul(self, rhs: &PbwElement) -> PbwElement {
        self.pbw_mul(rhs)
    }
}

/// `Σ X_i X^i` over an orthogonal basis, with `X^i = X_i / B(X_i, X_i)`.
/// The basis is given in coordinates of the algebra's own basis.
pub fn casimir(g: &Arc<QuadraticLieAlgebra>, basis: &[Vec<Rational>]) -> Result<PbwElement> {
    for (i, x) in basis.iter().enumerate() {
        if x.len() != g.dim() {
            return Err(Error::DimensionMismatch(
                "basis vector of wrong length".into(),
            ));
        }
        for y in &basis[i + 1..] {
            if !g.pair(x, y).is_zero() {
                return Err(Error::Contract("casimir: basis is not orthogonal".into()));
            }
        }
    }
    let mut out = PbwElement::zero(g);
    for x in basis {
        let d = g.pair(x, x);
        if d.is_zero() {
            return Err(Error::Contract("casimir: isotropic basis vector".into()));
        }
        let xe = PbwElement::from_vector(g, x);
        out = &out + &(&xe * &xe).scale(&d.recip());
    }
    Ok(out)
}
