//! `U(g) ⊗ C(h⊥)` and the three-factor `U(g) ⊗ C(h⊥) ⊗̄ C(h)`, the embedding
//! `so(h⊥) → C(h⊥)`, the map `Δ_h`, and graded commutators.
//!
//! `U(g)` carries the trivial grading, so the ℤ₂-degree of a term is the
//! parity of its Clifford blade(s).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{solve_linear, LinearSolution, Rational, RationalMatrix};
use crate::clifford::{Blade, CliffordSpace, Multivector};
use crate::envelope::{monomial_product, Monomial, PbwElement};
use crate::error::{Error, Result};
use crate::lie::{OrthogonalSplit, QuadraticLieAlgebra};

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

fn homogeneous_parity(mut ps: impl Iterator<Item = u8>) -> Option<u8> {
    let first = ps.next().unwrap_or(0);
    ps.all(|p| p == first).then_some(first)
}

/// Caches monomial products for the duration of one multiplication.
struct MonomialCache<'a> {
    g: &'a QuadraticLieAlgebra,
    products: HashMap<(Monomial, Monomial), BTreeMap<Monomial, Rational>>,
}

impl<'a> MonomialCache<'a> {
    fn new(g: &'a QuadraticLieAlgebra) -> Self {
        MonomialCache {
            g,
            products: HashMap::new(),
        }
    }

    fn product(&mut self, a: &Monomial, b: &Monomial) -> &BTreeMap<Monomial, Rational> {
        let g = self.g;
        self.products
            .entry((a.clone(), b.clone()))
            .or_insert_with(|| monomial_product(g, a, b))
    }
}

/// Element of `U(g) ⊗ C(V)`.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    algebra: Arc<QuadraticLieAlgebra>,
    space: Arc<CliffordSpace>,
    terms: BTreeMap<(Monomial, Blade), Rational>,
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m, b), c)| format!("{c}*{m:?}⊗{b:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn same_carriers(
    a: (&Arc<QuadraticLieAlgebra>, &Arc<CliffordSpace>),
    b: (&Arc<QuadraticLieAlgebra>, &Arc<CliffordSpace>),
) {
    assert!(
        (Arc::ptr_eq(a.0, b.0) || a.0 == b.0) && (Arc::ptr_eq(a.1, b.1) || a.1 == b.1),
        "tensor elements over different carriers"
    );
}

impl TensorElement {
    pub fn zero(g: &Arc<QuadraticLieAlgebra>, space: &Arc<CliffordSpace>) -> Self {
        TensorElement {
            algebra: Arc::clone(g),
            space: Arc::clone(space),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(g: &Arc<QuadraticLieAlgebra>, space: &Arc<CliffordSpace>, c: Rational) -> Self {
        let mut t = Self::zero(g, space);
        accumulate(&mut t.terms, (Monomial::one(), Blade::SCALAR), c);
        t
    }

    pub fn one(g: &Arc<QuadraticLieAlgebra>, space: &Arc<CliffordSpace>) -> Self {
        Self::scalar(g, space, Rational::one())
    }

    /// `u ⊗ c`
    pub fn pure(u: &PbwElement, c: &Multivector) -> Self {
        let mut t = Self::zero(u.algebra(), c.space());
        for (m, x) in u.terms() {
            for (b, y) in c.terms() {
                accumulate(&mut t.terms, (m.clone(), *b), x * y);
            }
        }
        t
    }

    pub fn from_terms(
        g: &Arc<QuadraticLieAlgebra>,
        space: &Arc<CliffordSpace>,
        terms: impl IntoIterator<Item = ((Monomial, Blade), Rational)>,
    ) -> Self {
        let mut t = Self::zero(g, space);
        for (k, c) in terms {
            accumulate(&mut t.terms, k, c);
        }
        t
    }

    pub fn algebra(&self) -> &Arc<QuadraticLieAlgebra> {
        &self.algebra
    }

    pub fn space(&self) -> &Arc<CliffordSpace> {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<(Monomial, Blade), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Only a multiple of `1 ⊗ 1` is present.
    pub fn is_scalar(&self) -> bool {
        self.terms
            .keys()
            .all(|(m, b)| m.is_one() && *b == Blade::SCALAR)
    }

    pub fn scalar_part(&self) -> Rational {
        self.terms
            .get(&(Monomial::one(), Blade::SCALAR))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn parity(&self) -> Option<u8> {
        homogeneous_parity(self.terms.keys().map(|(_, b)| b.parity()))
    }

    /// Terms whose `U(g)` monomial has the given degree.
    pub fn u_degree_part(&self, d: usize) -> Self {
        TensorElement {
            algebra: Arc::clone(&self.algebra),
            space: Arc::clone(&self.space),
            terms: self
                .terms
                .iter()
                .filter(|((m, _), _)| m.degree() == d)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(&self.algebra, &self.space);
        }
        TensorElement {
            algebra: Arc::clone(&self.algebra),
            space: Arc::clone(&self.space),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
        }
    }

    /// `(u⊗c)(u'⊗c') = uu' ⊗ cc'`
    pub fn tensor_mul(&self, rhs: &Self) -> Self {
        same_carriers((&self.algebra, &self.space), (&rhs.algebra, &rhs.space));
        let mut cache = MonomialCache::new(&self.algebra);
        let mut out = Self::zero(&self.algebra, &self.space);
        for ((ma, ba), x) in &self.terms {
            for ((mb, bb), y) in &rhs.terms {
                let (s, blade) = self.space.blade_product(*ba, *bb);
                let coef = s * x * y;
                for (m, c) in cache.product(ma, mb) {
                    accumulate(&mut out.terms, (m.clone(), blade), &coef * c);
                }
            }
        }
        out
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;

    fn add(self, rhs: &TensorElement) -> TensorElement {
        same_carriers((&self.algebra, &self.space), (&rhs.algebra, &rhs.space));
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            accumulate(&mut out.terms, k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;

    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self + &(-rhs)
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;

    fn neg(self) -> TensorElement {
        self.scale(&-Rational::one())
    }
}

impl Mul for &TensorElement {
    type Output = TensorElement;

    fn mul(self, rhs: &TensorElement) -> TensorElement {
        self.tensor_mul(rhs)
    }
}

/// Element of `U(g) ⊗ C(h⊥) ⊗̄ C(h)`.
#[derive(Clone, PartialEq, Eq)]
pub struct TripleTensorElement {
    algebra: Arc<QuadraticLieAlgebra>,
    p_space: Arc<CliffordSpace>,
    h_space: Arc<CliffordSpace>,
    terms: BTreeMap<(Monomial, Blade, Blade), Rational>,
}

impl fmt::Debug for TripleTensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m, p, h), c)| format!("{c}*{m:?}⊗{p:?}⊗{h:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl TripleTensorElement {
    pub fn zero(
        g: &Arc<QuadraticLieAlgebra>,
        p_space: &Arc<CliffordSpace>,
        h_space: &Arc<CliffordSpace>,
    ) -> Self {
        TripleTensorElement {
            algebra: Arc::clone(g),
            p_space: Arc::clone(p_space),
            h_space: Arc::clone(h_space),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        g: &Arc<QuadraticLieAlgebra>,
        p_space: &Arc<CliffordSpace>,
        h_space: &Arc<CliffordSpace>,
        terms: impl IntoIterator<Item = ((Monomial, Blade, Blade), Rational)>,
    ) -> Self {
        let mut t = Self::zero(g, p_space, h_space);
        for (k, c) in terms {
            accumulate(&mut t.terms, k, c);
        }
        t
    }

    /// `t ⊗̄ k`, i.e. `(t ⊗ 1)·(1 ⊗ 1 ⊗ k)`; no sign arises.
    pub fn from_pair(t: &TensorElement, k: &Multivector) -> Self {
        let mut out = Self::zero(t.algebra(), t.space(), k.space());
        for ((m, b), x) in t.terms() {
            for (kb, y) in k.terms() {
                accumulate(&mut out.terms, (m.clone(), *b, *kb), x * y);
            }
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<(Monomial, Blade, Blade), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn parity(&self) -> Option<u8> {
        homogeneous_parity(
            self.terms
                .keys()
                .map(|(_, p, h)| (p.parity() + h.parity()) % 2),
        )
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(&self.algebra, &self.p_space, &self.h_space);
        if !s.is_zero() {
            out.terms = self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect();
        }
        out
    }

    fn check_carriers(&self, rhs: &Self) {
        same_carriers((&self.algebra, &self.p_space), (&rhs.algebra, &rhs.p_space));
        assert!(
            Arc::ptr_eq(&self.h_space, &rhs.h_space) || self.h_space == rhs.h_space,
            "triple tensor elements over different carriers"
        );
    }

    /// `(u⊗c⊗k)(u'⊗c'⊗k') = (−1)^{|k||c'|} uu' ⊗ cc' ⊗ kk'`
    pub fn triple_mul(&self, rhs: &Self) -> Self {
        self.check_carriers(rhs);
        let mut cache = MonomialCache::new(&self.algebra);
        let mut out = Self::zero(&self.algebra, &self.p_space, &self.h_space);
        for ((ma, pa, ka), x) in &self.terms {
            for ((mb, pb, kb), y) in &rhs.terms {
                let (s1, p) = self.p_space.blade_product(*pa, *pb);
                let (s2, k) = self.h_space.blade_product(*ka, *kb);
                let mut coef = s1 * s2 * x * y;
                if ka.parity() == 1 && pb.parity() == 1 {
                    coef = -coef;
                }
                for (m, c) in cache.product(ma, mb) {
                    accumulate(&mut out.terms, (m.clone(), p, k), &coef * c);
                }
            }
        }
        out
    }
}

impl Add for &TripleTensorElement {
    type Output = TripleTensorElement;

    fn add(self, rhs: &TripleTensorElement) -> TripleTensorElement {
        self.check_carriers(rhs);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            accumulate(&mut out.terms, k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TripleTensorElement {
    type Output = TripleTensorElement;

    fn sub(self, rhs: &TripleTensorElement) -> TripleTensorElement {
        self + &rhs.scale(&-Rational::one())
    }
}

impl Mul for &TripleTensorElement {
    type Output = TripleTensorElement;

    fn mul(self, rhs: &TripleTensorElement) -> TripleTensorElement {
        self.triple_mul(rhs)
    }
}

/// A ℤ₂-graded algebra element.
pub trait Graded: Sized {
    /// `Some(p)` when homogeneous of degree `p`.
    fn parity(&self) -> Option<u8>;
    fn product(&self, rhs: &Self) -> Self;
    fn combine(&self, rhs: &Self, sign: i8) -> Self;
}

impl Graded for Multivector {
    fn parity(&self) -> Option<u8> {
        Multivector::parity(self)
    }

    fn product(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn combine(&self, rhs: &Self, sign: i8) -> Self {
        if sign > 0 {
            self + rhs
        } else {
            self - rhs
        }
    }
}

impl Graded for TensorElement {
    fn parity(&self) -> Option<u8> {
        TensorElement::parity(self)
    }

    fn product(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn combine(&self, rhs: &Self, sign: i8) -> Self {
        if sign > 0 {
            self + rhs
        } else {
            self - rhs
        }
    }
}

impl Graded for TripleTensorElement {
    fn parity(&self) -> Option<u8> {
        TripleTensorElement::parity(self)
    }

    fn product(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn combine(&self, rhs: &Self, sign: i8) -> Self {
        if sign > 0 {
            self + rhs
        } else {
            self - rhs
        }
    }
}

/// `ab − (−1)^{|a||b|} ba` for homogeneous `a`, `b`.
pub fn graded_commutator<T: Graded>(a: &T, b: &T) -> Result<T> {
    let (Some(pa), Some(pb)) = (a.parity(), b.parity()) else {
        return Err(Error::Contract(
            "graded commutator of an inhomogeneous element".into(),
        ));
    };
    let ab = a.product(b);
    let ba = b.product(a);
    Ok(if pa == 1 && pb == 1 {
        ab.combine(&ba, 1)
    } else {
        ab.combine(&ba, -1)
    })
}

/// The degree-2 element `α` with `[α, x] = A·x` for every vector `x`.
///
/// `A` must lie in `so` for the diagonal Gram of `space`, i.e. `Gram·A` is
/// antisymmetric.
pub fn clifford_embed(space: &Arc<CliffordSpace>, a: &RationalMatrix) -> Result<Multivector> {
    let m = space.dim();
    if a.rows() != m || a.cols() != m {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix on a {m}-dimensional space",
            a.rows(),
            a.cols()
        )));
    }
    let ga = &RationalMatrix::diagonal(space.gram()) * a;
    if !(&ga + &ga.transpose()).is_zero() {
        return Err(Error::Contract(
            "matrix is not skew for the Gram form".into(),
        ));
    }
    let unknowns: Vec<Blade> = space.blades().filter(|b| b.grade() == 2).collect();
    let vectors: Vec<Multivector> = (0..m)
        .map(|k| Multivector::basis_vector(space, k))
        .collect();
    // row (k, l): component l of [β, X_k]
    let mut system = RationalMatrix::zeros(m * m, unknowns.len());
    for (col, beta) in unknowns.iter().enumerate() {
        let bm = Multivector::term(space, *beta, Rational::one());
        for (k, x) in vectors.iter().enumerate() {
            let comm = &(&bm * x) - &(x * &bm);
            debug_assert!(comm.is_zero() || comm.pure_grade() == Some(1));
            for l in 0..m {
                system[(k * m + l, col)] = comm.coefficient(Blade::vector(l));
            }
        }
    }
    let rhs: Vec<Rational> = (0..m)
        .flat_map(|k| (0..m).map(move |l| (k, l)))
        .map(|(k, l)| a[(l, k)].clone())
        .collect();
    match solve_linear(&system, &rhs)? {
        LinearSolution::Unique(x) => {
            Ok(Multivector::from_terms(space, unknowns.into_iter().zip(x)))
        }
        LinearSolution::NonUnique(_) => Err(Error::Contract(
            "embedding system is underdetermined".into(),
        )),
        LinearSolution::Inconsistent => Err(Error::Contract(
            "no degree-2 element realizes this matrix".into(),
        )),
    }
}

/// `Δ_h : U(h) → U(g) ⊗ C(h⊥)`, `y ↦ y⊗1 + 1⊗ν(y)`, with `ν(y)` embedded in
/// `C(h⊥)` through [`clifford_embed`].
#[derive(Debug, Clone)]
pub struct DeltaMap {
    algebra: Arc<QuadraticLieAlgebra>,
    split: OrthogonalSplit,
    p_space: Arc<CliffordSpace>,
    // images of the h basis vectors
    basis_images: Vec<TensorElement>,
}

impl DeltaMap {
    pub fn new(
        algebra: &Arc<QuadraticLieAlgebra>,
        split: &OrthogonalSplit,
        p_space: &Arc<CliffordSpace>,
    ) -> Result<Self> {
        if p_space.gram() != split.p_gram.as_slice() {
            return Err(Error::Contract("Clifford space does not match h⊥".into()));
        }
        let mut map = DeltaMap {
            algebra: Arc::clone(algebra),
            split: split.clone(),
            p_space: Arc::clone(p_space),
            basis_images: Vec::new(),
        };
        map.basis_images = split
            .h_basis
            .iter()
            .map(|y| map.delta(y))
            .collect::<Result<_>>()?;
        Ok(map)
    }

    /// `ν(y)` as a degree-2 element of `C(h⊥)`.
    pub fn embedded_nu(&self, y: &[Rational]) -> Result<Multivector> {
        let nu = self.split.nu_matrix(&self.algebra, y)?;
        clifford_embed(&self.p_space, &nu)
    }

    /// `Δ(y) = y⊗1 + 1⊗ν(y)` for `y ∈ h` in ambient coordinates.
    pub fn delta(&self, y: &[Rational]) -> Result<TensorElement> {
        let u = PbwElement::from_vector(&self.algebra, y);
        let left = TensorElement::pure(&u, &Multivector::one(&self.p_space));
        let right = TensorElement::pure(&PbwElement::one(&self.algebra), &self.embedded_nu(y)?);
        Ok(&left + &right)
    }

    /// Images of the orthogonal basis of `h`.
    pub fn basis_images(&self) -> &[TensorElement] {
        &self.basis_images
    }

    /// `Δ` applied to an element of `U(h)`, where `U(h)` is written over the
    /// orthogonal `h` basis (generator `j` is `h_basis[j]`).
    pub fn apply(&self, x: &PbwElement) -> Result<TensorElement> {
        if x.algebra().dim() != self.split.h_dim() {
            return Err(Error::DimensionMismatch(
                "element is not over the orthogonal basis of h".into(),
            ));
        }
        let one = TensorElement::one(&self.algebra, &self.p_space);
        let mut out = TensorElement::zero(&self.algebra, &self.p_space);
        for (m, c) in x.terms() {
            let mut img = one.clone();
            for j in m.indices() {
                img = &img * &self.basis_images[j];
            }
            out = &out + &img.scale(c);
        }
        Ok(out)
    }

    /// `Δ(Ω_h) = Σ_j Δ(Y_j) Δ(Y^j)`.
    pub fn casimir_image(&self) -> TensorElement {
        let mut out = TensorElement::zero(&self.algebra, &self.p_space);
        for (img, d) in self.basis_images.iter().zip(&self.split.h_gram) {
            out = &out + &(img * img).scale(&d.recip());
        }
        out
    }
}
