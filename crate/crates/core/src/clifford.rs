//! The exterior algebra `∧V` of a space with an orthogonal basis, identified
//! with the Clifford algebra `C(V)` by sending the blade `{i1 < … < ik}` to the
//! Clifford product `X_i1 ⋯ X_ik`.
//!
//! The Clifford product is never written down in closed form. Left
//! multiplication by a basis vector is `e(X_i) + ι(X_i)`, and a blade acts by
//! applying its vectors right to left. Everything else (associativity, the
//! relation `xy + yx = 2B(x, y)`) is a consequence that the tests check.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;

use crate::arith::{frac, Rational};
use crate::error::{Error, Result};

/// A basis blade, stored as a bitmask of basis indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade(u32);

pub const MAX_DIM: usize = 31;

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_mask(mask: u32) -> Self {
        Blade(mask)
    }

    pub fn vector(i: usize) -> Self {
        assert!(i < MAX_DIM, "basis index {i} out of range");
        Blade(1 << i)
    }

    /// Blade from strictly increasing indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Contract(format!(
                "blade indices {indices:?} not strictly increasing"
            )));
        }
        if indices.iter().any(|&i| i >= MAX_DIM) {
            return Err(Error::Contract("blade index out of range".into()));
        }
        Ok(Blade(indices.iter().fold(0, |m, &i| m | (1 << i))))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn parity(self) -> u8 {
        (self.0.count_ones() & 1) as u8
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    /// Number of indices in the blade strictly below `i`.
    fn below(self, i: usize) -> u32 {
        (self.0 & ((1u32 << i) - 1)).count_ones()
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.grade(), self.0).cmp(&(other.grade(), other.0))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().iter().map(|i| format!("e{i}")).collect();
        write!(f, "{}", parts.join("^"))
    }
}

/// A space with a diagonal Gram matrix `diag(d_0, …, d_{m-1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordSpace {
    gram: Vec<Rational>,
}

impl CliffordSpace {
    pub fn new(gram: Vec<Rational>) -> Result<Arc<Self>> {
        if gram.len() > MAX_DIM {
            return Err(Error::UnsupportedDegree {
                degree: gram.len(),
                max: MAX_DIM,
            });
        }
        if let Some(i) = gram.iter().position(Zero::is_zero) {
            return Err(Error::FormDegenerate(format!("Gram entry {i} is zero")));
        }
        Ok(Arc::new(CliffordSpace { gram }))
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Rational] {
        &self.gram
    }

    pub fn blade_count(&self) -> usize {
        1 << self.dim()
    }

    pub fn blades(&self) -> impl Iterator<Item = Blade> {
        (0..1u32 << self.dim()).map(Blade)
    }

    /// `X_i · S` as a single signed term: exactly one of `e(X_i)S`, `ι(X_i)S`
    /// is nonzero for a basis blade `S`.
    fn vector_times_blade(&self, i: usize, s: Blade) -> (Rational, Blade) {
        let sign = if s.below(i).is_multiple_of(2) {
            Rational::one()
        } else {
            -Rational::one()
        };
        if s.contains(i) {
            (sign * &self.gram[i], Blade(s.0 & !(1 << i)))
        } else {
            (sign, Blade(s.0 | (1 << i)))
        }
    }

    /// Clifford product of two basis blades.
    pub fn blade_product(&self, a: Blade, b: Blade) -> (Rational, Blade) {
        let mut coef = Rational::one();
        let mut cur = b;
        for i in a.indices().into_iter().rev() {
            let (c, next) = self.vector_times_blade(i, cur);
            coef *= c;
            cur = next;
        }
        (coef, cur)
    }

    /// Exterior product of two basis blades (zero when they overlap).
    pub fn blade_wedge(&self, a: Blade, b: Blade) -> Option<(Rational, Blade)> {
        if a.0 & b.0 != 0 {
            return None;
        }
        // pairs (i in a, j in b) with i > j must be transposed
        let flips: u32 = a.indices().iter().map(|&i| b.below(i)).sum();
        let sign = if flips.is_multiple_of(2) {
            Rational::one()
        } else {
            -Rational::one()
        };
        Some((sign, Blade(a.0 | b.0)))
    }

    /// `B` extended to blades: the product of the Gram entries on equal blades.
    pub fn blade_norm(&self, s: Blade) -> Rational {
        s.indices().iter().map(|&i| self.gram[i].clone()).product()
    }
}

/// Element of `∧V ≅ C(V)`: a sparse map from blades to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Multivector {
    space: Arc<CliffordSpace>,
    terms: BTreeMap<Blade, Rational>,
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| format!("{c}*{b:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn same_space(a: &Arc<CliffordSpace>, b: &Arc<CliffordSpace>) {
    assert!(
        Arc::ptr_eq(a, b) || a == b,
        "multivectors live in different Clifford spaces"
    );
}

fn insert(terms: &mut BTreeMap<Blade, Rational>, b: Blade, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(b) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl Multivector {
    pub fn zero(space: &Arc<CliffordSpace>) -> Self {
        Multivector {
            space: Arc::clone(space),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(space: &Arc<CliffordSpace>, c: Rational) -> Self {
        Self::term(space, Blade::SCALAR, c)
    }

    pub fn one(space: &Arc<CliffordSpace>) -> Self {
        Self::scalar(space, Rational::one())
    }

    pub fn term(space: &Arc<CliffordSpace>, blade: Blade, c: Rational) -> Self {
        assert!(
            blade.0 >> space.dim() == 0,
            "blade {blade:?} outside a {}-dimensional space",
            space.dim()
        );
        let mut m = Self::zero(space);
        insert(&mut m.terms, blade, c);
        m
    }

    /// The basis vector `X_i`.
    pub fn basis_vector(space: &Arc<CliffordSpace>, i: usize) -> Self {
        Self::term(space, Blade::vector(i), Rational::one())
    }

    /// The degree-1 element `Σ x_i X_i`.
    pub fn vector(space: &Arc<CliffordSpace>, coords: &[Rational]) -> Self {
        assert_eq!(coords.len(), space.dim(), "vector: length mismatch");
        let mut m = Self::zero(space);
        for (i, c) in coords.iter().enumerate() {
            insert(&mut m.terms, Blade::vector(i), c.clone());
        }
        m
    }

    pub fn from_terms(
        space: &Arc<CliffordSpace>,
        terms: impl IntoIterator<Item = (Blade, Rational)>,
    ) -> Self {
        let mut m = Self::zero(space);
        for (b, c) in terms {
            assert!(b.0 >> space.dim() == 0, "blade outside space");
            insert(&mut m.terms, b, c);
        }
        m
    }

    pub fn space(&self) -> &Arc<CliffordSpace> {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Blade, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, b: Blade) -> Rational {
        self.terms.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the empty blade.
    pub fn scalar_part(&self) -> Rational {
        self.coefficient(Blade::SCALAR)
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|b| *b == Blade::SCALAR)
    }

    pub fn grade_part(&self, k: usize) -> Self {
        Multivector {
            space: Arc::clone(&self.space),
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.grade() == k)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    /// `Some(k)` if every term has degree `k` (zero counts as any degree).
    pub fn pure_grade(&self) -> Option<usize> {
        let mut grades = self.terms.keys().map(|b| b.grade());
        let first = grades.next().unwrap_or(0);
        grades.all(|g| g == first).then_some(first)
    }

    /// ℤ₂-degree when homogeneous; zero is even.
    pub fn parity(&self) -> Option<u8> {
        let mut ps = self.terms.keys().map(|b| b.parity());
        let first = ps.next().unwrap_or(0);
        ps.all(|p| p == first).then_some(first)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(&self.space);
        }
        Multivector {
            space: Arc::clone(&self.space),
            terms: self.terms.iter().map(|(b, c)| (*b, c * s)).collect(),
        }
    }

    pub fn wedge(&self, rhs: &Self) -> Self {
        same_space(&self.space, &rhs.space);
        let mut out = Self::zero(&self.space);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                if let Some((s, blade)) = self.space.blade_wedge(*a, *b) {
                    insert(&mut out.terms, blade, s * x * y);
                }
            }
        }
        out
    }

    pub fn clifford_mul(&self, rhs: &Self) -> Self {
        same_space(&self.space, &rhs.space);
        let mut out = Self::zero(&self.space);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let (s, blade) = self.space.blade_product(*a, *b);
                insert(&mut out.terms, blade, s * x * y);
            }
        }
        out
    }

    /// Grade involution: `(−1)^k` on degree `k`.
    pub fn kappa(&self) -> Self {
        Multivector {
            space: Arc::clone(&self.space),
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (*b, if b.parity() == 0 { c.clone() } else { -c }))
                .collect(),
        }
    }

    /// `ι(x)w`, the B-transpose of `e(x)`, for a degree-1 `x`.
    pub fn contract(x: &Self, w: &Self) -> Result<Self> {
        same_space(&x.space, &w.space);
        if x.pure_grade() != Some(1) && !x.is_zero() {
            return Err(Error::Contract("contraction by a non-vector".into()));
        }
        let space = &w.space;
        let mut out = Self::zero(space);
        for (xb, xc) in &x.terms {
            let i = xb.indices()[0];
            for (b, c) in w.terms.iter().filter(|(b, _)| b.contains(i)) {
                let (s, rest) = space.vector_times_blade(i, *b);
                insert(&mut out.terms, rest, s * xc * c);
            }
        }
        Ok(out)
    }

    /// The extension of `B` to the whole exterior algebra.
    pub fn extended_b(&self, rhs: &Self) -> Rational {
        same_space(&self.space, &rhs.space);
        self.terms
            .iter()
            .filter_map(|(b, x)| rhs.terms.get(b).map(|y| x * y * self.space.blade_norm(*b)))
            .sum()
    }

    /// The algebra map sending `X_i` to `images[i]`, applied to `self`.
    /// Only meaningful when the images satisfy the Clifford relations.
    pub fn pushforward(&self, images: &[Multivector]) -> Multivector {
        assert_eq!(images.len(), self.space.dim(), "one image per generator");
        let target = images
            .first()
            .map(|m| Arc::clone(&m.space))
            .unwrap_or_else(|| Arc::clone(&self.space));
        let mut out = Multivector::zero(&target);
        for (b, c) in &self.terms {
            let mut prod = Multivector::scalar(&target, c.clone());
            for i in b.indices() {
                prod = prod.clifford_mul(&images[i]);
            }
            out = &out + &prod;
        }
        out
    }
}

impl Add for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: &Multivector) -> Multivector {
        same_space(&self.space, &rhs.space);
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            insert(&mut out.terms, *b, c.clone());
        }
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &Multivector) -> Multivector {
        same_space(&self.space, &rhs.space);
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            insert(&mut out.terms, *b, -c);
        }
        out
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Multivector {
    type Output = Multivector;

    fn mul(self, rhs: &Multivector) -> Multivector {
        self.clifford_mul(rhs)
    }
}

/// Dense table of an alternating `k`-linear map on the basis, indexed
/// row-major by `k`-tuples.
pub fn alternating_to_multivector(
    space: &Arc<CliffordSpace>,
    arity: usize,
    table: &[Rational],
) -> Result<Multivector> {
    let m = space.dim();
    if table.len() != m.pow(arity as u32) {
        return Err(Error::DimensionMismatch(format!(
            "table of {} entries for arity {arity} on dimension {m}",
            table.len()
        )));
    }
    check_alternating(m, arity, table)?;
    let mut out = Multivector::zero(space);
    for blade in space.blades().filter(|b| b.grade() == arity) {
        let idx = blade.indices().iter().fold(0, |acc, &i| acc * m + i);
        let c = &table[idx] / space.blade_norm(blade);
        insert(&mut out.terms, blade, c);
    }
    Ok(out)
}

/// The unique degree-3 element `v` with `B(v, X_i ∧ X_j ∧ X_k) = t(i, j, k)`.
pub fn form3_to_multivector(space: &Arc<CliffordSpace>, table: &[Rational]) -> Result<Multivector> {
    alternating_to_multivector(space, 3, table)
}

/// Inverse of [`alternating_to_multivector`] on the degree-`arity` part:
/// `table(i_1, …, i_k) = B(a, X_i1 ∧ ⋯ ∧ X_ik)`.
pub fn multivector_to_alternating(a: &Multivector, arity: usize) -> Vec<Rational> {
    let space = a.space();
    let m = space.dim();
    let total = m.pow(arity as u32);
    let mut table = vec![Rational::zero(); total];
    for (idx, slot) in table.iter_mut().enumerate() {
        let mut tuple = vec![0; arity];
        let mut r = idx;
        for t in tuple.iter_mut().rev() {
            *t = r % m;
            r /= m;
        }
        let mut prod = Multivector::one(space);
        for &i in &tuple {
            prod = prod.wedge(&Multivector::basis_vector(space, i));
        }
        *slot = a.extended_b(&prod);
    }
    table
}

fn check_alternating(m: usize, arity: usize, table: &[Rational]) -> Result<()> {
    let total = table.len();
    for idx in 0..total {
        let mut tuple = vec![0; arity];
        let mut r = idx;
        for t in tuple.iter_mut().rev() {
            *t = r % m;
            r /= m;
        }
        for s in 0..arity.saturating_sub(1) {
            let mut swapped = tuple.clone();
            swapped.swap(s, s + 1);
            let j = swapped.iter().fold(0, |acc, &i| acc * m + i);
            if table[idx] != -table[j].clone() {
                return Err(Error::Contract(format!(
                    "table is not alternating at {tuple:?}"
                )));
            }
        }
    }
    Ok(())
}

/// Random element with up to `max_terms` terms and small rational coefficients.
pub fn random_multivector<R: Rng>(
    space: &Arc<CliffordSpace>,
    rng: &mut R,
    max_terms: usize,
) -> Multivector {
    let count = rng.random_range(1..=max_terms.max(1));
    let blades = space.blade_count() as u32;
    let terms: Vec<(Blade, Rational)> = (0..count)
        .map(|_| {
            let b = Blade(rng.random_range(0..blades));
            let num = rng.random_range(-5i64..=5);
            let den = rng.random_range(1i64..=4);
            (b, frac(num, den))
        })
        .collect();
    Multivector::from_terms(space, terms)
}
