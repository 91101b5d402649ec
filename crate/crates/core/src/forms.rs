//! Multilinear maps on `g`, the differential `d`, the operators `θ_X` and
//! `ι_X`, the coproduct `δ`, and the Clifford derivation `d_v`.
//!
//! Maps are dense tables over basis tuples and need not be alternating.
//! Besides acting on concrete tables, `d` and `θ_X` are available as
//! *rows*: the value of `dw` at a tuple is a finite linear combination of
//! values of `w`, and identities between operators can be checked for every
//! `w` at once by comparing those combinations.

use std::collections::BTreeMap;
use std::ops::{Add, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{diagonalize_form, frac, unit_vector, Rational};
use crate::clifford::{Blade, CliffordSpace, Multivector};
use crate::error::{Error, Result};
use crate::lie::QuadraticLieAlgebra;

pub const MAX_ARITY: usize = 4;

fn index_of(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * n + i)
}

fn tuple_of(mut idx: usize, n: usize, k: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for slot in t.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    t
}

/// Every `k`-tuple over `0..n`, in row-major order.
pub fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(k as u32)).map(move |idx| tuple_of(idx, n, k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearMap {
    arity: usize,
    dim: usize,
    values: Vec<Rational>,
}

impl MultilinearMap {
    pub fn zero(arity: usize, dim: usize) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::UnsupportedDegree {
                degree: arity,
                max: MAX_ARITY,
            });
        }
        Ok(MultilinearMap {
            arity,
            dim,
            values: vec![Rational::zero(); dim.pow(arity as u32)],
        })
    }

    pub fn from_fn(
        arity: usize,
        dim: usize,
        mut f: impl FnMut(&[usize]) -> Rational,
    ) -> Result<Self> {
        let mut w = Self::zero(arity, dim)?;
        for (slot, t) in w.values.iter_mut().zip(tuples(dim, arity)) {
            *slot = f(&t);
        }
        Ok(w)
    }

    pub fn from_values(arity: usize, dim: usize, values: Vec<Rational>) -> Result<Self> {
        let w = Self::zero(arity, dim)?;
        if values.len() != w.values.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for arity {arity} on dimension {dim}",
                values.len()
            )));
        }
        Ok(MultilinearMap { values, ..w })
    }

    /// The map taking the value 1 on `tuple` and 0 on every other tuple.
    pub fn elementary(dim: usize, tuple: &[usize]) -> Result<Self> {
        let mut w = Self::zero(tuple.len(), dim)?;
        w.values[index_of(tuple, dim)] = Rational::one();
        Ok(w)
    }

    /// `B` itself, as a 2-linear map.
    pub fn bilinear_form(g: &QuadraticLieAlgebra) -> Self {
        Self::from_values(2, g.dim(), g.form().entries().to_vec()).expect("square form")
    }

    /// `X* = B(X, ·)`.
    pub fn covector(g: &QuadraticLieAlgebra, x: &[Rational]) -> Self {
        Self::from_values(1, g.dim(), g.form().transpose().mul_vec(x)).expect("vector length")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, tuple: &[usize]) -> &Rational {
        assert_eq!(tuple.len(), self.arity, "tuple length must equal the arity");
        &self.values[index_of(tuple, self.dim)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_alternating(&self) -> bool {
        tuples(self.dim, self.arity).all(|t| {
            (0..self.arity.saturating_sub(1)).all(|s| {
                let mut u = t.clone();
                u.swap(s, s + 1);
                *self.get(&t) == -self.get(&u).clone()
            })
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        MultilinearMap {
            values: self.values.iter().map(|v| v * s).collect(),
            ..self.clone()
        }
    }

    fn check_shape(&self, rhs: &Self) {
        assert!(
            self.arity == rhs.arity && self.dim == rhs.dim,
            "multilinear maps of different shapes"
        );
    }
}

impl Add for &MultilinearMap {
    type Output = MultilinearMap;

    fn add(self, rhs: &MultilinearMap) -> MultilinearMap {
        self.check_shape(rhs);
        MultilinearMap {
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a + b)
                .collect(),
            ..self.clone()
        }
    }
}

impl Sub for &MultilinearMap {
    type Output = MultilinearMap;

    fn sub(self, rhs: &MultilinearMap) -> MultilinearMap {
        self.check_shape(rhs);
        MultilinearMap {
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a - b)
                .collect(),
            ..self.clone()
        }
    }
}

/// A linear functional on maps of a fixed arity: `w ↦ Σ c_J w(J)`.
pub type Functional = BTreeMap<Vec<usize>, Rational>;

fn add_to(f: &mut Functional, key: Vec<usize>, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = f.entry(key.clone()).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        f.remove(&key);
    }
}

fn apply(f: &Functional, w: &MultilinearMap) -> Rational {
    f.iter().map(|(j, c)| c * w.get(j)).sum()
}

/// `dw(x_0, …, x_k) = Σ_{s<t} (−1)^s w(…, x̂_s, …, [x_s, x_t], …)` at a
/// basis tuple, as a combination of values of `w`.
pub fn differential_row(g: &QuadraticLieAlgebra, tuple: &[usize]) -> Functional {
    let mut f = Functional::new();
    for t in 1..tuple.len() {
        for s in 0..t {
            let sign = if s % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            let br = g.basis_bracket(tuple[s], tuple[t]);
            for (c, coef) in br.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let mut key = tuple.to_vec();
                key[t] = c;
                key.remove(s);
                add_to(&mut f, key, &sign * coef);
            }
        }
    }
    f
}

/// `θ_X w(x_1, …, x_k) = Σ_s w(…, [X, x_s], …)` at a basis tuple.
pub fn theta_row(g: &QuadraticLieAlgebra, x: &[Rational], tuple: &[usize]) -> Functional {
    let ad = g.brackets().ad_matrix(x);
    let mut f = Functional::new();
    for s in 0..tuple.len() {
        for c in 0..g.dim() {
            let coef = &ad[(c, tuple[s])];
            if !coef.is_zero() {
                let mut key = tuple.to_vec();
                key[s] = c;
                add_to(&mut f, key, coef.clone());
            }
        }
    }
    f
}

fn check_dim(g: &QuadraticLieAlgebra, w: &MultilinearMap) -> Result<()> {
    if w.dim != g.dim() {
        return Err(Error::DimensionMismatch(format!(
            "map on dimension {} for an algebra of dimension {}",
            w.dim,
            g.dim()
        )));
    }
    Ok(())
}

/// The differential `d : C^k → C^{k+1}` for `k ≤ 3`.
pub fn ce_differential(g: &QuadraticLieAlgebra, w: &MultilinearMap) -> Result<MultilinearMap> {
    check_dim(g, w)?;
    if w.arity >= MAX_ARITY {
        return Err(Error::UnsupportedDegree {
            degree: w.arity,
            max: MAX_ARITY - 1,
        });
    }
    MultilinearMap::from_fn(w.arity + 1, w.dim, |t| apply(&differential_row(g, t), w))
}

pub fn theta(
    g: &QuadraticLieAlgebra,
    x: &[Rational],
    w: &MultilinearMap,
) -> Result<MultilinearMap> {
    check_dim(g, w)?;
    MultilinearMap::from_fn(w.arity, w.dim, |t| apply(&theta_row(g, x, t), w))
}

/// `ι_X w = w(X, ·)`.
pub fn iota_form(x: &[Rational], w: &MultilinearMap) -> Result<MultilinearMap> {
    if w.arity == 0 {
        return Err(Error::Contract("insertion into a map of arity 0".into()));
    }
    if x.len() != w.dim {
        return Err(Error::DimensionMismatch("vector of wrong length".into()));
    }
    MultilinearMap::from_fn(w.arity - 1, w.dim, |t| {
        (0..w.dim)
            .filter(|&a| !x[a].is_zero())
            .map(|a| {
                let mut full = Vec::with_capacity(t.len() + 1);
                full.push(a);
                full.extend_from_slice(t);
                &x[a] * w.get(&full)
            })
            .sum()
    })
}

fn require_orthogonal_model(g: &QuadraticLieAlgebra, space: &CliffordSpace) -> Result<()> {
    let form = g.form();
    if !form.is_diagonal()
        || space.dim() != g.dim()
        || (0..g.dim()).any(|i| form[(i, i)] != space.gram()[i])
    {
        return Err(Error::Contract(
            "Clifford space must carry the diagonal form of the algebra".into(),
        ));
    }
    Ok(())
}

/// The degree-2 element `δ(x)` with `B(δ(x), y ∧ z) = B(x, [y, z])` for all
/// `y`, `z`. The algebra must be written in an orthogonal basis whose Gram
/// is the one of `space`.
pub fn delta_coproduct(
    g: &QuadraticLieAlgebra,
    space: &Arc<CliffordSpace>,
    x: &[Rational],
) -> Result<Multivector> {
    require_orthogonal_model(g, space)?;
    if x.len() != g.dim() {
        return Err(Error::DimensionMismatch("vector of wrong length".into()));
    }
    let n = g.dim();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let value = g.pair(x, g.basis_bracket(i, j));
            if !value.is_zero() {
                let blade = Blade::from_indices(&[i, j])?;
                terms.push((blade, value / space.blade_norm(blade)));
            }
        }
    }
    Ok(Multivector::from_terms(space, terms))
}

/// `d_v(a) = va − κ(a)v`.
pub fn dv_derivation(v: &Multivector, a: &Multivector) -> Multivector {
    &(v * a) - &(&a.kappa() * v)
}

/// A quadratic Lie algebra rewritten in an orthogonal basis, together with
/// the Clifford space on its Gram.
#[derive(Debug, Clone)]
pub struct OrthogonalModel {
    pub algebra: Arc<QuadraticLieAlgebra>,
    /// The orthogonal basis, in the coordinates of the original algebra.
    pub basis: Vec<Vec<Rational>>,
    pub space: Arc<CliffordSpace>,
}

pub fn orthogonal_model(g: &QuadraticLieAlgebra) -> Result<OrthogonalModel> {
    let (p, d) = diagonalize_form(g.form())?;
    let basis = p.columns();
    let labels = (1..=g.dim()).map(|i| format!("X{i}")).collect();
    let algebra = g.restricted_to(g.name(), labels, &basis)?;
    let space = CliffordSpace::new(d)?;
    Ok(OrthogonalModel {
        algebra: Arc::new(algebra),
        basis,
        space,
    })
}

/// The alternating 3-form `−½ B(x, [y, z])`.
pub fn fundamental_table(g: &QuadraticLieAlgebra) -> MultilinearMap {
    let half = frac(-1, 2);
    MultilinearMap::from_fn(3, g.dim(), |t| {
        &half * g.pair(&unit_vector(g.dim(), t[0]), g.basis_bracket(t[1], t[2]))
    })
    .expect("arity 3")
}

/// First basis vector and tuple where `ι_X d + d ι_X = θ_X` fails, checked
/// on every map of the given arity at once.
pub fn cartan_formula_witness(
    g: &QuadraticLieAlgebra,
    arity: usize,
) -> Result<Option<(usize, Vec<usize>)>> {
    if arity >= MAX_ARITY {
        return Err(Error::UnsupportedDegree {
            degree: arity,
            max: MAX_ARITY - 1,
        });
    }
    let n = g.dim();
    for a in 0..n {
        let x = unit_vector(n, a);
        for t in tuples(n, arity) {
            let mut full = vec![a];
            full.extend_from_slice(&t);
            let mut lhs = differential_row(g, &full);
            for (j, c) in differential_row(g, &t) {
                let mut key = vec![a];
                key.extend(j);
                add_to(&mut lhs, key, c);
            }
            if lhs != theta_row(g, &x, &t) {
                return Ok(Some((a, t)));
            }
        }
    }
    Ok(None)
}

fn canonical_alternating(f: Functional) -> Functional {
    let mut out = Functional::new();
    for (mut key, c) in f {
        let mut sign = Rational::one();
        for i in 0..key.len() {
            for j in 0..key.len() - 1 - i {
                if key[j] > key[j + 1] {
                    key.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if key.windows(2).all(|w| w[0] != w[1]) {
            add_to(&mut out, key, sign * c);
        }
    }
    out
}

/// First tuple where `d²w` fails to vanish for some `w` of the given arity.
/// With `alternating`, only alternating `w` are considered.
pub fn d_squared_witness(
    g: &QuadraticLieAlgebra,
    arity: usize,
    alternating: bool,
) -> Result<Option<Vec<usize>>> {
    if arity + 1 >= MAX_ARITY {
        return Err(Error::UnsupportedDegree {
            degree: arity,
            max: MAX_ARITY - 2,
        });
    }
    for t in tuples(g.dim(), arity + 2) {
        let mut total = Functional::new();
        for (j, c) in differential_row(g, &t) {
            for (k, e) in differential_row(g, &j) {
                add_to(&mut total, k, &c * e);
            }
        }
        if alternating {
            total = canonical_alternating(total);
        }
        if !total.is_empty() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, solve_linear, RationalMatrix};
    use crate::catalog;
    use crate::clifford::{form3_to_multivector, multivector_to_alternating, random_multivector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sl2() -> QuadraticLieAlgebra {
        catalog::sl2(&rat(1)).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<Rational> {
        unit_vector(n, i)
    }

    #[test]
    fn arity_limits() {
        assert!(MultilinearMap::zero(5, 2).is_err());
        let g = sl2();
        let w = MultilinearMap::zero(4, 3).unwrap();
        assert!(matches!(
            ce_differential(&g, &w),
            Err(Error::UnsupportedDegree { .. })
        ));
        let c = MultilinearMap::zero(0, 3).unwrap();
        assert!(iota_form(&e(3, 0), &c).is_err());
    }

    #[test]
    fn differential_of_covector_is_bracket() {
        let g = sl2();
        for a in 0..3 {
            let xs = MultilinearMap::covector(&g, &e(3, a));
            let dx = ce_differential(&g, &xs).unwrap();
            for y in 0..3 {
                for z in 0..3 {
                    assert_eq!(*dx.get(&[y, z]), g.pair(&e(3, a), g.basis_bracket(y, z)));
                }
            }
        }
    }

    #[test]
    fn differential_of_b() {
        for entry in catalog::all().unwrap() {
            let g = &entry.algebra;
            let n = g.dim();
            let db = ce_differential(g, &MultilinearMap::bilinear_form(g)).unwrap();
            for t in tuples(n, 3) {
                let expected = -g.pair(&e(n, t[0]), g.basis_bracket(t[1], t[2]));
                assert_eq!(*db.get(&t), expected, "{} at {t:?}", g.name());
            }
            assert_eq!(db, fundamental_table(g).scale(&rat(2)));
        }
    }

    #[test]
    fn abelian_differential_vanishes() {
        let g = catalog::abelian(3).unwrap();
        for k in 0..4 {
            for t in tuples(3, k) {
                let w = MultilinearMap::elementary(3, &t).unwrap();
                assert!(ce_differential(&g, &w).unwrap().is_zero());
                assert!(theta(&g, &e(3, 1), &w).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn theta_on_covector() {
        let g = sl2();
        let es = MultilinearMap::covector(&g, &e(3, 0));
        let th = theta(&g, &e(3, 1), &es).unwrap();
        // direct: θ_h e*(x) = B(e, [h, x])
        for x in 0..3 {
            let hx = g.bracket(&e(3, 1), &e(3, x));
            assert_eq!(*th.get(&[x]), g.pair(&e(3, 0), &hx));
        }
        assert_eq!(th, es.scale(&rat(-2)));
    }

    #[test]
    fn theta_kills_b() {
        for entry in catalog::all().unwrap() {
            let g = &entry.algebra;
            let b = MultilinearMap::bilinear_form(g);
            for a in 0..g.dim() {
                assert!(theta(g, &e(g.dim(), a), &b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn iota_examples() {
        let g = sl2();
        let b = MultilinearMap::bilinear_form(&g);
        let x = vec![rat(1), rat(2), rat(-1)];
        let xs = MultilinearMap::covector(&g, &x);
        assert_eq!(*iota_form(&x, &xs).unwrap().get(&[]), g.pair(&x, &x));
        assert_eq!(
            iota_form(&e(3, 0), &b).unwrap(),
            MultilinearMap::covector(&g, &e(3, 0))
        );
        let db = ce_differential(&g, &b).unwrap();
        let v = fundamental_table(&g);
        for a in 0..3 {
            assert_eq!(
                iota_form(&e(3, a), &db).unwrap(),
                iota_form(&e(3, a), &v).unwrap().scale(&rat(2))
            );
        }
    }

    #[test]
    fn rows_agree_with_tables() {
        let g = catalog::sl2(&frac(1, 2)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        use rand::Rng;
        for k in 0..3 {
            let w = MultilinearMap::from_fn(k, 3, |_| rat(rng.random_range(-4..=4))).unwrap();
            let dw = ce_differential(&g, &w).unwrap();
            let x = vec![rat(1), rat(-1), rat(2)];
            let tx = theta(&g, &x, &w).unwrap();
            // Cartan formula on a concrete map
            if k > 0 {
                let lhs = &iota_form(&x, &dw).unwrap()
                    + &ce_differential(&g, &iota_form(&x, &w).unwrap()).unwrap();
                assert_eq!(lhs, tx);
            }
            let ddw = if k < 2 {
                Some(ce_differential(&g, &dw).unwrap())
            } else {
                None
            };
            if let Some(ddw) = ddw {
                assert!(ddw.is_zero());
            }
        }
    }

    #[test]
    fn cartan_and_d_squared_on_small_catalog() {
        for name in [
            "abelian3",
            "sl2-killing",
            "sl2-killing-half",
            "sl2xsl2-diagonal",
        ] {
            let g = catalog::entry(name).unwrap().unwrap().algebra;
            for k in 0..=3 {
                assert_eq!(
                    cartan_formula_witness(&g, k).unwrap(),
                    None,
                    "{name} arity {k}"
                );
            }
            assert_eq!(d_squared_witness(&g, 1, false).unwrap(), None);
            assert_eq!(d_squared_witness(&g, 0, false).unwrap(), None);
            assert_eq!(d_squared_witness(&g, 2, true).unwrap(), None);
        }
    }

    #[test]
    fn differential_preserves_alternation() {
        let g = sl2();
        let model = orthogonal_model(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for k in 1..=3 {
            let a = random_multivector(&model.space, &mut rng, 4).grade_part(k);
            let w = MultilinearMap::from_values(k, 3, multivector_to_alternating(&a, k)).unwrap();
            assert!(w.is_alternating());
            assert!(ce_differential(&model.algebra, &w)
                .unwrap()
                .is_alternating());
        }
        assert!(!MultilinearMap::bilinear_form(&g).is_alternating());
    }

    #[test]
    fn orthogonal_model_of_sl2() {
        let model = orthogonal_model(&sl2()).unwrap();
        assert!(model.algebra.form().is_diagonal());
        assert_eq!(model.space.gram(), &[rat(8), rat(8), rat(-8)]);
    }

    #[test]
    fn delta_matches_linear_solve() {
        let model = orthogonal_model(&sl2()).unwrap();
        let g = &model.algebra;
        let space = &model.space;
        let blades: Vec<Blade> = space.blades().filter(|b| b.grade() == 2).collect();
        for a in 0..3 {
            let x = e(3, a);
            let delta = delta_coproduct(g, space, &x).unwrap();
            // oracle: solve B(w, y∧z) = B(x, [y, z]) over all 9 pairs
            let mut system = RationalMatrix::zeros(9, blades.len());
            let mut rhs = Vec::new();
            for y in 0..3 {
                for z in 0..3 {
                    let yz = Multivector::basis_vector(space, y)
                        .wedge(&Multivector::basis_vector(space, z));
                    for (col, b) in blades.iter().enumerate() {
                        system[(y * 3 + z, col)] =
                            Multivector::term(space, *b, rat(1)).extended_b(&yz);
                    }
                    rhs.push(g.pair(&x, g.basis_bracket(y, z)));
                }
            }
            let sol = solve_linear(&system, &rhs)
                .unwrap()
                .into_solution()
                .unwrap();
            assert_eq!(
                delta,
                Multivector::from_terms(space, blades.iter().copied().zip(sol))
            );
        }
        let sum = delta_coproduct(g, space, &[rat(1), rat(1), rat(0)]).unwrap();
        assert_eq!(
            sum,
            &delta_coproduct(g, space, &e(3, 0)).unwrap()
                + &delta_coproduct(g, space, &e(3, 1)).unwrap()
        );
        let ab = catalog::abelian(2).unwrap();
        let s = CliffordSpace::new(vec![rat(1), rat(1)]).unwrap();
        assert!(delta_coproduct(&ab, &s, &e(2, 0)).unwrap().is_zero());
        assert!(delta_coproduct(&sl2(), space, &e(3, 0)).is_err());
    }

    #[test]
    fn first_order_chain() {
        for entry in catalog::all().unwrap() {
            let model = orthogonal_model(&entry.algebra).unwrap();
            let g = &model.algebra;
            let space = &model.space;
            let v = form3_to_multivector(space, fundamental_table(g).values()).unwrap();
            for a in 0..g.dim() {
                let x = Multivector::basis_vector(space, a);
                let dv = dv_derivation(&v, &x);
                assert_eq!(dv, Multivector::contract(&x, &v).unwrap().scale(&rat(2)));
                assert_eq!(dv, -&delta_coproduct(g, space, &e(g.dim(), a)).unwrap());
            }
        }
    }

    #[test]
    fn dv_is_a_twisted_derivation() {
        let model = orthogonal_model(&sl2()).unwrap();
        let space = &model.space;
        let v = form3_to_multivector(space, fundamental_table(&model.algebra).values()).unwrap();
        assert!(dv_derivation(&v, &Multivector::one(space)).is_zero());
        let v2 = &v * &v;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..25 {
            let a = random_multivector(space, &mut rng, 4);
            let b = random_multivector(space, &mut rng, 4);
            let lhs = dv_derivation(&v, &(&a * &b));
            let rhs = &(&dv_derivation(&v, &a) * &b) + &(&a.kappa() * &dv_derivation(&v, &b));
            assert_eq!(lhs, rhs);
            assert_eq!(
                dv_derivation(&v, &dv_derivation(&v, &a)),
                &(&v2 * &a) - &(&a * &v2)
            );
        }
    }
}
