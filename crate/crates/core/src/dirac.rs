//! The cubic element `v_{g/h}`, the Dirac operator `D_{g/h}`, its square,
//! and checks of the identities that govern it.
//!
//! Every check returns a report instead of aborting, so one run surfaces
//! every failed identity.

use std::sync::Arc;

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{frac, rat, unit_vector, Rational};
use crate::clifford::{
    alternating_to_multivector, multivector_to_alternating, random_multivector, Blade,
    CliffordSpace, Multivector,
};
use crate::envelope::{casimir, PbwElement};
use crate::error::{Error, Result};
use crate::forms::{
    cartan_formula_witness, ce_differential, d_squared_witness, delta_coproduct, dv_derivation,
    fundamental_table, orthogonal_model, theta, MultilinearMap,
};
use crate::lie::{orthogonal_split, OrthogonalSplit, QuadraticLieAlgebra, SubalgebraSpec};
use crate::tensor::{DeltaMap, TensorElement, TripleTensorElement};

/// `g`, a split `g = h ⊕ h⊥`, and the objects built from them.
#[derive(Debug, Clone)]
pub struct DiracContext {
    algebra: Arc<QuadraticLieAlgebra>,
    split: OrthogonalSplit,
    p_space: Arc<CliffordSpace>,
    v: Multivector,
    dirac: TensorElement,
    omega_g: PbwElement,
    omega_h: PbwElement,
    delta: DeltaMap,
    delta_omega_h: TensorElement,
}

impl DiracContext {
    pub fn new(g: &Arc<QuadraticLieAlgebra>, h: &SubalgebraSpec) -> Result<Self> {
        let split = orthogonal_split(g, h)?;
        Self::with_split(g, split)
    }

    /// The context with `h = 0`.
    pub fn full(g: &Arc<QuadraticLieAlgebra>) -> Result<Self> {
        Self::new(g, &SubalgebraSpec::zero())
    }

    pub fn with_split(g: &Arc<QuadraticLieAlgebra>, split: OrthogonalSplit) -> Result<Self> {
        let p_space = CliffordSpace::new(split.p_gram.clone())?;
        let v = fundamental_form_on(g, &split, &p_space)?;
        debug_assert!(v.is_zero() || v.pure_grade() == Some(3));
        let mut dirac = TensorElement::pure(&PbwElement::one(g), &v);
        for (k, (x, d)) in split.p_basis.iter().zip(&split.p_gram).enumerate() {
            let dual = Multivector::term(&p_space, Blade::vector(k), d.recip());
            dirac = &dirac + &TensorElement::pure(&PbwElement::from_vector(g, x), &dual);
        }
        let (full_basis, _) = split.full_basis();
        let omega_g = casimir(g, &full_basis)?;
        let omega_h = casimir(g, &split.h_basis)?;
        let delta = DeltaMap::new(g, &split, &p_space)?;
        let delta_omega_h = delta.casimir_image();
        Ok(DiracContext {
            algebra: Arc::clone(g),
            split,
            p_space,
            v,
            dirac,
            omega_g,
            omega_h,
            delta,
            delta_omega_h,
        })
    }

    /// The same `h` and `h⊥` with different orthogonal bases.
    pub fn alternate(&self) -> Result<Self> {
        Self::with_split(&self.algebra, self.split.alternate(&self.algebra)?)
    }

    pub fn algebra(&self) -> &Arc<QuadraticLieAlgebra> {
        &self.algebra
    }

    pub fn split(&self) -> &OrthogonalSplit {
        &self.split
    }

    pub fn p_space(&self) -> &Arc<CliffordSpace> {
        &self.p_space
    }

    /// `v_{g/h}`, the degree-3 element with `B(v, x∧y∧z) = −½ B(x, [y, z])` on `h⊥`.
    pub fn fundamental_form(&self) -> &Multivector {
        &self.v
    }

    /// `D = Σ X_i ⊗ X^i + 1 ⊗ v`.
    pub fn dirac(&self) -> &TensorElement {
        &self.dirac
    }

    pub fn omega_g(&self) -> &PbwElement {
        &self.omega_g
    }

    pub fn omega_h(&self) -> &PbwElement {
        &self.omega_h
    }

    pub fn delta(&self) -> &DeltaMap {
        &self.delta
    }

    /// `Δ_h(Ω_h)`.
    pub fn delta_omega_h(&self) -> &TensorElement {
        &self.delta_omega_h
    }

    pub fn dirac_square(&self) -> TensorElement {
        &self.dirac * &self.dirac
    }

    /// `D² − Ω_g ⊗ 1 + Δ_h(Ω_h)`.
    pub fn residual(&self) -> TensorElement {
        let omega = TensorElement::pure(&self.omega_g, &Multivector::one(&self.p_space));
        &(&self.dirac_square() - &omega) + &self.delta_omega_h
    }

    pub fn kostant_check(&self) -> KostantReport {
        let residual = self.residual();
        let v2 = &self.v * &self.v;
        let central = self.p_space.blades().all(|b| {
            let a = Multivector::term(&self.p_space, b, Rational::one());
            &v2 * &a == &a * &v2
        });
        let compared = self.split.h_dim() == 0;
        let c = residual.scalar_part();
        let residual_is_scalar = residual.is_scalar();
        let v_squared_is_scalar = v2.is_scalar();
        let v_squared = v2.scalar_part();
        let passed =
            residual_is_scalar && (!compared || (central && v_squared_is_scalar && v_squared == c));
        KostantReport {
            residual_is_scalar,
            first_order_vanishes: residual.u_degree_part(1).is_zero(),
            c,
            v_squared_is_scalar,
            v_squared_is_central: central,
            v_squared,
            compared_with_v_squared: compared,
            passed,
        }
    }

    /// First index `j` of the orthogonal basis of `h` with `[Δ(Y_j), D] ≠ 0`.
    pub fn h_invariance_check(&self) -> Option<usize> {
        self.delta
            .basis_images()
            .iter()
            .position(|dy| !(&(dy * &self.dirac) - &(&self.dirac * dy)).is_zero())
    }

    /// `Σ_{i<j} [X_i, X_j] ⊗ X^i X^j = Σ_k X_k ⊗ δ(X^k)`, for `h = 0`.
    pub fn middle_term_check(&self) -> Result<bool> {
        if self.split.h_dim() != 0 {
            return Err(Error::Contract(
                "middle-term identity is stated for h = 0".into(),
            ));
        }
        let g = &self.algebra;
        let basis = &self.split.p_basis;
        let gram = &self.split.p_gram;
        let m = basis.len();
        let labels = (1..=m).map(|i| format!("X{i}")).collect();
        let model = g.restricted_to(g.name(), labels, basis)?;
        let space = &self.p_space;
        let mut lhs = TensorElement::zero(g, space);
        let mut rhs = TensorElement::zero(g, space);
        for i in 0..m {
            for j in i + 1..m {
                let u = PbwElement::from_vector(g, &g.bracket(&basis[i], &basis[j]));
                let c = Multivector::term(
                    space,
                    Blade::from_indices(&[i, j])?,
                    (&gram[i] * &gram[j]).recip(),
                );
                lhs = &lhs + &TensorElement::pure(&u, &c);
            }
            let dual: Vec<Rational> = unit_vector(m, i).iter().map(|x| x / &gram[i]).collect();
            let d = delta_coproduct(&model, space, &dual)?;
            rhs = &rhs + &TensorElement::pure(&PbwElement::from_vector(g, &basis[i]), &d);
        }
        Ok(lhs == rhs)
    }

    /// Compares `D_g`, `D_{g/h}` and `D_h` inside `U(g) ⊗ C(h⊥) ⊗̄ C(h)`.
    pub fn decomposition_check(&self) -> Result<DecompositionReport> {
        let g = &self.algebra;
        let (full_basis, _) = self.split.full_basis();
        let ctx_g = DiracContext::with_split(g, OrthogonalSplit::trivial(g, full_basis)?)?;
        let k = self.split.h_dim();
        let labels = (1..=k).map(|i| format!("Y{i}")).collect();
        let h_alg = Arc::new(g.restricted_to("h", labels, &self.split.h_basis)?);
        let units = (0..k).map(|i| unit_vector(k, i)).collect();
        let ctx_h = DiracContext::with_split(&h_alg, OrthogonalSplit::trivial(&h_alg, units)?)?;
        let h_space = &ctx_h.p_space;
        let m = self.split.p_dim();

        let split_g = |t: &TensorElement| {
            let low = (1u32 << m) - 1;
            TripleTensorElement::from_terms(
                g,
                &self.p_space,
                h_space,
                t.terms().iter().map(|((mono, b), c)| {
                    let key = (
                        mono.clone(),
                        Blade::from_mask(b.mask() & low),
                        Blade::from_mask(b.mask() >> m),
                    );
                    (key, c.clone())
                }),
            )
        };
        let delta_bar = |t: &TensorElement| -> Result<TripleTensorElement> {
            let mut out = TripleTensorElement::zero(g, &self.p_space, h_space);
            for ((mono, b), c) in t.terms() {
                let u = PbwElement::from_terms(&h_alg, [(mono.clone(), Rational::one())]);
                let image = self.delta.apply(&u)?;
                let kpart = Multivector::term(h_space, *b, c.clone());
                out = &out + &TripleTensorElement::from_pair(&image, &kpart);
            }
            Ok(out)
        };

        let one_h = Multivector::one(h_space);
        let a = TripleTensorElement::from_pair(&self.dirac, &one_h);
        let b = delta_bar(&ctx_h.dirac)?;
        let d_g = split_g(&ctx_g.dirac);
        let identity_holds = d_g == &a + &b;
        let anticommute = (&(&a * &b) + &(&b * &a)).is_zero();
        let lhs = TripleTensorElement::from_pair(&self.dirac_square(), &one_h);
        let rhs = &split_g(&ctx_g.dirac_square()) - &delta_bar(&ctx_h.dirac_square())?;
        let squared_holds = lhs == rhs && lhs == &a * &a;

        let (rel, full, sub) = (
            self.kostant_check(),
            ctx_g.kostant_check(),
            ctx_h.kostant_check(),
        );
        let additive = rel.c == &full.c - &sub.c;
        let passed = identity_holds
            && anticommute
            && squared_holds
            && additive
            && rel.passed
            && full.passed
            && sub.passed;
        Ok(DecompositionReport {
            identity_holds,
            anticommute,
            squared_holds,
            c_g: full.c,
            c_h: sub.c,
            c_rel: rel.c,
            additive,
            passed,
        })
    }
}

fn fundamental_form_on(
    g: &QuadraticLieAlgebra,
    split: &OrthogonalSplit,
    space: &Arc<CliffordSpace>,
) -> Result<Multivector> {
    let basis = &split.p_basis;
    let m = basis.len();
    let half = frac(-1, 2);
    let mut table = Vec::with_capacity(m * m * m);
    for x in basis {
        for y in basis {
            for z in basis {
                table.push(&half * g.pair(x, &g.bracket(y, z)));
            }
        }
    }
    alternating_to_multivector(space, 3, &table)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KostantReport {
    /// `D² − Ω_g ⊗ 1 + Δ_h(Ω_h)` is a multiple of `1 ⊗ 1`.
    pub residual_is_scalar: bool,
    /// The residual has no terms of `U`-degree 1.
    pub first_order_vanishes: bool,
    /// Scalar part of the residual.
    pub c: Rational,
    pub v_squared_is_scalar: bool,
    pub v_squared_is_central: bool,
    pub v_squared: Rational,
    /// Whether `v²` entered the verdict; only for `h = 0`.
    pub compared_with_v_squared: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    /// `D_g = D_{g/h} ⊗̄ 1 + (Δ_h ⊗̄ 1)(D_h)`.
    pub identity_holds: bool,
    /// The two summands anticommute.
    pub anticommute: bool,
    /// `D_{g/h}² ⊗̄ 1 = D_g² − (Δ_h ⊗̄ 1)(D_h²)`.
    pub squared_holds: bool,
    pub c_g: Rational,
    pub c_h: Rational,
    pub c_rel: Rational,
    pub additive: bool,
    pub passed: bool,
}

/// Outcome of one identity in [`proof_chain_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub name: String,
    pub witness: Option<String>,
}

impl IdentityOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    fn new(name: impl Into<String>, witness: Option<String>) -> Self {
        IdentityOutcome {
            name: name.into(),
            witness,
        }
    }
}

/// Number of random elements used by the derivation checks.
pub const RANDOM_SAMPLES: usize = 100;

/// The identities behind `D_g² = Ω_g ⊗ 1 + v²`, each checked exhaustively
/// on the basis (random elements for the derivation laws, seeded by `seed`).
pub fn proof_chain_check(g: &QuadraticLieAlgebra, seed: u64) -> Result<Vec<IdentityOutcome>> {
    let model = orthogonal_model(g)?;
    let alg = &model.algebra;
    let n = alg.dim();
    let units: Vec<Vec<Rational>> = (0..n).map(|i| unit_vector(n, i)).collect();
    let ctx = DiracContext::with_split(alg, OrthogonalSplit::trivial(alg, units.clone())?)?;
    let space = ctx.p_space();
    let v = ctx.fundamental_form();
    let mut out = Vec::new();

    let b = MultilinearMap::bilinear_form(alg);
    let db = ce_differential(alg, &b)?;
    let v_table = MultilinearMap::from_values(3, n, multivector_to_alternating(v, 3))?;
    let witness = crate::forms::tuples(n, 3)
        .find(|t| *db.get(t) != v_table.get(t) * rat(2))
        .map(|t| format!("{t:?}"));
    out.push(IdentityOutcome::new("dB = 2v", witness));
    debug_assert_eq!(v_table, fundamental_table(alg));

    let mut witness = None;
    for (a, x) in units.iter().enumerate() {
        if !theta(alg, x, &b)?.is_zero() {
            witness = Some(format!("X{}", a + 1));
            break;
        }
    }
    out.push(IdentityOutcome::new("theta_X B = 0", witness));

    for k in 0..=3 {
        let witness = cartan_formula_witness(alg, k)?.map(|(a, t)| format!("X{} at {t:?}", a + 1));
        out.push(IdentityOutcome::new(
            format!("cartan formula, arity {k}"),
            witness,
        ));
    }
    let witness = d_squared_witness(alg, 1, false)?.map(|t| format!("{t:?}"));
    out.push(IdentityOutcome::new("d^2 = 0, arity 1", witness));
    let witness = d_squared_witness(alg, 2, true)?.map(|t| format!("{t:?}"));
    out.push(IdentityOutcome::new(
        "d^2 = 0, alternating arity 2",
        witness,
    ));

    let mut witness = None;
    for (a, x) in units.iter().enumerate() {
        let xv = Multivector::basis_vector(space, a);
        let dv = dv_derivation(v, &xv);
        let contracted = Multivector::contract(&xv, v)?.scale(&rat(2));
        let delta = delta_coproduct(alg, space, x)?;
        if dv != contracted || !(&dv + &delta).is_zero() {
            witness = Some(format!("X{}", a + 1));
            break;
        }
    }
    out.push(IdentityOutcome::new("delta + d_v = 0", witness));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witness = None;
    for i in 0..RANDOM_SAMPLES {
        let a = random_multivector(space, &mut rng, 6);
        let b = random_multivector(space, &mut rng, 6);
        let lhs = dv_derivation(v, &(&a * &b));
        let rhs = &(&dv_derivation(v, &a) * &b) + &(&a.kappa() * &dv_derivation(v, &b));
        if witness.is_none() && lhs != rhs {
            witness = Some(format!("sample {i}"));
        }
    }
    out.push(IdentityOutcome::new("d_v derivation law", witness));

    let v2 = v * v;
    let mut witness = None;
    for i in 0..RANDOM_SAMPLES {
        let a = random_multivector(space, &mut rng, 6);
        if witness.is_none() && dv_derivation(v, &dv_derivation(v, &a)) != &(&v2 * &a) - &(&a * &v2)
        {
            witness = Some(format!("sample {i}"));
        }
    }
    out.push(IdentityOutcome::new("d_v^2 = [v^2, .]", witness));

    let witness = (!ctx.middle_term_check()?).then(|| "sum differs".to_string());
    out.push(IdentityOutcome::new("middle term", witness));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn full(g: QuadraticLieAlgebra) -> DiracContext {
        DiracContext::full(&Arc::new(g)).unwrap()
    }

    #[test]
    fn abelian_dirac() {
        let ctx = full(catalog::abelian(2).unwrap());
        assert!(ctx.fundamental_form().is_zero());
        let g = ctx.algebra();
        let expected = &TensorElement::pure(
            &PbwElement::generator(g, 0),
            &Multivector::basis_vector(ctx.p_space(), 0),
        ) + &TensorElement::pure(
            &PbwElement::generator(g, 1),
            &Multivector::basis_vector(ctx.p_space(), 1),
        );
        assert_eq!(ctx.dirac(), &expected);
        let sq = ctx.dirac_square();
        assert_eq!(
            sq,
            TensorElement::pure(ctx.omega_g(), &Multivector::one(ctx.p_space()))
        );
        let report = ctx.kostant_check();
        assert!(report.passed);
        assert_eq!(report.c, rat(0));
    }

    #[test]
    fn h_equal_to_g_gives_zero() {
        let g = Arc::new(catalog::sl2(&rat(1)).unwrap());
        let h = SubalgebraSpec::new((0..3).map(|i| unit_vector(3, i)).collect());
        let ctx = DiracContext::new(&g, &h).unwrap();
        assert!(ctx.dirac().is_zero());
        let report = ctx.kostant_check();
        assert!(report.passed);
        assert_eq!(report.c, rat(0));
        let dec = ctx.decomposition_check().unwrap();
        assert!(dec.passed, "{dec:?}");
        assert_eq!(dec.c_g, dec.c_h);
    }

    #[test]
    fn sl2_fundamental_form() {
        let ctx = full(catalog::sl2(&rat(1)).unwrap());
        let v = ctx.fundamental_form();
        assert_eq!(v.pure_grade(), Some(3));
        // oracle: B(v, X_a ∧ X_b ∧ X_c) = −½ B(X_a, [X_b, X_c]) on every triple
        let g = ctx.algebra();
        let basis = &ctx.split().p_basis;
        let space = ctx.p_space();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let blade = Multivector::basis_vector(space, a)
                        .wedge(&Multivector::basis_vector(space, b))
                        .wedge(&Multivector::basis_vector(space, c));
                    let expected =
                        frac(-1, 2) * g.pair(&basis[a], &g.bracket(&basis[b], &basis[c]));
                    assert_eq!(v.extended_b(&blade), expected);
                }
            }
        }
        // e, h, f with the Killing form: basis (h, e+f, e−f), Gram (8, 8, −8)
        assert_eq!(
            v.coefficient(Blade::from_indices(&[0, 1, 2]).unwrap()),
            frac(-1, 64)
        );
    }

    #[test]
    fn sl2_dirac_by_hand() {
        let ctx = full(catalog::sl2(&rat(1)).unwrap());
        let g = ctx.algebra();
        let space = ctx.p_space();
        let mut expected = TensorElement::pure(&PbwElement::one(g), ctx.fundamental_form());
        for (k, (x, d)) in ctx
            .split()
            .p_basis
            .iter()
            .zip(&ctx.split().p_gram)
            .enumerate()
        {
            let u = PbwElement::from_vector(g, x).scale(&d.recip());
            expected = &expected + &TensorElement::pure(&u, &Multivector::basis_vector(space, k));
        }
        assert_eq!(ctx.dirac(), &expected);
        assert_eq!(ctx.dirac().parity(), Some(1));
    }

    #[test]
    fn sl2_kostant_value() {
        let ctx = full(catalog::sl2(&rat(1)).unwrap());
        let report = ctx.kostant_check();
        assert!(report.passed, "{report:?}");
        assert!(report.first_order_vanishes);
        // v = −1/64 e123 with e1² = e2² = 8, e3² = −8: v² = (1/64)² · (−1)·8·8·(−8)
        assert_eq!(report.c, frac(1, 8));
        assert_eq!(report.v_squared, frac(1, 8));
    }

    #[test]
    fn sl2_rescaled_forms() {
        for (t, c) in [(rat(-1), frac(-1, 8)), (frac(1, 2), frac(1, 4))] {
            let ctx = full(catalog::sl2(&t).unwrap());
            let report = ctx.kostant_check();
            assert!(report.passed);
            assert_eq!(report.c, report.v_squared);
            assert_eq!(report.c, c);
        }
    }

    #[test]
    fn basis_independence() {
        let ctx = full(catalog::sl2(&rat(1)).unwrap());
        let alt = ctx.alternate().unwrap();
        assert_ne!(ctx.split().p_basis, alt.split().p_basis);
        assert_eq!(ctx.kostant_check().c, alt.kostant_check().c);
        assert_eq!(
            ctx.residual(),
            TensorElement::scalar(ctx.algebra(), ctx.p_space(), frac(1, 8))
        );
        assert_eq!(
            alt.residual(),
            TensorElement::scalar(alt.algebra(), alt.p_space(), frac(1, 8))
        );
    }

    #[test]
    fn middle_term() {
        for name in ["abelian2", "sl2-killing", "sl2-killing-neg"] {
            let ctx = full(catalog::entry(name).unwrap().unwrap().algebra);
            assert!(ctx.middle_term_check().unwrap(), "{name}");
        }
    }

    fn diagonal() -> DiracContext {
        let entry = catalog::sl2_sl2_diagonal().unwrap();
        DiracContext::new(&Arc::new(entry.algebra), entry.subalgebra.as_ref().unwrap()).unwrap()
    }

    #[test]
    fn relative_case() {
        let ctx = diagonal();
        assert!(ctx.fundamental_form().is_zero());
        let report = ctx.kostant_check();
        assert!(report.residual_is_scalar, "{report:?}");
        assert!(report.passed);
        assert_eq!(report.c, frac(3, 16));
        assert_eq!(ctx.h_invariance_check(), None);
        assert!(ctx.middle_term_check().is_err());
        let dec = ctx.decomposition_check().unwrap();
        assert!(dec.passed, "{dec:?}");
        assert_eq!(
            (dec.c_g.clone(), dec.c_h.clone()),
            (frac(1, 4), frac(1, 16))
        );
        let alt = ctx.alternate().unwrap();
        assert_eq!(alt.kostant_check().c, frac(3, 16));
        assert_eq!(alt.h_invariance_check(), None);
    }

    #[test]
    fn decomposition_with_zero_subalgebra() {
        let ctx = full(catalog::sl2(&rat(1)).unwrap());
        let dec = ctx.decomposition_check().unwrap();
        assert!(dec.passed, "{dec:?}");
        assert_eq!(dec.c_h, rat(0));
    }

    #[test]
    fn proof_chain_small() {
        for name in ["abelian3", "sl2-killing-half", "sl2xsl2-diagonal"] {
            let g = catalog::entry(name).unwrap().unwrap().algebra;
            for outcome in proof_chain_check(&g, 1).unwrap() {
                assert!(outcome.passed(), "{name}: {outcome:?}");
            }
        }
    }
}
