//! Formal group laws and ring products from a generator series.
//!
//! `construct_group_law` realizes `Φ(s₁,s₂) = G(G⁻¹(s₁)+G⁻¹(s₂))` and
//! `construct_ring_product` realizes `Ψ(s₁,s₂) = G(G⁻¹(s₁)·G⁻¹(s₂))` in the
//! truncated bivariate ring. The verifiers check the defining identities
//! coefficient by coefficient in the trivariate ring, so a pass is exact at
//! the chosen truncation order and a failure names the axiom plus the first
//! offending coefficient.

use num_traits::{One, Zero};

use super::multivar::MultivarPoly;
use super::{Rat, TruncatedSeries};
use crate::{Error, Result};

/// One verified identity: which axiom, whether it held, and if not, the
/// lexicographically first coefficient of `lhs − rhs` that is nonzero.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    pub first_failure: Option<CoeffMismatch>,
}

#[derive(Clone, Debug)]
pub struct CoeffMismatch {
    pub exponents: Vec<u16>,
    pub difference: Rat,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_axioms(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.axiom).collect()
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

fn check_from_diff(axiom: &'static str, diff: &MultivarPoly, vars: usize) -> AxiomCheck {
    let first_failure = diff.first_term().map(|(e, c)| CoeffMismatch {
        exponents: e[..vars].to_vec(),
        difference: c,
    });
    AxiomCheck { axiom, passed: first_failure.is_none(), first_failure }
}

fn series_at_var(s: &TruncatedSeries, vars: usize, idx: usize) -> MultivarPoly {
    MultivarPoly::from_univariate(s, vars, idx)
}

fn require_invertible(g: &TruncatedSeries) -> Result<()> {
    if !g.coeff(0).is_zero() {
        return Err(Error::NonInvertibleSeries(format!(
            "generator has nonzero constant term {}",
            g.coeff(0)
        )));
    }
    if g.coeff(1).is_zero() {
        return Err(Error::NonInvertibleSeries(
            "generator has zero linear coefficient".into(),
        ));
    }
    Ok(())
}

/// `Φ(s₁,s₂) = G(G⁻¹(s₁)+G⁻¹(s₂))`, truncated at the order of `G`.
pub fn construct_group_law(g: &TruncatedSeries) -> Result<MultivarPoly> {
    require_invertible(g)?;
    let ginv = g.compositional_inverse()?;
    let ax = series_at_var(&ginv, 2, 0);
    let by = series_at_var(&ginv, 2, 1);
    MultivarPoly::apply_series(g, &ax.add(&by)?)
}

/// `Ψ(s₁,s₂) = G(G⁻¹(s₁)·G⁻¹(s₂))`, truncated at the order of `G`.
pub fn construct_ring_product(g: &TruncatedSeries) -> Result<MultivarPoly> {
    require_invertible(g)?;
    let ginv = g.compositional_inverse()?;
    let ax = series_at_var(&ginv, 2, 0);
    let by = series_at_var(&ginv, 2, 1);
    MultivarPoly::apply_series(g, &ax.mul(&by)?)
}

/// Check symmetry `Φ(x,y)=Φ(y,x)`, null-composability `Φ(x,0)=x`, and
/// associativity `Φ(Φ(x,y),z)=Φ(x,Φ(y,z))` as exact truncated identities.
pub fn verify_group_axioms(phi: &MultivarPoly) -> Result<AxiomReport> {
    if phi.vars() != 2 {
        return Err(Error::VariableCountMismatch { expected: 2, found: phi.vars() });
    }
    let order = phi.order();
    let mut checks = Vec::with_capacity(3);

    let sym_diff = phi.sub(&phi.swap_vars(0, 1))?;
    checks.push(check_from_diff("symmetry", &sym_diff, 2));

    let x = MultivarPoly::var(2, order, 0);
    let null_diff = phi.set_var_zero(1).sub(&x)?;
    checks.push(check_from_diff("null-composability", &null_diff, 2));

    let z3 = MultivarPoly::var(3, order, 2);
    let x3 = MultivarPoly::var(3, order, 0);
    let phi_xy = phi.embed3([0, 1])?;
    let phi_yz = phi.embed3([1, 2])?;
    let lhs = phi.compose_bivariate(&phi_xy, &z3)?;
    let rhs = phi.compose_bivariate(&x3, &phi_yz)?;
    checks.push(check_from_diff("associativity", &lhs.sub(&rhs)?, 3));

    Ok(AxiomReport { checks })
}

/// Check the ring identities for the pair `(Φ, Ψ)`: commutativity and
/// associativity of `Ψ` plus both distributivity laws over `Φ`.
pub fn verify_ring_axioms(phi: &MultivarPoly, psi: &MultivarPoly) -> Result<AxiomReport> {
    if phi.vars() != 2 {
        return Err(Error::VariableCountMismatch { expected: 2, found: phi.vars() });
    }
    if psi.vars() != 2 {
        return Err(Error::VariableCountMismatch { expected: 2, found: psi.vars() });
    }
    if phi.order() != psi.order() {
        return Err(Error::OrderMismatch(phi.order(), psi.order()));
    }
    let order = phi.order();
    let mut checks = Vec::with_capacity(4);

    let sym_diff = psi.sub(&psi.swap_vars(0, 1))?;
    checks.push(check_from_diff("psi-commutativity", &sym_diff, 2));

    let x3 = MultivarPoly::var(3, order, 0);
    let z3 = MultivarPoly::var(3, order, 2);
    let psi_xy = psi.embed3([0, 1])?;
    let psi_xz = psi.embed3([0, 2])?;
    let psi_yz = psi.embed3([1, 2])?;
    let phi_xy = phi.embed3([0, 1])?;
    let phi_yz = phi.embed3([1, 2])?;

    let assoc_lhs = psi.compose_bivariate(&psi_xy, &z3)?;
    let assoc_rhs = psi.compose_bivariate(&x3, &psi_yz)?;
    checks.push(check_from_diff("psi-associativity", &assoc_lhs.sub(&assoc_rhs)?, 3));

    let left_lhs = psi.compose_bivariate(&x3, &phi_yz)?;
    let left_rhs = phi.compose_bivariate(&psi_xy, &psi_xz)?;
    checks.push(check_from_diff("left-distributivity", &left_lhs.sub(&left_rhs)?, 3));

    let right_lhs = psi.compose_bivariate(&phi_xy, &z3)?;
    let right_rhs = phi.compose_bivariate(&psi_xz, &psi_yz)?;
    checks.push(check_from_diff("right-distributivity", &right_lhs.sub(&right_rhs)?, 3));

    Ok(AxiomReport { checks })
}

/// Closed-form deformed product `Ψ(x,y) = (exp((1/σ)ln(1+σx)ln(1+σy)) − 1)/σ`
/// expanded exactly; the independent route to the ring product generated by
/// `(e^{σt}−1)/σ`.
pub fn tsallis_product_poly(sigma: &Rat, order: u32) -> Result<MultivarPoly> {
    let log = TruncatedSeries::log_sigma(sigma, order)?; // ln(1+σs)/σ
    let lx = series_at_var(&log, 2, 0);
    let ly = series_at_var(&log, 2, 1);
    // (1/σ)·ln(1+σx)·ln(1+σy) = σ·logσ(x)·logσ(y)
    let p = lx.mul(&ly)?.scale(sigma);
    let exp_minus_one = TruncatedSeries::exp_sigma(&Rat::one(), order)?;
    Ok(MultivarPoly::apply_series(&exp_minus_one, &p)?.scale(&sigma.recip()))
}

/// Exact expansion of the rational law `(x+y+axy)/(1+bxy)` via the
/// geometric series of the denominator.
pub fn rational_law_poly(a: &Rat, b: &Rat, order: u32) -> Result<MultivarPoly> {
    let x = MultivarPoly::var(2, order, 0);
    let y = MultivarPoly::var(2, order, 1);
    let xy = x.mul(&y)?;
    let num = x.add(&y)?.add(&xy.scale(a))?;
    let den = MultivarPoly::constant(2, order, Rat::one()).add(&xy.scale(b))?;
    num.mul(&den.reciprocal()?)
}

/// One-parameter reduction `(x+y+(α−1)xy)/(1+αxy)`; α = −1, 0, 1 give the
/// Euler-characteristic, Todd-genus and L-genus laws respectively.
pub fn philaw_reduction_poly(alpha: &Rat, order: u32) -> Result<MultivarPoly> {
    rational_law_poly(&(alpha - Rat::one()), alpha, order)
}

/// Normalized generator series `ψ(t) = t + O(t²)` of the rational law,
/// computed from the invariant differential: `ψ⁻¹(s) = ∫₀ˢ dt/(1+at−bt²)`,
/// then inverted compositionally. `construct_group_law(ψ)` reproduces
/// [`rational_law_poly`] exactly.
pub fn rational_law_generator(a: &Rat, b: &Rat, order: u32) -> Result<TruncatedSeries> {
    // ∂Φ/∂y at y = 0 is 1 + at − bt².
    let den = TruncatedSeries::from_coeffs(vec![Rat::one(), a.clone(), -b.clone()], order);
    let psi_inv = den.reciprocal()?.integrate();
    psi_inv.compositional_inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn additive(order: u32) -> MultivarPoly {
        MultivarPoly::var(2, order, 0)
            .add(&MultivarPoly::var(2, order, 1))
            .unwrap()
    }

    fn multiplicative(sigma: Rat, order: u32) -> MultivarPoly {
        let x = MultivarPoly::var(2, order, 0);
        let y = MultivarPoly::var(2, order, 1);
        additive(order).add(&x.mul(&y).unwrap().scale(&sigma)).unwrap()
    }

    #[test]
    fn identity_generator_gives_additive_law() {
        let g = TruncatedSeries::identity(8);
        assert_eq!(construct_group_law(&g).unwrap(), additive(8));
        // Ψ from the identity generator is the plain product.
        let x = MultivarPoly::var(2, 8, 0);
        let y = MultivarPoly::var(2, 8, 1);
        assert_eq!(construct_ring_product(&g).unwrap(), x.mul(&y).unwrap());
    }

    #[test]
    fn exp_generator_gives_multiplicative_law_exactly() {
        let g = TruncatedSeries::exp_sigma(&rat(1, 1), 8).unwrap();
        let phi = construct_group_law(&g).unwrap();
        // All coefficients of total degree ≥ 3 must cancel exactly.
        assert_eq!(phi, multiplicative(rat(1, 1), 8));
    }

    #[test]
    fn ring_product_annihilates_zero() {
        let g = TruncatedSeries::exp_sigma(&rat(2, 3), 8).unwrap();
        let psi = construct_ring_product(&g).unwrap();
        assert!(psi.set_var_zero(1).is_zero());
        assert!(psi.set_var_zero(0).is_zero());
    }

    #[test]
    fn tsallis_ring_product_matches_closed_form() {
        for sigma in [rat(1, 1), rat(2, 1), rat(-1, 2)] {
            let g = TruncatedSeries::exp_sigma(&sigma, 8).unwrap();
            let psi = construct_ring_product(&g).unwrap();
            assert_eq!(psi, tsallis_product_poly(&sigma, 8).unwrap());
        }
    }

    #[test]
    fn group_axioms_pass_for_multiplicative_law() {
        let phi = multiplicative(rat(2, 1), 8);
        let report = verify_group_axioms(&phi).unwrap();
        assert!(report.all_passed(), "{:?}", report.failed_axioms());

        // Independent expansion of both association orders:
        // x + y + z + 2(xy+xz+yz) + 4xyz.
        let x = MultivarPoly::var(3, 8, 0);
        let y = MultivarPoly::var(3, 8, 1);
        let z = MultivarPoly::var(3, 8, 2);
        let pairs = x
            .mul(&y)
            .unwrap()
            .add(&x.mul(&z).unwrap())
            .unwrap()
            .add(&y.mul(&z).unwrap())
            .unwrap();
        let expected = x
            .add(&y)
            .unwrap()
            .add(&z)
            .unwrap()
            .add(&pairs.scale(&rat(2, 1)))
            .unwrap()
            .add(&x.mul(&y).unwrap().mul(&z).unwrap().scale(&rat(4, 1)))
            .unwrap();
        let lhs = phi
            .compose_bivariate(&phi.embed3([0, 1]).unwrap(), &z)
            .unwrap();
        assert_eq!(lhs, expected);
    }

    #[test]
    fn discarded_law_fails_symmetry_and_associativity() {
        // Φ = x + y + x²y
        let x = MultivarPoly::var(2, 8, 0);
        let y = MultivarPoly::var(2, 8, 1);
        let phi = additive(8)
            .add(&x.mul(&x).unwrap().mul(&y).unwrap())
            .unwrap();
        let report = verify_group_axioms(&phi).unwrap();
        assert!(!report.check("symmetry").unwrap().passed);
        assert!(!report.check("associativity").unwrap().passed);
        assert!(report.check("null-composability").unwrap().passed);
        let fail = report.check("symmetry").unwrap().first_failure.as_ref().unwrap();
        assert_eq!(fail.exponents, vec![1, 2]);
    }

    #[test]
    fn plain_product_fails_null_composability() {
        let x = MultivarPoly::var(2, 8, 0);
        let y = MultivarPoly::var(2, 8, 1);
        let report = verify_group_axioms(&x.mul(&y).unwrap()).unwrap();
        assert_eq!(report.failed_axioms(), vec!["null-composability"]);
    }

    #[test]
    fn ordinary_ring_passes() {
        let x = MultivarPoly::var(2, 8, 0);
        let y = MultivarPoly::var(2, 8, 1);
        let report = verify_ring_axioms(&additive(8), &x.mul(&y).unwrap()).unwrap();
        assert!(report.all_passed());
    }

    #[test]
    fn tsallis_pair_satisfies_ring_axioms() {
        let g = TruncatedSeries::exp_sigma(&rat(1, 1), 8).unwrap();
        let phi = construct_group_law(&g).unwrap();
        let psi = construct_ring_product(&g).unwrap();
        let report = verify_ring_axioms(&phi, &psi).unwrap();
        assert!(report.all_passed(), "{:?}", report.failed_axioms());
    }

    #[test]
    fn sum_as_product_fails_distributivity() {
        let phi = additive(6);
        let report = verify_ring_axioms(&phi, &phi).unwrap();
        assert!(!report.check("left-distributivity").unwrap().passed);
        assert!(!report.check("right-distributivity").unwrap().passed);
    }

    #[test]
    fn rational_law_expansion_and_generator_agree() {
        let (a, b) = (rat(1, 1), rat(1, 1));
        let direct = rational_law_poly(&a, &b, 8).unwrap();
        let psi = rational_law_generator(&a, &b, 8).unwrap();
        assert_eq!(psi.coeff(0), &rat(0, 1));
        assert_eq!(psi.coeff(1), &rat(1, 1));
        let via_generator = construct_group_law(&psi).unwrap();
        assert_eq!(via_generator, direct);
    }

    #[test]
    fn rational_law_reduces_to_multiplicative_at_b_zero() {
        let phi = rational_law_poly(&rat(3, 2), &rat(0, 1), 8).unwrap();
        assert_eq!(phi, multiplicative(rat(3, 2), 8));
    }

    #[test]
    fn genus_reductions_pass_group_axioms() {
        for alpha in [rat(-1, 1), rat(0, 1), rat(1, 1)] {
            let phi = philaw_reduction_poly(&alpha, 8).unwrap();
            let report = verify_group_axioms(&phi).unwrap();
            assert!(report.all_passed(), "α = {alpha}: {:?}", report.failed_axioms());
        }
    }
}
