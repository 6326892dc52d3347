//! Identities that the structures must satisfy, one instance at a time.
//! Each check returns `Ok(true)` when the identity holds.

use crate::classical::{
    classical_normalize, classical_normalize_squares, realize, ClassicalElement,
};
use crate::coefficients::{BaseScalar, CoeffRing};
use crate::dual::{
    antipode, coproduct, counit, eta_left, eta_right, monomial_coproduct, GammaElement,
    MilnorMonomial,
};
use crate::error::{AlgebraError, Result};
use crate::ops::{Normalizer, OpElement, OpMonomial};
use crate::pairing::{convolution_multiply, functional_of};

/// `(Delta (x) 1) Delta = (1 (x) Delta) Delta` on a monomial.
pub fn coassociative(ring: CoeffRing, m: &MilnorMonomial) -> Result<bool> {
    let delta = monomial_coproduct(ring, m);
    let split = |x: &MilnorMonomial| Ok::<_, AlgebraError>(monomial_coproduct(ring, x));
    let left = delta.apply_at(0, split)?;
    let right = delta.apply_at(1, split)?;
    Ok(left == right)
}

/// `(eps (x) 1) Delta = id = (1 (x) eps) Delta` on a monomial.
pub fn counital(ring: CoeffRing, m: &MilnorMonomial) -> bool {
    let delta = monomial_coproduct(ring, m);
    let x = GammaElement::from_monomial(ring, *m);
    delta.counit_at(0).to_gamma() == x && delta.counit_at(1).to_gamma() == x
}

/// `Delta(x y) = Delta(x) Delta(y)`.
pub fn coproduct_multiplicative(x: &GammaElement, y: &GammaElement) -> Result<bool> {
    let lhs = coproduct(&(x * y));
    let rhs = coproduct(x).multiply(&coproduct(y))?;
    Ok(lhs == rhs)
}

/// `mu (c (x) 1) Delta = eta_R eps` and `mu (1 (x) c) Delta = eta_L eps`.
pub fn antipode_laws(x: &GammaElement) -> bool {
    let ring = x.ring();
    let delta = coproduct(x);
    let mut left = GammaElement::zero(ring);
    let mut right = GammaElement::zero(ring);
    for (slots, c) in delta.terms() {
        let first = GammaElement::from_monomial(ring, slots[0]);
        let second = GammaElement::from_monomial(ring, slots[1]);
        let cs = GammaElement::scalar(c.clone());
        left = &left + &(&(&eta_right(c) * &antipode(&first)) * &second);
        right = &right + &(&(&cs * &first) * &antipode(&second));
    }
    let eps = counit(x);
    left == eta_right(&eps) && right == eta_left(&eps)
}

/// `c(eta_L(tau)) = eta_R(tau)`; vacuous without `tau`.
pub fn antipode_swaps_units(ring: CoeffRing) -> bool {
    if !ring.has_tau() {
        return true;
    }
    let tau = BaseScalar::tau(ring);
    antipode(&eta_left(&tau)) == eta_right(&tau)
}

/// Normalization of a two-letter word agrees with the classical algebra
/// after `rho -> 0`, `tau -> 1`.
pub fn matches_classical(normalizer: &Normalizer, ring: CoeffRing, m: &OpMonomial) -> Result<bool> {
    let got = normalizer.normalize(&OpElement::from_monomial(ring, m.clone()))?;
    let expected = classical_normalize(&ClassicalElement::from_monomial(m.clone()));
    Ok(got.is_admissible() && realize(&got) == expected)
}

/// `Sq^a Sq^b` normalized motivically and specialized, against the classical
/// square rewriting of the raw pair.
pub fn squares_match_classical(
    normalizer: &Normalizer,
    ring: CoeffRing,
    a: u32,
    b: u32,
) -> Result<bool> {
    let got = normalizer.normalize(&OpElement::from_squares(ring, &[a, b]))?;
    Ok(got.is_admissible() && realize(&got) == classical_normalize_squares(&[a, b]))
}

/// Termination, admissible output, idempotence and bidegree conservation
/// for the normalization of `x y`.
pub fn rewrite_healthy(normalizer: &Normalizer, x: &OpElement, y: &OpElement) -> Result<bool> {
    let product = normalizer.multiply(x, y)?;
    let again = normalizer.normalize(&product)?;
    let conserved = match (x.bidegree(), y.bidegree()) {
        (Some(bx), Some(by)) => product.is_homogeneous_of(bx + by),
        _ => true,
    };
    Ok(product.is_admissible() && again == product && conserved)
}

/// `(x y) z = x (y z)` after normalization.
pub fn associative(
    normalizer: &Normalizer,
    x: &OpElement,
    y: &OpElement,
    z: &OpElement,
) -> Result<bool> {
    let left = normalizer.multiply(&normalizer.multiply(x, y)?, z)?;
    let right = normalizer.multiply(x, &normalizer.multiply(y, z)?)?;
    Ok(left == right)
}

/// The functional of `normalize(u v)` is the convolution of those of `u`
/// and `v`.
pub fn pairing_compatible(
    normalizer: &Normalizer,
    ring: CoeffRing,
    u: &OpMonomial,
    v: &OpMonomial,
) -> Result<bool> {
    let (pu, pv) = (u.bidegree().p, v.bidegree().p);
    let eu = OpElement::from_monomial(ring, u.clone());
    let ev = OpElement::from_monomial(ring, v.clone());
    let product = normalizer.multiply(&eu, &ev)?;
    let lhs = functional_of(&product, pu + pv)?;
    let rhs = convolution_multiply(&functional_of(&eu, pu)?, &functional_of(&ev, pv)?)?;
    Ok(lhs == rhs)
}
