//! Hopf algebroid axioms on Milnor monomials.

use motivic_steenrod::checks::*;
use motivic_steenrod::*;

fn rings() -> [CoeffRing; 3] {
    [
        CoeffRing::universal(),
        CoeffRing::closed(Prime::TWO),
        CoeffRing::closed(Prime::THREE),
    ]
}

fn monomials(prime: Prime, max_degree: i32) -> Vec<MilnorMonomial> {
    (0..=max_degree)
        .flat_map(|p| milnor_basis_in_degree(p, prime))
        .collect()
}

#[test]
fn coassociativity_and_counit() {
    for ring in rings() {
        for m in monomials(ring.prime(), 24) {
            assert!(coassociative(ring, &m).unwrap(), "{m} over {ring}");
            assert!(counital(ring, &m), "{m} over {ring}");
        }
    }
}

#[test]
fn coproduct_is_multiplicative() {
    for ring in rings() {
        let ms = monomials(ring.prime(), 10);
        for x in &ms {
            for y in &ms {
                let gx = GammaElement::from_monomial(ring, *x);
                let gy = GammaElement::from_monomial(ring, *y);
                assert!(
                    coproduct_multiplicative(&gx, &gy).unwrap(),
                    "{x} * {y} over {ring}"
                );
            }
        }
    }
}

#[test]
fn antipode_axioms() {
    for ring in rings() {
        assert!(antipode_swaps_units(ring));
        for m in monomials(ring.prime(), 24) {
            assert!(
                antipode_laws(&GammaElement::from_monomial(ring, m)),
                "{m} over {ring}"
            );
        }
        if ring.has_tau() {
            let t = GammaElement::scalar(BaseScalar::tau(ring));
            assert!(antipode_laws(&t));
        }
    }
}

#[test]
fn antipode_is_an_involution() {
    for ring in rings() {
        for m in monomials(ring.prime(), 20) {
            let x = GammaElement::from_monomial(ring, m);
            assert_eq!(antipode(&antipode(&x)), x, "{m} over {ring}");
        }
    }
}

#[test]
fn eta_right_commutes_with_coproduct() {
    // Delta(eta_R(a)) = 1 (x) eta_R(a)
    let u = CoeffRing::universal();
    let t = BaseScalar::tau(u);
    let lhs = coproduct(&eta_right(&t));
    let rhs = tensor_normalize(&[GammaElement::one(u), eta_right(&t)]).unwrap();
    assert_eq!(lhs, rhs);
}
