use motivic_steenrod::checks::{associative, rewrite_healthy};
use motivic_steenrod::*;
use proptest::prelude::*;

fn prime_strategy() -> impl Strategy<Value = Prime> {
    prop_oneof![Just(Prime::TWO), Just(Prime::THREE), Just(Prime::FIVE)]
}

/// A random admissible monomial of degree at most `max`.
fn admissible(prime: Prime, max: i32) -> impl Strategy<Value = OpMonomial> {
    (0..=max, any::<prop::sample::Index>()).prop_filter_map("empty degree", move |(p, i)| {
        let basis = op_basis_in_degree(p, prime);
        (!basis.is_empty()).then(|| basis[i.index(basis.len())].clone())
    })
}

fn scalar(ring: CoeffRing) -> impl Strategy<Value = BaseScalar> {
    let l = ring.prime().value();
    proptest::collection::vec((0u32..3, 0u32..3, 1..l), 0..4).prop_map(move |terms| {
        BaseScalar::from_terms(
            ring,
            terms
                .into_iter()
                .map(|(r, t, c)| (ScalarMonomial::new(r, t), c))
                .filter(|(m, _)| ring.admits(*m)),
        )
    })
}

proptest! {
    #[test]
    fn products_are_healthy((prime, x, y) in prime_strategy().prop_flat_map(|p| (Just(p), admissible(p, 30), admissible(p, 30)))) {
        let ring = CoeffRing::closed(prime);
        let n = Normalizer::default();
        let ex = OpElement::from_monomial(ring, x);
        let ey = OpElement::from_monomial(ring, y);
        prop_assert!(rewrite_healthy(&n, &ex, &ey).unwrap());
    }

    #[test]
    fn products_are_associative((prime, x, y, z) in prime_strategy().prop_flat_map(|p| (Just(p), admissible(p, 10), admissible(p, 10), admissible(p, 10)))) {
        let ring = CoeffRing::closed(prime);
        let n = Normalizer::default();
        let [ex, ey, ez] = [x, y, z].map(|m| OpElement::from_monomial(ring, m));
        prop_assert!(associative(&n, &ex, &ey, &ez).unwrap());
    }

    #[test]
    fn specialization_is_a_ring_map(x in scalar(CoeffRing::universal()), y in scalar(CoeffRing::universal()), r in 0u32..2, t in 0u32..2) {
        let l = Prime::TWO;
        prop_assert_eq!((&x * &y).specialize(r, t), l.mul(x.specialize(r, t), y.specialize(r, t)));
        prop_assert_eq!((&x + &y).specialize(r, t), l.add(x.specialize(r, t), y.specialize(r, t)));
    }

    #[test]
    fn bockstein_is_a_derivation(x in scalar(CoeffRing::universal()), y in scalar(CoeffRing::universal())) {
        let lhs = (&x * &y).bockstein();
        let rhs = &(&x.bockstein() * &y) + &(&x * &y.bockstein());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalization_commutes_with_specialization(x in admissible(Prime::TWO, 20), y in admissible(Prime::TWO, 20)) {
        let ring = CoeffRing::closed(Prime::TWO);
        let product = op_multiply(&OpElement::from_monomial(ring, x.clone()), &OpElement::from_monomial(ring, y.clone())).unwrap();
        let classical = classical_multiply(&ClassicalElement::from_monomial(x), &ClassicalElement::from_monomial(y));
        prop_assert_eq!(realize(&product), classical);
    }

    #[test]
    fn eta_right_is_multiplicative(x in scalar(CoeffRing::universal()), y in scalar(CoeffRing::universal())) {
        prop_assert_eq!(eta_right(&(&x * &y)), &eta_right(&x) * &eta_right(&y));
    }
}
