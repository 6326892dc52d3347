//! The motivic Adem relations, one inadmissible pair at a time.

use super::{scalar, square_word, OpElement, OpGenerator, OpMonomial};
use crate::coefficients::{binom_mod, CoeffRing, Prime};
use crate::error::{AlgebraError, Result};

/// Rewrites the product `left * right` of two runs `beta^e' P^a` and
/// `beta^e P^b` whose powers form an inadmissible pair.
///
/// At `l = 2` the pair is read as `Sq^{2a+e'} Sq^{2b+e}` and the parity case
/// of the motivic relation is applied directly, including the `tau` and `rho`
/// multiples. At odd `l` the leading Bockstein, if any, is carried along as a
/// left factor.
pub fn adem_step(
    ring: CoeffRing,
    left: &[OpGenerator],
    right: &[OpGenerator],
) -> Result<OpElement> {
    let describe = || {
        let w: Vec<OpGenerator> = left.iter().chain(right).copied().collect();
        OpMonomial::new(ring.prime(), w)
            .map(|m| m.to_string())
            .unwrap_or_else(|| format!("{left:?} {right:?}"))
    };
    let (Some((e_left, a)), Some((e_right, b))) = (split_run(left), split_run(right)) else {
        return Err(AlgebraError::NoMatchingRelation(describe()));
    };
    let l = ring.prime().value();
    if a >= l * b + e_right as u32 {
        return Err(AlgebraError::AlreadyAdmissible(describe()));
    }
    Ok(if ring.prime().is_two() {
        square_relation(ring, 2 * a + e_left as u32, 2 * b + e_right as u32)
    } else {
        odd_relation(ring, e_left, a, e_right, b)
    })
}

// beta^e P^a with a >= 1
fn split_run(run: &[OpGenerator]) -> Option<(bool, u32)> {
    match run {
        [OpGenerator::Power(a)] if *a > 0 => Some((false, *a)),
        [OpGenerator::Bockstein, OpGenerator::Power(a)] if *a > 0 => Some((true, *a)),
        _ => None,
    }
}

/// `Sq^a Sq^b` for `0 < a < 2b` in the motivic Steenrod algebra at `l = 2`.
pub(crate) fn square_relation(ring: CoeffRing, a: u32, b: u32) -> OpElement {
    debug_assert!(0 < a && a < 2 * b);
    let two = Prime::TWO;
    let (a64, b64) = (a as i64, b as i64);
    let mut out = OpElement::zero(ring);
    let mut push = |rho: u32, tau: u32, coeff: u32, hi: u32, lo: u32| {
        let c = scalar(ring, rho, tau, coeff);
        if c.is_zero() {
            return;
        }
        let word = square_word(hi).into_iter().chain(square_word(lo));
        if let Some(m) = OpMonomial::new(two, word) {
            out.add_term(c, m);
        }
    };
    for t in 0..=a / 2 {
        let t64 = t as i64;
        let c = binom_mod(b64 - t64 - 1, a64 - 2 * t64, two);
        let odd_t = t % 2 == 1;
        match (a % 2 == 1, b % 2 == 1) {
            (false, false) => push(0, t % 2, c, a + b - t, t),
            (false, true) => {
                push(0, 0, c, a + b - t, t);
                if odd_t {
                    push(1, 0, c, a + b - t - 1, t);
                }
            }
            (true, false) => {
                if odd_t {
                    let c = binom_mod(b64 - t64 - 1, a64 - 2 * t64 - 1, two);
                    push(1, 0, c, a + b - t - 1, t);
                } else {
                    push(0, 0, c, a + b - t, t);
                }
            }
            (true, true) => {
                if odd_t {
                    push(0, 0, c, a + b - t, t);
                }
            }
        }
    }
    out
}

const SECOND_SUM_SHIFT: i64 = 1;

/// `beta^{e'} P^a beta^e P^b` for `a < l b + e` at odd `l`.
fn odd_relation(ring: CoeffRing, lead: bool, a: u32, middle: bool, b: u32) -> OpElement {
    let prime = ring.prime();
    let l = prime.value() as i64;
    let (a, b) = (a as i64, b as i64);
    let mut out = OpElement::zero(ring);
    let mut push = |sign_exp: i64, binom: u32, word: Vec<OpGenerator>| {
        let coeff = prime.mul(prime.sign(sign_exp), binom);
        let full = lead
            .then_some(OpGenerator::Bockstein)
            .into_iter()
            .chain(word);
        if let Some(m) = OpMonomial::new(prime, full) {
            out.add_term(scalar(ring, 0, 0, coeff), m);
        }
    };
    let p = |i: i64| OpGenerator::Power(i as u32);
    let beta = OpGenerator::Bockstein;
    if !middle {
        for t in 0..=a / l {
            let c = binom_mod((l - 1) * (b - t) - 1, a - l * t, prime);
            push(a + t, c, vec![p(a + b - t), p(t)]);
        }
    } else {
        for t in 0..=a / l {
            let c = binom_mod((l - 1) * (b - t), a - l * t, prime);
            push(a + t, c, vec![beta, p(a + b - t), p(t)]);
        }
        for t in 0..=(a - 1) / l {
            let c = binom_mod((l - 1) * (b - t) - 1, a - l * t - SECOND_SUM_SHIFT, prime);
            push(a + t - 1, c, vec![p(a + b - t), beta, p(t)]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{BaseScalar, Preset};
    use OpGenerator::{Bockstein as B, Power as P};

    fn sq(ring: CoeffRing, s: &[u32]) -> OpElement {
        OpElement::from_squares(ring, s)
    }

    #[test]
    fn sq2_sq2_is_tau_sq3_sq1() {
        for ring in [CoeffRing::universal(), CoeffRing::closed(Prime::TWO)] {
            let got = adem_step(ring, &[P(1)], &[P(1)]).unwrap();
            let expected = sq(ring, &[3, 1]).scale_left(&BaseScalar::tau(ring));
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn p1_p1_at_three() {
        let ring = CoeffRing::closed(Prime::THREE);
        let got = adem_step(ring, &[P(1)], &[P(1)]).unwrap();
        let expected =
            OpElement::from_word(ring, [P(2)]).scale_left(&BaseScalar::constant(ring, 2));
        assert_eq!(got, expected);
    }

    #[test]
    fn p1_b1_at_three() {
        let ring = CoeffRing::closed(Prime::THREE);
        let got = adem_step(ring, &[P(1)], &[B, P(1)]).unwrap();
        let expected =
            &OpElement::from_word(ring, [B, P(2)]) + &OpElement::from_word(ring, [P(2), B]);
        assert_eq!(got, expected);
    }

    #[test]
    fn sq2_sq3_carries_a_rho_term() {
        let u = CoeffRing::universal();
        let got = adem_step(u, &[P(1)], &[B, P(1)]).unwrap();
        let rho_term = sq(u, &[3, 1]).scale_left(&BaseScalar::rho(u));
        let expected = &(&sq(u, &[5]) + &sq(u, &[4, 1])) + &rho_term;
        assert_eq!(got, expected);
        let closed = CoeffRing::new(Prime::TWO, Preset::Closed).unwrap();
        let got = adem_step(closed, &[P(1)], &[B, P(1)]).unwrap();
        assert_eq!(got, &sq(closed, &[5]) + &sq(closed, &[4, 1]));
    }

    #[test]
    fn odd_squares_follow_from_the_bockstein() {
        // Sq3 Sq2 = beta (Sq2 Sq2) = beta(tau) Sq3 Sq1 + tau beta Sq3 Sq1 = rho Sq3 Sq1
        let u = CoeffRing::universal();
        let got = adem_step(u, &[B, P(1)], &[P(1)]).unwrap();
        assert_eq!(got, sq(u, &[3, 1]).scale_left(&BaseScalar::rho(u)));
    }

    #[test]
    fn rejects_admissible_and_malformed_pairs() {
        let ring = CoeffRing::closed(Prime::TWO);
        assert!(matches!(
            adem_step(ring, &[P(2)], &[P(1)]),
            Err(AlgebraError::AlreadyAdmissible(_))
        ));
        assert!(matches!(
            adem_step(ring, &[B], &[P(1)]),
            Err(AlgebraError::NoMatchingRelation(_))
        ));
        assert!(matches!(
            adem_step(ring, &[P(1), B], &[P(1)]),
            Err(AlgebraError::NoMatchingRelation(_))
        ));
    }
}
