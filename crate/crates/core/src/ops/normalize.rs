use std::collections::BTreeMap;

use super::{add_into, adem_step, OpElement, OpGenerator, OpMonomial};
use crate::coefficients::{BaseScalar, CoeffRing, Preset};
use crate::error::{AlgebraError, Result};

/// Default bound on elementary Adem rewrites per normalization.
pub const DEFAULT_FUEL: u64 = 10_000_000;

/// Rewrites elements to the admissible basis.
///
/// Each term repeatedly has its leftmost inadmissible pair replaced by the
/// matching Adem relation; like terms are merged as they appear. Every
/// application of a relation consumes one unit of fuel.
#[derive(Clone, Copy, Debug)]
pub struct Normalizer {
    fuel: u64,
}

impl Default for Normalizer {
    fn default() -> Self {
        Normalizer { fuel: DEFAULT_FUEL }
    }
}

impl Normalizer {
    pub fn with_fuel(fuel: u64) -> Self {
        Normalizer { fuel }
    }

    pub fn fuel(&self) -> u64 {
        self.fuel
    }

    pub fn normalize(&self, e: &OpElement) -> Result<OpElement> {
        let ring = e.ring();
        let mut pending = e.terms.clone();
        let mut done = BTreeMap::new();
        let mut steps = 0u64;
        while let Some((m, c)) = pending.pop_first() {
            let Some(site) = m.first_inadmissible_pair() else {
                add_into(&mut done, m, &c);
                continue;
            };
            steps += 1;
            if steps > self.fuel {
                return Err(AlgebraError::FuelExhausted { fuel: self.fuel });
            }
            let word = m.word();
            let mid = site.end - 1 - site.middle_bockstein as usize;
            let rhs = adem_step(ring, &word[site.start..mid], &word[mid..site.end])?;
            let (prefix, suffix) = (&word[..site.start], &word[site.end..]);
            for (rm, rc) in rhs.terms() {
                for (s, moved) in commute_scalar_left(ring, prefix, rc)? {
                    let full = moved.iter().chain(rm.word()).chain(suffix).copied();
                    if let Some(nm) = OpMonomial::new(ring.prime(), full) {
                        add_into(&mut pending, nm, &(&c * &s));
                    }
                }
            }
        }
        Ok(OpElement { ring, terms: done })
    }

    /// `x * y`, normalized.
    pub fn multiply(&self, x: &OpElement, y: &OpElement) -> Result<OpElement> {
        x.ring().check(y.ring())?;
        let ring = x.ring();
        let mut raw = OpElement::zero(ring);
        for (mx, cx) in x.terms() {
            for (my, cy) in y.terms() {
                for (s, moved) in commute_scalar_left(ring, mx.word(), cy)? {
                    let full = moved.iter().chain(my.word()).copied();
                    if let Some(m) = OpMonomial::new(ring.prime(), full) {
                        raw.add_term(cx * &s, m);
                    }
                }
            }
        }
        self.normalize(&raw)
    }
}

/// Normalizes with the default fuel.
pub fn normalize(e: &OpElement) -> Result<OpElement> {
    Normalizer::default().normalize(e)
}

/// Product of two elements, normalized with the default fuel.
pub fn op_multiply(x: &OpElement, y: &OpElement) -> Result<OpElement> {
    Normalizer::default().multiply(x, y)
}

/// Rewrites `prefix * scalar` as a sum of `scalar' * prefix'`.
///
/// In the closed preset scalars are central. In the universal preset the
/// Bockstein passes a scalar by the derivation rule
/// `beta a = beta(a) + a beta`, constants pass everything, and any other
/// scalar stuck behind a power is unsupported.
pub(crate) fn commute_scalar_left(
    ring: CoeffRing,
    prefix: &[OpGenerator],
    scalar: &BaseScalar,
) -> Result<Vec<(BaseScalar, Vec<OpGenerator>)>> {
    if ring.preset() == Preset::Closed || scalar.is_constant() {
        return Ok(vec![(scalar.clone(), prefix.to_vec())]);
    }
    // Tails are built right to left and reversed at the end.
    let mut states: Vec<(BaseScalar, Vec<OpGenerator>)> = vec![(scalar.clone(), Vec::new())];
    for (pos, g) in prefix.iter().enumerate().rev() {
        let mut next = Vec::with_capacity(states.len() * 2);
        for (s, tail) in states {
            match g {
                OpGenerator::Bockstein => {
                    let derived = s.bockstein();
                    if !derived.is_zero() {
                        next.push((derived, tail.clone()));
                    }
                    let mut with_beta = tail;
                    with_beta.push(*g);
                    next.push((s, with_beta));
                }
                OpGenerator::Power(_) if s.is_constant() => {
                    let mut with_power = tail;
                    with_power.push(*g);
                    next.push((s, with_power));
                }
                OpGenerator::Power(_) => {
                    let shown = OpMonomial::new(ring.prime(), prefix[..=pos].iter().copied())
                        .map(|m| m.to_string())
                        .unwrap_or_default();
                    return Err(AlgebraError::UnsupportedScalarCommutation {
                        scalar: s.to_string(),
                        operation: shown,
                    });
                }
            }
        }
        states = next;
    }
    Ok(states
        .into_iter()
        .map(|(s, mut tail)| {
            tail.reverse();
            (s, tail)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Prime;
    use OpGenerator::{Bockstein as B, Power as P};

    fn sq(ring: CoeffRing, s: &[u32]) -> OpElement {
        OpElement::from_squares(ring, s)
    }

    #[test]
    fn small_products_at_two() {
        for ring in [CoeffRing::closed(Prime::TWO), CoeffRing::universal()] {
            assert!(normalize(&sq(ring, &[1, 1])).unwrap().is_zero());
            assert_eq!(
                normalize(&sq(ring, &[2, 2])).unwrap(),
                sq(ring, &[3, 1]).scale_left(&BaseScalar::tau(ring))
            );
            assert_eq!(normalize(&sq(ring, &[3])).unwrap(), sq(ring, &[3]));
            assert_eq!(
                op_multiply(&sq(ring, &[1]), &sq(ring, &[2])).unwrap(),
                sq(ring, &[3])
            );
        }
        let u = CoeffRing::universal();
        let expected =
            &(&sq(u, &[5]) + &sq(u, &[4, 1])) + &sq(u, &[3, 1]).scale_left(&BaseScalar::rho(u));
        assert_eq!(op_multiply(&sq(u, &[2]), &sq(u, &[3])).unwrap(), expected);
    }

    #[test]
    fn bockstein_squares_to_zero() {
        for p in [Prime::TWO, Prime::THREE, Prime::FIVE] {
            let ring = CoeffRing::closed(p);
            let b = OpElement::from_word(ring, [B]);
            assert!(op_multiply(&b, &b).unwrap().is_zero());
        }
    }

    #[test]
    fn bockstein_passes_tau_as_a_derivation() {
        let u = CoeffRing::universal();
        let b = sq(u, &[1]);
        let tau_sq2 = sq(u, &[2]).scale_left(&BaseScalar::tau(u));
        // beta (tau Sq2) = rho Sq2 + tau Sq3
        let expected = &sq(u, &[2]).scale_left(&BaseScalar::rho(u))
            + &sq(u, &[3]).scale_left(&BaseScalar::tau(u));
        assert_eq!(op_multiply(&b, &tau_sq2).unwrap(), expected);
    }

    #[test]
    fn scalars_behind_powers_are_unsupported_in_the_universal_preset() {
        let u = CoeffRing::universal();
        let tau_one = OpElement::one(u).scale_left(&BaseScalar::tau(u));
        assert!(matches!(
            op_multiply(&sq(u, &[2]), &tau_one),
            Err(AlgebraError::UnsupportedScalarCommutation { .. })
        ));
        // Sq4 (Sq2 Sq2) needs tau to pass Sq4.
        assert!(matches!(
            normalize(&sq(u, &[4, 2, 2])),
            Err(AlgebraError::UnsupportedScalarCommutation { .. })
        ));
        // Closed preset: tau is central.
        let c = CoeffRing::closed(Prime::TWO);
        let got = normalize(&sq(c, &[4, 2, 2])).unwrap();
        assert!(got.is_admissible());
    }

    #[test]
    fn fuel_bounds_the_rewriting() {
        let ring = CoeffRing::closed(Prime::TWO);
        let e = sq(ring, &[2, 2, 2, 2]);
        assert_eq!(
            Normalizer::with_fuel(1).normalize(&e),
            Err(AlgebraError::FuelExhausted { fuel: 1 })
        );
        assert!(Normalizer::with_fuel(1000).normalize(&e).is_ok());
    }

    #[test]
    fn odd_prime_products() {
        let r3 = CoeffRing::closed(Prime::THREE);
        let p1 = OpElement::from_word(r3, [P(1)]);
        let got = op_multiply(&p1, &p1).unwrap();
        assert_eq!(
            got,
            OpElement::from_word(r3, [P(2)]).scale_left(&BaseScalar::constant(r3, 2))
        );
        let b1 = OpElement::from_word(r3, [B, P(1)]);
        let got = op_multiply(&p1, &b1).unwrap();
        assert_eq!(
            got,
            &OpElement::from_word(r3, [B, P(2)]) + &OpElement::from_word(r3, [P(2), B])
        );
    }
}
