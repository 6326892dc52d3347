//! The pairing between the admissible basis and the Milnor basis.
//!
//! Generators pair as `<beta, tau_0> = 1` and `<P^k, xi_1^k> = 1`, all other
//! monomials pairing to zero with a single generator. A word pairs with a
//! Milnor monomial through the coproduct: the leading letter of the word is
//! paired with one tensor factor and the rest of the word with the other.
//! Values live in the closed coefficient ring, so the pairing is only
//! evaluated in the closed preset.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::coefficients::{BaseScalar, Bidegree, CoeffRing, Preset, Prime};
use crate::dual::{milnor_basis, milnor_basis_in_degree, monomial_coproduct, MilnorMonomial};
use crate::error::{AlgebraError, Result};
use crate::linalg::FpMatrix;
use crate::ops::{op_basis, OpElement, OpGenerator, OpMonomial};

type WordMemo = OnceLock<RwLock<HashMap<(CoeffRing, Vec<OpGenerator>), Arc<DualFunctional>>>>;

/// Which tensor factor of `Delta(x)` the leading letter of a word meets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotOrder {
    LeadingLeft,
    LeadingRight,
}

/// Slot convention used throughout. With it the Adem relations hold under
/// the pairing; the other order fails already for `Sq2 Sq2`.
pub const PAIRING_ORDER: SlotOrder = SlotOrder::LeadingLeft;

/// Whether a Koszul sign `(-1)^{|second op| |first factor|}` is applied when
/// splitting a word.
pub const PAIRING_KOSZUL_SIGN: bool = false;

/// The values of an operation on every Milnor monomial of its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualFunctional {
    ring: CoeffRing,
    degree: i32,
    values: BTreeMap<MilnorMonomial, BaseScalar>,
}

impl DualFunctional {
    pub fn zero(ring: CoeffRing, degree: i32) -> Self {
        DualFunctional {
            ring,
            degree,
            values: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn value(&self, m: &MilnorMonomial) -> BaseScalar {
        self.values
            .get(m)
            .cloned()
            .unwrap_or_else(|| BaseScalar::zero(self.ring))
    }

    /// Nonzero values.
    pub fn values(&self) -> impl Iterator<Item = (&MilnorMonomial, &BaseScalar)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    fn add_scaled(&mut self, other: &DualFunctional, c: &BaseScalar) {
        for (m, v) in &other.values {
            crate::ops::add_into(&mut self.values, *m, &(c * v));
        }
    }
}

impl fmt::Display for DualFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return f.write_str("0");
        }
        let prime = self.ring.prime();
        let mut v: Vec<_> = self.values.iter().collect();
        v.sort_by_key(|(m, _)| (m.bidegree(prime), *m));
        for (i, (m, c)) in v.into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "<{m}> = {c}")?;
        }
        Ok(())
    }
}

fn require_closed(ring: CoeffRing) -> Result<()> {
    match ring.preset() {
        Preset::Closed => Ok(()),
        Preset::Universal => Err(AlgebraError::UniversalPairing),
    }
}

fn generator_functional(ring: CoeffRing, g: OpGenerator) -> DualFunctional {
    let prime = ring.prime();
    let (degree, dual) = match g {
        OpGenerator::Bockstein => (1, MilnorMonomial::tau(0)),
        OpGenerator::Power(k) => (g.bidegree(prime).p, MilnorMonomial::xi(1, k)),
    };
    let mut f = DualFunctional::zero(ring, degree);
    f.values.insert(dual, BaseScalar::one(ring));
    f
}

/// `(f * g)(x) = sum f(x') g(x'')` over `Delta(x)`, with `f` the leading
/// factor placed in the slot given by [`PAIRING_ORDER`].
pub fn convolution_multiply(f: &DualFunctional, g: &DualFunctional) -> Result<DualFunctional> {
    f.ring.check(g.ring)?;
    require_closed(f.ring)?;
    let ring = f.ring;
    let prime = ring.prime();
    let degree = f.degree + g.degree;
    let mut out = DualFunctional::zero(ring, degree);
    if f.is_zero() || g.is_zero() {
        return Ok(out);
    }
    for m in milnor_basis_in_degree(degree, prime) {
        let delta = monomial_coproduct(ring, &m);
        let mut total = BaseScalar::zero(ring);
        for (slots, c) in delta.terms() {
            let (lead, rest) = match PAIRING_ORDER {
                SlotOrder::LeadingLeft => (&slots[0], &slots[1]),
                SlotOrder::LeadingRight => (&slots[1], &slots[0]),
            };
            if lead.bidegree(prime).p != f.degree {
                continue;
            }
            let a = f.value(lead);
            if a.is_zero() {
                continue;
            }
            let b = g.value(rest);
            if b.is_zero() {
                continue;
            }
            let mut term = &(c * &a) * &b;
            if PAIRING_KOSZUL_SIGN && (g.degree as u32 * slots[0].parity()) % 2 == 1 {
                term = -&term;
            }
            total += &term;
        }
        if !total.is_zero() {
            out.values.insert(m, total);
        }
    }
    Ok(out)
}

fn word_functional(ring: CoeffRing, word: &[OpGenerator]) -> Result<Arc<DualFunctional>> {
    static MEMO: WordMemo =
        OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(f) = memo.read().unwrap().get(&(ring, word.to_vec())) {
        return Ok(f.clone());
    }
    let f = match word {
        [] => {
            let mut f = DualFunctional::zero(ring, 0);
            f.values
                .insert(MilnorMonomial::one(), BaseScalar::one(ring));
            f
        }
        [g] => generator_functional(ring, *g),
        [g, rest @ ..] => convolution_multiply(
            &generator_functional(ring, *g),
            &*word_functional(ring, rest)?,
        )?,
    };
    let f = Arc::new(f);
    memo.write()
        .unwrap()
        .insert((ring, word.to_vec()), f.clone());
    Ok(f)
}

/// `<m, x>` for an operation monomial and a Milnor monomial.
pub fn pair(ring: CoeffRing, m: &OpMonomial, x: &MilnorMonomial) -> Result<BaseScalar> {
    require_closed(ring)?;
    let prime = ring.prime();
    if x.bidegree(prime).p != m.bidegree().p {
        return Ok(BaseScalar::zero(ring));
    }
    Ok(word_functional(ring, m.word())?.value(x))
}

/// The functional `x -> <u, x>` on Milnor monomials of degree `p`. Every
/// term of `u` must have degree `p`.
pub fn functional_of(u: &OpElement, p: i32) -> Result<DualFunctional> {
    let ring = u.ring();
    require_closed(ring)?;
    let mut out = DualFunctional::zero(ring, p);
    for (m, c) in u.terms() {
        assert_eq!(m.bidegree().p, p, "functional of an inhomogeneous element");
        out.add_scaled(&*word_functional(ring, m.word())?, c);
    }
    Ok(out)
}

/// The matrix `<a_i, x_j>` of admissible monomials against Milnor monomials
/// in bidegree `(p, q)`, both in sorted order.
pub fn pairing_matrix(p: i32, q: i32, prime: Prime) -> Result<FpMatrix> {
    let ring = CoeffRing::closed(prime);
    let ops = op_basis(p, q, prime);
    let duals = milnor_basis(p, q, prime);
    if ops.len() != duals.len() {
        return Err(AlgebraError::BasisSizeMismatch {
            bidegree: Bidegree::new(p, q),
            operations: ops.len(),
            duals: duals.len(),
        });
    }
    let mut matrix = FpMatrix::zero(prime, ops.len(), duals.len());
    for (i, a) in ops.iter().enumerate() {
        let f = word_functional(ring, a.word())?;
        for (j, x) in duals.iter().enumerate() {
            // equal weights, so the value is a constant
            matrix.set(i, j, f.value(x).constant_term());
        }
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::normalize;

    #[test]
    fn generators_pair_with_their_duals() {
        for prime in [Prime::TWO, Prime::THREE] {
            let ring = CoeffRing::closed(prime);
            let beta = OpMonomial::new(prime, [OpGenerator::Bockstein]).unwrap();
            assert!(pair(ring, &beta, &MilnorMonomial::tau(0)).unwrap().is_one());
            let p2 = OpMonomial::new(prime, [OpGenerator::Power(2)]).unwrap();
            assert!(pair(ring, &p2, &MilnorMonomial::xi(1, 2)).unwrap().is_one());
        }
    }

    #[test]
    fn universal_pairing_is_rejected() {
        let u = CoeffRing::universal();
        let beta = OpMonomial::new(Prime::TWO, [OpGenerator::Bockstein]).unwrap();
        assert_eq!(
            pair(u, &beta, &MilnorMonomial::tau(0)),
            Err(AlgebraError::UniversalPairing)
        );
    }

    #[test]
    fn sq2_sq2_and_its_normal_form_agree() {
        let ring = CoeffRing::closed(Prime::TWO);
        let word = OpElement::from_squares(ring, &[2, 2]);
        let normal = normalize(&word).unwrap();
        assert_eq!(
            functional_of(&word, 4).unwrap(),
            functional_of(&normal, 4).unwrap()
        );
        assert!(!functional_of(&word, 4).unwrap().is_zero());
    }

    #[test]
    fn small_matrices_are_invertible() {
        for prime in [Prime::TWO, Prime::THREE] {
            for p in 0..12 {
                for q in 0..=p {
                    let m = pairing_matrix(p, q, prime).unwrap();
                    assert_eq!(m.is_invertible(), Ok(true), "({p},{q}) at {prime}");
                }
            }
        }
    }
}
