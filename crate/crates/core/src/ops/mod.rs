//! Words in the Bockstein and the reduced powers, the admissible basis, and
//! the Adem rewrite system.
//!
//! A word is stored left to right in composition order, so `[P^2, b, P^1]`
//! is `P^2 beta P^1` and acts with `P^1` first. At `l = 2` the squares are an
//! alias layer: `Sq^{2i} = P^i` and `Sq^{2i+1} = beta P^i`.

mod adem;
mod basis;
mod normalize;

use std::collections::BTreeMap;
use std::fmt;

use crate::coefficients::{BaseScalar, Bidegree, CoeffRing, Prime, ScalarMonomial};

pub use adem::adem_step;
pub use basis::{op_basis, op_basis_in_degree};
pub use normalize::{normalize, op_multiply, Normalizer, DEFAULT_FUEL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpGenerator {
    Bockstein,
    /// `P^i` with `i >= 1`.
    Power(u32),
}

impl OpGenerator {
    pub fn bidegree(self, prime: Prime) -> Bidegree {
        match self {
            OpGenerator::Bockstein => Bidegree::new(1, 0),
            OpGenerator::Power(i) => {
                let w = (i * (prime.value() - 1)) as i32;
                Bidegree::new(2 * w, w)
            }
        }
    }
}

/// A nonzero composite of generators: no adjacent Bocksteins and no `P^0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpMonomial {
    bidegree: Bidegree,
    word: Vec<OpGenerator>,
    prime: Prime,
}

/// Location of an adjacent pair of powers `beta^e' P^a beta^e P^b` inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct PairSite {
    /// Index of the first letter of the left run (the Bockstein if `e' = 1`).
    pub start: usize,
    /// One past the right power.
    pub end: usize,
    pub left_bockstein: bool,
    pub left: u32,
    pub middle_bockstein: bool,
    pub right: u32,
}

impl OpMonomial {
    /// Builds a monomial, dropping `P^0` factors. Returns `None` when the word
    /// contains `beta beta`, which is zero.
    pub fn new(prime: Prime, word: impl IntoIterator<Item = OpGenerator>) -> Option<Self> {
        let word: Vec<OpGenerator> = word
            .into_iter()
            .filter(|g| *g != OpGenerator::Power(0))
            .collect();
        if word
            .windows(2)
            .any(|w| w[0] == OpGenerator::Bockstein && w[1] == OpGenerator::Bockstein)
        {
            return None;
        }
        let bidegree = word
            .iter()
            .fold(Bidegree::ZERO, |acc, g| acc + g.bidegree(prime));
        Some(OpMonomial {
            bidegree,
            word,
            prime,
        })
    }

    pub fn identity(prime: Prime) -> Self {
        OpMonomial {
            bidegree: Bidegree::ZERO,
            word: Vec::new(),
            prime,
        }
    }

    /// Word for a sequence of squares `Sq^{a_1} ... Sq^{a_k}` at `l = 2`.
    /// `Sq^0` entries are identities.
    pub fn from_squares(squares: &[u32]) -> Option<Self> {
        OpMonomial::new(Prime::TWO, squares.iter().flat_map(|&a| square_word(a)))
    }

    pub fn word(&self) -> &[OpGenerator] {
        &self.word
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn bidegree(&self) -> Bidegree {
        self.bidegree
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Groups the word into squares at `l = 2`: `beta P^i -> 2i+1`,
    /// `P^i -> 2i`, a lone `beta -> 1`.
    pub fn squares(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut pending_bockstein = false;
        for g in &self.word {
            match *g {
                OpGenerator::Bockstein => {
                    if pending_bockstein {
                        out.push(1);
                    }
                    pending_bockstein = true;
                }
                OpGenerator::Power(i) => {
                    out.push(2 * i + pending_bockstein as u32);
                    pending_bockstein = false;
                }
            }
        }
        if pending_bockstein {
            out.push(1);
        }
        out
    }

    /// Composition `self` after `other`, or `None` if it is zero.
    pub fn compose(&self, other: &OpMonomial) -> Option<OpMonomial> {
        debug_assert_eq!(self.prime, other.prime);
        OpMonomial::new(
            self.prime,
            self.word.iter().chain(other.word.iter()).copied(),
        )
    }

    pub fn is_admissible(&self) -> bool {
        self.first_inadmissible_pair().is_none()
    }

    /// The leftmost pair `P^a beta^e P^b` with `a < l b + e`.
    pub(crate) fn first_inadmissible_pair(&self) -> Option<PairSite> {
        let l = self.prime.value();
        let powers: Vec<(usize, u32)> = self
            .word
            .iter()
            .enumerate()
            .filter_map(|(i, g)| match g {
                OpGenerator::Power(a) => Some((i, *a)),
                OpGenerator::Bockstein => None,
            })
            .collect();
        powers.windows(2).find_map(|w| {
            let ((i, a), (j, b)) = (w[0], w[1]);
            let middle = j == i + 2;
            if a >= l * b + middle as u32 {
                return None;
            }
            let left_bockstein = i > 0 && self.word[i - 1] == OpGenerator::Bockstein;
            Some(PairSite {
                start: i - left_bockstein as usize,
                end: j + 1,
                left_bockstein,
                left: a,
                middle_bockstein: middle,
                right: b,
            })
        })
    }
}

/// Bidegree of a monomial.
pub fn op_bidegree(m: &OpMonomial) -> Bidegree {
    m.bidegree()
}

/// Admissibility of a monomial: every adjacent pair of powers satisfies
/// `i_{j+1} >= l i_j + e_j`.
pub fn is_admissible(m: &OpMonomial) -> bool {
    m.is_admissible()
}

pub(crate) fn square_word(a: u32) -> Vec<OpGenerator> {
    match (a / 2, a % 2) {
        (0, 0) => vec![],
        (0, _) => vec![OpGenerator::Bockstein],
        (i, 0) => vec![OpGenerator::Power(i)],
        (i, _) => vec![OpGenerator::Bockstein, OpGenerator::Power(i)],
    }
}

impl fmt::Display for OpMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let letters: Vec<String> = if self.prime.is_two() {
            self.squares().iter().map(|a| format!("Sq{a}")).collect()
        } else {
            self.word
                .iter()
                .map(|g| match g {
                    OpGenerator::Bockstein => "b".to_string(),
                    OpGenerator::Power(i) => format!("P{i}"),
                })
                .collect()
        };
        f.write_str(&letters.join(" "))
    }
}

/// A finite left combination of monomials with coefficients in the base ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpElement {
    ring: CoeffRing,
    terms: BTreeMap<OpMonomial, BaseScalar>,
}

impl OpElement {
    pub fn zero(ring: CoeffRing) -> Self {
        OpElement {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: CoeffRing) -> Self {
        Self::from_monomial(ring, OpMonomial::identity(ring.prime()))
    }

    pub fn from_monomial(ring: CoeffRing, m: OpMonomial) -> Self {
        let mut out = Self::zero(ring);
        out.add_term(BaseScalar::one(ring), m);
        out
    }

    /// The element given by a single word; zero if the word contains `beta beta`.
    pub fn from_word(ring: CoeffRing, word: impl IntoIterator<Item = OpGenerator>) -> Self {
        match OpMonomial::new(ring.prime(), word) {
            Some(m) => Self::from_monomial(ring, m),
            None => Self::zero(ring),
        }
    }

    /// `Sq^{a_1} ... Sq^{a_k}`; requires `l = 2`.
    pub fn from_squares(ring: CoeffRing, squares: &[u32]) -> Self {
        assert!(ring.prime().is_two(), "squares only exist at l = 2");
        match OpMonomial::from_squares(squares) {
            Some(m) => Self::from_monomial(ring, m),
            None => Self::zero(ring),
        }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpMonomial, &BaseScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &OpMonomial) -> BaseScalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| BaseScalar::zero(self.ring))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, coeff: BaseScalar, m: OpMonomial) {
        debug_assert_eq!(coeff.ring(), self.ring);
        debug_assert_eq!(m.prime(), self.ring.prime());
        add_into(&mut self.terms, m, &coeff);
    }

    /// `coeff * self`, with the scalar acting from the left.
    pub fn scale_left(&self, coeff: &BaseScalar) -> Self {
        let mut out = Self::zero(self.ring);
        for (m, c) in &self.terms {
            out.add_term(coeff * c, m.clone());
        }
        out
    }

    pub fn is_admissible(&self) -> bool {
        self.terms.keys().all(OpMonomial::is_admissible)
    }

    /// Bidegree of the leading term, coefficient included; `None` for zero.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let (m, c) = self.terms.iter().next()?;
        Some(c.terms()[0].0.bidegree() + m.bidegree())
    }

    /// Every `(coefficient monomial, op monomial)` pair has this bidegree.
    pub fn is_homogeneous_of(&self, b: Bidegree) -> bool {
        self.terms.iter().all(|(m, c)| {
            c.terms()
                .iter()
                .all(|(s, _)| s.bidegree() + m.bidegree() == b)
        })
    }

    /// Terms ordered by (degree, weight, word), the order used for printing.
    pub fn sorted_terms(&self) -> Vec<(&OpMonomial, &BaseScalar)> {
        // The map order is already (bidegree, word).
        self.terms.iter().collect()
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, ring: CoeffRing, f: impl Fn(&BaseScalar) -> BaseScalar) -> Self {
        let mut out = Self::zero(ring);
        for (m, c) in &self.terms {
            out.add_term(f(c), m.clone());
        }
        out
    }
}

pub(crate) fn add_into<K: Ord>(map: &mut BTreeMap<K, BaseScalar>, key: K, coeff: &BaseScalar) {
    if coeff.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coeff.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl std::ops::Add for &OpElement {
    type Output = OpElement;
    fn add(self, rhs: &OpElement) -> OpElement {
        assert_eq!(self.ring, rhs.ring);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }
}

impl std::ops::Sub for &OpElement {
    type Output = OpElement;
    fn sub(self, rhs: &OpElement) -> OpElement {
        assert_eq!(self.ring, rhs.ring);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c, m.clone());
        }
        out
    }
}

/// Writes a term as `coefficient monomial`, parenthesising sums.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    coeff: &BaseScalar,
    monomial: &dyn fmt::Display,
    monomial_is_unit: bool,
) -> fmt::Result {
    let single = coeff.terms().len() == 1;
    if monomial_is_unit {
        return if single {
            write!(f, "{coeff}")
        } else {
            write!(f, "({coeff})")
        };
    }
    if coeff.is_one() {
        write!(f, "{monomial}")
    } else if single {
        write!(f, "{coeff} {monomial}")
    } else {
        write!(f, "({coeff}) {monomial}")
    }
}

impl fmt::Display for OpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write_term(f, c, m, m.is_identity())?;
        }
        Ok(())
    }
}

/// `rho^a tau^b` as a ring element.
pub(crate) fn scalar(ring: CoeffRing, rho: u32, tau: u32, coeff: u32) -> BaseScalar {
    BaseScalar::monomial(ring, ScalarMonomial::new(rho, tau), coeff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use OpGenerator::{Bockstein as B, Power as P};

    #[test]
    fn bidegrees_of_generators_and_words() {
        let m = OpMonomial::new(Prime::THREE, [P(2)]).unwrap();
        assert_eq!(m.bidegree(), Bidegree::new(8, 4));
        let b = OpMonomial::new(Prime::TWO, [B]).unwrap();
        assert_eq!(op_bidegree(&b), Bidegree::new(1, 0));
        let bpb = OpMonomial::new(Prime::TWO, [B, P(1), B]).unwrap();
        assert_eq!(bpb.bidegree(), Bidegree::new(4, 1));
    }

    #[test]
    fn adjacent_bocksteins_vanish() {
        assert!(OpMonomial::new(Prime::TWO, [B, B]).is_none());
        assert!(OpMonomial::new(Prime::THREE, [B, P(0), B]).is_none());
        assert!(OpElement::from_word(CoeffRing::closed(Prime::TWO), [P(1), B, B]).is_zero());
    }

    #[test]
    fn admissibility() {
        let sq = |s: &[u32]| OpMonomial::from_squares(s).unwrap();
        assert!(sq(&[2, 1]).is_admissible());
        assert!(!sq(&[2, 2]).is_admissible());
        assert!(sq(&[3, 1]).is_admissible());
        assert!(!sq(&[2, 3]).is_admissible());
        assert!(sq(&[4, 2, 1]).is_admissible());
        // The Bockstein between two powers raises the bound: P^3 b P^1 needs 3 >= 3*1 + 1.
        let p3bp1 = OpMonomial::new(Prime::THREE, [P(3), B, P(1)]).unwrap();
        assert!(!p3bp1.is_admissible());
        assert!(OpMonomial::new(Prime::THREE, [P(4), B, P(1)])
            .unwrap()
            .is_admissible());
        assert!(OpMonomial::new(Prime::THREE, [P(3), P(1)])
            .unwrap()
            .is_admissible());
        assert!(OpMonomial::new(Prime::THREE, [B, P(3), P(1), B])
            .unwrap()
            .is_admissible());
    }

    #[test]
    fn square_aliases_round_trip() {
        for s in [
            vec![1],
            vec![2],
            vec![3, 1],
            vec![5, 2],
            vec![8, 4, 2, 1],
            vec![2, 3, 3],
        ] {
            let m = OpMonomial::from_squares(&s).unwrap();
            assert_eq!(m.squares(), s);
        }
        assert!(OpMonomial::from_squares(&[1, 3]).is_none());
    }

    #[test]
    fn leftmost_pair_includes_the_leading_bockstein() {
        let m = OpMonomial::new(Prime::TWO, [P(4), B, P(1), B, P(1)]).unwrap();
        let site = m.first_inadmissible_pair().unwrap();
        assert_eq!((site.start, site.end), (1, 5));
        assert!(site.left_bockstein && site.middle_bockstein);
        assert_eq!((site.left, site.right), (1, 1));
    }

    #[test]
    fn printing() {
        let ring = CoeffRing::closed(Prime::TWO);
        let e = OpElement::from_squares(ring, &[3, 1]).scale_left(&BaseScalar::tau(ring));
        assert_eq!(e.to_string(), "t Sq3 Sq1");
        let r3 = CoeffRing::closed(Prime::THREE);
        let e = OpElement::from_word(r3, [B, P(2)]).scale_left(&BaseScalar::constant(r3, 2));
        assert_eq!(e.to_string(), "2 b P2");
        assert_eq!(OpElement::one(r3).to_string(), "1");
        assert_eq!(OpElement::zero(r3).to_string(), "0");
    }
}
