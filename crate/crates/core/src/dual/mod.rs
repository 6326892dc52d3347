//! The dual Steenrod algebra as a Hopf algebroid over the coefficient ring.
//!
//! `Gamma` is the coefficient ring adjoined with `tau_0, tau_1, ...` and
//! `xi_1, xi_2, ...` modulo
//! `tau_i^2 = tau xi_{i+1} + rho tau_{i+1} + rho tau_0 xi_{i+1}`.
//! Elements are kept reduced: every `tau_i` exponent is 0 or 1.
//!
//! Signs follow the Koszul rule on the first degree: the `tau_r` are odd, the
//! `xi_r` and all coefficients are even. At `l = 2` every sign is trivial.

mod basis;
mod hopf;
mod tensor;

use std::collections::BTreeMap;
use std::fmt;

use crate::coefficients::{BaseScalar, Bidegree, CoeffRing, Prime, ScalarMonomial};
use crate::error::Result;
use crate::ops::{add_into, write_term};

pub use basis::{milnor_basis, milnor_basis_in_degree};
pub use hopf::{
    antipode, coproduct, counit, eta_left, eta_right, generator_antipode, generator_coproduct,
    monomial_coproduct, DualGenerator,
};
pub use tensor::{tensor_normalize, TensorElement};

/// `tau_{r_1} ... tau_{r_k} xi_1^{s_1} xi_2^{s_2} ...` with distinct `r_i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MilnorMonomial {
    /// Bit `r` set iff `tau_r` divides the monomial.
    tau: u16,
    /// `xi[r - 1]` is the exponent of `xi_r`.
    xi: [u16; XI_SLOTS],
}

/// Largest generator index a monomial may carry.
pub const MAX_GENERATOR_INDEX: u32 = 15;

const XI_SLOTS: usize = MAX_GENERATOR_INDEX as usize;

impl MilnorMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn tau(r: u32) -> Self {
        assert!(r <= MAX_GENERATOR_INDEX);
        MilnorMonomial {
            tau: 1 << r,
            xi: [0; XI_SLOTS],
        }
    }

    /// `xi_r^e`, `r >= 1`.
    pub fn xi(r: u32, e: u32) -> Self {
        Self::one().times_xi(r, e)
    }

    /// Builds a monomial from its `tau` indices and `(r, exponent)` pairs for
    /// the `xi`. Returns `None` if a `tau` index repeats (that product is not
    /// a basis monomial; multiply generators instead).
    pub fn new(
        taus: impl IntoIterator<Item = u32>,
        xis: impl IntoIterator<Item = (u32, u32)>,
    ) -> Option<Self> {
        let mut m = Self::one();
        for r in taus {
            if r > MAX_GENERATOR_INDEX || m.has_tau(r) {
                return None;
            }
            m.tau |= 1 << r;
        }
        for (r, e) in xis {
            m = m.times_xi(r, e);
        }
        Some(m)
    }

    pub fn is_one(&self) -> bool {
        self.tau == 0 && self.xi == [0; XI_SLOTS]
    }

    pub fn has_tau(&self, r: u32) -> bool {
        r <= MAX_GENERATOR_INDEX && self.tau & (1 << r) != 0
    }

    pub fn tau_indices(&self) -> impl Iterator<Item = u32> + '_ {
        (0..=MAX_GENERATOR_INDEX).filter(move |&r| self.has_tau(r))
    }

    pub fn num_taus(&self) -> u32 {
        self.tau.count_ones()
    }

    pub fn xi_exponent(&self, r: u32) -> u32 {
        if r == 0 {
            return 0;
        }
        self.xi.get(r as usize - 1).map_or(0, |&e| u32::from(e))
    }

    /// Nonzero `(r, exponent)` pairs of the `xi` part.
    pub fn xi_exponents(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.xi
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i as u32 + 1, u32::from(e)))
    }

    /// First-degree parity: the number of `tau` factors mod 2.
    pub fn parity(&self) -> u32 {
        self.num_taus() % 2
    }

    /// `|tau_r| = (2l^r - 1, l^r - 1)` and `|xi_r| = (2l^r - 2, l^r - 1)`.
    pub fn bidegree(&self, prime: Prime) -> Bidegree {
        let mut total = Bidegree::ZERO;
        for r in self.tau_indices() {
            total += tau_bidegree(r, prime);
        }
        for (r, e) in self.xi_exponents() {
            total += xi_bidegree(r, prime).scale(e as i32);
        }
        total
    }

    pub fn times_xi(&self, r: u32, e: u32) -> Self {
        assert!(
            (1..=MAX_GENERATOR_INDEX).contains(&r),
            "xi index {r} out of range"
        );
        let mut out = *self;
        let slot = &mut out.xi[r as usize - 1];
        *slot = u32::from(*slot)
            .checked_add(e)
            .and_then(|v| u16::try_from(v).ok())
            .expect("xi exponent overflow");
        out
    }

    /// The `xi` part of `self` times the `xi` part of `other`, keeping the
    /// `tau` part of `self`.
    fn times_xi_part_of(&self, other: &MilnorMonomial) -> Self {
        let mut out = *self;
        for (a, b) in out.xi.iter_mut().zip(&other.xi) {
            *a = a.checked_add(*b).expect("xi exponent overflow");
        }
        out
    }

    /// Inserts `tau_r` (absent) at its sorted position; also returns how many
    /// odd generators it moved past.
    fn with_tau(&self, r: u32) -> (Self, u32) {
        debug_assert!(!self.has_tau(r));
        let mut out = *self;
        out.tau |= 1 << r;
        let passed = (self.tau >> r).count_ones();
        (out, passed)
    }

    fn without_tau(&self, r: u32) -> Self {
        let mut out = *self;
        out.tau &= !(1 << r);
        out
    }
}

/// `a b` when the two share no `tau_r`, as a sign exponent and a monomial.
/// Shared `tau_r` need the defining relation, so those give `None`.
pub(crate) fn disjoint_product(
    a: &MilnorMonomial,
    b: &MilnorMonomial,
) -> Option<(u32, MilnorMonomial)> {
    if a.tau & b.tau != 0 {
        return None;
    }
    let mut passes = 0;
    let mut rest = b.tau;
    while rest != 0 {
        let j = rest.trailing_zeros();
        passes += (a.tau >> j).count_ones();
        rest &= rest - 1;
    }
    let mut m = a.times_xi_part_of(b);
    m.tau |= b.tau;
    Some((passes, m))
}

pub(crate) fn tau_bidegree(r: u32, prime: Prime) -> Bidegree {
    let lr = (prime.value() as i64).pow(r);
    Bidegree::new((2 * lr - 1) as i32, (lr - 1) as i32)
}

pub(crate) fn xi_bidegree(r: u32, prime: Prime) -> Bidegree {
    let lr = (prime.value() as i64).pow(r);
    Bidegree::new((2 * lr - 2) as i32, (lr - 1) as i32)
}

/// Bidegree of a Milnor monomial.
pub fn milnor_bidegree(m: &MilnorMonomial, prime: Prime) -> Bidegree {
    m.bidegree(prime)
}

impl fmt::Display for MilnorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut parts: Vec<String> = self.tau_indices().map(|r| format!("t{r}")).collect();
        parts.extend(self.xi_exponents().map(|(r, e)| match e {
            1 => format!("x{r}"),
            e => format!("x{r}^{e}"),
        }));
        f.write_str(&parts.join(" "))
    }
}

/// An element of `Gamma` with coefficients in the chosen preset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaElement {
    ring: CoeffRing,
    terms: BTreeMap<MilnorMonomial, BaseScalar>,
}

impl GammaElement {
    pub fn zero(ring: CoeffRing) -> Self {
        GammaElement {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: CoeffRing) -> Self {
        Self::scalar(BaseScalar::one(ring))
    }

    pub fn scalar(c: BaseScalar) -> Self {
        let mut out = Self::zero(c.ring());
        out.add_term(c, MilnorMonomial::one());
        out
    }

    pub fn from_monomial(ring: CoeffRing, m: MilnorMonomial) -> Self {
        let mut out = Self::zero(ring);
        out.add_term(BaseScalar::one(ring), m);
        out
    }

    pub fn tau_generator(ring: CoeffRing, r: u32) -> Self {
        Self::from_monomial(ring, MilnorMonomial::tau(r))
    }

    pub fn xi_generator(ring: CoeffRing, r: u32) -> Self {
        Self::from_monomial(ring, MilnorMonomial::xi(r, 1))
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MilnorMonomial, &BaseScalar)> {
        self.terms.iter()
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

    pub fn coefficient(&self, m: &MilnorMonomial) -> BaseScalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| BaseScalar::zero(self.ring))
    }

    pub fn add_term(&mut self, coeff: BaseScalar, m: MilnorMonomial) {
        debug_assert_eq!(coeff.ring(), self.ring);
        add_into(&mut self.terms, m, &coeff);
    }

    pub fn scale(&self, c: &BaseScalar) -> Self {
        let mut out = Self::zero(self.ring);
        for (m, a) in &self.terms {
            out.add_term(c * a, *m);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Terms sorted by (bidegree, monomial), the order used for printing.
    pub fn sorted_terms(&self) -> Vec<(&MilnorMonomial, &BaseScalar)> {
        let prime = self.ring.prime();
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(m, _)| (m.bidegree(prime), *m));
        v
    }

    /// Every (coefficient monomial, Milnor monomial) pair has this bidegree.
    pub fn is_homogeneous_of(&self, b: Bidegree) -> bool {
        let prime = self.ring.prime();
        self.terms.iter().all(|(m, c)| {
            c.terms()
                .iter()
                .all(|(s, _)| m.bidegree(prime) - s.bidegree() == b)
        })
    }

    fn multiply(&self, other: &GammaElement) -> GammaElement {
        assert_eq!(self.ring, other.ring, "multiplying over different rings");
        let ring = self.ring;
        let mut out = BTreeMap::new();
        for (my, cy) in &other.terms {
            let mut current: BTreeMap<MilnorMonomial, BaseScalar> = BTreeMap::new();
            for (mx, cx) in &self.terms {
                add_into(&mut current, *mx, &(cx * cy));
            }
            for r in my.tau_indices() {
                let mut next = BTreeMap::new();
                for (m, c) in current {
                    multiply_by_tau(ring, &m, &c, r, &mut next);
                }
                current = next;
            }
            if my.xi != [0; XI_SLOTS] {
                for (m, c) in current {
                    add_into(&mut out, m.times_xi_part_of(my), &c);
                }
            } else {
                for (m, c) in current {
                    add_into(&mut out, m, &c);
                }
            }
        }
        GammaElement { ring, terms: out }
    }
}

/// `m * tau_r`, reducing `tau_r^2` by the defining relation at `l = 2`.
fn multiply_by_tau(
    ring: CoeffRing,
    m: &MilnorMonomial,
    c: &BaseScalar,
    r: u32,
    out: &mut BTreeMap<MilnorMonomial, BaseScalar>,
) {
    if !m.has_tau(r) {
        let (product, passed) = m.with_tau(r);
        let sign = ring.prime().sign(passed as i64);
        add_into(out, product, &c.scale(sign));
        return;
    }
    if !ring.prime().is_two() {
        // tau_r^2 = 0 once rho and tau vanish
        return;
    }
    let base = m.without_tau(r);
    let tau = BaseScalar::monomial(ring, ScalarMonomial::new(0, 1), 1);
    add_into(out, base.times_xi(r + 1, 1), &(c * &tau));
    if ring.has_rho() {
        let rho_c = c * &BaseScalar::rho(ring);
        multiply_by_tau(ring, &base, &rho_c, r + 1, out);
        multiply_by_tau(ring, &base.times_xi(r + 1, 1), &rho_c, 0, out);
    }
}

/// Product in `Gamma`; fails when the factors live over different rings.
pub fn gamma_multiply(x: &GammaElement, y: &GammaElement) -> Result<GammaElement> {
    x.ring.check(y.ring)?;
    Ok(x.multiply(y))
}

impl std::ops::Mul for &GammaElement {
    type Output = GammaElement;
    fn mul(self, rhs: &GammaElement) -> GammaElement {
        self.multiply(rhs)
    }
}

impl std::ops::Add for &GammaElement {
    type Output = GammaElement;
    fn add(self, rhs: &GammaElement) -> GammaElement {
        assert_eq!(self.ring, rhs.ring);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), *m);
        }
        out
    }
}

impl std::ops::Sub for &GammaElement {
    type Output = GammaElement;
    fn sub(self, rhs: &GammaElement) -> GammaElement {
        assert_eq!(self.ring, rhs.ring);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c, *m);
        }
        out
    }
}

impl std::ops::Neg for &GammaElement {
    type Output = GammaElement;
    fn neg(self) -> GammaElement {
        self.scale(&BaseScalar::constant(self.ring, -1))
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write_term(f, c, m, m.is_one())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Prime;

    #[test]
    fn generator_bidegrees() {
        assert_eq!(
            MilnorMonomial::tau(2).bidegree(Prime::TWO),
            Bidegree::new(7, 3)
        );
        assert_eq!(
            MilnorMonomial::xi(1, 1).bidegree(Prime::THREE),
            Bidegree::new(4, 2)
        );
        let m = MilnorMonomial::new([0], [(1, 2)]).unwrap();
        assert_eq!(milnor_bidegree(&m, Prime::TWO), Bidegree::new(5, 2));
    }

    #[test]
    fn tau_zero_squared() {
        let u = CoeffRing::universal();
        let t0 = GammaElement::tau_generator(u, 0);
        let got = gamma_multiply(&t0, &t0).unwrap();
        let mut expected = GammaElement::zero(u);
        expected.add_term(BaseScalar::tau(u), MilnorMonomial::xi(1, 1));
        expected.add_term(BaseScalar::rho(u), MilnorMonomial::tau(1));
        expected.add_term(
            BaseScalar::rho(u),
            MilnorMonomial::new([0], [(1, 1)]).unwrap(),
        );
        assert_eq!(got, expected);

        let c3 = CoeffRing::closed(Prime::THREE);
        let t0 = GammaElement::tau_generator(c3, 0);
        assert!((&t0 * &t0).is_zero());
    }

    #[test]
    fn xi_is_polynomial() {
        for ring in [CoeffRing::universal(), CoeffRing::closed(Prime::THREE)] {
            let x1 = GammaElement::xi_generator(ring, 1);
            assert_eq!(
                &x1 * &x1,
                GammaElement::from_monomial(ring, MilnorMonomial::xi(1, 2))
            );
        }
    }

    #[test]
    fn odd_generators_anticommute_at_odd_primes() {
        let c3 = CoeffRing::closed(Prime::THREE);
        let t0 = GammaElement::tau_generator(c3, 0);
        let t1 = GammaElement::tau_generator(c3, 1);
        assert_eq!(&t1 * &t0, -&(&t0 * &t1));
    }

    #[test]
    fn nested_relations_terminate() {
        // (tau_0 tau_1)^2 forces tau_1^2 which produces tau_2 and tau_0 again.
        let u = CoeffRing::universal();
        let m = GammaElement::from_monomial(u, MilnorMonomial::new([0, 1], []).unwrap());
        let sq = &m * &m;
        let b = Bidegree::new(8, 2);
        assert!(sq.is_homogeneous_of(b), "{sq}");
        assert!(!sq.is_zero());
    }

    #[test]
    fn display() {
        let u = CoeffRing::universal();
        let t0 = GammaElement::tau_generator(u, 0);
        assert_eq!((&t0 * &t0).to_string(), "t x1 + r t0 x1 + r t1");
        let m = MilnorMonomial::new([0, 2], [(1, 2), (3, 1)]).unwrap();
        assert_eq!(m.to_string(), "t0 t2 x1^2 x3");
    }
}
