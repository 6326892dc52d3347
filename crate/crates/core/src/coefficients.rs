//! The graded coefficient rings `F_l`, `F_2[tau]` and `F_2[rho, tau]`, and
//! binomial coefficients modulo a prime.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use smallvec::{smallvec, SmallVec};

use crate::error::{AlgebraError, Result};

/// A validated prime `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub const TWO: Prime = Prime(2);
    pub const THREE: Prime = Prime(3);
    pub const FIVE: Prime = Prime(5);

    pub fn new(value: u32) -> Result<Self> {
        if value >= 2 && (2..).take_while(|d| d * d <= value).all(|d| !value.is_multiple_of(d)) {
            Ok(Prime(value))
        } else {
            Err(AlgebraError::NotPrime(value))
        }
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_two(self) -> bool {
        self.0 == 2
    }

    /// Reduces an arbitrary integer into `[0, l)`.
    pub fn reduce(self, n: i64) -> u32 {
        n.rem_euclid(self.0 as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inverse(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 as u64 - 2)
    }

    /// `(-1)^n` as a residue.
    pub fn sign(self, n: i64) -> u32 {
        if n.rem_euclid(2) == 0 {
            1 % self.0
        } else {
            self.0 - 1
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Binomial coefficient `C(n, k)` reduced modulo `prime`, by Lucas' theorem.
///
/// Out-of-range arguments (`n < 0`, `k < 0`, `k > n`) give zero.
pub fn binom_mod(n: i64, k: i64, prime: Prime) -> u32 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let p = prime.value() as i64;
    let (mut n, mut k) = (n, k);
    let mut acc = 1 % prime.value();
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = prime.mul(acc, small_binom(nd as u32, kd as u32, prime));
        n /= p;
        k /= p;
    }
    acc
}

// C(n, k) mod p for n < p.
fn small_binom(n: u32, k: u32, prime: Prime) -> u32 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u32, 1u32);
    for i in 0..k {
        num = prime.mul(num, n - i);
        den = prime.mul(den, i + 1);
    }
    prime.mul(num, prime.inverse(den))
}

/// Cohomological degree and weight.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bidegree {
    pub p: i32,
    pub q: i32,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { p: 0, q: 0 };

    pub const fn new(p: i32, q: i32) -> Self {
        Bidegree { p, q }
    }

    pub fn scale(self, n: i32) -> Self {
        Bidegree::new(self.p * n, self.q * n)
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl AddAssign for Bidegree {
    fn add_assign(&mut self, rhs: Bidegree) {
        *self = *self + rhs;
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.p - rhs.p, self.q - rhs.q)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Which coefficient ring stands in for the motivic cohomology of the base.
///
/// `Closed` models an algebraically closed base field: `F_l` for odd `l`,
/// `F_2[tau]` for `l = 2`. `Universal` is `F_2[rho, tau]` and only exists at
/// `l = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Preset {
    Closed,
    Universal,
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Closed => "closed",
            Preset::Universal => "universal",
        })
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "closed" => Ok(Preset::Closed),
            "universal" => Ok(Preset::Universal),
            other => Err(format!(
                "unknown preset `{other}` (expected closed or universal)"
            )),
        }
    }
}

/// A prime together with a coefficient preset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffRing {
    prime: Prime,
    preset: Preset,
}

impl CoeffRing {
    pub fn new(prime: Prime, preset: Preset) -> Result<Self> {
        if preset == Preset::Universal && !prime.is_two() {
            return Err(AlgebraError::UniversalRequiresTwo(prime.value()));
        }
        Ok(CoeffRing { prime, preset })
    }

    pub fn closed(prime: Prime) -> Self {
        CoeffRing {
            prime,
            preset: Preset::Closed,
        }
    }

    pub fn universal() -> Self {
        CoeffRing {
            prime: Prime::TWO,
            preset: Preset::Universal,
        }
    }

    pub fn prime(self) -> Prime {
        self.prime
    }

    pub fn preset(self) -> Preset {
        self.preset
    }

    pub fn has_tau(self) -> bool {
        self.prime.is_two()
    }

    pub fn has_rho(self) -> bool {
        self.preset == Preset::Universal
    }

    /// Whether `rho^a tau^b` survives in this ring.
    pub fn admits(self, m: ScalarMonomial) -> bool {
        (m.rho == 0 || self.has_rho()) && (m.tau == 0 || self.has_tau())
    }

    pub(crate) fn check(self, other: CoeffRing) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch {
                left: self,
                right: other,
            })
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l={} {}", self.prime, self.preset)
    }
}

/// `rho^rho tau^tau`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScalarMonomial {
    pub rho: u32,
    pub tau: u32,
}

impl ScalarMonomial {
    pub const ONE: ScalarMonomial = ScalarMonomial { rho: 0, tau: 0 };

    pub const fn new(rho: u32, tau: u32) -> Self {
        ScalarMonomial { rho, tau }
    }

    /// `rho` sits in `(1,1)` and `tau` in `(0,1)`.
    pub fn bidegree(self) -> Bidegree {
        Bidegree::new(self.rho as i32, (self.rho + self.tau) as i32)
    }

    fn times(self, other: ScalarMonomial) -> ScalarMonomial {
        ScalarMonomial::new(self.rho + other.rho, self.tau + other.tau)
    }
}

/// An element of the coefficient ring, kept as a sorted list of monomials
/// with nonzero residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseScalar {
    ring: CoeffRing,
    terms: SmallVec<[(ScalarMonomial, u32); 2]>,
}

impl BaseScalar {
    pub fn zero(ring: CoeffRing) -> Self {
        BaseScalar {
            ring,
            terms: SmallVec::new(),
        }
    }

    pub fn one(ring: CoeffRing) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: CoeffRing, c: i64) -> Self {
        Self::monomial(ring, ScalarMonomial::ONE, ring.prime.reduce(c))
    }

    /// `coeff * rho^a tau^b`, or zero when the monomial dies in this ring.
    pub fn monomial(ring: CoeffRing, m: ScalarMonomial, coeff: u32) -> Self {
        let coeff = coeff % ring.prime.value();
        if coeff == 0 || !ring.admits(m) {
            return Self::zero(ring);
        }
        BaseScalar {
            ring,
            terms: smallvec![(m, coeff)],
        }
    }

    pub fn rho(ring: CoeffRing) -> Self {
        Self::monomial(ring, ScalarMonomial::new(1, 0), 1)
    }

    pub fn tau(ring: CoeffRing) -> Self {
        Self::monomial(ring, ScalarMonomial::new(0, 1), 1)
    }

    /// Builds a scalar from arbitrary (possibly repeated) terms.
    pub fn from_terms<I>(ring: CoeffRing, terms: I) -> Self
    where
        I: IntoIterator<Item = (ScalarMonomial, u32)>,
    {
        let mut acc = BTreeMap::new();
        for (m, c) in terms {
            if ring.admits(m) {
                let e = acc.entry(m).or_insert(0);
                *e = ring.prime.add(*e, c % ring.prime.value());
            }
        }
        BaseScalar {
            ring,
            terms: acc.into_iter().filter(|&(_, c)| c != 0).collect(),
        }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn terms(&self) -> &[(ScalarMonomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms[..] == [(ScalarMonomial::ONE, 1)]
    }

    /// True when the scalar lies in the prime field.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == ScalarMonomial::ONE)
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> u32 {
        self.coefficient(ScalarMonomial::ONE)
    }

    pub fn coefficient(&self, m: ScalarMonomial) -> u32 {
        self.terms
            .binary_search_by(|(k, _)| k.cmp(&m))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.ring.prime;
        let c = c % p.value();
        if c == 0 {
            return Self::zero(self.ring);
        }
        BaseScalar {
            ring: self.ring,
            terms: self.terms.iter().map(|&(m, a)| (m, p.mul(a, c))).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.ring);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at `rho = rho_value`, `tau = tau_value`.
    pub fn specialize(&self, rho_value: u32, tau_value: u32) -> u32 {
        let p = self.ring.prime;
        self.terms.iter().fold(0, |acc, &(m, c)| {
            let v = p.mul(
                c,
                p.mul(
                    p.pow(rho_value, m.rho as u64),
                    p.pow(tau_value, m.tau as u64),
                ),
            );
            p.add(acc, v)
        })
    }

    /// The Bockstein acting on coefficients as the derivation with
    /// `beta(tau) = rho` and `beta(rho) = 0`.
    pub fn bockstein(&self) -> Self {
        let p = self.ring.prime;
        Self::from_terms(
            self.ring,
            self.terms.iter().filter(|(m, _)| m.tau > 0).map(|&(m, c)| {
                (
                    ScalarMonomial::new(m.rho + 1, m.tau - 1),
                    p.mul(c, m.tau % p.value()),
                )
            }),
        )
    }

    fn combine(&self, other: &BaseScalar, negate_other: bool) -> BaseScalar {
        assert_eq!(self.ring, other.ring, "adding scalars over different rings");
        let p = self.ring.prime;
        let mut out = SmallVec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            let rhs = |c: u32| if negate_other { p.neg(c) } else { c };
            match take {
                std::cmp::Ordering::Less => {
                    out.push(self.terms[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((other.terms[j].0, rhs(other.terms[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = p.add(self.terms[i].1, rhs(other.terms[j].1));
                    if c != 0 {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        BaseScalar {
            ring: self.ring,
            terms: out,
        }
    }
}

/// Product in the coefficient ring; fails when the operands live in different rings.
pub fn scalar_multiply(x: &BaseScalar, y: &BaseScalar) -> Result<BaseScalar> {
    x.ring.check(y.ring)?;
    Ok(x * y)
}

/// Evaluates a scalar at the given values of `rho` and `tau`.
pub fn specialize(x: &BaseScalar, rho_value: u32, tau_value: u32) -> u32 {
    x.specialize(rho_value, tau_value)
}

impl Add for &BaseScalar {
    type Output = BaseScalar;
    fn add(self, rhs: &BaseScalar) -> BaseScalar {
        self.combine(rhs, false)
    }
}

impl AddAssign<&BaseScalar> for BaseScalar {
    fn add_assign(&mut self, rhs: &BaseScalar) {
        if let ([(a, x)], [(b, y)]) = (&mut self.terms[..], &rhs.terms[..]) {
            if a == b {
                *x = self.ring.prime.add(*x, *y);
                if *x == 0 {
                    self.terms.clear();
                }
                return;
            }
        }
        *self = self.combine(rhs, false);
    }
}

impl Sub for &BaseScalar {
    type Output = BaseScalar;
    fn sub(self, rhs: &BaseScalar) -> BaseScalar {
        self.combine(rhs, true)
    }
}

impl Neg for &BaseScalar {
    type Output = BaseScalar;
    fn neg(self) -> BaseScalar {
        self.scale(self.ring.prime.value() - 1)
    }
}

impl Mul for &BaseScalar {
    type Output = BaseScalar;
    fn mul(self, rhs: &BaseScalar) -> BaseScalar {
        assert_eq!(
            self.ring, rhs.ring,
            "multiplying scalars over different rings"
        );
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let p = self.ring.prime;
        if let ([(a, x)], [(b, y)]) = (&self.terms[..], &rhs.terms[..]) {
            return BaseScalar::monomial(self.ring, a.times(*b), p.mul(*x, *y));
        }
        BaseScalar::from_terms(
            self.ring,
            self.terms.iter().flat_map(|&(a, x)| {
                rhs.terms
                    .iter()
                    .map(move |&(b, y)| (a.times(b), p.mul(x, y)))
            }),
        )
    }
}

impl fmt::Display for ScalarMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rho {
            0 => {}
            1 => parts.push("r".to_string()),
            n => parts.push(format!("r^{n}")),
        }
        match self.tau {
            0 => {}
            1 => parts.push("t".to_string()),
            n => parts.push(format!("t^{n}")),
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

impl fmt::Display for BaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (*c, *m == ScalarMonomial::ONE) {
                (c, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{m}")?,
                (c, false) => write!(f, "{c} {m}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_from_lucas_digits() {
        assert_eq!(binom_mod(4, 2, Prime::TWO), 0);
        assert_eq!(binom_mod(5, 2, Prime::THREE), 1);
        assert_eq!(binom_mod(7, 0, Prime::FIVE), 1);
        assert_eq!(binom_mod(-1, 0, Prime::TWO), 0);
        assert_eq!(binom_mod(3, 4, Prime::TWO), 0);
        assert_eq!(binom_mod(3, -1, Prime::TWO), 0);
    }

    #[test]
    fn primes_are_validated() {
        assert!(Prime::new(7).is_ok());
        assert_eq!(Prime::new(9), Err(AlgebraError::NotPrime(9)));
        assert_eq!(Prime::new(1), Err(AlgebraError::NotPrime(1)));
        assert_eq!(
            CoeffRing::new(Prime::THREE, Preset::Universal),
            Err(AlgebraError::UniversalRequiresTwo(3))
        );
    }

    #[test]
    fn scalar_products() {
        let u = CoeffRing::universal();
        let t = BaseScalar::tau(u);
        let r = BaseScalar::rho(u);
        assert_eq!(
            &t * &t,
            BaseScalar::monomial(u, ScalarMonomial::new(0, 2), 1)
        );
        let t_plus_one = &t + &BaseScalar::one(u);
        let expected = &(&r * &t) + &r;
        assert_eq!(&r * &t_plus_one, expected);
        assert_eq!(&BaseScalar::one(u) * &t_plus_one, t_plus_one);
        assert!(scalar_multiply(&t, &BaseScalar::one(CoeffRing::closed(Prime::TWO))).is_err());
    }

    #[test]
    fn presets_kill_missing_generators() {
        let closed2 = CoeffRing::closed(Prime::TWO);
        assert!(BaseScalar::rho(closed2).is_zero());
        assert!(!BaseScalar::tau(closed2).is_zero());
        let closed3 = CoeffRing::closed(Prime::THREE);
        assert!(BaseScalar::tau(closed3).is_zero());
        assert_eq!(BaseScalar::constant(closed3, -1).constant_term(), 2);
    }

    #[test]
    fn specialization_examples() {
        let u = CoeffRing::universal();
        let t = BaseScalar::tau(u);
        let r = BaseScalar::rho(u);
        assert_eq!((&t * &t).specialize(0, 1), 1);
        let x = &(&r * &t) + &t.pow(3);
        assert_eq!(x.specialize(0, 1), 1);
        assert_eq!(r.specialize(0, 1), 0);
    }

    #[test]
    fn bockstein_is_the_tau_derivation() {
        let u = CoeffRing::universal();
        let t = BaseScalar::tau(u);
        let r = BaseScalar::rho(u);
        assert_eq!(t.bockstein(), r);
        assert!(r.bockstein().is_zero());
        // beta(tau^2) = 2 rho tau = 0
        assert!(t.pow(2).bockstein().is_zero());
        assert_eq!(t.pow(3).bockstein(), &r * &t.pow(2));
    }

    #[test]
    fn display_uses_the_text_grammar() {
        let u = CoeffRing::universal();
        let t = BaseScalar::tau(u);
        let r = BaseScalar::rho(u);
        let x = &t.pow(2) + &(&r * &t);
        assert_eq!(x.to_string(), "t^2 + r t");
        assert_eq!(
            BaseScalar::constant(CoeffRing::closed(Prime::FIVE), 3).to_string(),
            "3"
        );
    }
}
