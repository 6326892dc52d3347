//! Structure maps of the Hopf algebroid `(A, Gamma)`.
//!
//! `eta_R(tau) = tau + rho tau_0` and `eta_R(rho) = rho`;
//! `Delta(tau_r) = tau_r (x) 1 + 1 (x) tau_r + sum_{i<r} xi_{r-i}^{l^i} (x) tau_i`;
//! `Delta(xi_r) = xi_r (x) 1 + 1 (x) xi_r + sum_{0<i<r} xi_{r-i}^{l^i} (x) xi_i`;
//! `c(tau) = tau + rho tau_0`, `c(tau_r) = -tau_r - sum_{i<r} xi_{r-i}^{l^i} c(tau_i)`
//! and `c(xi_r) = -xi_r - sum_{0<i<r} xi_{r-i}^{l^i} c(xi_i)`.
//!
//! Coproducts and antipodes of monomials are memoized per coefficient ring.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::{GammaElement, MilnorMonomial, TensorElement};
use crate::coefficients::{BaseScalar, CoeffRing, ScalarMonomial};

/// A generator of `Gamma` over `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DualGenerator {
    Tau(u32),
    Xi(u32),
}

impl DualGenerator {
    pub fn monomial(self) -> MilnorMonomial {
        match self {
            DualGenerator::Tau(r) => MilnorMonomial::tau(r),
            DualGenerator::Xi(r) => MilnorMonomial::xi(r, 1),
        }
    }
}

/// The left unit: coefficients sit in `Gamma` unchanged.
pub fn eta_left(c: &BaseScalar) -> GammaElement {
    GammaElement::scalar(c.clone())
}

/// The right unit, a ring map `A -> Gamma`.
pub fn eta_right(c: &BaseScalar) -> GammaElement {
    let ring = c.ring();
    if !ring.has_rho() || c.is_constant() {
        return GammaElement::scalar(c.clone());
    }
    let mut out = GammaElement::zero(ring);
    for &(ScalarMonomial { rho, tau }, k) in c.terms() {
        let lead = BaseScalar::monomial(ring, ScalarMonomial::new(rho, 0), k);
        out = &out + &eta_right_tau_power(ring, tau).scale(&lead);
    }
    out
}

fn eta_right_tau_power(ring: CoeffRing, n: u32) -> GammaElement {
    static CACHE: OnceLock<RwLock<HashMap<(CoeffRing, u32), GammaElement>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(g) = cache.read().unwrap().get(&(ring, n)) {
        return g.clone();
    }
    let value = if n == 0 {
        GammaElement::one(ring)
    } else {
        let mut base = GammaElement::scalar(BaseScalar::tau(ring));
        base.add_term(BaseScalar::rho(ring), MilnorMonomial::tau(0));
        &eta_right_tau_power(ring, n - 1) * &base
    };
    cache.write().unwrap().insert((ring, n), value.clone());
    value
}

/// The counit: the coefficient of the empty monomial.
pub fn counit(x: &GammaElement) -> BaseScalar {
    x.coefficient(&MilnorMonomial::one())
}

fn pair(ring: CoeffRing, left: MilnorMonomial, right: MilnorMonomial) -> TensorElement {
    TensorElement::from_monomials(ring, BaseScalar::one(ring), vec![left, right])
}

/// `Delta` of a single generator.
pub fn generator_coproduct(ring: CoeffRing, g: DualGenerator) -> TensorElement {
    let l = ring.prime().value();
    let one = MilnorMonomial::one;
    let m = g.monomial();
    let mut out = &pair(ring, m, one()) + &pair(ring, one(), m);
    let (r, lowest) = match g {
        DualGenerator::Tau(r) => (r, 0),
        DualGenerator::Xi(r) => (r, 1),
    };
    for i in lowest..r {
        let right = match g {
            DualGenerator::Tau(_) => MilnorMonomial::tau(i),
            DualGenerator::Xi(_) => MilnorMonomial::xi(i, 1),
        };
        out += &pair(ring, MilnorMonomial::xi(r - i, l.pow(i)), right);
    }
    out
}

// Splits off the last generator: m = rest * g.
fn split_last(m: &MilnorMonomial) -> Option<(MilnorMonomial, DualGenerator)> {
    if let Some((r, _)) = m.xi_exponents().last() {
        let mut rest = *m;
        let i = r as usize - 1;
        rest.xi[i] -= 1;
        return Some((rest, DualGenerator::Xi(r)));
    }
    let r = m.tau_indices().last()?;
    Some((m.without_tau(r), DualGenerator::Tau(r)))
}

type Memo<V> = OnceLock<RwLock<HashMap<(CoeffRing, MilnorMonomial), Arc<V>>>>;

fn memoized<V>(
    memo: &'static Memo<V>,
    ring: CoeffRing,
    m: &MilnorMonomial,
    compute: impl FnOnce() -> V,
) -> Arc<V> {
    let cache = memo.get_or_init(Default::default);
    if let Some(v) = cache.read().unwrap().get(&(ring, *m)) {
        return v.clone();
    }
    let v = Arc::new(compute());
    cache.write().unwrap().insert((ring, *m), v.clone());
    v
}

/// `Delta` of a Milnor monomial, built multiplicatively.
pub fn monomial_coproduct(ring: CoeffRing, m: &MilnorMonomial) -> Arc<TensorElement> {
    static MEMO: Memo<TensorElement> = OnceLock::new();
    memoized(&MEMO, ring, m, || match split_last(m) {
        None => TensorElement::one(ring, 2),
        Some((rest, g)) => monomial_coproduct(ring, &rest)
            .multiply(&generator_coproduct(ring, g))
            .expect("same ring and arity"),
    })
}

/// `Delta`, which is left `A`-linear.
pub fn coproduct(x: &GammaElement) -> TensorElement {
    let ring = x.ring();
    let mut out = TensorElement::zero(ring, 2);
    for (m, c) in x.terms() {
        out += &monomial_coproduct(ring, m).scale(c);
    }
    out
}

/// `c` of a single generator.
pub fn generator_antipode(ring: CoeffRing, g: DualGenerator) -> GammaElement {
    monomial_antipode(ring, &g.monomial()).as_ref().clone()
}

fn recursive_antipode(ring: CoeffRing, g: DualGenerator) -> GammaElement {
    let l = ring.prime().value();
    let (r, lowest) = match g {
        DualGenerator::Tau(r) => (r, 0),
        DualGenerator::Xi(r) => (r, 1),
    };
    let mut sum = GammaElement::from_monomial(ring, g.monomial());
    for i in lowest..r {
        let lower = match g {
            DualGenerator::Tau(_) => DualGenerator::Tau(i),
            DualGenerator::Xi(_) => DualGenerator::Xi(i),
        };
        let xi = GammaElement::from_monomial(ring, MilnorMonomial::xi(r - i, l.pow(i)));
        sum = &sum + &(&xi * &monomial_antipode(ring, &lower.monomial()));
    }
    -&sum
}

fn monomial_antipode(ring: CoeffRing, m: &MilnorMonomial) -> Arc<GammaElement> {
    static MEMO: Memo<GammaElement> = OnceLock::new();
    memoized(&MEMO, ring, m, || match split_last(m) {
        None => GammaElement::one(ring),
        Some((rest, g)) if rest.is_one() => recursive_antipode(ring, g),
        Some((rest, g)) => &*monomial_antipode(ring, &rest) * &generator_antipode(ring, g),
    })
}

/// The antipode: a ring map with `c(a x) = eta_R(a) c(x)`.
pub fn antipode(x: &GammaElement) -> GammaElement {
    let ring = x.ring();
    let mut out = GammaElement::zero(ring);
    for (m, c) in x.terms() {
        out = &out + &(&eta_right(c) * &monomial_antipode(ring, m));
    }
    out
}
