//! Iterated tensor products `Gamma (x)_A ... (x)_A Gamma`.
//!
//! The right `A`-module structure on a slot is through `eta_R` and the left one
//! through `eta_L`, so `x (x) a y = x eta_R(a) (x) y`. Normal form keeps every
//! coefficient in the leftmost slot and a bare Milnor monomial in all others.

use std::borrow::Borrow;
use std::collections::BTreeMap;
use std::fmt;

use super::hopf::eta_right;
use super::{disjoint_product, GammaElement, MilnorMonomial};
use crate::coefficients::{BaseScalar, Bidegree, CoeffRing};
use crate::error::{AlgebraError, Result};
use crate::ops::{add_into, write_term};

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

/// Slot monomials of one term; three slots stay inline.
type Key = SmallVec<[MilnorMonomial; 3]>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    ring: CoeffRing,
    arity: usize,
    terms: FxHashMap<Key, BaseScalar>,
}

impl TensorElement {
    pub fn zero(ring: CoeffRing, arity: usize) -> Self {
        TensorElement {
            ring,
            arity,
            terms: FxHashMap::default(),
        }
    }

    /// `1 (x) ... (x) 1`.
    pub fn one(ring: CoeffRing, arity: usize) -> Self {
        Self::from_monomials(
            ring,
            BaseScalar::one(ring),
            vec![MilnorMonomial::one(); arity],
        )
    }

    /// `c m_0 (x) m_1 (x) ...`, already in normal form.
    pub fn from_monomials(ring: CoeffRing, c: BaseScalar, slots: Vec<MilnorMonomial>) -> Self {
        let mut out = Self::zero(ring, slots.len());
        out.add_term(c, slots);
        out
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[MilnorMonomial], &BaseScalar)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
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

    pub fn coefficient(&self, slots: &[MilnorMonomial]) -> BaseScalar {
        self.terms
            .get(slots)
            .cloned()
            .unwrap_or_else(|| BaseScalar::zero(self.ring))
    }

    pub fn add_term(&mut self, c: BaseScalar, slots: Vec<MilnorMonomial>) {
        assert_eq!(slots.len(), self.arity, "tensor arity");
        add_hashed(&mut self.terms, Key::from_vec(slots), &c);
    }

    pub fn scale(&self, c: &BaseScalar) -> Self {
        let mut out = Self::zero(self.ring, self.arity);
        for (k, a) in &self.terms {
            add_hashed(&mut out.terms, k.clone(), &(c * a));
        }
        out
    }

    /// Every term has total bidegree `b`, coefficients counted negatively.
    pub fn is_homogeneous_of(&self, b: Bidegree) -> bool {
        let prime = self.ring.prime();
        self.terms.iter().all(|(k, c)| {
            let d = k.iter().fold(Bidegree::ZERO, |a, m| a + m.bidegree(prime));
            c.terms().iter().all(|(s, _)| d - s.bidegree() == b)
        })
    }

    /// Product with Koszul signs between the slots.
    pub fn multiply(&self, other: &TensorElement) -> Result<TensorElement> {
        self.ring.check(other.ring)?;
        if self.arity != other.arity {
            return Err(AlgebraError::ArityMismatch(self.arity, other.arity));
        }
        let ring = self.ring;
        let prime = ring.prime();
        let mut out = Self::zero(ring, self.arity);
        for (kx, cx) in &self.terms {
            for (ky, cy) in &other.terms {
                let mut exponent = 0u32;
                if !prime.is_two() {
                    let mut later_x = 0;
                    for i in (0..self.arity).rev() {
                        exponent += ky[i].parity() * later_x;
                        later_x += kx[i].parity();
                    }
                }
                let fast: Option<Vec<(u32, MilnorMonomial)>> = kx
                    .iter()
                    .zip(ky)
                    .map(|(x, y)| disjoint_product(x, y))
                    .collect();
                if let Some(parts) = fast {
                    let passes: u32 = parts.iter().map(|(s, _)| s).sum();
                    let sign = if prime.is_two() {
                        1
                    } else {
                        prime.sign((exponent + passes) as i64)
                    };
                    let key = parts.into_iter().map(|(_, m)| m).collect();
                    add_hashed(&mut out.terms, key, &(cx * cy).scale(sign));
                    continue;
                }
                let slots: Vec<GammaElement> = kx
                    .iter()
                    .zip(ky)
                    .enumerate()
                    .map(|(i, (x, y))| {
                        let x = GammaElement::from_monomial(ring, *x);
                        let y = GammaElement::from_monomial(ring, *y);
                        let xy = &x * &y;
                        if i == 0 {
                            xy.scale(&(cx * cy).scale(prime.sign(exponent as i64)))
                        } else {
                            xy
                        }
                    })
                    .collect();
                out += &tensor_normalize(&slots)?;
            }
        }
        Ok(out)
    }

    /// Applies `f` to slot `k`, where `f` is left `A`-linear and returns a
    /// tensor; the result has arity `self.arity - 1 + f(..).arity`.
    pub fn apply_at<R: Borrow<TensorElement>>(
        &self,
        k: usize,
        mut f: impl FnMut(&MilnorMonomial) -> Result<R>,
    ) -> Result<TensorElement> {
        assert!(k < self.arity);
        let ring = self.ring;
        let mut out: Option<TensorElement> = None;
        for (slots, c) in &self.terms {
            let image = f(&slots[k])?;
            let image = image.borrow();
            let arity = self.arity - 1 + image.arity;
            let acc = out.get_or_insert_with(|| TensorElement::zero(ring, arity));
            for (inner, d) in &image.terms {
                let suffix = inner.iter().chain(&slots[k + 1..]).copied();
                if k == 0 || d.is_constant() {
                    let key = slots[..k].iter().copied().chain(suffix).collect();
                    add_hashed(&mut acc.terms, key, &(c * d));
                    continue;
                }
                for (coeff, prefix) in push_left(c, &slots[..k], d) {
                    let key = prefix.into_iter().chain(suffix.clone()).collect();
                    add_hashed(&mut acc.terms, key, &coeff);
                }
            }
        }
        Ok(out.unwrap_or_else(|| TensorElement::zero(ring, self.arity)))
    }

    /// Applies the counit to slot `k`. In normal form only terms with `1` in
    /// that slot survive, and their coefficient is untouched.
    pub fn counit_at(&self, k: usize) -> TensorElement {
        assert!(k < self.arity && self.arity > 1);
        let mut out = Self::zero(self.ring, self.arity - 1);
        for (slots, c) in &self.terms {
            if slots[k].is_one() {
                let mut rest = slots.clone();
                rest.remove(k);
                add_hashed(&mut out.terms, rest, c);
            }
        }
        out
    }

    /// Reads an arity-one tensor as an element of `Gamma`.
    pub fn to_gamma(&self) -> GammaElement {
        assert_eq!(self.arity, 1);
        let mut out = GammaElement::zero(self.ring);
        for (slots, c) in &self.terms {
            out.add_term(c.clone(), slots[0]);
        }
        out
    }

    /// Multiplies the slots together: `x (x) y -> x y`.
    pub fn multiply_slots(&self) -> GammaElement {
        let mut out = GammaElement::zero(self.ring);
        for (slots, c) in &self.terms {
            let mut prod = GammaElement::scalar(c.clone());
            for m in slots {
                prod = &prod * &GammaElement::from_monomial(self.ring, *m);
            }
            out = &out + &prod;
        }
        out
    }

    /// Terms sorted by slot bidegrees, then monomials.
    pub fn sorted_terms(&self) -> Vec<(&[MilnorMonomial], &BaseScalar)> {
        let prime = self.ring.prime();
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|(k, _)| (k.iter().map(|m| m.bidegree(prime)).collect::<Vec<_>>(), *k));
        v
    }
}

fn add_hashed(map: &mut FxHashMap<Key, BaseScalar>, key: Key, coeff: &BaseScalar) {
    use std::collections::hash_map::Entry;
    if coeff.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(coeff.clone());
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Moves `d`, sitting just right of `prefix`, into the leftmost slot whose
/// coefficient is `lead`.
fn push_left(
    lead: &BaseScalar,
    prefix: &[MilnorMonomial],
    d: &BaseScalar,
) -> Vec<(BaseScalar, Vec<MilnorMonomial>)> {
    let ring = lead.ring();
    let Some((last, rest)) = prefix.split_last() else {
        return vec![(lead * d, Vec::new())];
    };
    if d.is_constant() {
        return vec![(lead * d, prefix.to_vec())];
    }
    let moved = &GammaElement::from_monomial(ring, *last) * &eta_right(d);
    let mut out = Vec::new();
    for (m, e) in moved.terms {
        let pushed = if rest.is_empty() {
            vec![(lead * &e, Vec::new())]
        } else {
            push_left(lead, rest, &e)
        };
        for (coeff, mut p) in pushed {
            p.push(m);
            out.push((coeff, p));
        }
    }
    out
}

/// Puts `g_0 (x) g_1 (x) ... ` into normal form by moving coefficients
/// leftwards through `eta_R`.
pub fn tensor_normalize(slots: &[GammaElement]) -> Result<TensorElement> {
    assert!(!slots.is_empty(), "a tensor needs at least one slot");
    let ring = slots[0].ring();
    for s in slots {
        ring.check(s.ring())?;
    }
    // Keys are suffixes, stored reversed.
    let mut pending: BTreeMap<Vec<MilnorMonomial>, BaseScalar> = BTreeMap::new();
    pending.insert(Vec::new(), BaseScalar::one(ring));
    for slot in slots.iter().rev() {
        let mut next = BTreeMap::new();
        for (suffix, c) in pending {
            let shifted = if c.is_constant() {
                slot.scale(&c)
            } else {
                slot * &eta_right(&c)
            };
            for (m, a) in shifted.terms {
                let mut key = suffix.clone();
                key.push(m);
                add_into(&mut next, key, &a);
            }
        }
        pending = next;
    }
    let mut out = TensorElement::zero(ring, slots.len());
    for (mut key, c) in pending {
        key.reverse();
        add_hashed(&mut out.terms, Key::from_vec(key), &c);
    }
    Ok(out)
}

impl std::ops::AddAssign<&TensorElement> for TensorElement {
    fn add_assign(&mut self, rhs: &TensorElement) {
        assert_eq!(self.ring, rhs.ring);
        assert_eq!(self.arity, rhs.arity, "tensor arity");
        for (k, c) in &rhs.terms {
            add_hashed(&mut self.terms, k.clone(), c);
        }
    }
}

impl std::ops::Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out += &rhs.scale(&BaseScalar::constant(rhs.ring, -1));
        out
    }
}

struct Leading<'a>(&'a BaseScalar, &'a MilnorMonomial);

impl fmt::Display for Leading<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self.0, self.1, self.1.is_one())
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})", Leading(c, &k[0]))?;
            for m in &k[1..] {
                write!(f, " | ({m})")?;
            }
        }
        Ok(())
    }
}
