//! The classical mod-`l` Steenrod algebra, used as an independent check.
//!
//! The rewrite engines here share nothing with the motivic ones: at `l = 2`
//! they act on sequences of squares, at odd `l` on their own letters, and
//! always reduce the rightmost inadmissible pair first.

use std::collections::BTreeMap;
use std::fmt;

use crate::coefficients::Prime;
use crate::ops::{OpElement, OpGenerator, OpMonomial};

/// A classical element; monomials are stored in the motivic word format so
/// results can be compared directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalElement {
    prime: Prime,
    terms: BTreeMap<OpMonomial, u32>,
}

impl ClassicalElement {
    pub fn zero(prime: Prime) -> Self {
        ClassicalElement {
            prime,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: OpMonomial) -> Self {
        let mut out = Self::zero(m.prime());
        out.add_term(1, m);
        out
    }

    pub fn from_squares(squares: &[u32]) -> Self {
        match OpMonomial::from_squares(squares) {
            Some(m) => Self::from_monomial(m),
            None => Self::zero(Prime::TWO),
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpMonomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &OpMonomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, c: u32, m: OpMonomial) {
        let p = self.prime;
        let entry = self.terms.entry(m).or_insert(0);
        *entry = p.add(*entry, c % p.value());
        self.terms.retain(|_, c| *c != 0);
    }

    pub fn is_admissible(&self) -> bool {
        self.terms.keys().all(OpMonomial::is_admissible)
    }
}

impl fmt::Display for ClassicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (*c, m.is_identity()) {
                (c, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{m}")?,
                (c, false) => write!(f, "{c} {m}")?,
            }
        }
        Ok(())
    }
}

/// Sets `rho = 0`, `tau = 1`.
pub fn realize(e: &OpElement) -> ClassicalElement {
    let prime = e.ring().prime();
    let mut out = ClassicalElement::zero(prime);
    for (m, c) in e.terms() {
        out.add_term(c.specialize(0, 1), m.clone());
    }
    out
}

/// Rewrites a classical element to the admissible basis.
pub fn classical_normalize(e: &ClassicalElement) -> ClassicalElement {
    let prime = e.prime;
    let mut out = ClassicalElement::zero(prime);
    if prime.is_two() {
        let start = e.terms.iter().map(|(m, &c)| (m.squares(), c)).collect();
        for (s, c) in squares::normalize(start) {
            if let Some(m) = OpMonomial::from_squares(&s) {
                out.add_term(c, m);
            }
        }
    } else {
        let start = e
            .terms
            .iter()
            .map(|(m, &c)| {
                (
                    m.word().iter().map(|&g| letters::Letter::from(g)).collect(),
                    c,
                )
            })
            .collect();
        for (w, c) in letters::normalize(prime, start) {
            let word = w.into_iter().map(OpGenerator::from);
            if let Some(m) = OpMonomial::new(prime, word) {
                out.add_term(c, m);
            }
        }
    }
    out
}

/// Normalizes the composite `Sq^{s_1} Sq^{s_2} ...` (`l = 2`) by the square
/// rewriting alone. Sequences containing `Sq^1 Sq^{odd}` are accepted and
/// reduced like any other.
pub fn classical_normalize_squares(squares: &[u32]) -> ClassicalElement {
    let s: Vec<u32> = squares.iter().copied().filter(|&a| a > 0).collect();
    let mut out = ClassicalElement::zero(Prime::TWO);
    for (s, c) in squares::normalize(BTreeMap::from([(s, 1)])) {
        if let Some(m) = OpMonomial::from_squares(&s) {
            out.add_term(c, m);
        }
    }
    out
}

/// Normalizes the product `x y` in the classical algebra.
pub fn classical_multiply(x: &ClassicalElement, y: &ClassicalElement) -> ClassicalElement {
    assert_eq!(x.prime, y.prime);
    let mut raw = ClassicalElement::zero(x.prime);
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            if let Some(m) = a.compose(b) {
                raw.add_term(x.prime.mul(*ca, *cb), m);
            }
        }
    }
    classical_normalize(&raw)
}

// n choose k mod l by expanding both in base l.
fn binomial(n: i64, k: i64, l: u32) -> u32 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let l = l as i64;
    let (mut n, mut k) = (n, k);
    let mut acc: i64 = 1;
    while k > 0 {
        let (nd, kd) = (n % l, k % l);
        if kd > nd {
            return 0;
        }
        let mut small: i64 = 1;
        for i in 0..kd {
            small = small * (nd - i) / (i + 1);
        }
        acc = acc * (small % l) % l;
        n /= l;
        k /= l;
    }
    acc as u32
}

mod squares {
    use super::binomial;
    use std::collections::BTreeMap;

    pub(super) fn normalize(start: BTreeMap<Vec<u32>, u32>) -> BTreeMap<Vec<u32>, u32> {
        let mut pending: BTreeMap<Vec<u32>, u32> = start;
        let mut done: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        while let Some((s, c)) = pending.pop_last() {
            if c % 2 == 0 {
                continue;
            }
            let Some(i) = (0..s.len().saturating_sub(1))
                .rev()
                .find(|&i| s[i] < 2 * s[i + 1])
            else {
                toggle(&mut done, s);
                continue;
            };
            let (a, b) = (s[i] as i64, s[i + 1] as i64);
            for t in 0..=a / 2 {
                if binomial(b - t - 1, a - 2 * t, 2) == 1 {
                    let mut next: Vec<u32> = s[..i].to_vec();
                    next.push((a + b - t) as u32);
                    if t > 0 {
                        next.push(t as u32);
                    }
                    next.extend_from_slice(&s[i + 2..]);
                    toggle(&mut pending, next);
                }
            }
        }
        done.into_keys().map(|s| (s, 1)).collect()
    }

    fn toggle(map: &mut BTreeMap<Vec<u32>, u32>, key: Vec<u32>) {
        if map.remove(&key).is_none() {
            map.insert(key, 1);
        }
    }
}

mod letters {
    use super::binomial;
    use crate::coefficients::Prime;
    use crate::ops::OpGenerator;
    use std::collections::BTreeMap;

    #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
    pub(super) enum Letter {
        Beta,
        Pow(u32),
    }

    impl From<OpGenerator> for Letter {
        fn from(g: OpGenerator) -> Letter {
            match g {
                OpGenerator::Bockstein => Letter::Beta,
                OpGenerator::Power(i) => Letter::Pow(i),
            }
        }
    }

    impl From<Letter> for OpGenerator {
        fn from(g: Letter) -> OpGenerator {
            match g {
                Letter::Beta => OpGenerator::Bockstein,
                Letter::Pow(i) => OpGenerator::Power(i),
            }
        }
    }

    type Word = Vec<Letter>;

    fn clean(w: Word) -> Option<Word> {
        let w: Word = w.into_iter().filter(|g| *g != Letter::Pow(0)).collect();
        if w.windows(2).any(|p| p == [Letter::Beta, Letter::Beta]) {
            None
        } else {
            Some(w)
        }
    }

    // Rightmost P^a (beta) P^b with a < l b + e, as (index of P^a, has beta).
    fn rightmost_bad(w: &Word, l: u32) -> Option<(usize, bool)> {
        let powers: Vec<usize> = (0..w.len())
            .filter(|&i| matches!(w[i], Letter::Pow(_)))
            .collect();
        for pair in powers.windows(2).rev() {
            let (i, j) = (pair[0], pair[1]);
            let (Letter::Pow(a), Letter::Pow(b)) = (w[i], w[j]) else {
                unreachable!()
            };
            let e = (j - i == 2) as u32;
            if a < l * b + e {
                return Some((i, e == 1));
            }
        }
        None
    }

    pub(super) fn normalize(prime: Prime, start: BTreeMap<Word, u32>) -> BTreeMap<Word, u32> {
        let l = prime.value();
        let li = l as i64;
        let mut pending: BTreeMap<Word, u32> = BTreeMap::new();
        for (w, c) in start {
            if let Some(w) = clean(w) {
                add(&mut pending, w, c, l);
            }
        }
        let mut done = BTreeMap::new();
        while let Some((w, c)) = pending.pop_last() {
            let Some((i, mid)) = rightmost_bad(&w, l) else {
                add(&mut done, w, c, l);
                continue;
            };
            let j = i + 1 + mid as usize;
            let (Letter::Pow(a), Letter::Pow(b)) = (w[i], w[j]) else {
                unreachable!()
            };
            let (a, b) = (a as i64, b as i64);
            let sign = |n: i64| if n.rem_euclid(2) == 0 { 1 } else { l - 1 };
            let mut emit = |coeff: u32, middle: Vec<Letter>| {
                if coeff == 0 {
                    return;
                }
                let mut next: Word = w[..i].to_vec();
                next.extend(middle);
                next.extend_from_slice(&w[j + 1..]);
                if let Some(next) = clean(next) {
                    add(
                        &mut pending,
                        next,
                        ((c as u64 * coeff as u64) % l as u64) as u32,
                        l,
                    );
                }
            };
            let pw = |n: i64| Letter::Pow(n as u32);
            for t in 0..=a / li {
                if !mid {
                    let k = binomial((li - 1) * (b - t) - 1, a - li * t, l);
                    emit(k * sign(a + t) % l, vec![pw(a + b - t), pw(t)]);
                } else {
                    let k = binomial((li - 1) * (b - t), a - li * t, l);
                    emit(
                        k * sign(a + t) % l,
                        vec![Letter::Beta, pw(a + b - t), pw(t)],
                    );
                    let k = binomial((li - 1) * (b - t) - 1, a - li * t - 1, l);
                    emit(
                        k * sign(a + t - 1) % l,
                        vec![pw(a + b - t), Letter::Beta, pw(t)],
                    );
                }
            }
        }
        done
    }

    fn add(map: &mut BTreeMap<Word, u32>, w: Word, c: u32, l: u32) {
        let entry = map.entry(w.clone()).or_insert(0);
        *entry = (*entry + c) % l;
        if *entry == 0 {
            map.remove(&w);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_match_pascal() {
        for l in [2u32, 3, 5] {
            let mut row = vec![1u64];
            for n in 0..40i64 {
                for (k, &v) in row.iter().enumerate() {
                    assert_eq!(
                        binomial(n, k as i64, l),
                        (v % l as u64) as u32,
                        "C({n},{k}) mod {l}"
                    );
                }
                let mut next = vec![1u64; row.len() + 1];
                for k in 1..row.len() {
                    next[k] = row[k - 1] + row[k];
                }
                row = next;
            }
        }
    }

    #[test]
    fn classical_two() {
        let sq = ClassicalElement::from_squares;
        assert!(classical_normalize(&sq(&[1, 1])).is_zero());
        assert_eq!(classical_normalize(&sq(&[2, 2])), sq(&[3, 1]));
        let mut expected = sq(&[5]);
        expected.add_term(1, OpMonomial::from_squares(&[4, 1]).unwrap());
        assert_eq!(classical_normalize(&sq(&[2, 3])), expected);
        assert_eq!(classical_multiply(&sq(&[1]), &sq(&[2])), sq(&[3]));
    }

    #[test]
    fn classical_three() {
        let p = Prime::THREE;
        let word = |w: &[OpGenerator]| {
            ClassicalElement::from_monomial(OpMonomial::new(p, w.iter().copied()).unwrap())
        };
        use OpGenerator::{Bockstein as B, Power as P};
        let got = classical_normalize(&word(&[P(1), P(1)]));
        let mut expected = ClassicalElement::zero(p);
        expected.add_term(2, OpMonomial::new(p, [P(2)]).unwrap());
        assert_eq!(got, expected);
        let got = classical_normalize(&word(&[P(1), B, P(1)]));
        let mut expected = ClassicalElement::zero(p);
        expected.add_term(1, OpMonomial::new(p, [B, P(2)]).unwrap());
        expected.add_term(1, OpMonomial::new(p, [P(2), B]).unwrap());
        assert_eq!(got, expected);
    }
}
