//! Text grammar for elements.
//!
//! ```text
//! element := term ('+' term)*
//! term    := factor+            scalars first, then generators
//! factor  := atom ('^' int)?
//! atom    := int | 'r' | 't' | '(' scalars ')'      scalar atoms
//!          | 'b' | 'P'int | 'Sq'int                 operation generators
//!          | 't'int | 'x'int                        dual generators
//! scalars := scalar-term ('+' scalar-term)*
//! ```
//!
//! `r` is rho and `t` is tau; `t0` is the dual generator tau_0. Generators
//! compose (or multiply) left to right. `Sq` is only accepted at `l = 2`,
//! and `P0` and `Sq0` are rejected.

use motivic_steenrod::{
    BaseScalar, ClassicalElement, CoeffRing, GammaElement, MilnorMonomial, OpElement, OpGenerator,
    OpMonomial, Prime,
};
use thiserror::Error;

/// Which grammar an input is read with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Op,
    Dual,
    Classical,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Rho,
    Tau,
    Beta,
    Pow(u64),
    Sq(u64),
    TauGen(u64),
    XiGen(u64),
    Caret,
    Plus,
    Open,
    Close,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |column: usize, message: String| ParseError { column, message };
    let digits = |i: &mut usize| -> Option<u64> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        (start < *i).then(|| chars[start..*i].iter().collect::<String>().parse().ok())?
    };
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '^' => {
                i += 1;
                Tok::Caret
            }
            '+' => {
                i += 1;
                Tok::Plus
            }
            '(' => {
                i += 1;
                Tok::Open
            }
            ')' => {
                i += 1;
                Tok::Close
            }
            '0'..='9' => {
                Tok::Int(digits(&mut i).ok_or_else(|| err(column, "integer too large".into()))?)
            }
            'r' => {
                i += 1;
                Tok::Rho
            }
            'b' => {
                i += 1;
                Tok::Beta
            }
            't' | 'x' | 'P' => {
                i += 1;
                let n = digits(&mut i);
                match (c, n) {
                    ('t', None) => Tok::Tau,
                    ('t', Some(r)) => Tok::TauGen(r),
                    ('x', Some(r)) => Tok::XiGen(r),
                    ('P', Some(k)) => Tok::Pow(k),
                    _ => return Err(err(column, format!("`{c}` must be followed by an index"))),
                }
            }
            'S' if chars.get(i + 1) == Some(&'q') => {
                i += 2;
                Tok::Sq(
                    digits(&mut i)
                        .ok_or_else(|| err(column, "`Sq` must be followed by an index".into()))?,
                )
            }
            _ => return Err(err(column, format!("unexpected character `{c}`"))),
        };
        if i < chars.len()
            && chars[i].is_ascii_alphanumeric()
            && !matches!(tok, Tok::Caret | Tok::Plus | Tok::Open | Tok::Close)
        {
            return Err(err(i + 1, format!("unexpected character `{}`", chars[i])));
        }
        out.push((column, tok));
    }
    Ok(out)
}

/// A parsed term: a scalar and a list of (column, generator) tokens, each
/// with its exponent.
struct Term {
    scalar: BaseScalar,
    generators: Vec<(usize, Tok, u64)>,
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    ring: CoeffRing,
    end_column: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |t| t.0)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn exponent(&mut self) -> Result<u64, ParseError> {
        if self.peek() != Some(Tok::Caret) {
            return Ok(1);
        }
        self.pos += 1;
        match self.peek() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.error("expected an exponent after `^`"),
        }
    }

    fn scalar_atom(&mut self) -> Result<Option<BaseScalar>, ParseError> {
        let ring = self.ring;
        let column = self.column();
        let atom = match self.peek() {
            Some(Tok::Int(n)) => {
                BaseScalar::constant(ring, (n % ring.prime().value() as u64) as i64)
            }
            Some(Tok::Rho) if ring.has_rho() => BaseScalar::rho(ring),
            Some(Tok::Tau) if ring.has_tau() => BaseScalar::tau(ring),
            Some(Tok::Rho) => return self.error(format!("`r` does not exist over {ring}")),
            Some(Tok::Tau) => return self.error(format!("`t` does not exist over {ring}")),
            Some(Tok::Open) => {
                self.pos += 1;
                let inner = self.scalar_sum()?;
                if self.peek() != Some(Tok::Close) {
                    return self.error("expected `)`");
                }
                inner
            }
            _ => return Ok(None),
        };
        self.pos += 1;
        let e = self.exponent()?;
        let e = u32::try_from(e).map_err(|_| ParseError {
            column,
            message: "exponent too large".into(),
        })?;
        Ok(Some(atom.pow(e)))
    }

    fn scalar_sum(&mut self) -> Result<BaseScalar, ParseError> {
        let mut total = BaseScalar::zero(self.ring);
        loop {
            let mut term = BaseScalar::one(self.ring);
            let mut any = false;
            while let Some(a) = self.scalar_atom()? {
                term = &term * &a;
                any = true;
            }
            if !any {
                return self.error("expected a scalar");
            }
            total += &term;
            if self.peek() != Some(Tok::Plus) {
                return Ok(total);
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut scalar = BaseScalar::one(self.ring);
        let mut any = false;
        while let Some(a) = self.scalar_atom()? {
            scalar = &scalar * &a;
            any = true;
        }
        let mut generators = Vec::new();
        while let Some(
            tok @ (Tok::Beta | Tok::Pow(_) | Tok::Sq(_) | Tok::TauGen(_) | Tok::XiGen(_)),
        ) = self.peek()
        {
            let column = self.column();
            self.pos += 1;
            let e = self.exponent()?;
            generators.push((column, tok, e));
            any = true;
        }
        if !any {
            return self.error("expected a term");
        }
        if let Some(Tok::Int(_) | Tok::Rho | Tok::Tau | Tok::Open) = self.peek() {
            return self.error("scalars must precede the generators of a term");
        }
        Ok(Term { scalar, generators })
    }

    fn terms(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut out = vec![self.term()?];
        while self.peek() == Some(Tok::Plus) {
            self.pos += 1;
            out.push(self.term()?);
        }
        if self.peek().is_some() {
            return self.error("expected `+` or end of input");
        }
        Ok(out)
    }
}

fn parse_terms(text: &str, ring: CoeffRing) -> Result<Vec<Term>, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        ring,
        end_column: text.chars().count() + 1,
    };
    p.terms()
}

fn op_word(prime: Prime, generators: &[(usize, Tok, u64)]) -> Result<Vec<OpGenerator>, ParseError> {
    let mut word = Vec::new();
    for &(column, tok, e) in generators {
        let err = |message: String| ParseError { column, message };
        let letters: Vec<OpGenerator> = match tok {
            Tok::Beta => vec![OpGenerator::Bockstein],
            Tok::Pow(0) => return Err(err("`P0` is not a generator".into())),
            Tok::Pow(k) => vec![OpGenerator::Power(
                u32::try_from(k).map_err(|_| err("index too large".into()))?,
            )],
            Tok::Sq(_) if !prime.is_two() => {
                return Err(err(format!(
                    "`Sq` is only available at l = 2, not l = {prime}"
                )))
            }
            Tok::Sq(0) => return Err(err("`Sq0` is not a generator".into())),
            Tok::Sq(k) => {
                let k = u32::try_from(k).map_err(|_| err("index too large".into()))?;
                let mut w = Vec::new();
                if k % 2 == 1 {
                    w.push(OpGenerator::Bockstein);
                }
                if k / 2 > 0 {
                    w.push(OpGenerator::Power(k / 2));
                }
                w
            }
            _ => return Err(err("dual generators are not operations".into())),
        };
        for _ in 0..e {
            word.extend_from_slice(&letters);
        }
    }
    Ok(word)
}

/// Reads an element of the motivic Steenrod algebra over `ring`.
pub fn parse_op(text: &str, ring: CoeffRing) -> Result<OpElement, ParseError> {
    let mut out = OpElement::zero(ring);
    for term in parse_terms(text, ring)? {
        let word = op_word(ring.prime(), &term.generators)?;
        if let Some(m) = OpMonomial::new(ring.prime(), word) {
            out.add_term(term.scalar, m);
        }
    }
    Ok(out)
}

/// Reads a classical element: prime-field scalars and operation generators.
pub fn parse_classical(text: &str, prime: Prime) -> Result<ClassicalElement, ParseError> {
    let ring = CoeffRing::closed(prime);
    let mut out = ClassicalElement::zero(prime);
    for term in parse_terms(text, ring)? {
        if !term.scalar.is_constant() {
            return Err(ParseError {
                column: 1,
                message: "classical coefficients are prime-field residues".into(),
            });
        }
        let word = op_word(prime, &term.generators)?;
        if let Some(m) = OpMonomial::new(prime, word) {
            out.add_term(term.scalar.constant_term(), m);
        }
    }
    Ok(out)
}

/// Reads an element of `Gamma`; products of generators use its multiplication.
pub fn parse_dual(text: &str, ring: CoeffRing) -> Result<GammaElement, ParseError> {
    let mut out = GammaElement::zero(ring);
    for term in parse_terms(text, ring)? {
        let mut value = GammaElement::scalar(term.scalar);
        for &(column, tok, e) in &term.generators {
            let err = |message: &str| ParseError {
                column,
                message: message.into(),
            };
            let index = |r: u64| {
                u32::try_from(r)
                    .ok()
                    .filter(|&r| r <= motivic_steenrod::dual::MAX_GENERATOR_INDEX)
            };
            let g = match tok {
                Tok::TauGen(r) => GammaElement::tau_generator(
                    ring,
                    index(r).ok_or_else(|| err("index too large"))?,
                ),
                Tok::XiGen(0) => return Err(err("`x0` is not a generator")),
                Tok::XiGen(r) => GammaElement::xi_generator(
                    ring,
                    index(r).ok_or_else(|| err("index too large"))?,
                ),
                _ => return Err(err("operation generators are not dual elements")),
            };
            let e = u32::try_from(e).map_err(|_| err("exponent too large"))?;
            value = &value * &g.pow(e);
        }
        out = &out + &value;
    }
    Ok(out)
}

/// Builds a Milnor monomial from a coefficient-free dual text such as `t0 x1^2`.
pub fn parse_milnor_monomial(text: &str, ring: CoeffRing) -> Result<MilnorMonomial, ParseError> {
    let g = parse_dual(text, ring)?;
    let mut terms = g.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if c.is_one() => Ok(*m),
        _ => Err(ParseError {
            column: 1,
            message: "expected a single Milnor monomial".into(),
        }),
    }
}
