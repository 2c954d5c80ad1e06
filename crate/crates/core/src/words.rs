//! Free-group words over the ordered generators `a0 < a1 < … < a(d-1)`.
//!
//! Text syntax:
//!
//! ```text
//! expr := term+
//! term := atom ('^' int)?
//! atom := NAME | '1' | '(' expr ')' | '[' expr (',' expr)+ ']'
//! ```
//!
//! Juxtaposition is the product and brackets are left-normed commutators,
//! `[x,y,z] = [[x,y],z]` with `[x,y] = x^-1 y^-1 x y`. A `NAME` is either a
//! single lowercase letter (`a`, `b`, `c`, … for indices 0, 1, 2, …) or `a`
//! followed by decimal digits (`a0`, `a17`). The empty string and `1` both
//! denote the identity.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, GroupParams, Result};

/// Longest word (in syllables) the parser will build when expanding powers.
pub const MAX_WORD_SYLLABLES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub exp: BigInt,
}

/// A freely reduced word: adjacent letters always have distinct generators
/// and every exponent is nonzero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(gen: usize) -> Self {
        Word::letter(gen, BigInt::one())
    }

    pub fn letter(gen: usize, exp: impl Into<BigInt>) -> Self {
        let mut w = Word::identity();
        w.push(gen, exp.into());
        w
    }

    /// Builds a word from raw `(generator, exponent)` pairs, freely reducing.
    pub fn from_letters<I, E>(letters: I) -> Self
    where
        I: IntoIterator<Item = (usize, E)>,
        E: Into<BigInt>,
    {
        let mut w = Word::identity();
        for (g, e) in letters {
            w.push(g, e.into());
        }
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables `g^e`.
    pub fn syllables(&self) -> usize {
        self.letters.len()
    }

    /// Sum of the absolute values of all exponents.
    pub fn length(&self) -> BigInt {
        self.letters.iter().map(|l| l.exp.abs()).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    fn push(&mut self, gen: usize, exp: BigInt) {
        if exp.is_zero() {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.gen == gen {
                last.exp += exp;
                if last.exp.is_zero() {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push(Letter { gen, exp });
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.gen, l.exp.clone());
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter { gen: l.gen, exp: -&l.exp })
                .collect(),
        }
    }

    /// `self^n`; fails if the expanded word would exceed [`MAX_WORD_SYLLABLES`].
    pub fn pow(&self, n: &BigInt) -> Result<Word> {
        if n.is_zero() || self.is_identity() {
            return Ok(Word::identity());
        }
        if self.letters.len() == 1 {
            let l = &self.letters[0];
            return Ok(Word::letter(l.gen, &l.exp * n));
        }
        let base = if n.is_negative() { self.inverse() } else { self.clone() };
        let reps = n
            .abs()
            .to_usize()
            .filter(|r| r.saturating_mul(base.letters.len()) <= MAX_WORD_SYLLABLES)
            .ok_or_else(|| Error::InvalidInput("word power too large to expand".into()))?;
        let mut w = Word::identity();
        for _ in 0..reps {
            w = w.mul(&base);
        }
        Ok(w)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.inverse().mul(&y.inverse()).mul(x).mul(y)
    }

    /// Left-normed commutator `[x1, …, xn]`; a single word is returned as is.
    pub fn left_normed(xs: &[Word]) -> Option<Word> {
        let (first, rest) = xs.split_first()?;
        Some(rest.iter().fold(first.clone(), |acc, y| Word::commutator(&acc, y)))
    }

    /// Deletes every letter whose generator is not in `keep` and freely reduces.
    pub fn retract(&self, keep: &BTreeSet<usize>) -> Word {
        Word::from_letters(
            self.letters
                .iter()
                .filter(|l| keep.contains(&l.gen))
                .map(|l| (l.gen, l.exp.clone())),
        )
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.letters.iter().find(|l| l.gen >= rank) {
            Some(l) => Err(Error::GeneratorOutOfRange {
                name: generator_name(l.gen, rank.max(l.gen + 1)),
                index: l.gen,
                rank,
            }),
            None => Ok(()),
        }
    }

    /// Text form using the naming convention of `rank`.
    pub fn display(&self, rank: usize) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|l| {
                let name = generator_name(l.gen, rank);
                if l.exp.is_one() {
                    name
                } else {
                    format!("{}^{}", name, l.exp)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rank = self.max_generator().map_or(1, |g| g + 1);
        f.write_str(&self.display(rank))
    }
}

/// Printed name of generator `index`: `a`, `b`, `c` when the rank is at
/// most three, `a0`, `a1`, … otherwise.
pub fn generator_name(index: usize, rank: usize) -> String {
    if rank <= 3 {
        ((b'a' + index as u8) as char).to_string()
    } else {
        format!("a{index}")
    }
}

/// Parses `text` and checks every generator against `params.rank`.
pub fn parse_word(text: &str, params: GroupParams) -> Result<Word> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, rank: params.rank };
    p.skip_ws();
    if p.at_end() {
        return Ok(Word::identity());
    }
    let w = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(format!("unexpected `{}`", p.peek_char())));
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    rank: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or('?')
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == b'_' || c == b'(' || c == b'[' || c == b'1')
    }

    fn expr(&mut self) -> Result<Word> {
        let mut w = Word::identity();
        self.skip_ws();
        if !self.starts_atom() {
            return Err(if self.at_end() {
                self.error("expected a term, found end of input")
            } else {
                self.error(format!("expected a term, found `{}`", self.peek_char()))
            });
        }
        while self.starts_atom() {
            let t = self.term()?;
            w = w.mul(&t);
            if w.syllables() > MAX_WORD_SYLLABLES {
                return Err(Error::InvalidInput("word too long".into()));
            }
            self.skip_ws();
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer()?;
            atom.pow(&n)
        } else {
            Ok(atom)
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error("expected an integer exponent"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        s.parse::<BigInt>().map_err(|e| Error::Syntax { pos: start, msg: e.to_string() })
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.expr()?;
                self.skip_ws();
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut parts = vec![self.expr()?];
                self.skip_ws();
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    parts.push(self.expr()?);
                    self.skip_ws();
                }
                if parts.len() < 2 {
                    return Err(self.error("commutator needs at least two entries"));
                }
                self.expect(b']')?;
                Ok(Word::left_normed(&parts).expect("nonempty"))
            }
            Some(b'1') => {
                self.pos += 1;
                if matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                    return Err(self.error("unexpected digits"));
                }
                Ok(Word::identity())
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.name(),
            Some(_) => Err(self.error(format!("unexpected `{}`", self.peek_char()))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else if self.at_end() {
            Err(self.error(format!("expected `{}`, found end of input", c as char)))
        } else {
            Err(self.error(format!("expected `{}`, found `{}`", c as char, self.peek_char())))
        }
    }

    fn name(&mut self) -> Result<Word> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let bytes = name.as_bytes();
        let index = if bytes.len() == 1 && bytes[0].is_ascii_lowercase() {
            Some((bytes[0] - b'a') as usize)
        } else if bytes[0] == b'a' && bytes[1..].iter().all(u8::is_ascii_digit) {
            name[1..].parse::<usize>().ok()
        } else {
            None
        };
        let index = index.ok_or_else(|| Error::UnknownGenerator { name: name.to_string(), pos: start })?;
        if index >= self.rank {
            return Err(Error::GeneratorOutOfRange { name: name.to_string(), index, rank: self.rank });
        }
        Ok(Word::generator(index))
    }
}
