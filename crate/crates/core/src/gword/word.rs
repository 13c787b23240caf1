use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use super::Exponent;
use crate::error::{Error, ParseError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::A => "A",
            Letter::B => "B",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Block {
    pub letter: Letter,
    pub exponent: Exponent,
}

impl Block {
    pub fn new(letter: Letter, exponent: impl Into<Exponent>) -> Self {
        Self {
            letter,
            exponent: exponent.into(),
        }
    }
}

/// A generalized word: a finite product of real powers of `A` and `B`.
///
/// The block list is kept as given; [`Word::standard_form`] produces the
/// canonical representative (alternating, starting with `A`, ending with `B`).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Word {
    blocks: Vec<Block>,
}

/// One of the goodness-preserving word transformations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    Reversal,
    SwapLetters,
    /// Rotate by this many `(A, B)` block pairs.
    CyclePairs(i64),
    /// Multiply every exponent of the letter by a nonzero factor.
    Scale(Letter, Exponent),
}

impl Word {
    pub fn new(blocks: Vec<Block>) -> Self {
        Self { blocks }
    }

    /// The identity (empty) word.
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds `A^{p1} B^{q1} ... A^{pk} B^{qk}` from the two exponent lists.
    pub fn from_pairs(ps: &[Exponent], qs: &[Exponent]) -> Self {
        assert_eq!(ps.len(), qs.len(), "p and q lists must have equal length");
        let blocks = ps
            .iter()
            .zip(qs)
            .flat_map(|(p, q)| [Block::new(Letter::A, *p), Block::new(Letter::B, *q)])
            .collect();
        Self { blocks }
    }

    pub fn from_ints(ps: &[i64], qs: &[i64]) -> Self {
        let ps: Vec<_> = ps.iter().map(|&p| Exponent::int(p)).collect();
        let qs: Vec<_> = qs.iter().map(|&q| Exponent::int(q)).collect();
        Self::from_pairs(&ps, &qs)
    }

    pub fn from_reals(ps: &[f64], qs: &[f64]) -> Self {
        let ps: Vec<_> = ps.iter().map(|&p| Exponent::real(p)).collect();
        let qs: Vec<_> = qs.iter().map(|&q| Exponent::real(q)).collect();
        Self::from_pairs(&ps, &qs)
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Parser::new(text).word()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Drops zero exponents and merges neighbouring blocks of the same letter,
    /// without any cyclic rotation.
    pub fn normalized(&self) -> Word {
        let mut out: Vec<Block> = Vec::with_capacity(self.blocks.len());
        for block in &self.blocks {
            if block.exponent.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some(top) if top.letter == block.letter => {
                    top.exponent = top.exponent.add(&block.exponent);
                    if top.exponent.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(*block),
            }
        }
        Word { blocks: out }
    }

    /// Canonical standard form: normalized, cyclically merged, and rotated to
    /// start with an `A` block and end with a `B` block. Words that collapse
    /// to a single block (class 0) or to nothing are returned as such.
    pub fn standard_form(&self) -> Word {
        let mut blocks = self.normalized().blocks;
        while blocks.len() >= 2 && blocks[0].letter == blocks[blocks.len() - 1].letter {
            let last = blocks.pop().expect("non-empty");
            blocks[0].exponent = last.exponent.add(&blocks[0].exponent);
            blocks = Word { blocks }.normalized().blocks;
        }
        if blocks.len() >= 2 && blocks[0].letter == Letter::B {
            blocks.rotate_left(1);
        }
        Word { blocks }
    }

    pub fn is_standard(&self) -> bool {
        self.standard_form() == *self
    }

    /// Number of `A` blocks (equivalently `B` blocks) in standard form.
    pub fn class_number(&self) -> usize {
        self.standard_form().blocks.len() / 2
    }

    /// The exponent lists `(p, q)` of the standard form.
    pub fn exponent_pairs(&self) -> (Vec<Exponent>, Vec<Exponent>) {
        let sf = self.standard_form();
        if sf.blocks.len() < 2 {
            return (Vec::new(), Vec::new());
        }
        let ps = sf.blocks.iter().step_by(2).map(|b| b.exponent).collect();
        let qs = sf.blocks.iter().skip(1).step_by(2).map(|b| b.exponent).collect();
        (ps, qs)
    }

    pub fn all_rational(&self) -> bool {
        self.blocks.iter().all(|b| b.exponent.is_rational())
    }

    /// True when every exponent of the standard form is positive.
    pub fn is_positive(&self) -> bool {
        self.standard_form()
            .blocks
            .iter()
            .all(|b| b.exponent.is_positive())
    }

    pub fn transform(&self, kind: Transform) -> Result<Word> {
        Ok(match kind {
            Transform::Reversal => self.reversal(),
            Transform::SwapLetters => self.swap_letters(),
            Transform::CyclePairs(j) => self.cycle_pairs(j),
            Transform::Scale(letter, c) => self.scale(letter, c)?,
        })
    }

    pub fn reversal(&self) -> Word {
        let mut blocks = self.blocks.clone();
        blocks.reverse();
        Word { blocks }.standard_form()
    }

    pub fn swap_letters(&self) -> Word {
        let blocks = self
            .blocks
            .iter()
            .map(|b| Block::new(b.letter.other(), b.exponent))
            .collect();
        Word { blocks }.standard_form()
    }

    /// Rotates the standard form left by `j` block pairs (negative `j`
    /// rotates right).
    pub fn cycle_pairs(&self, j: i64) -> Word {
        let mut sf = self.standard_form();
        let k = sf.blocks.len() / 2;
        if k == 0 {
            return sf;
        }
        let shift = j.rem_euclid(k as i64) as usize;
        sf.blocks.rotate_left(2 * shift);
        sf
    }

    pub fn scale(&self, letter: Letter, c: Exponent) -> Result<Word> {
        if c.is_zero() {
            return Err(Error::ZeroScale);
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                if b.letter == letter {
                    Block::new(letter, b.exponent.mul(&c))
                } else {
                    *b
                }
            })
            .collect();
        Ok(Word { blocks }.standard_form())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("I");
        }
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", block.letter)?;
            if block.exponent != Exponent::int(1) {
                write!(f, "^{}", block.exponent)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

/// Parses a single exponent literal (`3`, `-2`, `1.25`, `3/2`).
pub fn parse_exponent(text: &str) -> Result<Exponent, ParseError> {
    let mut parser = Parser::new(text);
    parser.skip_ws();
    let e = parser.number()?;
    parser.skip_ws();
    if parser.pos < parser.bytes.len() {
        return Err(ParseError::new(parser.pos, "unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut blocks = Vec::new();
        self.skip_ws();
        if self.bytes[self.pos..].trim_ascii() == b"I" {
            return Ok(Word::identity());
        }
        while self.pos < self.bytes.len() {
            blocks.push(self.block()?);
            self.skip_ws();
        }
        if blocks.is_empty() {
            return Err(ParseError::new(self.pos, "empty word"));
        }
        Ok(Word { blocks })
    }

    fn block(&mut self) -> Result<Block, ParseError> {
        let letter = match self.peek() {
            Some(b'A') => Letter::A,
            Some(b'B') => Letter::B,
            _ => return Err(ParseError::new(self.pos, "expected letter A or B")),
        };
        self.pos += 1;
        let exponent = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.number()?
        } else {
            Exponent::int(1)
        };
        Ok(Block { letter, exponent })
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::new(start, "expected digits"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits"))
    }

    fn number(&mut self) -> Result<Exponent, ParseError> {
        let start = self.pos;
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let int_part = self.digits()?;
        match self.peek() {
            Some(b'.') => {
                self.pos += 1;
                let frac = self.digits()?;
                let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
                Ok(decimal(negative, int_part, frac)
                    .map(Exponent::Rational)
                    .unwrap_or_else(|| Exponent::Real(text.parse().expect("valid decimal"))))
            }
            Some(b'/') => {
                self.pos += 1;
                let den_pos = self.pos;
                let den_text = self.digits()?;
                let num: i64 = int_part
                    .parse()
                    .map_err(|_| ParseError::new(start, "numerator out of range"))?;
                let den: i64 = den_text
                    .parse()
                    .map_err(|_| ParseError::new(den_pos, "denominator out of range"))?;
                if den == 0 {
                    return Err(ParseError::new(den_pos, "division by zero"));
                }
                let num = if negative { -num } else { num };
                Ok(Exponent::Rational(Rational64::new(num, den)))
            }
            _ => {
                let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
                match text.parse::<i64>() {
                    Ok(n) => Ok(Exponent::int(n)),
                    Err(_) => Ok(Exponent::Real(text.parse().expect("valid integer text"))),
                }
            }
        }
    }
}

fn decimal(negative: bool, int_part: &str, frac: &str) -> Option<Rational64> {
    let den = 10i64.checked_pow(u32::try_from(frac.len()).ok()?)?;
    let int: i64 = int_part.parse().ok()?;
    let frac: i64 = frac.parse().ok()?;
    let num = int.checked_mul(den)?.checked_add(frac)?;
    Some(Rational64::new(if negative { -num } else { num }, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    #[test]
    fn parse_default_exponent() {
        assert_eq!(
            w("A B^2").blocks(),
            &[Block::new(Letter::A, 1), Block::new(Letter::B, 2)]
        );
    }

    #[test]
    fn parse_rational_and_negative() {
        let word = w("A^3/2 B^-2");
        assert_eq!(word.blocks()[0].exponent, Exponent::ratio(3, 2));
        assert!(word.blocks()[0].exponent.is_rational());
        assert_eq!(word.blocks()[1].exponent, Exponent::int(-2));
    }

    #[test]
    fn parse_decimal_is_exact() {
        let word = w("A^1.25B^-0.5");
        assert_eq!(word.blocks()[0].exponent, Exponent::ratio(5, 4));
        assert_eq!(word.blocks()[1].exponent, Exponent::ratio(-1, 2));
    }

    #[test]
    fn parse_failures_report_offsets() {
        assert_eq!(Word::parse("A^x B").unwrap_err().offset, 2);
        assert_eq!(Word::parse("A^3/0").unwrap_err().offset, 4);
        assert_eq!(Word::parse("A C").unwrap_err().offset, 2);
        assert_eq!(Word::parse("A^1.").unwrap_err().offset, 4);
        assert_eq!(Word::parse("A^-").unwrap_err().offset, 3);
        assert_eq!(Word::parse("   ").unwrap_err().offset, 3);
        assert!(Word::parse("A^1.5.3").is_err());
    }

    #[test]
    fn standard_form_merges_cyclically() {
        assert_eq!(w("A^2 B A^3").standard_form(), w("A^5 B"));
        assert_eq!(w("B^2 A^3").standard_form(), w("A^3 B^2"));
        let already = w("A B^2 A^-1 B^3");
        assert_eq!(already.standard_form(), already);
    }

    #[test]
    fn standard_form_degenerate_cases() {
        assert!(w("A B A^-1 B^-1 A^0").standard_form().blocks().len() == 4);
        assert!(w("A^2 A^-2").standard_form().is_empty());
        assert_eq!(w("A B^0 A^2").standard_form(), w("A^3"));
        assert_eq!(w("A B A^-1").standard_form(), w("B"));
        assert_eq!(w("A^2 B^0").class_number(), 0);
    }

    #[test]
    fn transforms() {
        assert_eq!(w("A^2 B^3").reversal(), w("A^2 B^3"));
        assert_eq!(
            w("A B^2 A^3 B^4").cycle_pairs(1),
            w("A^3 B^4 A B^2")
        );
        assert_eq!(
            w("A B^2 A^3 B^4").cycle_pairs(-1),
            w("A^3 B^4 A B^2")
        );
        assert_eq!(w("A B^3").scale(Letter::A, Exponent::int(2)).unwrap(), w("A^2 B^3"));
        assert!(matches!(
            w("A B").scale(Letter::B, Exponent::int(0)),
            Err(Error::ZeroScale)
        ));
        assert_eq!(w("A B^2 A^3 B^4").swap_letters(), w("A^2 B^3 A^4 B"));
    }

    #[test]
    fn display_round_trip() {
        for text in ["A B^2", "A^3/2 B^-2 A^7 B^1/3", "A^-1/2 B"] {
            let word = w(text);
            assert_eq!(w(&word.to_string()), word);
        }
        assert_eq!(Word::identity().to_string(), "I");
    }
}
