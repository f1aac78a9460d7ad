//! A small whitespace-tolerant cursor shared by every textual format.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arith::is_prime;
use crate::error::{ParseError, ParseErrorKind};
use crate::prime::Prime;

pub(crate) type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Debug, Clone)]
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    /// Skips whitespace, then consumes `lit` if it is next.
    pub fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    pub fn peek_is(&mut self, lit: &str) -> bool {
        self.skip_ws();
        self.rest().starts_with(lit)
    }

    pub fn expect(&mut self, lit: &str) -> PResult<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{lit}`")))
        }
    }

    pub fn expect_end(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.syntax("unexpected trailing input".to_string()))
        }
    }

    pub fn error(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        ParseError::new(pos, kind)
    }

    pub fn syntax(&self, msg: String) -> ParseError {
        let found = match self.rest().chars().next() {
            Some(c) => format!(", found `{c}`"),
            None => ", found end of input".to_string(),
        };
        ParseError::new(self.pos, ParseErrorKind::Syntax(format!("{msg}{found}")))
    }

    /// Decimal digits, no sign.
    pub fn digits(&mut self) -> PResult<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.syntax("expected a decimal number".to_string()));
        }
        self.pos += len;
        Ok((start, &self.src[start..start + len]))
    }

    pub fn nat(&mut self) -> PResult<BigUint> {
        let (_, text) = self.digits()?;
        Ok(text.parse().expect("ascii digits"))
    }

    pub fn u64(&mut self) -> PResult<u64> {
        let (start, text) = self.digits()?;
        text.parse()
            .map_err(|_| ParseError::new(start, ParseErrorKind::OutOfRange(text.to_string())))
    }

    /// A decimal number that must be prime.
    pub fn prime(&mut self) -> PResult<Prime> {
        let (start, text) = self.digits()?;
        let n: BigUint = text.parse().expect("ascii digits");
        if !is_prime(&n) {
            return Err(ParseError::new(start, ParseErrorKind::NotPrime(text.to_string())));
        }
        let small = n
            .to_u64()
            .ok_or_else(|| ParseError::new(start, ParseErrorKind::OutOfRange(text.to_string())))?;
        Ok(Prime::new_unchecked(small))
    }
}
