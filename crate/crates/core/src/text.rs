//! Small hand-rolled scanner shared by the text notations.

use crate::error::ParseError;

pub(crate) struct Scanner<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    pub(crate) fn new(input: &'a str) -> Self {
        Scanner { input, pos: 0 }
    }

    pub(crate) fn offset(&self) -> usize {
        self.pos
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.input[self.pos..].chars().next()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.input.len()
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_str(&mut self, s: &str) -> bool {
        if self.input[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.input, self.pos, message)
    }

    pub(crate) fn number(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        self.input[start..self.pos]
            .parse()
            .map_err(|_| ParseError::new(self.input, start, "number out of range"))
    }

    pub(crate) fn ident(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_alphabetic() || c == '_') {
            return Err(self.error("expected an identifier"));
        }
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.bump();
        }
        Ok(&self.input[start..self.pos])
    }
}

/// One side of a relation: either the literal `0` or a product of powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum RawWord<'a> {
    Zero,
    Factors(Vec<(&'a str, u32)>),
}

/// Parses `x^2*y` or `0`, with optional whitespace around `*` and `^`.
pub(crate) fn raw_word<'a>(sc: &mut Scanner<'a>) -> Result<RawWord<'a>, ParseError> {
    sc.skip_ws();
    if sc.peek() == Some('0') {
        sc.bump();
        return Ok(RawWord::Zero);
    }
    let mut factors = Vec::new();
    loop {
        sc.skip_ws();
        let name = sc.ident()?;
        sc.skip_ws();
        let exp = if sc.eat('^') {
            sc.skip_ws();
            let start = sc.offset();
            let e = sc.number()?;
            if e == 0 || e > u32::MAX as u64 {
                return Err(ParseError::new(sc.input, start, "exponent must be positive"));
            }
            e as u32
        } else {
            1
        };
        factors.push((name, exp));
        sc.skip_ws();
        if !sc.eat('*') {
            break;
        }
    }
    Ok(RawWord::Factors(factors))
}
