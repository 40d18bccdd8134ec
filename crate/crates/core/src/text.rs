//! Text grammar for IFS files: `r = <rat> ; digits = <rat> (, <rat>)*`.
//!
//! Rationals are `[-]int[/int]`. Whitespace (including newlines) may appear
//! between any two tokens; a trailing `;` is accepted.

use thiserror::Error;

use crate::ifs::{HomogeneousIFS, IfsError};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Domain(#[from] IfsError),
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn location(&self) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..self.pos] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.location();
        ParseError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        self.skip_ws();
        let end = self.pos + word.chars().count();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(word.chars()) {
            self.pos = end;
            Ok(())
        } else {
            Err(self.error(format!("expected '{word}'")))
        }
    }

    fn integer(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let negative = self.peek() == Some('-');
        if negative {
            self.pos += 1;
        }
        let numer: num_bigint::BigInt = self.integer()?.parse().expect("ascii digits");
        self.skip_ws();
        let denom = if self.peek() == Some('/') {
            self.pos += 1;
            let at = self.pos;
            let d: num_bigint::BigInt = self.integer()?.parse().expect("ascii digits");
            if d == 0.into() {
                self.pos = at;
                self.skip_ws();
                return Err(self.error("zero denominator"));
            }
            d
        } else {
            1.into()
        };
        let numer = if negative { -numer } else { numer };
        Ok(Rational::new(numer, denom))
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.chars.len()
    }
}

/// Parses an IFS description. Digits may be listed in any order.
pub fn parse_ifs(text: &str) -> Result<HomogeneousIFS, ParseError> {
    let mut cur = Cursor::new(text);
    cur.keyword("r")?;
    cur.expect('=')?;
    let ratio = cur.rational()?;
    cur.expect(';')?;
    cur.keyword("digits")?;
    cur.expect('=')?;
    let mut digits = vec![cur.rational()?];
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some(',') => {
                cur.pos += 1;
                digits.push(cur.rational()?);
            }
            Some(';') => {
                cur.pos += 1;
                if !cur.at_end() {
                    return Err(cur.error("unexpected text after ';'"));
                }
                break;
            }
            None => break,
            Some(_) => return Err(cur.error("expected ',' or end of input")),
        }
    }
    Ok(HomogeneousIFS::from_digits(ratio, digits)?)
}

/// Canonical text form, e.g. `r = -1/3; digits = 1, 3`.
pub fn format_ifs(phi: &HomogeneousIFS) -> String {
    let digits: Vec<String> = phi.digits().iter().map(format_rational).collect();
    format!("r = {}; digits = {}", format_rational(phi.ratio()), digits.join(", "))
}
