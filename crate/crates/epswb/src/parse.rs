//! Recursive-descent parser for the ordinal expression grammar:
//!
//! ```text
//! expr := term ("+" term)*
//! term := atom ("*" nat)?
//! atom := "0" | nat | "w" | "w^" atom | "w^(" expr ")" | "e(" expr ")"
//! ```
//!
//! The parser normalizes: non-canonical input such as `1+w` is folded through
//! the arithmetic constructors, so the result is always a canonical term.

use thiserror::Error;

use crate::term::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("coefficient overflow at byte {pos}")]
    Overflow { pos: usize },
    #[error("expression nesting deeper than {limit} at byte {pos}")]
    TooDeep { pos: usize, limit: usize },
    #[error("epsilon nesting deeper than {limit} at byte {pos}")]
    EpsTooDeep { pos: usize, limit: usize },
}

/// Limits applied while parsing untrusted input.
#[derive(Debug, Clone, Copy)]
pub struct ParseOptions {
    /// Maximum `e(...)` nesting depth.
    pub max_eps_depth: usize,
    /// Maximum recursion depth of the grammar (parentheses and `w^` chains).
    pub max_nesting: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { max_eps_depth: 32, max_nesting: 256 }
    }
}

/// Parse with default limits.
pub fn parse(text: &str) -> Result<Ordinal, ParseError> {
    parse_with(text, ParseOptions::default())
}

pub fn parse_with(text: &str, opts: ParseOptions) -> Result<Ordinal, ParseError> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0, opts, eps_depth: 0, nesting: 0 };
    p.skip_ws();
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    opts: ParseOptions,
    eps_depth: usize,
    nesting: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", byte as char)))
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.nesting += 1;
        if self.nesting > self.opts.max_nesting {
            return Err(ParseError::TooDeep { pos: self.pos, limit: self.opts.max_nesting });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Ordinal, ParseError> {
        self.enter()?;
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'+') {
                self.pos += 1;
                self.skip_ws();
                let t = self.term()?;
                acc = acc
                    .checked_add(&t)
                    .ok_or(ParseError::Overflow { pos: self.pos })?;
            } else {
                break;
            }
        }
        self.nesting -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, ParseError> {
        let a = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'*') {
            self.pos += 1;
            self.skip_ws();
            let n = self.nat()?;
            a.checked_mul(&Ordinal::nat(n)).ok_or(ParseError::Overflow { pos: self.pos })
        } else {
            Ok(a)
        }
    }

    fn atom(&mut self) -> Result<Ordinal, ParseError> {
        self.enter()?;
        let out = match self.peek() {
            Some(b'0'..=b'9') => {
                let n = self.nat()?;
                Ok(Ordinal::nat(n))
            }
            Some(b'w') => {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let exp = if self.peek() == Some(b'(') {
                        self.pos += 1;
                        self.skip_ws();
                        let e = self.expr()?;
                        self.skip_ws();
                        self.expect(b')')?;
                        e
                    } else {
                        self.atom()?
                    };
                    Ok(exp.omega_pow())
                } else {
                    Ok(Ordinal::omega())
                }
            }
            Some(b'e') => {
                self.pos += 1;
                self.expect(b'(')?;
                self.eps_depth += 1;
                if self.eps_depth > self.opts.max_eps_depth {
                    return Err(ParseError::EpsTooDeep {
                        pos: self.pos,
                        limit: self.opts.max_eps_depth,
                    });
                }
                self.skip_ws();
                let idx = self.expr()?;
                self.skip_ws();
                self.expect(b')')?;
                self.eps_depth -= 1;
                Ok(Ordinal::eps(idx))
            }
            _ => Err(self.err("expected an atom: '0', a number, 'w', 'w^', or 'e('")),
        };
        self.nesting -= 1;
        out
    }

    fn nat(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(b @ b'0'..=b'9') = self.peek() {
            value = value * 10 + u64::from(b - b'0');
            if value > u64::from(u32::MAX) {
                return Err(ParseError::Overflow { pos: start });
            }
            self.bump();
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        Ok(value as u32)
    }
}
