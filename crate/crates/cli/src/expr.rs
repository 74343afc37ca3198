// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

//! Time expressions such as `pi/2`, `sqrt2*pi` or `-3.5e-1 + sqrt(3)`.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('+' | '-') factor | atom
//! atom   := number | 'pi' | 'sqrt2' | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```

use std::f64::consts::{PI, SQRT_2};

use thiserror::Error;

/// Nesting limit for parentheses and unary signs.
const MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("empty expression")]
    Empty,
    #[error("unexpected {found} at offset {offset}")]
    Unexpected { offset: usize, found: String },
    #[error("invalid number {0:?}")]
    Number(String),
    #[error("expression nests deeper than {MAX_DEPTH}")]
    TooDeep,
    #[error("expression evaluates to {0}, not a finite number")]
    NotFinite(f64),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn unexpected(&mut self) -> ExprError {
        let found = match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        ExprError::Unexpected {
            offset: self.pos,
            found,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn descend(&mut self) -> Result<(), ExprError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ExprError::TooDeep);
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<f64, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc += self.term()?;
            } else if self.eat('-') {
                acc -= self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<f64, ExprError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc *= self.factor()?;
            } else if self.eat('/') {
                acc /= self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<f64, ExprError> {
        self.descend()?;
        let value = if self.eat('-') {
            -self.factor()?
        } else if self.eat('+') {
            self.factor()?
        } else {
            self.atom()?
        };
        self.depth -= 1;
        Ok(value)
    }

    fn atom(&mut self) -> Result<f64, ExprError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.unexpected());
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let word_len = self.src[start..]
                    .find(|c: char| !c.is_ascii_alphanumeric())
                    .unwrap_or(self.src.len() - start);
                let word = &self.src[start..start + word_len];
                match word {
                    "pi" => {
                        self.pos += word_len;
                        Ok(PI)
                    }
                    "sqrt2" => {
                        self.pos += word_len;
                        Ok(SQRT_2)
                    }
                    "sqrt" => {
                        self.pos += word_len;
                        if !self.eat('(') {
                            return Err(self.unexpected());
                        }
                        let v = self.expr()?;
                        if !self.eat(')') {
                            return Err(self.unexpected());
                        }
                        Ok(v.sqrt())
                    }
                    _ => Err(ExprError::Unexpected {
                        offset: start,
                        found: format!("{word:?}"),
                    }),
                }
            }
            _ => Err(self.unexpected()),
        }
    }

    fn number(&mut self) -> Result<f64, ExprError> {
        let rest = &self.src[self.pos..];
        let bytes = rest.as_bytes();
        let mut end = 0;
        while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
            end += 1;
        }
        if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
            let mut exp = end + 1;
            if exp < bytes.len() && (bytes[exp] == b'+' || bytes[exp] == b'-') {
                exp += 1;
            }
            let digits = exp;
            while exp < bytes.len() && bytes[exp].is_ascii_digit() {
                exp += 1;
            }
            if exp > digits {
                end = exp;
            }
        }
        let text = &rest[..end];
        let value = text.parse::<f64>().map_err(|_| ExprError::Number(text.to_string()))?;
        self.pos += end;
        Ok(value)
    }
}

/// Evaluates a time expression to a finite double.
pub fn parse_time(src: &str) -> Result<f64, ExprError> {
    let mut p = Parser { src, pos: 0, depth: 0 };
    if p.peek().is_none() {
        return Err(ExprError::Empty);
    }
    let value = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    if !value.is_finite() {
        return Err(ExprError::NotFinite(value));
    }
    Ok(value)
}
