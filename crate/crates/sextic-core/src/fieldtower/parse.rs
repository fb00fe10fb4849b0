//! Infix parser for rational expressions over declared variables.
//!
//! Grammar: sums and differences of products and quotients of powers; atoms
//! are integers, declared variable names, the reserved name `w` for ω, and
//! parenthesized expressions. Exponents may be negative integers.

use super::qw::Qw;
use super::ratfn::RatFn;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character '{0}' at offset {1}")]
    UnexpectedChar(char, usize),
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0} at offset {1}")]
    Expected(&'static str, usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable name 'w' is reserved for the cube root of unity")]
    ReservedName,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse::<i64>().map_err(|_| ParseError::UnexpectedChar(c, start))?;
            out.push((Tok::Num(n), start));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(ParseError::UnexpectedChar(c, i));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(usize::MAX)
    }

    fn expr(&mut self) -> Result<RatFn, ParseError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFn, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '*' && c != '/' {
                break;
            }
            self.pos += 1;
            let f = self.unary()?;
            acc = if c == '*' { acc.mul(&f) } else { acc.div(&f).ok_or(ParseError::DivisionByZero)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFn, ParseError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if let Some(Tok::Op('+')) = self.peek() {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let mut sign = 1;
        let mut paren = false;
        if let Some(Tok::Op('(')) = self.peek() {
            paren = true;
            self.pos += 1;
        }
        if let Some(Tok::Op('-')) = self.peek() {
            sign = -1;
            self.pos += 1;
        }
        let e = match self.peek() {
            Some(Tok::Num(n)) => *n,
            _ => return Err(ParseError::Expected("integer exponent", self.offset())),
        };
        self.pos += 1;
        if paren {
            match self.peek() {
                Some(Tok::Op(')')) => self.pos += 1,
                _ => return Err(ParseError::Expected("')'", self.offset())),
            }
        }
        Ok(sign * e)
    }

    fn power(&mut self) -> Result<RatFn, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = self.exponent()?;
            return base.pow(e).ok_or(ParseError::DivisionByZero);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFn, ParseError> {
        let n = self.vars.len();
        let tok = self.peek().cloned().ok_or(ParseError::UnexpectedEnd)?;
        self.pos += 1;
        match tok {
            Tok::Num(k) => Ok(RatFn::int(n, k)),
            Tok::Ident(name) => {
                if name == "w" {
                    return Ok(RatFn::constant(n, Qw::omega()));
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(RatFn::var(n, i)),
                    None => Err(ParseError::UnknownVariable(name)),
                }
            }
            Tok::Op('(') => {
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(ParseError::Expected("')'", self.offset())),
                }
            }
            Tok::Op(c) => Err(ParseError::UnexpectedChar(c, self.toks[self.pos - 1].1)),
        }
    }
}

/// Parse an expression in the variables `vars`.
pub fn parse_ratfn(s: &str, vars: &[String]) -> Result<RatFn, ParseError> {
    if vars.iter().any(|v| v == "w") {
        return Err(ParseError::ReservedName);
    }
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0, vars };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        let (t, off) = p.toks[p.pos].clone();
        return Err(match t {
            Tok::Op(c) => ParseError::UnexpectedChar(c, off),
            _ => ParseError::Expected("operator", off),
        });
    }
    Ok(e)
}
