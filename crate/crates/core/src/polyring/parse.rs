use super::{MPoly, VarTable};
use crate::error::{Error, Result};
use crate::exactlin::Rational;
use num_bigint::BigInt;

/// Parses `2*x0^2 - 1/9*x1*(x2 + 3)` over `vars`.
///
/// Grammar: sums of products of signed powers; atoms are integers, variables
/// of the table and parenthesised expressions. `/` is allowed only by a
/// nonzero constant.
pub fn parse_poly(src: &str, vars: &VarTable) -> Result<MPoly> {
    let mut p = Parser { src, pos: 0, vars };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a VarTable,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        self.eat('+');
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(self.err("division by a non-constant or zero"));
                }
                acc = acc.scale(&d.constant_term().recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        if self.eat('-') {
            return Ok(-self.power()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let e: u32 = self.src[start..self.pos]
                .parse()
                .map_err(|_| self.err("expected a nonnegative integer exponent"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n: BigInt = self.src[start..self.pos].parse().expect("digits");
                Ok(MPoly::constant(self.vars, Rational::from_integer(n)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                let rest = &self.src[start..];
                self.pos += rest
                    .char_indices()
                    .find(|&(_, c)| !(c.is_alphanumeric() || c == '_'))
                    .map_or(rest.len(), |(i, _)| i);
                let name = &self.src[start..self.pos];
                match self.vars.index_of(name) {
                    Some(i) => Ok(MPoly::var(self.vars, i)),
                    None => Err(self.err(&format!("unknown variable {name:?}"))),
                }
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}
