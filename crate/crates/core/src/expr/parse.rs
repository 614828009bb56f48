//! Text grammar for expressions:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' int | '^' '(' int ')')?
//! atom  := number | number 'i' | 'i' | 'pi' | name | ('exp' | 'log') '(' expr ')' | '(' expr ')'
//! ```
//!
//! `int` may carry a leading `-`. Complex literals are written as sums,
//! e.g. `(1+2i)`.

use num_complex::Complex64;

use super::Expr;
use crate::error::{Error, Result};

/// Parses a single-variable expression in `zeta` (alias `z`).
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser::new(src, &["zeta"]);
    p.aliases = &[("z", 0)];
    p.parse_all()
}

/// Parses an expression whose variables are `names[k] ↦ Var(k)`.
pub fn parse_with_vars(src: &str, names: &[&str]) -> Result<Expr> {
    Parser::new(src, names).parse_all()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    names: &'a [&'a str],
    aliases: &'a [(&'a str, usize)],
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, names: &'a [&'a str]) -> Self {
        Parser { src, pos: 0, names, aliases: &[] }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(ch) = self.rest().chars().next() {
            if !ch.is_whitespace() {
                break;
            }
            self.pos += ch.len_utf8();
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            self.err(format!("expected `{ch}`"))
        }
    }

    fn parse_all(&mut self) -> Result<Expr> {
        let e = self.expr()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = lhs + self.term()?;
            } else if self.eat('-') {
                lhs = lhs - self.term()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = lhs * self.unary()?;
            } else if self.eat('/') {
                lhs = lhs / self.unary()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let negative = self.eat('-');
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return self.err("exponent must be an integer");
        }
        self.pos += digits.len();
        let mut n: i32 = match digits.parse() {
            Ok(n) => n,
            Err(_) => return self.err("exponent out of range"),
        };
        if negative {
            n = -n;
        }
        if paren {
            self.expect(')')?;
        }
        Ok(base.powi(n))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(ch) if ch.is_ascii_digit() || ch == '.' => self.number(),
            Some(ch) if ch.is_alphabetic() || ch == '_' => self.word(),
            Some(ch) => self.err(format!("unexpected character `{ch}`")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let bytes = self.rest().as_bytes();
        let mut end = 0;
        while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
            end += 1;
        }
        // exponent part: e[+-]digits
        if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
            let mut k = end + 1;
            if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                k += 1;
            }
            let digits_start = k;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            if k > digits_start {
                end = k;
            }
        }
        let text = &self.rest()[..end];
        let value: f64 = match text.parse() {
            Ok(v) => v,
            Err(_) => return self.err(format!("bad number `{text}`")),
        };
        self.pos += end;
        // imaginary suffix, but not the start of an identifier like `inf`
        let rest = self.rest();
        if rest.starts_with('i') && !rest[1..].starts_with(|c: char| c.is_alphanumeric() || c == '_')
        {
            self.pos += 1;
            return Ok(Expr::Const(Complex64::new(0.0, value)));
        }
        Ok(Expr::Const(Complex64::new(value, 0.0)))
    }

    fn word(&mut self) -> Result<Expr> {
        let start = self.pos;
        let word: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_alphanumeric() || *c == '_')
            .collect();
        self.pos += word.len();
        match word.as_str() {
            "i" => return Ok(Expr::imag(1.0)),
            "pi" => return Ok(Expr::real(std::f64::consts::PI)),
            "exp" | "log" => {
                self.expect('(')?;
                let arg = self.expr()?;
                self.expect(')')?;
                return Ok(if word == "exp" { arg.exp() } else { arg.ln() });
            }
            _ => {}
        }
        if let Some(k) = self.names.iter().position(|n| *n == word) {
            return Ok(Expr::Var(k));
        }
        if let Some((_, k)) = self.aliases.iter().find(|(n, _)| *n == word) {
            return Ok(Expr::Var(*k));
        }
        self.pos = start;
        self.err(format!("unknown name `{word}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn catalog_data_parses() {
        let m = parse("-1/(2*zeta^2)").unwrap();
        assert_eq!(m.eval(c(2.0, 0.0)).unwrap(), c(-0.125, 0.0));
        let h = parse("-i/(2*zeta^2)").unwrap();
        assert_eq!(h.eval(c(2.0, 0.0)).unwrap(), c(0.0, -0.125));
    }

    #[test]
    fn complex_literals_and_functions() {
        let e = parse("(1+2i) * exp(z) + log(zeta) - 3.5e-1i").unwrap();
        let z = c(0.3, -0.2);
        let expect = c(1.0, 2.0) * z.exp() + z.ln() - c(0.0, 0.35);
        assert!((e.eval(z).unwrap() - expect).norm() < 1e-15);
    }

    #[test]
    fn negative_exponents_and_precedence() {
        let e = parse("-zeta^-2 + zeta^(3)").unwrap();
        let z = c(1.5, 0.5);
        let expect = -(z.powi(-2)) + z.powi(3);
        assert!((e.eval(z).unwrap() - expect).norm() < 1e-14);
        let e = parse("2*3-4/2").unwrap();
        assert_eq!(e.eval(z).unwrap(), c(4.0, 0.0));
    }

    #[test]
    fn two_variable_names() {
        let e = parse_with_vars("x*y + y^2", &["x", "y"]).unwrap();
        assert_eq!(e.eval_at(&[c(1.0, 0.0), c(2.0, 0.0)]).unwrap(), c(6.0, 0.0));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("zeta +"), Err(Error::Parse { .. })));
        assert!(matches!(parse("zeta^1.5"), Err(Error::Parse { .. })));
        assert!(matches!(parse("sin(zeta)"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse("(zeta"), Err(Error::Parse { .. })));
        assert!(matches!(parse("zeta)"), Err(Error::Parse { pos: 4, .. })));
    }
}
