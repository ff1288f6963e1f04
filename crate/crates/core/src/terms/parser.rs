use num_bigint::BigInt;
use num_traits::Zero;

use super::Term;
use crate::error::ParseError;
use crate::series::Coefficient;

/// Parses a term; see [`parse_term_with`].
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    parse_term_with(text, &[])
}

/// Grammar:
///
/// ```text
/// term     := factor ("*"? factor)*
/// factor   := atom ("^" exponent)?
/// atom     := "y" | ident | "(" term ")" | "inv" "(" term ")"
/// exponent := "-"? int ("/" posint)? | "(" exponent ")"
/// ```
///
/// Identifiers in `reserved` are rejected where a constant is expected.
pub fn parse_term_with(text: &str, reserved: &[&str]) -> Result<Term, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        reserved,
    };
    let t = p.term()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected input"));
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    reserved: &'a [&'a str],
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.src.get(self.pos), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else if self.at_end() {
            Err(self.error(&format!("expected `{}`, found end of input", b as char)))
        } else {
            Err(self.error(&format!("expected `{}`", b as char)))
        }
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some(b) if b == b'(' || b.is_ascii_alphabetic())
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if !self.eat(b'*') && !self.starts_atom() {
                return Ok(acc);
            }
            let rhs = self.factor()?;
            acc = Term::mul(acc, rhs);
        }
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let q = self.exponent()?;
            Ok(Term::pow(base, q))
        } else {
            Ok(base)
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.src.get(self.pos), Some(b) if b.is_ascii_alphanumeric() || *b == b'_') {
            self.pos += 1;
        }
        String::from_utf8(self.src[start..self.pos].to_vec()).unwrap()
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(b')')?;
                Ok(t)
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident();
                match name.as_str() {
                    "y" => Ok(Term::Y),
                    "inv" => {
                        self.expect(b'(')?;
                        let t = self.term()?;
                        self.expect(b')')?;
                        Ok(Term::inv(t))
                    }
                    _ if self.reserved.contains(&name.as_str()) => {
                        Err(ParseError::new(start, format!("`{name}` is reserved")))
                    }
                    _ => Ok(Term::Const(name)),
                }
            }
            None => Err(self.error("unexpected end of input")),
            Some(_) => Err(self.error("unexpected character")),
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.src.get(self.pos), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .unwrap())
    }

    fn exponent(&mut self) -> Result<Coefficient, ParseError> {
        if self.eat(b'(') {
            let q = self.exponent()?;
            self.expect(b')')?;
            return Ok(q);
        }
        let negative = self.eat(b'-');
        let num = self.digits()?;
        let mut q = Coefficient::from_integer(num);
        if self.eat(b'/') {
            self.skip_ws();
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(ParseError::new(at, "zero denominator"));
            }
            q /= Coefficient::from_integer(den);
        }
        Ok(if negative { -q } else { q })
    }
}
