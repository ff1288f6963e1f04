use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Coefficient, TruncatedSeries};
use crate::error::ParseError;

/// Parses the series text format, e.g. `1 - 1/2 t^2 + t^3 + O(t^5)`.
///
/// A trailing `O(t^k)` fixes the order to `k - 1`; otherwise `default_order`
/// is used. Terms above the order are dropped.
pub fn parse_series(text: &str, default_order: u32) -> Result<TruncatedSeries, ParseError> {
    let mut p = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms: Vec<(u32, Coefficient)> = Vec::new();
    let mut order = None;
    let mut first = true;
    loop {
        p.skip_ws();
        if p.at_end() {
            break;
        }
        let sign = match p.peek() {
            Some(b'+') => {
                p.pos += 1;
                false
            }
            Some(b'-') => {
                p.pos += 1;
                true
            }
            _ if first => false,
            _ => return Err(p.error("expected `+` or `-` between terms")),
        };
        first = false;
        p.skip_ws();
        if p.peek() == Some(b'O') {
            if sign {
                return Err(p.error("`O(...)` cannot be negated"));
            }
            order = Some(p.big_o()?);
            p.skip_ws();
            if !p.at_end() {
                return Err(p.error("unexpected input after `O(...)`"));
            }
            break;
        }
        let (k, mut c) = p.term()?;
        if sign {
            c = -c;
        }
        terms.push((k, c));
    }
    if first {
        return Err(p.error("empty series"));
    }
    Ok(TruncatedSeries::from_terms(
        terms,
        order.unwrap_or(default_order),
    ))
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
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
        } else {
            Err(self.error(&format!("expected `{}`", b as char)))
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let braced = self.eat(b'{');
        let at = self.pos;
        let n = self.digits()?;
        if braced {
            self.expect(b'}')?;
        }
        u32::try_from(n).map_err(|_| ParseError::new(at, "exponent too large"))
    }

    // `c`, `c t^k`, `c*t`, `t^k`, `t`
    fn term(&mut self) -> Result<(u32, Coefficient), ParseError> {
        self.skip_ws();
        let mut coeff = None;
        if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            let num = self.digits()?;
            let mut c = BigRational::from_integer(num);
            if self.eat(b'/') {
                let at = self.pos;
                let den = self.digits()?;
                if den.is_zero() {
                    return Err(ParseError::new(at, "zero denominator"));
                }
                c /= BigRational::from_integer(den);
            }
            coeff = Some(c);
            self.eat(b'*');
        }
        self.skip_ws();
        if self.peek() == Some(b't') {
            self.pos += 1;
            let k = if self.eat(b'^') { self.exponent()? } else { 1 };
            return Ok((k, coeff.unwrap_or_else(BigRational::one)));
        }
        match coeff {
            Some(c) => Ok((0, c)),
            None => Err(self.error("expected a coefficient or `t`")),
        }
    }

    fn big_o(&mut self) -> Result<u32, ParseError> {
        self.pos += 1; // 'O'
        self.expect(b'(')?;
        self.expect(b't')?;
        let k = if self.eat(b'^') { self.exponent()? } else { 1 };
        self.expect(b')')?;
        if k == 0 {
            return Err(self.error("O(t^0) leaves no known coefficients"));
        }
        Ok(k - 1)
    }
}
