use crate::error::{Error, Result};

use super::{Coeffs, Poly};

/// Parses expressions such as `p + v1*q0^2` or `-2*u^-1` over the given
/// generator names.
pub fn parse_poly(src: &str, names: &[String], coeffs: &Coeffs) -> Result<Poly> {
    let mut parser = Parser {
        src: src.as_bytes(),
        pos: 0,
        names,
        coeffs,
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
    coeffs: &'a Coeffs,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at column {} in {:?}",
            self.pos + 1,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let n = self.names.len();
        let mut acc = Poly::zero(n);
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = acc.add(&t.scale(sign, self.coeffs), self.coeffs);
            match self.peek() {
                Some(b'+') => {
                    sign = 1;
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = -1;
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f, self.coeffs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let n = self.names.len();
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let k = self.integer()?;
                    if k < 0 {
                        return Err(self.error("negative power of a parenthesised expression"));
                    }
                    return Ok(e.pow(k as u32, self.coeffs));
                }
                return Ok(e);
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.integer()?;
                return Ok(Poly::constant(n, k, self.coeffs));
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.ident()?,
            _ => return Err(self.error("expected a factor")),
        };
        let idx = self
            .names
            .iter()
            .position(|x| x == &base)
            .ok_or_else(|| self.error(&format!("unknown generator '{base}'")))?;
        let mut exp = 1i32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            exp = self.integer()? as i32;
        }
        let mut e = vec![0; n];
        e[idx] = exp;
        Ok(Poly::monomial(e, 1, self.coeffs))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn integer(&mut self) -> Result<i128> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("expected an integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        ["p", "v1", "q0"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_and_prints() {
        let z = Coeffs::integers();
        let p = parse_poly("p + v1*q0^2", &names(), &z).unwrap();
        assert_eq!(p.len(), 2);
        let q = parse_poly("-2*v1^-1 + 3", &names(), &z).unwrap();
        assert_eq!(q.display(&names()), "3 - 2*v1^-1");
        let r = parse_poly("(v1 + q0)^2 - v1^2", &names(), &z).unwrap();
        assert_eq!(r.display(&names()), "2*v1*q0 + q0^2");
        assert!(parse_poly("u - u", &["u".into()], &z).unwrap().is_zero());
    }

    #[test]
    fn reports_columns() {
        let z = Coeffs::integers();
        let err = parse_poly("v1 + w", &names(), &z).unwrap_err();
        assert!(err.to_string().contains("unknown generator 'w'"));
        assert!(parse_poly("v1 +", &names(), &z).is_err());
    }
}
