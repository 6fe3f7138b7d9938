use alloc::format;
use alloc::string::String;

use super::{AlgebraError, Monomial, Poly, Rational, Var};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn error(&self, what: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{what} at byte {} in {:?}", self.pos, self.src))
    }
}

pub(super) fn parse_poly(src: &str) -> Result<Poly, AlgebraError> {
    let mut cur = Cursor { src, pos: 0 };
    let mut out = Poly::zero();
    let mut first = true;
    loop {
        cur.skip_ws();
        let sign = match cur.peek() {
            None if !first => break,
            None => return Err(cur.error("empty polynomial")),
            Some('+') => {
                cur.bump();
                1
            }
            Some('-') => {
                cur.bump();
                -1
            }
            Some(_) if first => 1,
            Some(_) => return Err(cur.error("expected '+' or '-'")),
        };
        first = false;
        let term = parse_term(&mut cur)?;
        if sign < 0 {
            out -= &term;
        } else {
            out += &term;
        }
    }
    Ok(out)
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<Poly, AlgebraError> {
    let mut coeff = Rational::one();
    let mut pairs = alloc::vec::Vec::new();
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let lit = cur.take_while(|c| c.is_ascii_digit() || c == '.' || c == '/');
                let value: Rational = lit.parse()?;
                coeff *= &value;
            }
            Some(c) if c.is_alphabetic() => {
                let name = cur.take_while(|c| c.is_alphanumeric() || c == '_');
                let var: Var = name.parse()?;
                cur.skip_ws();
                let mut exp = 1;
                if cur.peek() == Some('^') {
                    cur.bump();
                    cur.skip_ws();
                    let mut digits = String::new();
                    if cur.peek() == Some('-') {
                        cur.bump();
                        digits.push('-');
                    }
                    digits.push_str(cur.take_while(|c| c.is_ascii_digit()));
                    exp = digits.parse().map_err(|_| cur.error("bad exponent"))?;
                }
                pairs.push((var, exp));
            }
            _ => return Err(cur.error("expected a number or variable")),
        }
        cur.skip_ws();
        if cur.peek() == Some('*') {
            cur.bump();
        } else {
            break;
        }
    }
    Ok(Poly::term(coeff, Monomial::from_pairs(pairs)?))
}
