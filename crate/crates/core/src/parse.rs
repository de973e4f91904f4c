//! Text form of polynomials.
//!
//! ```text
//! poly     := term (("+" | "-") term)*
//! term     := ["-"] factor ("*" factor)*
//! factor   := base ["^" nat]
//! base     := rational | var | "(" poly ")"
//! rational := int ["/" nat]
//! ```
//!
//! Whitespace is ignored, multiplication must be explicit, and every variable
//! must be declared up front. Positions in errors are byte offsets.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{Form, Poly, Rational};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1024;

/// A form together with its declared variable order.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedInput {
    pub variables: Vec<String>,
    pub form: Form,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

/// Checks a declared variable list: nonempty, identifiers, no repeats.
pub fn validate_variables<S: AsRef<str>>(vars: &[S]) -> Result<Vec<String>> {
    if vars.is_empty() {
        return Err(Error::InvalidParameter("no variables declared".into()));
    }
    let mut out: Vec<String> = Vec::with_capacity(vars.len());
    for v in vars {
        let v = v.as_ref().trim();
        let b = v.as_bytes();
        if b.is_empty() || !is_ident_start(b[0]) || !b.iter().all(|&c| is_ident_char(c)) {
            return Err(Error::InvalidParameter(format!(
                "invalid variable name {v:?}"
            )));
        }
        if out.iter().any(|o| o == v) {
            return Err(Error::InvalidParameter(format!("variable {v:?} declared twice")));
        }
        out.push(v.to_string());
    }
    Ok(out)
}

/// Parses `text` into a polynomial over the declared variables, without the
/// homogeneity check.
pub fn parse_polynomial<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Poly> {
    let vars = validate_variables(vars)?;
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars: &vars,
    };
    let poly = p.poly()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(poly)
}

pub fn parse_poly<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Form> {
    Form::new(parse_polynomial(text, vars)?)
}

pub fn parse_input<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<ParsedInput> {
    let variables = validate_variables(vars)?;
    let form = parse_poly(text, &variables)?;
    Ok(ParsedInput { variables, form })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        let found = match self.src.get(self.pos) {
            Some(&c) => format!("{msg} ({:?})", c as char),
            None => format!("{msg} (end of input)"),
        };
        Error::Syntax {
            pos: self.pos,
            msg: found,
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn arity(&self) -> usize {
        self.vars.len()
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let negate = self.eat(b'-');
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(if negate { -&acc } else { acc })
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if self.eat(b'^') {
            let e = self.nat()?;
            let e = u32::try_from(&e)
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| self.error(&format!("exponent exceeds {MAX_EXPONENT}")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.nat()?;
                let value = if self.eat(b'/') {
                    let den = self.nat()?;
                    if den == BigInt::from(0) {
                        return Err(self.error("zero denominator"));
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                Ok(Poly::constant(self.arity(), value))
            }
            Some(c) if is_ident_start(c) => {
                let start = self.pos;
                while self.src.get(self.pos).copied().is_some_and(is_ident_char) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("identifiers are ASCII");
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Poly::var(self.arity(), i)),
                    None => Err(Error::UndeclaredVariable {
                        name: name.to_string(),
                        pos: start,
                    }),
                }
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }

    fn nat(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("digits are ASCII");
        Ok(digits.parse().expect("nonempty digit string"))
    }
}
