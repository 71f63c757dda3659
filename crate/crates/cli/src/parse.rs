//! Expression syntax for forms and operators.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := [coeff ['*']] factor (['*'] factor)*  |  coeff
//! coeff    := int ['/' uint]  |  '(' scalar ')'
//! scalar   := [sign] rational ['*' 'sqrt' '(' uint ')']
//!             [('+'|'-') rational '*' 'sqrt' '(' uint ')']
//! factor   := var ['^' uint]  |  'h' '(' uint ',' ('0'|'1') ')'
//! var      := 'x' | 'y'        (forms)
//!           | 'dx' | 'dy'      (operators)
//! ```
//!
//! Whitespace is ignored. A variable and an `h(..)` builtin must be joined
//! by an explicit `*`.

use num_bigint::BigInt;
use waring_core::harmonic::h_basis;
use waring_core::scalar::Rational;
use waring_core::{BinaryForm, DiffOperator, LinearForm, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at column {}: {message}", .pos + 1)]
    Syntax { pos: usize, message: String },

    #[error("inhomogeneous expression: terms have degrees {}", join(.degrees))]
    Inhomogeneous { degrees: Vec<usize> },

    #[error("expected a linear form, got degree {degree}")]
    NotLinear { degree: usize },

    #[error("{0}")]
    Value(#[from] waring_core::Error),
}

fn join(v: &[usize]) -> String {
    v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Form,
    Operator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FactorKind {
    Var,
    Builtin,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    mode: Mode,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, mode: Mode) -> Self {
        Parser { src, pos: 0, mode }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.err(format!("expected '{c}', found '{found}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let digits: &str = {
            let r = self.rest();
            let n = r.bytes().take_while(u8::is_ascii_digit).count();
            &r[..n]
        };
        if digits.is_empty() {
            return self.err("expected a number");
        }
        self.pos += digits.len();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small_uint(&mut self, what: &str) -> Result<usize, ParseError> {
        let start = self.pos;
        let n = self.uint()?;
        usize::try_from(n).map_err(|_| ParseError::Syntax {
            pos: start,
            message: format!("{what} is too large"),
        })
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let n = self.uint()?;
        if self.eat('/') {
            let at = self.pos;
            let d = self.uint()?;
            if d == BigInt::from(0) {
                self.pos = at;
                return self.err("zero denominator");
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    fn sqrt_tail(&mut self) -> Result<BigInt, ParseError> {
        if !self.eat_str("sqrt") {
            return self.err("expected 'sqrt'");
        }
        self.expect('(')?;
        let d = self.uint()?;
        self.expect(')')?;
        Ok(d)
    }

    /// Contents of a parenthesized coefficient.
    fn scalar(&mut self) -> Result<Scalar, ParseError> {
        let start = self.pos;
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let sign = |q: Rational, neg: bool| if neg { -q } else { q };
        let zero = || Rational::from_integer(0.into());
        let (mut rat, mut coef, mut rad) = (zero(), zero(), BigInt::from(0));
        if self.peek() == Some('s') {
            rad = self.sqrt_tail()?;
            coef = sign(Rational::from_integer(1.into()), neg);
        } else {
            let q = sign(self.rational()?, neg);
            if self.eat('*') {
                rad = self.sqrt_tail()?;
                coef = q;
            } else {
                rat = q;
                let neg = match self.peek() {
                    Some('+') => Some(false),
                    Some('-') => Some(true),
                    _ => None,
                };
                if let Some(neg) = neg {
                    self.pos += 1;
                    if self.peek() == Some('s') {
                        coef = sign(Rational::from_integer(1.into()), neg);
                    } else {
                        coef = sign(self.rational()?, neg);
                        self.expect('*')?;
                    }
                    rad = self.sqrt_tail()?;
                }
            }
        }
        Scalar::new(rat, coef, rad).map_err(|e| ParseError::Syntax {
            pos: start,
            message: e.to_string(),
        })
    }

    fn var(&mut self) -> Option<usize> {
        self.skip_ws();
        let names: [&str; 2] = match self.mode {
            Mode::Form => ["x", "y"],
            Mode::Operator => ["dx", "dy"],
        };
        for (i, n) in names.iter().enumerate() {
            if self.rest().starts_with(n) {
                self.pos += n.len();
                return Some(i);
            }
        }
        None
    }

    fn at_factor(&mut self) -> bool {
        match (self.peek(), self.mode) {
            (Some('x' | 'y' | 'h'), Mode::Form) => true,
            (Some('d'), Mode::Operator) => true,
            _ => false,
        }
    }

    fn builtin(&mut self) -> Result<BinaryForm, ParseError> {
        let start = self.pos;
        self.expect('(')?;
        let d = self.small_uint("degree")?;
        self.expect(',')?;
        let at = self.pos;
        let k = self.small_uint("index")?;
        self.expect(')')?;
        if k > 1 {
            self.pos = at;
            return self.err(format!("h(d,k) needs k = 0 or 1, got {k}"));
        }
        let (h0, h1) = h_basis(d).map_err(|e| ParseError::Syntax {
            pos: start,
            message: e.to_string(),
        })?;
        Ok(if k == 0 { h0 } else { h1 })
    }

    /// One term as a coefficient vector of its own degree.
    fn term(&mut self) -> Result<BinaryForm, ParseError> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => Some(Scalar::from(self.rational()?)),
            Some('(') => {
                self.pos += 1;
                let s = self.scalar()?;
                self.expect(')')?;
                Some(s)
            }
            _ => None,
        };
        let mut explicit = coeff.is_some() && self.eat('*');
        let mut exps = [0usize; 2];
        let mut builtins: Vec<BinaryForm> = Vec::new();
        let mut last: Option<FactorKind> = None;
        loop {
            if !self.at_factor() {
                if explicit {
                    return self.err("expected a factor after '*'");
                }
                break;
            }
            let kind = if self.mode == Mode::Form && self.peek() == Some('h') {
                FactorKind::Builtin
            } else {
                FactorKind::Var
            };
            if let Some(prev) = last {
                if !explicit && prev != kind {
                    return self.err("a variable and h(..) must be joined by '*'");
                }
                if !explicit && prev == FactorKind::Builtin {
                    return self.err("h(..) factors must be joined by '*'");
                }
            }
            match kind {
                FactorKind::Builtin => {
                    self.pos += 1;
                    builtins.push(self.builtin()?);
                }
                FactorKind::Var => {
                    let Some(v) = self.var() else {
                        return self.err("expected 'dx' or 'dy'");
                    };
                    let e = if self.eat('^') { self.small_uint("exponent")? } else { 1 };
                    exps[v] += e;
                }
            }
            last = Some(kind);
            explicit = self.eat('*');
        }
        if coeff.is_none() && last.is_none() {
            return match self.peek() {
                Some(c) => self.err(format!("unexpected '{c}'")),
                None => self.err("unexpected end of input"),
            };
        }
        let c = coeff.unwrap_or_else(Scalar::one);
        let mut out = BinaryForm::monomial(exps[0] + exps[1], exps[1], c);
        for b in &builtins {
            out = out.mul(b);
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Vec<Scalar>, ParseError> {
        let mut terms: Vec<BinaryForm> = Vec::new();
        let mut neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        loop {
            let t = self.term()?;
            terms.push(if neg { -t } else { t });
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        if let Some(c) = self.peek() {
            return self.err(format!("unexpected '{c}'"));
        }
        let mut degrees: Vec<usize> = terms.iter().map(BinaryForm::degree).collect();
        degrees.sort_unstable();
        degrees.dedup();
        if degrees.len() > 1 {
            return Err(ParseError::Inhomogeneous { degrees });
        }
        let mut sum = vec![Scalar::zero(); degrees[0] + 1];
        for t in &terms {
            for (acc, c) in sum.iter_mut().zip(t.coeffs()) {
                *acc = acc.try_add(c)?;
            }
        }
        let mut rad: Option<&BigInt> = None;
        for c in sum.iter().filter(|c| !c.is_rational()) {
            match rad {
                Some(r) if r != c.radicand() => {
                    return Err(waring_core::Error::IncompatibleExtension {
                        left: r.to_string(),
                        right: c.radicand().to_string(),
                    }
                    .into())
                }
                _ => rad = Some(c.radicand()),
            }
        }
        Ok(sum)
    }
}

/// Parses a homogeneous form in `x, y`.
pub fn parse_form(text: &str) -> Result<BinaryForm, ParseError> {
    Ok(BinaryForm::new(Parser::new(text, Mode::Form).expr()?))
}

/// Parses a homogeneous operator in `dx, dy`.
pub fn parse_operator(text: &str) -> Result<DiffOperator, ParseError> {
    Ok(DiffOperator::new(Parser::new(text, Mode::Operator).expr()?))
}

pub fn parse_linear_form(text: &str) -> Result<LinearForm, ParseError> {
    let f = parse_form(text)?;
    if f.degree() != 1 {
        return Err(ParseError::NotLinear { degree: f.degree() });
    }
    Ok(LinearForm::from_form(&f)?)
}

/// `"a,b,c"` is `a dx^2 + 2b dx dy + c dy^2`; anything containing `d` is
/// read as an operator expression.
pub fn parse_omega(text: &str) -> Result<DiffOperator, ParseError> {
    if text.contains('d') {
        let op = parse_operator(text)?;
        if op.degree() != 2 {
            return Err(ParseError::Syntax {
                pos: 0,
                message: format!("omega must be quadratic, got degree {}", op.degree()),
            });
        }
        return Ok(op);
    }
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(ParseError::Syntax {
            pos: 0,
            message: "omega must be given as \"a,b,c\"".into(),
        });
    }
    let mut offset = 0;
    let mut vals = Vec::with_capacity(3);
    for p in parts {
        let mut parser = Parser::new(p, Mode::Form);
        let neg = parser.eat('-');
        let q = parser.rational().and_then(|q| match parser.peek() {
            None => Ok(q),
            Some(c) => parser.err(format!("unexpected '{c}'")),
        });
        let q = q.map_err(|e| match e {
            ParseError::Syntax { pos, message } => ParseError::Syntax {
                pos: pos + offset,
                message,
            },
            other => other,
        })?;
        vals.push(Scalar::from(if neg { -q } else { q }));
        offset += p.len() + 1;
    }
    let b2 = &vals[1] * &Scalar::from_int(2);
    Ok(DiffOperator::new(vec![vals[0].clone(), b2, vals[2].clone()]))
}
