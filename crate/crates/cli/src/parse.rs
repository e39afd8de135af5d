//! Polynomial text: variables `x1..xN`, integer literals, `+ - * ^` and
//! parentheses. Exponents are non-negative integer literals.

use lefschetz_core::{FieldSpec, Poly};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected {found} at position {pos}")]
    Unexpected { found: String, pos: usize },
    #[error("variable x{index} is outside x1..x{nvars}")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("exponent {0} is too large")]
    ExponentTooLarge(String),
    #[error("empty polynomial")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(String),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

#[derive(Clone, Debug)]
enum Expr {
    Int(BigInt),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

fn tokenize(s: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Token::Int(chars[start..i].iter().collect()), start));
                continue;
            }
            'x' => {
                i += 1;
                let digits = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let index: usize = chars[digits..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| ParseError::Unexpected {
                        found: "'x' without an index".into(),
                        pos: start,
                    })?;
                if index == 0 {
                    return Err(ParseError::VariableOutOfRange { index, nvars: 0 });
                }
                out.push((Token::Var(index), start));
                continue;
            }
            other => {
                return Err(ParseError::Unexpected {
                    found: format!("'{other}'"),
                    pos: start,
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.0)
    }

    fn unexpected(&self) -> ParseError {
        match self.tokens.get(self.pos) {
            Some((t, p)) => ParseError::Unexpected {
                found: format!("{t:?}"),
                pos: *p,
            },
            None => ParseError::Unexpected {
                found: "end of input".into(),
                pos: self.len,
            },
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.tokens.get(self.pos) {
            Some((Token::Int(digits), _)) => {
                let e = digits
                    .parse::<u32>()
                    .map_err(|_| ParseError::ExponentTooLarge(digits.clone()))?;
                self.pos += 1;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(self.unexpected()),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some((tok, _)) = self.tokens.get(self.pos).cloned() else {
            return Err(self.unexpected());
        };
        match tok {
            Token::Int(digits) => {
                self.pos += 1;
                Ok(Expr::Int(digits.parse().expect("digits")))
            }
            Token::Var(i) => {
                self.pos += 1;
                Ok(Expr::Var(i))
            }
            Token::Open => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// A parsed polynomial before the ring is fixed.
#[derive(Clone, Debug)]
pub struct ParsedPoly {
    expr: Expr,
    max_var: usize,
}

impl ParsedPoly {
    /// Largest variable index used (0 for constants).
    pub fn max_var(&self) -> usize {
        self.max_var
    }

    pub fn to_poly(&self, nvars: usize, field: FieldSpec) -> Result<Poly, ParseError> {
        if self.max_var > nvars {
            return Err(ParseError::VariableOutOfRange {
                index: self.max_var,
                nvars,
            });
        }
        Ok(eval(&self.expr, nvars, field))
    }
}

fn eval(e: &Expr, n: usize, field: FieldSpec) -> Poly {
    let same_ring = "operands share the ring";
    match e {
        Expr::Int(v) => Poly::constant(n, field.from_bigint(v)),
        Expr::Var(i) => Poly::variable(n, field, i - 1),
        Expr::Neg(a) => eval(a, n, field).neg(),
        Expr::Add(a, b) => eval(a, n, field).add(&eval(b, n, field)).expect(same_ring),
        Expr::Sub(a, b) => eval(a, n, field).sub(&eval(b, n, field)).expect(same_ring),
        Expr::Mul(a, b) => eval(a, n, field).multiply(&eval(b, n, field)).expect(same_ring),
        Expr::Pow(a, k) => eval(a, n, field).pow(*k),
    }
}

fn max_var(e: &Expr) -> usize {
    match e {
        Expr::Int(_) => 0,
        Expr::Var(i) => *i,
        Expr::Neg(a) | Expr::Pow(a, _) => max_var(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => max_var(a).max(max_var(b)),
    }
}

pub fn parse(s: &str) -> Result<ParsedPoly, ParseError> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        len: s.len(),
    };
    let expr = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.unexpected());
    }
    Ok(ParsedPoly {
        max_var: max_var(&expr),
        expr,
    })
}

/// Parses `s` in the ring with `nvars` variables.
pub fn parse_poly(s: &str, nvars: usize, field: FieldSpec) -> Result<Poly, ParseError> {
    parse(s)?.to_poly(nvars, field)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn x(i: usize) -> Poly {
        Poly::variable(2, Q, i)
    }

    #[test]
    fn factored_example() {
        let f = parse_poly("x1^2*(x1+2*x2)", 2, Q).unwrap();
        let expected = x(0)
            .pow(2)
            .multiply(&x(0).add(&x(1).scale(&Q.from_i64(2))).unwrap())
            .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn precedence_and_signs() {
        let f = parse_poly(" - x1 ^ 2 + 3*x2*x1 - (x2) ", 2, Q).unwrap();
        let expected = x(0)
            .pow(2)
            .neg()
            .add(&x(0).multiply(&x(1)).unwrap().scale(&Q.from_i64(3)))
            .unwrap()
            .sub(&x(1))
            .unwrap();
        assert_eq!(f, expected);
        assert_eq!(parse_poly("2^3", 1, Q).unwrap(), Poly::constant(1, Q.from_i64(8)));
    }

    #[test]
    fn errors() {
        assert_eq!(parse("").unwrap_err(), ParseError::Empty);
        assert!(matches!(parse("x1 +"), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse("x1^x2"), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse("(x1"), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse("y"), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse("x0"), Err(ParseError::VariableOutOfRange { .. })));
        assert!(matches!(
            parse_poly("x3", 2, Q),
            Err(ParseError::VariableOutOfRange { index: 3, nvars: 2 })
        ));
        assert_eq!(parse("x1*x4 + 1").unwrap().max_var(), 4);
    }
}
