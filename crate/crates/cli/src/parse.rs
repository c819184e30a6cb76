//! Expression grammar for product input:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := curve | 'eta' ['^' uint] | scalar | unit | '(' expr ')'
//! curve  := '(' int ',' int ')' ['_T']
//! scalar := uint | 't' ['^' int]
//! unit   := "T'" '(' '0' ',' '0' ')'
//! ```
//!
//! A '(' followed by an integer and a comma always commits to a curve
//! literal, so error positions inside malformed curves point at the exact
//! offset where the literal breaks off.

use ptskein_core::product::{multiply, ProductError};
use ptskein_core::{LaurentPoly, SkeinElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub msg: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Token {
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    ThreadMark,
    Int(i64),
    TVar,
    Eta,
    UnitMark,
}

fn err(offset: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        offset,
        msg: msg.into(),
    }
}

fn lex(input: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '(' => Token::LParen,
            ')' => Token::RParen,
            ',' => Token::Comma,
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '^' => Token::Caret,
            '_' => {
                if bytes.get(i + 1) == Some(&b'T') {
                    out.push((Token::ThreadMark, i));
                    i += 2;
                    continue;
                }
                return Err(err(i, "expected `_T`"));
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &input[start..i];
                let v: i64 = text
                    .parse()
                    .map_err(|_| err(start, "integer literal out of range"))?;
                out.push((Token::Int(v), start));
                continue;
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let mut word = &input[start..i];
                if word == "T" && bytes.get(i) == Some(&b'\'') {
                    i += 1;
                    word = "T'";
                }
                let tok = match word {
                    "t" => Token::TVar,
                    "eta" => Token::Eta,
                    "T'" => Token::UnitMark,
                    other => return Err(err(start, format!("unknown symbol `{other}`"))),
                };
                out.push((tok, start));
                continue;
            }
            other => return Err(err(i, format!("unexpected character `{other}`"))),
        };
        out.push((tok, i));
        i += 1;
    }
    Ok(out)
}

/// Abstract syntax. Scalars are held directly as Laurent monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Curve(i64, i64),
    Eta(u32),
    Scalar(LaurentPoly),
    Unit,
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
}

struct Parser {
    toks: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Token> {
        self.toks.get(self.pos).map(|t| t.0)
    }

    fn peek_at(&self, ahead: usize) -> Option<Token> {
        self.toks.get(self.pos + ahead).map(|t| t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(self.offset(), format!("expected {what}")))
        }
    }

    fn signed_int(&mut self, what: &str) -> Result<i64, ParseError> {
        let neg = if self.peek() == Some(Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek() {
            Some(Token::Int(v)) => {
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(err(self.offset(), format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut node = if self.peek() == Some(Token::Minus) {
            self.pos += 1;
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    node = Expr::Add(Box::new(node), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    node = Expr::Sub(Box::new(node), Box::new(self.term()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut node = self.factor()?;
        while self.peek() == Some(Token::Star) {
            self.pos += 1;
            node = Expr::Mul(Box::new(node), Box::new(self.factor()?));
        }
        Ok(node)
    }

    /// True when the upcoming tokens commit '(' to a curve literal:
    /// an optionally negated integer followed by a comma.
    fn starts_curve(&self) -> bool {
        let mut k = 1;
        if self.peek_at(k) == Some(Token::Minus) {
            k += 1;
        }
        matches!(self.peek_at(k), Some(Token::Int(_)))
            && self.peek_at(k + 1) == Some(Token::Comma)
    }

    fn curve_literal(&mut self) -> Result<(i64, i64), ParseError> {
        self.expect(Token::LParen, "`(`")?;
        let p = self.signed_int("an integer")?;
        self.expect(Token::Comma, "`,`")?;
        let q = self.signed_int("an integer")?;
        self.expect(Token::RParen, "`)`")?;
        if self.peek() == Some(Token::ThreadMark) {
            self.pos += 1;
        }
        Ok((p, q))
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Token::LParen) if self.starts_curve() => {
                let (p, q) = self.curve_literal()?;
                Ok(Expr::Curve(p, q))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Token::Eta) => {
                self.pos += 1;
                if self.peek() == Some(Token::Caret) {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.signed_int("an exponent")?;
                    let d = u32::try_from(d)
                        .map_err(|_| err(at, "eta exponents must be nonnegative"))?;
                    Ok(Expr::Eta(d))
                } else {
                    Ok(Expr::Eta(1))
                }
            }
            Some(Token::TVar) => {
                self.pos += 1;
                let e = if self.peek() == Some(Token::Caret) {
                    self.pos += 1;
                    self.signed_int("an exponent")?
                } else {
                    1
                };
                Ok(Expr::Scalar(LaurentPoly::monomial(1, e)))
            }
            Some(Token::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Scalar(LaurentPoly::from(v)))
            }
            Some(Token::UnitMark) => {
                self.pos += 1;
                self.expect(Token::LParen, "`(0,0)`")?;
                let at = self.offset();
                let p = self.signed_int("an integer")?;
                self.expect(Token::Comma, "`,`")?;
                let q = self.signed_int("an integer")?;
                self.expect(Token::RParen, "`)`")?;
                if (p, q) != (0, 0) {
                    return Err(err(at, "the unit literal is written T'(0,0)"));
                }
                Ok(Expr::Unit)
            }
            _ => Err(err(self.offset(), "expected a curve, scalar, eta, or `(`")),
        }
    }

    fn finish(&mut self) -> Result<Expr, ParseError> {
        let e = self.expr()?;
        if self.pos < self.toks.len() {
            return Err(err(self.offset(), "unexpected trailing input"));
        }
        Ok(e)
    }
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
    };
    p.finish()
}

/// Parses an ordered pair of curve literals `"(p,q),(r,s)"`.
pub fn parse_pair(input: &str) -> Result<((i64, i64), (i64, i64)), ParseError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
    };
    let a = p.curve_literal()?;
    p.expect(Token::Comma, "`,` between the curves")?;
    let b = p.curve_literal()?;
    if p.pos < p.toks.len() {
        return Err(err(p.offset(), "unexpected trailing input"));
    }
    Ok((a, b))
}

/// Evaluates an expression bottom-up; products dispatch through the full
/// closed-form rule set and surface their classification on failure.
pub fn eval(e: &Expr) -> Result<SkeinElement, ProductError> {
    match e {
        Expr::Curve(p, q) => Ok(SkeinElement::from_raw(*p, *q)),
        Expr::Eta(d) => Ok(SkeinElement::unit().eta_shift(*d)),
        Expr::Scalar(c) => Ok(SkeinElement::unit().scale(c)),
        Expr::Unit => Ok(SkeinElement::unit()),
        Expr::Neg(x) => Ok(eval(x)?.scale_int(-1)),
        Expr::Mul(a, b) => multiply(&eval(a)?, &eval(b)?),
        Expr::Add(a, b) => Ok(&eval(a)? + &eval(b)?),
        Expr::Sub(a, b) => Ok(&eval(a)? - &eval(b)?),
    }
}
