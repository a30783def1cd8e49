//! A small arithmetic expression language shared by the polynomial parser
//! and the command-line class expressions.
//!
//! Grammar:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := integer | ident | '(' expr ')'
//! ```
//!
//! Identifiers are `[A-Za-z_][A-Za-z0-9_]*`, optionally followed by a
//! bracketed list such as `s[2,1]`, which is kept as part of the identifier.

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Atom(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Leaves handed to the evaluator.
#[derive(Clone, Copy, Debug)]
pub enum Leaf<'a> {
    Int(&'a BigInt),
    Atom(&'a str),
}

/// Values an [`Expr`] can be evaluated into.
pub trait Algebra: Sized + Clone {
    type Error;

    fn add(self, rhs: Self) -> std::result::Result<Self, Self::Error>;
    fn sub(self, rhs: Self) -> std::result::Result<Self, Self::Error>;
    fn mul(self, rhs: Self) -> std::result::Result<Self, Self::Error>;
    fn neg(self) -> Self;
}

impl Expr {
    pub fn parse(input: &str) -> Result<Expr> {
        let tokens = tokenize(input)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr()?;
        match p.peek() {
            None => Ok(e),
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }

    pub fn evaluate<T, F>(&self, leaf: &mut F) -> std::result::Result<T, T::Error>
    where
        T: Algebra,
        F: FnMut(Leaf<'_>) -> std::result::Result<T, T::Error>,
    {
        match self {
            Expr::Int(n) => leaf(Leaf::Int(n)),
            Expr::Atom(a) => leaf(Leaf::Atom(a)),
            Expr::Neg(e) => Ok(e.evaluate(leaf)?.neg()),
            Expr::Add(a, b) => a.evaluate(leaf)?.add(b.evaluate(leaf)?),
            Expr::Sub(a, b) => a.evaluate(leaf)?.sub(b.evaluate(leaf)?),
            Expr::Mul(a, b) => a.evaluate(leaf)?.mul(b.evaluate(leaf)?),
            Expr::Pow(base, e) => {
                let base = base.evaluate(leaf)?;
                let mut acc = leaf(Leaf::Int(&BigInt::from(1)))?;
                let mut sq = base;
                let mut e = *e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc.mul(sq.clone())?;
                    }
                    e >>= 1;
                    if e > 0 {
                        sq = sq.clone().mul(sq)?;
                    }
                }
                Ok(acc)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().expect("digits");
                out.push(Token::Int(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'[' {
                    match input[i..].find(']') {
                        Some(close) => i += close + 1,
                        None => return Err(Error::Parse("unclosed '['".into())),
                    }
                }
                out.push(Token::Ident(input[start..i].to_string()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
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

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Token::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent out of range".into()))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Token::Int(n)) => Ok(Expr::Int(n)),
            Some(Token::Ident(s)) => Ok(Expr::Atom(s)),
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(e),
                    other => Err(Error::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected {other:?}"))),
        }
    }
}
