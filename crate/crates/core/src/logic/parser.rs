//! Recursive-descent parser for the formula grammar.
//!
//! ```text
//! phi  ::= iff
//! iff  ::= imp ("<->" imp)*
//! imp  ::= or ("->" imp)?
//! or   ::= and ("|" and)*
//! and  ::= un ("&" un)*
//! un   ::= ("!" | "not") un | ("exists" | "forall") var un | atom
//! atom ::= "true" | "false" | "E(" var "," var ")" | "dist(" var "," var ")" "<=" nat
//!        | ident "(" var ")" | var ("=" | "!=") var | "(" phi ")"
//! ```
//!
//! Quantifiers bind as tightly as negation, so the scope of `exists z` is the
//! next unary formula; write `exists z (A & B)` for a wider scope.

use super::Formula;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Nat(usize),
    LParen,
    RParen,
    Comma,
    Bang,
    Amp,
    Bar,
    Arrow,
    DArrow,
    Equal,
    NotEqual,
    Le,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'=' => Tok::Equal,
            b'!' if bytes.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::NotEqual
            }
            b'!' => Tok::Bang,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'<' if bytes[i..].starts_with(b"<->") => {
                i += 2;
                Tok::DArrow
            }
            b'<' if bytes.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::Le
            }
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..=i].parse().map_err(|_| err(start, "number too large"))?;
                Tok::Nat(n)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => return Err(err(start, &format!("unexpected character `{}`", text[start..].chars().next().unwrap()))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    scope: Vec<String>,
    /// `None` accepts any free variable.
    free: Option<Vec<String>>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error("expected identifier"),
        }
    }

    /// A variable occurrence; checked against the binders in scope.
    fn var(&mut self) -> Result<String> {
        let v = self.ident()?;
        if is_keyword(&v) {
            return Err(Error::Parse { pos: self.toks[self.pos - 1].0, msg: format!("`{v}` is reserved") });
        }
        let declared = self.scope.contains(&v) || self.free.as_ref().is_none_or(|f| f.contains(&v));
        if !declared {
            return Err(Error::UnboundVariable(v));
        }
        Ok(v)
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.imp()?;
        while self.eat(&Tok::DArrow) {
            lhs = lhs.iff(self.imp()?);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat(&Tok::Arrow) {
            return Ok(lhs.implies(self.imp()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Bar) {
            lhs = lhs.or(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Bang) {
            return Ok(self.unary()?.not());
        }
        if let Some(Tok::Ident(word)) = self.peek() {
            match word.as_str() {
                "not" => {
                    self.pos += 1;
                    return Ok(self.unary()?.not());
                }
                "exists" | "forall" => {
                    let universal = word == "forall";
                    self.pos += 1;
                    let v = self.ident()?;
                    if is_keyword(&v) {
                        return self.error(format!("`{v}` is reserved"));
                    }
                    if self.scope.contains(&v) || self.free.as_ref().is_some_and(|f| f.contains(&v)) {
                        return Err(Error::Shadowing(v));
                    }
                    self.scope.push(v.clone());
                    let body = self.unary();
                    self.scope.pop();
                    let body = body?;
                    return Ok(if universal { Formula::forall(&v, body) } else { Formula::exists(&v, body) });
                }
                _ => {}
            }
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.iff()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(word)) if self.peek_at(1) == Some(&Tok::LParen) => {
                self.pos += 2;
                let x = self.var()?;
                if word == "E" || word == "dist" {
                    if self.eat(&Tok::Comma) {
                        let y = self.var()?;
                        self.expect(Tok::RParen, "`)`")?;
                        if word == "E" {
                            return Ok(Formula::Edge(x, y));
                        }
                        self.expect(Tok::Le, "`<=` after dist(..)")?;
                        return match self.peek() {
                            Some(Tok::Nat(r)) => {
                                let r = *r;
                                self.pos += 1;
                                Ok(Formula::DistLe(x, y, r))
                            }
                            _ => self.error("malformed distance bound: expected a natural number"),
                        };
                    }
                    if word == "dist" {
                        return self.error("expected `,` in dist(x,y)");
                    }
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(Formula::Pred(word, x))
            }
            Some(Tok::Ident(word)) if word == "true" => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(Tok::Ident(word)) if word == "false" => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(Tok::Ident(_)) => {
                let x = self.var()?;
                if self.eat(&Tok::Equal) {
                    Ok(Formula::Eq(x, self.var()?))
                } else if self.eat(&Tok::NotEqual) {
                    Ok(Formula::Eq(x, self.var()?).not())
                } else {
                    self.error("expected `=` or `!=` after variable")
                }
            }
            Some(_) => self.error("expected a formula"),
            None => self.error("unexpected end of input"),
        }
    }
}

fn is_keyword(word: &str) -> bool {
    matches!(word, "true" | "false" | "exists" | "forall" | "not")
}

fn run(text: &str, free: Option<Vec<String>>) -> Result<Formula> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0, end: text.len(), scope: Vec::new(), free };
    let f = p.iff()?;
    if p.pos < p.toks.len() {
        return p.error("trailing input");
    }
    Ok(f)
}

/// Parses a formula; any variable not bound by a quantifier is free.
pub fn parse_formula(text: &str) -> Result<Formula> {
    run(text, None)
}

/// Parses a formula whose free variables must all be listed in `free`.
pub fn parse_with_free(text: &str, free: &[&str]) -> Result<Formula> {
    run(text, Some(free.iter().map(|s| s.to_string()).collect()))
}
