//! Recursive-descent parser for the formula grammar.
//!
//! ```text
//! formula := or ("->" formula)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "!" unary | "EX" xN "." formula | "ALL" xN "." formula
//!          | "(" formula ")" | atom
//! atom    := term ("<~" | "<<" | "~" | "=") term
//! term    := "-"? addend (("+" | "-") addend)*
//! addend  := INT ("*" primary)? | primary
//! primary := xN | cN | "0" | "(" term ")"
//! ```
//!
//! `<<` and `~` are expanded into the core atoms at parse time; `->` is
//! lowered to `!a | b`. Quantifier scope extends maximally to the right.

use crate::error::{LogicError, Result};
use crate::formula::{self, Formula};
use crate::term::{Term, VarId};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Var(u32),
    Param(u32),
    Ex,
    All,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Dot,
    Bang,
    Amp,
    Pipe,
    Arrow,
    LeSym,
    LtSym,
    Tilde,
    Eq,
    Eof,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T> {
    Err(LogicError::Syntax {
        pos,
        message: message.into(),
    })
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let pos = i;
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, pos));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, pos));
                    i += 2;
                } else {
                    toks.push((Tok::Minus, pos));
                    i += 1;
                }
            }
            '*' => {
                toks.push((Tok::Star, pos));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, pos));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, pos));
                i += 1;
            }
            '.' => {
                toks.push((Tok::Dot, pos));
                i += 1;
            }
            '!' => {
                toks.push((Tok::Bang, pos));
                i += 1;
            }
            '&' => {
                toks.push((Tok::Amp, pos));
                i += 1;
            }
            '|' => {
                toks.push((Tok::Pipe, pos));
                i += 1;
            }
            '~' => {
                toks.push((Tok::Tilde, pos));
                i += 1;
            }
            '=' => {
                toks.push((Tok::Eq, pos));
                i += 1;
            }
            '<' => match bytes.get(i + 1) {
                Some(b'~') => {
                    toks.push((Tok::LeSym, pos));
                    i += 2;
                }
                Some(b'<') => {
                    toks.push((Tok::LtSym, pos));
                    i += 2;
                }
                _ => return err(pos, "expected `<~` or `<<`"),
            },
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                match text.parse::<i64>() {
                    Ok(n) => toks.push((Tok::Int(n), pos)),
                    Err(_) => return err(pos, format!("integer literal `{text}` out of range")),
                }
            }
            'A'..='Z' | 'a'..='z' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word = &src[start..i];
                let digit_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &src[digit_start..i];
                match (word, digits.is_empty()) {
                    ("EX", true) => toks.push((Tok::Ex, pos)),
                    ("ALL", true) => toks.push((Tok::All, pos)),
                    ("x", false) | ("c", false) => {
                        let n: u32 = match digits.parse() {
                            Ok(n) => n,
                            Err(_) => return err(pos, format!("index `{digits}` out of range")),
                        };
                        if n == 0 {
                            return err(pos, "variable and parameter indices start at 1");
                        }
                        if word == "x" {
                            toks.push((Tok::Var(n), pos));
                        } else {
                            toks.push((Tok::Param(n), pos));
                        }
                    }
                    _ => {
                        return err(
                            pos,
                            format!("unknown word `{word}{digits}`; expected x<n>, c<n>, EX, or ALL"),
                        )
                    }
                }
            }
            _ => return err(pos, format!("unexpected character `{c}`")),
        }
    }
    toks.push((Tok::Eof, src.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            err(self.pos(), format!("expected {what}"))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.or_level()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or_level(&mut self) -> Result<Formula> {
        let mut f = self.and_level()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            f = formula::or(f, self.and_level()?);
        }
        Ok(f)
    }

    fn and_level(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            f = formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(formula::not(self.unary()?))
            }
            Tok::Ex | Tok::All => {
                let is_ex = *self.peek() == Tok::Ex;
                self.bump();
                let vpos = self.pos();
                let v = match self.bump() {
                    Tok::Var(v) => v,
                    Tok::Param(_) => {
                        return err(vpos, "quantifiers bind variables (x<n>), not parameters")
                    }
                    _ => return err(vpos, "expected a variable after the quantifier"),
                };
                self.expect(Tok::Dot, "`.` after the quantified variable")?;
                let body = self.formula()?;
                Ok(if is_ex {
                    formula::exists(v, body)
                } else {
                    formula::forall(v, body)
                })
            }
            Tok::LParen => {
                // `(` may open a parenthesized formula or a parenthesized
                // term beginning an atom; try the formula first and fall
                // back when a comparison operator follows the `)`.
                let save = self.i;
                self.bump();
                if let Ok(f) = self.formula() {
                    if *self.peek() == Tok::RParen {
                        let after = &self.toks[self.i + 1].0;
                        let is_rel = matches!(
                            after,
                            Tok::LeSym | Tok::LtSym | Tok::Tilde | Tok::Eq
                        );
                        if !is_rel {
                            self.bump();
                            return Ok(f);
                        }
                    }
                }
                self.i = save;
                self.atom()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let lhs = self.term()?;
        let pos = self.pos();
        match self.bump() {
            Tok::LeSym => Ok(formula::le(lhs, self.term()?)),
            Tok::LtSym => Ok(formula::lt(lhs, self.term()?)),
            Tok::Tilde => Ok(formula::sim(lhs, self.term()?)),
            Tok::Eq => {
                let rhs = self.term()?;
                Ok(formula::eq0(lhs.sub(&rhs)))
            }
            _ => err(pos, "expected a comparison operator (`<~`, `<<`, `~`, `=`)"),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = if *self.peek() == Tok::Minus {
            self.bump();
            self.addend()?.neg()
        } else {
            self.addend()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    t = t.add(&self.addend()?);
                }
                Tok::Minus => {
                    self.bump();
                    t = t.sub(&self.addend()?);
                }
                _ => return Ok(t),
            }
        }
    }

    fn addend(&mut self) -> Result<Term> {
        if let Tok::Int(n) = *self.peek() {
            let pos = self.pos();
            self.bump();
            if *self.peek() == Tok::Star {
                self.bump();
                return Ok(self.primary()?.scale(n));
            }
            if n == 0 {
                return Ok(Term::zero());
            }
            return err(
                pos,
                "integer constants other than 0 must multiply a variable (write n*x1)",
            );
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Term> {
        let pos = self.pos();
        match self.bump() {
            Tok::Var(v) => Ok(Term::monomial(VarId::Var(v), 1)),
            Tok::Param(c) => Ok(Term::monomial(VarId::Param(c), 1)),
            Tok::Int(0) => Ok(Term::zero()),
            Tok::LParen => {
                let t = self.term()?;
                self.expect(Tok::RParen, "`)` closing the term")?;
                Ok(t)
            }
            Tok::Minus => Ok(self.primary()?.neg()),
            _ => err(pos, "expected a variable, parameter, 0, or parenthesized term"),
        }
    }
}

/// Parses a formula from the documented grammar.
pub fn parse(src: &str) -> Result<Formula> {
    let toks = lex(src)?;
    let mut p = Parser { toks, i: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return err(p.pos(), "unexpected trailing input");
    }
    Ok(f)
}
