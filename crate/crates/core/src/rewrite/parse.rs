//! Relation syntax: linear combinations of arrow words such as
//! `a*b - c*d`, `b*a - 2/3*d*c`, `b*c^2 - a^2*b` or `(1+sqrt(2))*a*b`.
//! Trivial paths are written `e1`, `e2`, … using the quiver's vertex labels.

use crate::error::{Error, Result};
use crate::quiver::{Path, Quiver};
use crate::scalar::Field;

use super::AlgebraElement;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(String),
    Ident(String),
    Group(String),
    Star,
    Caret,
    Slash,
    Plus,
    Minus,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '(' => {
                let mut depth = 0;
                let start = i;
                loop {
                    match chars.get(i) {
                        Some('(') => depth += 1,
                        Some(')') => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        Some(_) => {}
                        None => return Err(Error::Parse("unbalanced parenthesis".into())),
                    }
                    i += 1;
                }
                out.push(Token::Group(chars[start + 1..i].iter().collect()));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token::Number(chars[start..i].iter().collect()));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric()
                        || chars[i] == '_'
                        || (chars[i] == '*' && chars.get(i + 1) == Some(&'_')))
                {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    quiver: &'a Quiver,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expression<F: Field>(&mut self) -> Result<AlgebraElement<F>> {
        let mut out = AlgebraElement::zero();
        let mut first = true;
        while self.peek().is_some() {
            let negative = match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                other => return Err(Error::Parse(format!("expected + or -, found {other:?}"))),
            };
            first = false;
            let (coeff, path) = self.term::<F>()?;
            let coeff = if negative { -coeff } else { coeff };
            if let Some(path) = path {
                out.add_term(path, coeff);
            }
        }
        if first {
            return Err(Error::Parse("empty expression".into()));
        }
        Ok(out)
    }

    /// A bare zero scalar is the only term allowed without a path.
    fn term<F: Field>(&mut self) -> Result<(F, Option<Path>)> {
        let mut coeff = F::one();
        let mut path: Option<Path> = None;
        loop {
            match self.next() {
                Some(Token::Number(n)) => {
                    let mut text = n;
                    if self.peek() == Some(&Token::Slash) {
                        self.pos += 1;
                        match self.next() {
                            Some(Token::Number(d)) => text = format!("{text}/{d}"),
                            other => {
                                return Err(Error::Parse(format!("bad denominator {other:?}")))
                            }
                        }
                    }
                    coeff = coeff * F::parse_scalar(&text)?;
                }
                Some(Token::Group(g)) => coeff = coeff * F::parse_scalar(&g)?,
                Some(Token::Ident(name)) => {
                    let mut exp = 1u32;
                    if self.peek() == Some(&Token::Caret) {
                        self.pos += 1;
                        exp = match self.next() {
                            Some(Token::Number(k)) => k
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad exponent {k}")))?,
                            other => return Err(Error::Parse(format!("bad exponent {other:?}"))),
                        };
                    }
                    let factor = self.factor_path(&name)?;
                    for _ in 0..exp {
                        path = Some(match path {
                            None => factor.clone(),
                            Some(p) => p.concat(&factor).ok_or_else(|| {
                                Error::Parse(format!("factor {name} does not compose in its term"))
                            })?,
                        });
                    }
                }
                other => return Err(Error::Parse(format!("expected a factor, found {other:?}"))),
            }
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        if path.is_none() && !coeff.is_zero() {
            return Err(Error::Parse("term without a path".into()));
        }
        Ok((coeff, path))
    }

    fn factor_path(&self, name: &str) -> Result<Path> {
        if let Some(a) = self.quiver.arrow_by_label(name) {
            return self.quiver.arrow_path(a.id);
        }
        if let Ok(v) = self.quiver.parse_vertex(name) {
            if name.starts_with('e') {
                return Ok(Path::trivial(v));
            }
        }
        Err(Error::Parse(format!("unknown arrow {name:?}")))
    }
}

/// Parses a linear combination of paths in `quiver`.
pub fn parse_element<F: Field>(quiver: &Quiver, text: &str) -> Result<AlgebraElement<F>> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
        quiver,
    };
    p.expression()
}
