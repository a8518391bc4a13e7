use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, Poly, PolyRing, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    end: (usize, usize),
}

fn lex(text: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            toks.push((Tok::Num(s.parse().unwrap()), l0, c0));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            toks.push((Tok::Ident(chars[start..i].iter().collect()), l0, c0));
            continue;
        }
        if "+-*/^()".contains(c) {
            toks.push((Tok::Sym(c), l0, c0));
            col += 1;
            i += 1;
            continue;
        }
        return Err(Error::Parse {
            line: l0,
            col: c0,
            msg: format!("unexpected character `{c}`"),
        });
    }
    Ok(Lexer {
        toks,
        end: (line, col),
    })
}

struct Parser<'a> {
    ring: &'a PolyRing,
    lx: Lexer,
    pos: usize,
    /// Offset added to reported positions.
    origin: (usize, usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        let (l, c) = self
            .lx
            .toks
            .get(self.pos)
            .map(|t| (t.1, t.2))
            .unwrap_or(self.lx.end);
        if l == 1 {
            (self.origin.0, self.origin.1 + c - 1)
        } else {
            (self.origin.0 + l - 1, c)
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Parse {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.ring);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(Tok::Sym('+')) => {
                    self.pos += 1;
                    1
                }
                Some(Tok::Sym('-')) => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign > 0 { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('('))
        )
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('*')) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc * f;
                }
                Some(Tok::Sym('/')) => {
                    self.pos += 1;
                    let at = self.pos;
                    let f = self.factor()?;
                    match f.constant_value() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        _ => {
                            self.pos = at;
                            return self.err("division only by nonzero constants");
                        }
                    }
                }
                _ if self.starts_factor() => {
                    let f = self.factor()?;
                    acc = acc * f;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Sym('^')) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = match (&n).try_into() {
                        Ok(e) if e <= 10_000 => e,
                        _ => return self.err("exponent too large"),
                    };
                    Ok(base.pow(e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(self.ring, Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => match self.ring.index_of(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Poly::var(self.ring, i))
                }
                None => {
                    let (line, col) = self.here();
                    Err(Error::Parse {
                        line,
                        col,
                        msg: format!("undeclared variable `{name}`"),
                    })
                }
            },
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Sym(')')) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(t) => self.err(format!("unexpected `{}`", tok_text(&t))),
            None => self.err("unexpected end of polynomial"),
        }
    }
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Num(n) => n.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Sym(c) => c.to_string(),
    }
}

pub(crate) fn parse_poly(ring: &PolyRing, text: &str) -> Result<Poly> {
    parse_poly_at(ring, text, (1, 1))
}

/// Parses with reported positions shifted to start at `origin` (line, column).
pub(crate) fn parse_poly_at(ring: &PolyRing, text: &str, origin: (usize, usize)) -> Result<Poly> {
    let lx = lex(text).map_err(|e| shift(e, origin))?;
    let mut p = Parser {
        ring,
        lx,
        pos: 0,
        origin,
    };
    if p.lx.toks.is_empty() {
        return p.err("empty polynomial");
    }
    let out = p.expr()?;
    if p.pos != p.lx.toks.len() {
        let t = p.lx.toks[p.pos].0.clone();
        return p.err(format!("unexpected `{}`", tok_text(&t)));
    }
    Ok(out)
}

fn shift(e: Error, origin: (usize, usize)) -> Error {
    match e {
        Error::Parse { line, col, msg } => {
            let (line, col) = if line == 1 {
                (origin.0, origin.1 + col - 1)
            } else {
                (origin.0 + line - 1, col)
            };
            Error::Parse { line, col, msg }
        }
        e => e,
    }
}

/// Parses a single monomial such as `z^3*y*t`, returning its exponent vector.
pub fn parse_monomial(ring: &PolyRing, text: &str) -> Result<Monomial> {
    let p = parse_poly(ring, text)?;
    match p.terms() {
        [(m, c)] if c.is_one() => Ok(m.clone()),
        _ if p.is_zero() => Err(Error::Invalid("zero is not a monomial".into())),
        _ => Err(Error::Invalid(format!("`{text}` is not a monomial"))),
    }
}
