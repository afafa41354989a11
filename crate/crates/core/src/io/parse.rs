use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{Rational, TruncatedSeries, Vars};

/// Default truncation order for parsed input.
pub const DEFAULT_ORDER: u32 = 12;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    text: String,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        let single = |tok: Tok| Spanned {
            tok,
            text: c.to_string(),
            line: l0,
            col: c0,
        };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
                continue;
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    chars.next();
                    col += 1;
                }
                out.push(Spanned {
                    tok: Tok::Int(s.parse().expect("digits")),
                    text: s,
                    line: l0,
                    col: c0,
                });
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if !(d.is_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    chars.next();
                    col += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(s.clone()),
                    text: s,
                    line: l0,
                    col: c0,
                });
                continue;
            }
            '+' => out.push(single(Tok::Plus)),
            '-' | '\u{2212}' => out.push(single(Tok::Minus)),
            '*' | '\u{b7}' => out.push(single(Tok::Star)),
            '/' => out.push(single(Tok::Slash)),
            '^' => out.push(single(Tok::Caret)),
            '(' => out.push(single(Tok::LParen)),
            ')' => out.push(single(Tok::RParen)),
            other => {
                return Err(Error::Parse {
                    line: l0,
                    col: c0,
                    token: other.to_string(),
                    msg: "unexpected character".into(),
                })
            }
        }
        chars.next();
        col += 1;
    }
    out.push(Spanned {
        tok: Tok::End,
        text: "end of input".into(),
        line,
        col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a Vars,
    order: u32,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, at: &Spanned, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: at.line,
            col: at.col,
            token: at.text.clone(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<TruncatedSeries> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TruncatedSeries> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = acc * self.unary()?;
                }
                Tok::Slash => {
                    let at = self.bump();
                    let d = self.unary()?;
                    if d.is_zero() || d.terms().any(|(e, _)| e.degree() > 0) {
                        return Err(self.error(&at, "can only divide by a nonzero constant"));
                    }
                    acc = acc.scale(&d.constant_term().recip());
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    let at = self.peek().clone();
                    return Err(self.error(
                        &at,
                        "implicit multiplication is not allowed; insert `*` before this token",
                    ));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<TruncatedSeries> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<TruncatedSeries> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.bump();
        let Tok::Int(k) = &at.tok else {
            return Err(self.error(&at, "exponent must be a non-negative integer"));
        };
        let k: u32 = match u32::try_from(k.clone()) {
            Ok(k) if k <= 255 => k,
            _ => return Err(self.error(&at, "exponent too large (limit 255)")),
        };
        if base.len() == 1 {
            // monomials: avoid repeated products
            let (e, c) = base.terms().next().expect("one term");
            let mut ek = *e;
            for i in 0..base.nvars() {
                if e.get(i) * k > 255 {
                    return Err(self.error(&at, "exponent too large (limit 255)"));
                }
                ek = ek.with(i, e.get(i) * k);
            }
            let c = num_traits::pow(c.clone(), k as usize);
            return Ok(TruncatedSeries::monomial(self.vars, self.order, ek, c));
        }
        Ok(base.pow(k))
    }

    fn atom(&mut self) -> Result<TruncatedSeries> {
        let at = self.bump();
        match &at.tok {
            Tok::Int(n) => Ok(TruncatedSeries::constant(
                self.vars,
                self.order,
                Rational::from_integer(n.clone()),
            )),
            Tok::Ident(name) => match self.vars.index(name) {
                Some(i) => Ok(TruncatedSeries::var_at(self.vars, self.order, i)),
                None => {
                    let split: Vec<String> = name.chars().map(String::from).collect();
                    if split.len() > 1 && split.iter().all(|c| self.vars.index(c).is_some()) {
                        Err(self.error(
                            &at,
                            format!(
                                "implicit multiplication is not allowed; write `{}`",
                                split.join("*")
                            ),
                        ))
                    } else {
                        Err(self.error(&at, format!("unknown variable `{name}`")))
                    }
                }
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.error(&close, "expected `)`"));
                }
                Ok(inner)
            }
            _ => Err(self.error(&at, "expected a number, variable or `(`")),
        }
    }
}

/// Parses an expression in the variables `x, y, z, t` at the default order.
pub fn parse_polynomial(text: &str) -> Result<TruncatedSeries> {
    parse_polynomial_in(text, &Vars::xyzt(), DEFAULT_ORDER)
}

/// Parses an expression over `vars`, truncating at total degree `order`.
pub fn parse_polynomial_in(text: &str, vars: &Vars, order: u32) -> Result<TruncatedSeries> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        order,
    };
    if p.peek().tok == Tok::End {
        let at = p.peek().clone();
        return Err(p.error(&at, "empty expression"));
    }
    let out = p.expr()?;
    let rest = p.peek().clone();
    match rest.tok {
        Tok::End => Ok(out),
        Tok::RParen => Err(p.error(&rest, "unbalanced `)`")),
        _ => Err(p.error(&rest, "unexpected token")),
    }
}

/// Parses a rational literal such as `-3/4`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = parse_polynomial_in(text, &Vars::new::<&str>(&[]), 1)?;
    if s.is_zero() {
        return Ok(Rational::zero());
    }
    Ok(s.constant_term())
}
