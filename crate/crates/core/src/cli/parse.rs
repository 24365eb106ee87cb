//! Text syntax for field elements, maps and points.
//!
//! Elements are signed sums of products of integers, `t^e` (equal
//! characteristic), `p^e` (mixed characteristic), the residue generator `g`
//! and precision terms `O(t^e)` / `O(p^e)`. Maps are expressions in `z`;
//! points are `inf`, `pt(a)`, `zeta(a; ord=s)` or a bare element. Every
//! printer in the crate emits text this parser reads back to the same value.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::berkline::BerkPoint;
use crate::error::{Error, Result};
use crate::ratmap::{Poly, RationalMap};
use crate::valfield::{CoeffField, Exp, FieldMode, ValuedField};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
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
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Num(s.parse().expect("digits"))
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "+-*/^();=,∞".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(Error::Syntax {
                line,
                col,
                msg: format!("unexpected character {c:?}"),
            });
        };
        col += i - start;
        out.push(Token {
            tok,
            line: l0,
            col: c0,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

/// A quotient of polynomials in `z`; `den = None` is `1`.
#[derive(Clone, Debug)]
struct Frac<E> {
    num: Poly<E>,
    den: Option<Poly<E>>,
}

struct Parser<'a, V: ValuedField> {
    k: &'a V,
    toks: Vec<Token>,
    pos: usize,
    allow_z: bool,
}

impl<'a, V: ValuedField> Parser<'a, V> {
    fn new(k: &'a V, text: &str, allow_z: bool) -> Result<Self> {
        Ok(Parser {
            k,
            toks: tokenize(text)?,
            pos: 0,
            allow_z,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, msg: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.err_here(format!("expected '{c}'")))
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<()> {
        if *self.peek() == Tok::Ident(name.into()) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err_here(format!("expected '{name}'")))
        }
    }

    fn expect_eof(&mut self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.err_here("unexpected trailing input"))
        }
    }

    fn small(&self, n: &BigInt) -> Result<i64> {
        n.to_i64()
            .ok_or_else(|| self.err_here("exponent out of range"))
    }

    /// `n`, `-n`, `n/m` or `-n/m`, optionally parenthesized.
    fn rational(&mut self) -> Result<Exp> {
        if self.eat_sym('(') {
            let e = self.rational()?;
            self.expect_sym(')')?;
            return Ok(e);
        }
        let neg = self.eat_sym('-');
        let Tok::Num(n) = self.peek().clone() else {
            return Err(self.err_here("expected a rational number"));
        };
        let n = self.small(&n)?;
        self.pos += 1;
        let mut d = 1;
        if self.eat_sym('/') {
            let Tok::Num(m) = self.peek().clone() else {
                return Err(self.err_here("expected a denominator"));
            };
            d = self.small(&m)?;
            if d == 0 {
                return Err(self.err_here("zero denominator"));
            }
            self.pos += 1;
        }
        let e = Exp::new(n, d);
        Ok(if neg { -e } else { e })
    }

    fn constant(&self, a: V::Elem) -> Frac<V::Elem> {
        Frac {
            num: Poly::new(self.k, vec![a]),
            den: None,
        }
    }

    fn sum(&mut self) -> Result<Frac<V::Elem>> {
        let mut acc = if self.eat_sym('-') {
            let first = self.product()?;
            self.neg(first)
        } else {
            self.eat_sym('+');
            self.product()?
        };
        loop {
            if self.eat_sym('+') {
                let r = self.product()?;
                acc = self.add(acc, r);
            } else if self.eat_sym('-') {
                let r = self.product()?;
                acc = self.add(acc, self.neg(r));
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Frac<V::Elem>> {
        let mut acc = self.power()?;
        loop {
            if self.eat_sym('*') {
                let r = self.power()?;
                acc = self.mul(acc, r);
            } else if *self.peek() == Tok::Sym('/') {
                let at = self.pos;
                self.pos += 1;
                let r = self.power()?;
                acc = self.div(acc, r).map_err(|e| self.at(at, e))?;
            } else {
                return Ok(acc);
            }
        }
    }

    /// Attach the position of token `at` to a semantic failure.
    fn at(&self, at: usize, e: Error) -> Error {
        match e {
            Error::Semantic(m) => {
                let t = &self.toks[at];
                Error::Semantic(format!("{m} (line {}, column {})", t.line, t.col))
            }
            e => e,
        }
    }

    fn uniformizer(&mut self, name: &str, at: usize) -> Result<V::Elem> {
        self.uniformizer_check(name, at)?;
        let e = if self.eat_sym('^') {
            self.rational()?
        } else {
            Exp::one()
        };
        self.k.unif_pow(e).map_err(|err| {
            self.at(
                at,
                Error::Semantic(format!(
                    "{name}^({}) is unavailable: {err}",
                    crate::valfield::fmt_exp(&e)
                )),
            )
        })
    }

    fn power(&mut self) -> Result<Frac<V::Elem>> {
        let at = self.pos;
        let t = self.next();
        let base = match t.tok {
            Tok::Num(n) => {
                let q = BigRational::from_integer(n);
                self.constant(self.k.from_ratio(&q).map_err(|e| self.at(at, e))?)
            }
            Tok::Ident(name) if name == "t" || name == "p" => {
                let u = self.uniformizer(&name, at)?;
                return Ok(self.constant(u));
            }
            Tok::Ident(name) if name == "g" => {
                let kr = self.k.residue_field();
                let g = kr.named_generator().ok_or_else(|| {
                    self.at(
                        at,
                        Error::Semantic(format!("{} has no named generator g", kr.describe())),
                    )
                })?;
                self.constant(self.k.lift(&g))
            }
            Tok::Ident(name) if name == "z" => {
                if !self.allow_z {
                    return Err(self.at(
                        at,
                        Error::Semantic("the variable z is not allowed in an element".into()),
                    ));
                }
                Frac {
                    num: Poly::z(self.k),
                    den: None,
                }
            }
            Tok::Ident(name) if name == "O" => {
                self.expect_sym('(')?;
                let u = match self.next().tok {
                    Tok::Ident(u) if u == "t" || u == "p" => u,
                    _ => return Err(self.err_here("expected t or p inside O(...)")),
                };
                let at_u = self.pos - 1;
                // validate the symbol against the mode
                self.uniformizer_check(&u, at_u)?;
                let e = if self.eat_sym('^') {
                    self.rational()?
                } else {
                    Exp::one()
                };
                self.expect_sym(')')?;
                let zero = self.k.truncate(&self.k.zero(), e);
                return Ok(self.constant(zero));
            }
            Tok::Sym('(') => {
                let inner = self.sum()?;
                self.expect_sym(')')?;
                inner
            }
            _ => {
                self.pos = at;
                return Err(self.err_here("expected a term"));
            }
        };
        if !self.eat_sym('^') {
            return Ok(base);
        }
        let e_at = self.pos;
        let e = self.rational()?;
        if !e.is_integer() {
            self.pos = e_at;
            return Err(self.err_here("only t and p take fractional exponents"));
        }
        let n = e.to_integer();
        let pos = self.pow(&base, n.unsigned_abs() as usize);
        if n >= 0 {
            Ok(pos)
        } else {
            let one = self.constant(self.k.one());
            self.div(one, pos).map_err(|err| self.at(e_at, err))
        }
    }

    fn uniformizer_check(&self, name: &str, at: usize) -> Result<()> {
        let mode = self.k.mode();
        let ok = (name == "t") == (mode != FieldMode::Mixed);
        if ok {
            Ok(())
        } else {
            Err(self.at(
                at,
                Error::Semantic(format!(
                    "'{name}' is not the uniformizer in {} mode",
                    mode.name()
                )),
            ))
        }
    }

    fn neg(&self, a: Frac<V::Elem>) -> Frac<V::Elem> {
        Frac {
            num: a.num.neg(self.k),
            den: a.den,
        }
    }

    fn add(&self, a: Frac<V::Elem>, b: Frac<V::Elem>) -> Frac<V::Elem> {
        let k = self.k;
        match (a.den, b.den) {
            (None, None) => Frac {
                num: a.num.add(k, &b.num),
                den: None,
            },
            (Some(d), None) => Frac {
                num: a.num.add(k, &b.num.mul(k, &d)),
                den: Some(d),
            },
            (None, Some(d)) => Frac {
                num: a.num.mul(k, &d).add(k, &b.num),
                den: Some(d),
            },
            (Some(d1), Some(d2)) => Frac {
                num: a.num.mul(k, &d2).add(k, &b.num.mul(k, &d1)),
                den: Some(d1.mul(k, &d2)),
            },
        }
    }

    fn mul(&self, a: Frac<V::Elem>, b: Frac<V::Elem>) -> Frac<V::Elem> {
        let k = self.k;
        let den = match (a.den, b.den) {
            (None, d) | (d, None) => d,
            (Some(x), Some(y)) => Some(x.mul(k, &y)),
        };
        Frac {
            num: a.num.mul(k, &b.num),
            den,
        }
    }

    fn pow(&self, a: &Frac<V::Elem>, n: usize) -> Frac<V::Elem> {
        let mut acc = self.constant(self.k.one());
        for _ in 0..n {
            acc = self.mul(acc, a.clone());
        }
        acc
    }

    fn div(&self, a: Frac<V::Elem>, b: Frac<V::Elem>) -> Result<Frac<V::Elem>> {
        let k = self.k;
        if b.num.is_zero() || (b.num.c.len() == 1 && k.is_exact_zero(&b.num.c[0])) {
            return Err(Error::Semantic("division by zero".into()));
        }
        if b.num.c.len() == 1 {
            // dividing by a constant keeps the coefficients explicit
            let c = &b.num.c[0];
            let num = Poly::new(
                k,
                a.num
                    .c
                    .iter()
                    .map(|x| k.div(x, c))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| Error::Semantic(e.to_string()))?,
            );
            let frac = Frac { num, den: a.den };
            return Ok(match b.den {
                Some(d) => self.mul(frac, Frac { num: d, den: None }),
                None => frac,
            });
        }
        let num = match b.den {
            Some(d) => a.num.mul(k, &d),
            None => a.num,
        };
        let den = match a.den {
            Some(d) => d.mul(k, &b.num),
            None => b.num,
        };
        Ok(Frac {
            num,
            den: Some(den),
        })
    }

    fn element(&mut self) -> Result<V::Elem> {
        let at = self.pos;
        let f = self.sum()?;
        let k = self.k;
        let num = f.num.coeff(k, 0);
        match f.den {
            None => Ok(num),
            Some(d) => k
                .div(&num, &d.coeff(k, 0))
                .map_err(|e| self.at(at, Error::Semantic(e.to_string()))),
        }
    }
}

/// Parse a field element.
pub fn parse_element<V: ValuedField>(k: &V, text: &str) -> Result<V::Elem> {
    let mut p = Parser::new(k, text, false)?;
    let a = p.element()?;
    p.expect_eof()?;
    Ok(a)
}

/// Parse a rational map in `z`, such as `(z^2 + t*z)/(t*z^2 + 1)`.
pub fn parse_map<V: ValuedField>(k: &V, text: &str) -> Result<RationalMap<V::Elem>> {
    let mut p = Parser::new(k, text, true)?;
    let f = p.sum()?;
    p.expect_eof()?;
    let g = f.den.unwrap_or_else(|| Poly::constant(k, k.one()));
    if f.num.is_zero() {
        return Err(Error::Semantic("the map is identically zero".into()));
    }
    RationalMap::new(k, f.num, g).map_err(|e| match e {
        Error::Invalid(m) => Error::Semantic(m),
        e => e,
    })
}

/// Parse a point: `inf`, `gauss`, `pt(a)`, `zeta(a; ord=s)` or a bare
/// element `a` (the classical point).
pub fn parse_point<V: ValuedField>(k: &V, text: &str) -> Result<BerkPoint<V::Elem>> {
    let mut p = Parser::new(k, text, false)?;
    let out = match p.peek().clone() {
        Tok::Sym('∞') => {
            p.pos += 1;
            BerkPoint::Infinity
        }
        Tok::Ident(w) if w == "inf" || w == "infinity" => {
            p.pos += 1;
            BerkPoint::Infinity
        }
        Tok::Ident(w) if w == "gauss" => {
            p.pos += 1;
            BerkPoint::gauss(k)
        }
        Tok::Ident(w) if w == "pt" => {
            p.pos += 1;
            p.expect_sym('(')?;
            let a = p.element()?;
            p.expect_sym(')')?;
            BerkPoint::Classical(a)
        }
        Tok::Ident(w) if w == "zeta" => {
            p.pos += 1;
            p.expect_sym('(')?;
            let a = p.element()?;
            if !p.eat_sym(';') {
                p.expect_sym(',')?;
            }
            p.expect_ident("ord")?;
            p.expect_sym('=')?;
            let s = p.rational()?;
            p.expect_sym(')')?;
            BerkPoint::ball(k, &a, s)?
        }
        _ => BerkPoint::Classical(p.element()?),
    };
    p.expect_eof()?;
    Ok(out)
}

/// Parse an exponent such as `3`, `-1/2` or `(1/8)`.
pub fn parse_exp(text: &str) -> Result<Exp> {
    let k = crate::valfield::Puiseux::new(crate::valfield::Rationals, Exp::one(), 1);
    let mut p = Parser::new(&k, text, false)?;
    let e = p.rational()?;
    p.expect_eof()?;
    Ok(e)
}
