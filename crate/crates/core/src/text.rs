//! Text formats: printers (`Display`) and parsers for polynomials, points,
//! triples, matrices, vertices and generator words.
//!
//! Expressions use `t` for the indeterminate and `a` for the generator of an
//! extension field; integers are reduced mod p. Supported syntax: `+ - * /`,
//! `^` with integer (possibly negative) exponents, parentheses and implicit
//! multiplication (`2t^2`, `(a+1)t`).

use std::fmt;

use crate::algebra::{Field, FieldElem, LaurentPoly, Poly};
use crate::error::{Error, Result};
use crate::group::{GammaElem, Generator, Word};
use crate::projective::{ContinuedFraction, ProjPoint, Triple};
use crate::tree::Vertex;

// ---------------------------------------------------------------- printing

fn coeff_prefix(c: &FieldElem) -> String {
    if c.is_one() {
        String::new()
    } else if c.in_prime_subfield() || !c.to_string().contains('+') {
        c.to_string()
    } else {
        format!("({c})")
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (i64, FieldElem)>) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if !first {
            f.write_str("+")?;
        }
        first = false;
        match e {
            0 => write!(f, "{c}")?,
            1 => write!(f, "{}t", coeff_prefix(&c))?,
            e => write!(f, "{}t^{e}", coeff_prefix(&c))?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(e, c)| (e as i64, c)))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms())
    }
}

fn grouped(p: &Poly) -> String {
    let s = p.to_string();
    if s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            f.write_str("inf")
        } else if self.den().is_one() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "{}/{}", grouped(self.num()), grouped(self.den()))
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.w1(), self.w2(), self.w3())
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.quotients();
        write!(f, "[{}", q[0])?;
        for (i, a) in q.iter().enumerate().skip(1) {
            f.write_str(if i == 1 { "; " } else { ", " })?;
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for GammaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries();
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Iota => f.write_str("iota"),
            Generator::Sigma(c) => write!(f, "sigma:{c}"),
            Generator::Translate(p) => write!(f, "u:{p}"),
            Generator::Untranslate(p) => {
                f.write_str("u:")?;
                if p.is_zero() {
                    return f.write_str("-0");
                }
                for (e, c) in p.terms() {
                    f.write_str("-")?;
                    match e {
                        0 => write!(f, "{c}")?,
                        1 => write!(f, "{}t", coeff_prefix(&c))?,
                        e => write!(f, "{}t^{e}", coeff_prefix(&c))?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("id");
        }
        for (i, g) in self.tokens().iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.level(), self.offset())
    }
}

// ----------------------------------------------------------------- lexing

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    T,
    A,
    Inf,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    End,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(s[start..i].to_string())));
                continue;
            }
            't' => Tok::T,
            'a' => Tok::A,
            'i' if s[i..].starts_with("inf") => {
                out.push((i, Tok::Inf));
                i += 3;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            _ => return Err(Error::parse(i, format!("unexpected character '{c}'"))),
        };
        out.push((i, tok));
        i += c.len_utf8();
    }
    out.push((s.len(), Tok::End));
    Ok(out)
}

// ------------------------------------------------------- fraction values

/// Unreduced value `n/d` during evaluation; `d = 0` encodes infinity.
#[derive(Clone)]
struct Frac {
    n: Poly,
    d: Poly,
}

impl Frac {
    fn poly(p: Poly) -> Frac {
        let d = Poly::one(p.field());
        Frac { n: p, d }
    }

    fn norm(n: Poly, d: Poly, pos: usize) -> Result<Frac> {
        if n.is_zero() && d.is_zero() {
            return Err(Error::parse(pos, "indeterminate value 0/0"));
        }
        if d.is_zero() {
            return Ok(Frac { n: Poly::one(n.field()), d });
        }
        let g = n.gcd(&d);
        Ok(Frac { n: n.div_exact(&g)?, d: d.div_exact(&g)? })
    }

    fn add(self, o: Frac, pos: usize) -> Result<Frac> {
        if self.d.is_zero() || o.d.is_zero() {
            if self.d.is_zero() && o.d.is_zero() {
                return Err(Error::parse(pos, "indeterminate value inf+inf"));
            }
            return Ok(Frac { n: Poly::one(self.n.field()), d: Poly::zero(self.n.field()) });
        }
        Frac::norm(&(&self.n * &o.d) + &(&o.n * &self.d), &self.d * &o.d, pos)
    }

    fn neg(self) -> Frac {
        Frac { n: -self.n, d: self.d }
    }

    fn mul(self, o: Frac, pos: usize) -> Result<Frac> {
        Frac::norm(&self.n * &o.n, &self.d * &o.d, pos)
    }

    fn recip(self, pos: usize) -> Result<Frac> {
        Frac::norm(self.d, self.n, pos)
    }

    fn pow(self, e: i64, pos: usize) -> Result<Frac> {
        let base = if e < 0 { self.recip(pos)? } else { self };
        let e = u32::try_from(e.unsigned_abs()).map_err(|_| Error::parse(pos, "exponent too large"))?;
        Frac::norm(base.n.pow(e), base.d.pow(e), pos)
    }

    fn into_point(self) -> ProjPoint {
        ProjPoint::new(self.n, self.d).expect("normalized fraction is never 0/0")
    }
}

// ---------------------------------------------------------------- parsing

struct Parser<'f> {
    field: &'f Field,
    toks: Vec<(usize, Tok)>,
    i: usize,
}

impl<'f> Parser<'f> {
    fn new(field: &'f Field, s: &str) -> Result<Parser<'f>> {
        Ok(Parser { field, toks: lex(s)?, i: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].1
    }

    fn pos(&self) -> usize {
        self.toks[self.i].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].1.clone();
        if t != Tok::End {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected {what}")))
        }
    }

    fn finish(&mut self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(Error::parse(self.pos(), "unexpected trailing input"))
        }
    }

    fn int(&mut self) -> Result<i64> {
        let pos = self.pos();
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        match self.bump() {
            Tok::Int(s) => {
                let v: i64 = s.parse().map_err(|_| Error::parse(pos, "integer too large"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(Error::parse(pos, "expected an integer")),
        }
    }

    // expr := ['-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Frac> {
        let mut acc = if *self.peek() == Tok::Minus {
            self.bump();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            let pos_op = self.pos();
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.add(rhs, pos_op)?;
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.add(rhs.neg(), pos_op)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := factor (('*'|'/')? factor)*
    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.factor()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.mul(rhs, pos)?;
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.mul(rhs.recip(pos)?, pos)?;
                }
                Tok::Int(_) | Tok::T | Tok::A | Tok::Inf | Tok::LParen => {
                    let rhs = self.factor()?;
                    acc = acc.mul(rhs, pos)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // factor := atom ('^' int)?
    fn factor(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            let e = self.int()?;
            return base.pow(e, pos);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Frac> {
        let pos = self.pos();
        let f = self.field;
        match self.bump() {
            Tok::Int(s) => {
                let p = f.p() as u64;
                let v = s.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(Frac::poly(Poly::constant(&f.from_int(v as i64))))
            }
            Tok::T => Ok(Frac::poly(Poly::t(f))),
            Tok::A => {
                if f.k() == 1 {
                    return Err(Error::parse(pos, "symbol 'a' requires an extension field"));
                }
                Ok(Frac::poly(Poly::constant(&f.elem(f.gen_a()))))
            }
            Tok::Inf => Ok(Frac { n: Poly::one(f), d: Poly::zero(f) }),
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(v)
            }
            _ => Err(Error::parse(pos, "expected a number, 't', 'a', 'inf' or '('")),
        }
    }
}

fn to_poly(v: Frac, pos: usize) -> Result<Poly> {
    if v.d.is_zero() {
        return Err(Error::parse(pos, "expected a polynomial, found inf"));
    }
    if v.d.degree() != crate::algebra::Degree::Finite(0) {
        return Err(Error::parse(pos, "expected a polynomial, found a fraction"));
    }
    let inv = v.d.lc().inv()?;
    Ok(v.n.scale(&inv))
}

fn to_laurent(v: Frac, pos: usize) -> Result<LaurentPoly> {
    let p = v.into_point();
    if p.is_infinity() {
        return Err(Error::parse(pos, "expected a Laurent polynomial, found inf"));
    }
    let den = p.den();
    let k = den.deg().unwrap();
    if *den != Poly::monomial_raw(p.field(), 1, k) {
        return Err(Error::parse(pos, "denominator is not a power of t"));
    }
    let num = LaurentPoly::from_poly(p.num());
    Ok(&num * &LaurentPoly::monomial_raw(p.field(), 1, -(k as i64)))
}

/// Parse a polynomial in `t`.
pub fn parse_poly(field: &Field, s: &str) -> Result<Poly> {
    let mut p = Parser::new(field, s)?;
    let v = p.expr()?;
    p.finish()?;
    to_poly(v, 0)
}

/// Parse a Laurent polynomial (negative powers of `t` allowed).
pub fn parse_laurent(field: &Field, s: &str) -> Result<LaurentPoly> {
    let mut p = Parser::new(field, s)?;
    let v = p.expr()?;
    p.finish()?;
    to_laurent(v, 0)
}

/// Parse a field element (a constant expression).
pub fn parse_field_elem(field: &Field, s: &str) -> Result<FieldElem> {
    let p = parse_poly(field, s)?;
    if p.degree() > crate::algebra::Degree::Finite(0) {
        return Err(Error::parse(0, "expected a constant"));
    }
    Ok(p.coeff(0))
}

/// Parse a point: any rational expression, or `inf`. `1/0` is infinity.
pub fn parse_point(field: &Field, s: &str) -> Result<ProjPoint> {
    let mut p = Parser::new(field, s)?;
    let v = p.expr()?;
    p.finish()?;
    Ok(v.into_point())
}

/// Parse `(p1, p2, p3)`.
pub fn parse_triple(field: &Field, s: &str) -> Result<Triple> {
    let mut p = Parser::new(field, s)?;
    p.expect(Tok::LParen, "'('")?;
    let w1 = p.expr()?.into_point();
    p.expect(Tok::Comma, "','")?;
    let w2 = p.expr()?.into_point();
    p.expect(Tok::Comma, "','")?;
    let w3 = p.expr()?.into_point();
    p.expect(Tok::RParen, "')'")?;
    p.finish()?;
    Triple::new(w1, w2, w3)
}

/// Parse `[[a,b],[c,d]]`. Rational entries are allowed and cleared by their
/// common denominator.
pub fn parse_matrix(field: &Field, s: &str) -> Result<GammaElem> {
    let mut p = Parser::new(field, s)?;
    let mut entries = Vec::with_capacity(4);
    p.expect(Tok::LBracket, "'['")?;
    for row in 0..2 {
        if row == 1 {
            p.expect(Tok::Comma, "','")?;
        }
        p.expect(Tok::LBracket, "'['")?;
        let pos = p.pos();
        let a = p.expr()?;
        p.expect(Tok::Comma, "','")?;
        let b = p.expr()?;
        p.expect(Tok::RBracket, "']'")?;
        for v in [a, b] {
            if v.d.is_zero() {
                return Err(Error::parse(pos, "matrix entries must be finite"));
            }
            entries.push(v);
        }
    }
    p.expect(Tok::RBracket, "']'")?;
    p.finish()?;
    let lcm = entries.iter().fold(Poly::one(field), |l, v| {
        let g = l.gcd(&v.d);
        (&l * &v.d).div_exact(&g).unwrap()
    });
    let polys: Vec<Poly> = entries.into_iter().map(|v| (&v.n * &lcm).div_exact(&v.d).unwrap()).collect();
    let [a, b, c, d]: [Poly; 4] = polys.try_into().unwrap();
    GammaElem::from_entries(a, b, c, d)
}

/// Parse `(n; f)`.
pub fn parse_vertex(field: &Field, s: &str) -> Result<Vertex> {
    let mut p = Parser::new(field, s)?;
    p.expect(Tok::LParen, "'('")?;
    let n = p.int()?;
    p.expect(Tok::Semi, "';'")?;
    let pos = p.pos();
    let f = to_laurent(p.expr()?, pos)?;
    p.expect(Tok::RParen, "')'")?;
    p.finish()?;
    Vertex::new(n, f)
}

/// Parse a single generator token: `iota`, `sigma:c`, `u:f` or `u:-f`.
pub fn parse_generator(field: &Field, s: &str) -> Result<Generator> {
    let s = s.trim();
    if s == "iota" {
        return Ok(Generator::Iota);
    }
    if let Some(c) = s.strip_prefix("sigma:") {
        return Generator::sigma(parse_field_elem(field, c)?);
    }
    if let Some(f) = s.strip_prefix("u:") {
        let f_trim = f.trim_start();
        let value = parse_poly(field, f)?;
        return Ok(if f_trim.starts_with('-') { Generator::Untranslate(-value) } else { Generator::Translate(value) });
    }
    Err(Error::parse(0, format!("unknown generator '{s}'")))
}

/// Parse a dot-separated word such as `iota.sigma:2.u:t^2+1`; `id` is the
/// empty word.
pub fn parse_word(field: &Field, s: &str) -> Result<Word> {
    if s.trim() == "id" {
        return Ok(Word::identity(field));
    }
    let mut tokens = Vec::new();
    let mut offset = 0;
    for part in s.split('.') {
        let g = parse_generator(field, part).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::parse(offset + pos, msg),
            other => other,
        })?;
        tokens.push(g);
        offset += part.len() + 1;
    }
    Word::from_tokens(field, tokens)
}
