//! Text formats for polynomials and ideals.
//!
//! ```text
//! ring p=32003 n=4
//! x0*x2
//! x1*x3 - 2*x0^2
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Output is canonical:
//! terms in decreasing grevlex order and coefficients in `[0, p)`.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingContext;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: RingContext,
    line: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            msg: format!("{} at column {}", msg.into(), self.pos + 1),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        let p = self.ring.characteristic() as u64;
        let mut v = 0u64;
        while let Some(c) = self.src.get(self.pos).filter(|c| c.is_ascii_digit()) {
            v = (v * 10 + (c - b'0') as u64) % p;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        Ok(v)
    }

    fn raw_uint(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected a non-negative integer"))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let f = self.ring.field();
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?, f);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?, f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let f = self.ring.field();
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?, f);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.raw_uint()?;
            return Ok(base.pow(e, self.ring.field()));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg(self.ring.field()))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'x') => {
                self.pos += 1;
                let i = self.raw_uint()? as usize;
                if i >= self.ring.num_vars() {
                    return Err(self.err(format!("variable x{i} outside the ring")));
                }
                Ok(Polynomial::monomial(Monomial::var(i), 1))
            }
            Some(c) if c.is_ascii_digit() => Ok(Polynomial::constant(self.number()? as u32)),
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn parse_at(text: &str, ring: RingContext, line: usize) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
        line,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parses one polynomial in infix syntax (`+ - * ^`, parentheses, `x<i>`).
pub fn parse_polynomial(text: &str, ring: RingContext) -> Result<Polynomial> {
    parse_at(text, ring, 1)
}

/// Parses a `ring p=<prime> n=<vars>` header.
pub fn parse_ring_header(line: &str, line_no: usize) -> Result<RingContext> {
    let mut words = line.split_whitespace();
    if words.next() != Some("ring") {
        return Err(Error::Parse {
            line: line_no,
            msg: "expected header 'ring p=<prime> n=<vars>'".into(),
        });
    }
    let (mut p, mut n) = (None, None);
    for w in words {
        let bad = || Error::Parse {
            line: line_no,
            msg: format!("malformed header field '{w}'"),
        };
        let (k, v) = w.split_once('=').ok_or_else(bad)?;
        let v: u64 = v.parse().map_err(|_| bad())?;
        match k {
            "p" => p = Some(v),
            "n" => n = Some(v),
            _ => return Err(bad()),
        }
    }
    match (p, n) {
        (Some(p), Some(n)) if p <= u32::MAX as u64 => RingContext::new(p as u32, n as usize),
        _ => Err(Error::Parse {
            line: line_no,
            msg: "header needs p=<prime> and n=<vars>".into(),
        }),
    }
}

pub fn ring_header(ring: RingContext) -> String {
    format!("ring p={} n={}", ring.characteristic(), ring.num_vars())
}

/// Non-empty, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_line(text: &str, ring: RingContext, line: usize) -> Result<Polynomial> {
    parse_at(text, ring, line)
}

/// Reads an ideal file.
pub fn parse_ideal(text: &str) -> Result<Ideal> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let ring = parse_ring_header(header, ln)?;
    let mut gens = Vec::new();
    for (ln, l) in lines {
        let g = parse_at(l, ring, ln)?;
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(format!("line {ln}: {g}")));
        }
        gens.push(g);
    }
    Ideal::new(ring, gens)
}

/// Writes an ideal file; the generators are written as stored.
pub fn write_ideal(ideal: &Ideal) -> String {
    let mut s = ring_header(ideal.ring());
    s.push('\n');
    for g in ideal.generators() {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}
